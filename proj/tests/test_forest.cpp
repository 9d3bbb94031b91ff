#include <doctest.h>

#include <vector>

#include "patentcite/error.hpp"
#include "patentcite/forest.hpp"
#include "patentcite/model.hpp"
#include "patentcite/synthgen.hpp"
#include "test_util.hpp"

using namespace patentcite;
using testutil::fixture_dataset;
using testutil::make_dataset;

TEST_CASE("a degenerate forest reproduces the plain tree") {
    auto ds = fixture_dataset();
    ForestConfig config;
    config.n_trees = 1;
    config.bootstrap = false;
    config.features_per_split = ds.cols();
    auto forest = fit_forest(ds, config);
    auto tree = fit_tree(ds, config.tree);

    REQUIRE(forest.trees.size() == 1);
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        const double tp = tree_proba(tree, ds.row(i));
        const double fp = forest_proba(forest, ds.row(i));
        CHECK(fp == (tp >= 0.5 ? 1.0 : 0.0));
        CHECK(tree_proba(forest.trees[0], ds.row(i)) == tp);
    }
}

TEST_CASE("the same seed refits an identical forest") {
    auto ds = fixture_dataset();
    ForestConfig config;
    config.n_trees = 15;
    config.seed = 7;
    auto a = fit_forest(ds, config);
    auto b = fit_forest(ds, config);

    TrainedModel ma{ds.feature_names, a};
    TrainedModel mb{ds.feature_names, b};
    CHECK(to_json_string(ma) == to_json_string(mb));
}

TEST_CASE("different seeds grow different forests") {
    auto ds = fixture_dataset();
    ForestConfig config;
    config.n_trees = 15;
    config.seed = 7;
    auto a = fit_forest(ds, config);
    config.seed = 8;
    auto b = fit_forest(ds, config);
    CHECK(to_json_string(TrainedModel{ds.feature_names, a}) !=
          to_json_string(TrainedModel{ds.feature_names, b}));
}

TEST_CASE("default features_per_split is the square root heuristic") {
    auto ds = fixture_dataset();
    REQUIRE(ds.cols() == 8);
    ForestConfig config;
    config.n_trees = 2;
    auto model = fit_forest(ds, config);
    CHECK(model.features_per_split == 2);  // floor(sqrt(8))

    config.features_per_split = 5;
    CHECK(fit_forest(ds, config).features_per_split == 5);
}

TEST_CASE("a modest forest fits its training data almost perfectly") {
    SynthConfig synth;
    synth.n_records = 300;
    synth.seed = 3;
    auto ds = generate(synth);

    ForestConfig config;
    config.n_trees = 25;
    config.seed = 5;
    auto model = fit_forest(ds, config);

    int correct = 0;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        const int label = forest_proba(model, ds.row(i)) >= 0.5 ? 1 : 0;
        correct += label == ds.labels[i];
    }
    CHECK(static_cast<double>(correct) / static_cast<double>(ds.rows()) >= 0.95);
}

TEST_CASE("bootstrap resampling actually varies the trees") {
    auto ds = fixture_dataset();
    ForestConfig config;
    config.n_trees = 10;
    config.features_per_split = ds.cols();  // only the bootstrap differs per tree
    auto model = fit_forest(ds, config);

    TrainedModel first{ds.feature_names, ForestModel{{model.trees[0]}, model.features_per_split,
                                                     true, 0, model.tree_config}};
    bool any_different = false;
    for (std::size_t t = 1; t < model.trees.size() && !any_different; ++t) {
        TrainedModel other{ds.feature_names,
                           ForestModel{{model.trees[t]}, model.features_per_split, true, 0,
                                       model.tree_config}};
        any_different = to_json_string(other) != to_json_string(first);
    }
    CHECK(any_different);
}

TEST_CASE("config validation") {
    auto ds = fixture_dataset();
    ForestConfig config;

    config.n_trees = 0;
    CHECK_THROWS_AS(fit_forest(ds, config), DataError);

    config.n_trees = 3;
    config.features_per_split = ds.cols() + 1;
    CHECK_THROWS_AS(fit_forest(ds, config), DataError);

    config.features_per_split = 0;
    auto single = make_dataset({"a"}, {{1}, {2}, {3}}, {1, 1, 1});
    CHECK_THROWS_AS(fit_forest(single, config), DataError);

    auto tiny = make_dataset({"a"}, {{1}}, {1});
    CHECK_THROWS_AS(fit_forest(tiny, config), DataError);
}

TEST_CASE("forest_proba counts thresholded tree votes") {
    TreeNode yes;
    yes.feature = -1;
    yes.n0 = 1;
    yes.n1 = 1;  // proba 0.5 votes for class 1 at the inclusive boundary
    TreeNode no;
    no.feature = -1;
    no.n0 = 3;
    no.n1 = 1;

    ForestModel model;
    model.trees = {TreeModel{{yes}, TreeConfig{}}, TreeModel{{no}, TreeConfig{}}};
    CHECK(forest_proba(model, {0.0}) == 0.5);

    model.trees = {TreeModel{{no}, TreeConfig{}}, TreeModel{{no}, TreeConfig{}}};
    CHECK(forest_proba(model, {0.0}) == 0.0);
}
