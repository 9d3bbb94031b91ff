#ifndef PATENTCITE_FOREST_HPP
#define PATENTCITE_FOREST_HPP

#include <cstdint>
#include <vector>

#include "patentcite/dataset.hpp"
#include "patentcite/tree.hpp"

namespace patentcite {

struct ForestConfig {
    int n_trees = 100;
    std::size_t features_per_split = 0;  // 0 = floor(sqrt(feature count))
    bool bootstrap = true;
    std::uint64_t seed = 42;
    TreeConfig tree;
};

struct ForestModel {
    std::vector<TreeModel> trees;
    std::size_t features_per_split = 0;
    bool bootstrap = true;
    std::uint64_t master_seed = 0;
    TreeConfig tree_config;
};

// Bagged CART trees with per-split random feature subsets. Each tree's RNG
// seed is derived from the master seed and the tree index, so training order
// cannot change the result.
ForestModel fit_forest(const Dataset& train, const ForestConfig& config);

// Fraction of trees whose thresholded prediction is class 1.
double forest_proba(const ForestModel& model, const std::vector<double>& features);

} // namespace patentcite

#endif // PATENTCITE_FOREST_HPP
