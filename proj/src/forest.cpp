#include "patentcite/forest.hpp"

#include <algorithm>
#include <cmath>

#include "patentcite/error.hpp"
#include "patentcite/rng.hpp"

namespace patentcite {

ForestModel fit_forest(const Dataset& train, const ForestConfig& config) {
    const std::size_t n = train.rows();
    const std::size_t d = train.cols();
    if (n < 2)
        throw DataError("random forest needs at least 2 training rows");
    {
        long long positives = 0;
        for (int label : train.labels) positives += label;
        if (positives == 0 || positives == static_cast<long long>(n))
            throw DataError("random forest needs at least one row of each class");
    }
    if (config.n_trees < 1)
        throw DataError("forest needs at least one tree");

    std::size_t m = config.features_per_split;
    if (m == 0)
        m = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d))));
    if (m < 1 || m > d)
        throw DataError("features_per_split must be in [1, feature count]");

    ForestModel model;
    model.features_per_split = m;
    model.bootstrap = config.bootstrap;
    model.master_seed = config.seed;
    model.tree_config = config.tree;
    model.trees.reserve(static_cast<std::size_t>(config.n_trees));

    std::vector<std::size_t> identity(n);
    for (std::size_t i = 0; i < n; ++i)
        identity[i] = i;

    for (int t = 0; t < config.n_trees; ++t) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(t)));

        std::vector<std::size_t> rows;
        if (config.bootstrap) {
            rows.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                rows[i] = static_cast<std::size_t>(rng.bounded(n));
        } else {
            rows = identity;
        }

        auto sampler = [&rng, m, d]() {
            auto picked = rng.sample_without_replacement(d, m);
            std::sort(picked.begin(), picked.end());
            return picked;
        };
        model.trees.push_back(fit_tree_on_rows(train, rows, config.tree, sampler));
    }
    return model;
}

double forest_proba(const ForestModel& model, const std::vector<double>& features) {
    long long votes = 0;
    for (const auto& tree : model.trees)
        if (tree_proba(tree, features) >= 0.5)
            ++votes;
    return static_cast<double>(votes) / static_cast<double>(model.trees.size());
}

} // namespace patentcite
