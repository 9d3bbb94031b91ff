#include "patentcite/tree.hpp"

#include <algorithm>

#include "patentcite/error.hpp"

namespace patentcite {

double gini_impurity(long long n0, long long n1) {
    const long long n = n0 + n1;
    if (n <= 0)
        throw DataError("gini impurity of empty counts");
    const double p0 = static_cast<double>(n0) / static_cast<double>(n);
    const double p1 = static_cast<double>(n1) / static_cast<double>(n);
    return 1.0 - p0 * p0 - p1 * p1;
}

std::optional<Split> best_split(const Dataset& dataset,
                                const std::vector<std::size_t>& rows,
                                const std::vector<std::size_t>& candidate_features) {
    const std::size_t n = rows.size();
    if (n < 2)
        return std::nullopt;

    long long total0 = 0, total1 = 0;
    for (std::size_t r : rows)
        dataset.labels[r] == 1 ? ++total1 : ++total0;
    const double parent_gini = gini_impurity(total0, total1);

    std::optional<Split> best;
    std::vector<std::pair<double, int>> column(n);
    for (std::size_t f : candidate_features) {
        for (std::size_t i = 0; i < n; ++i)
            column[i] = {dataset.at(rows[i], f), dataset.labels[rows[i]]};
        std::sort(column.begin(), column.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        long long left0 = 0, left1 = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            column[i].second == 1 ? ++left1 : ++left0;
            if (column[i].first == column[i + 1].first)
                continue;
            const double threshold = (column[i].first + column[i + 1].first) / 2.0;
            const long long n_left = static_cast<long long>(i) + 1;
            const long long n_right = static_cast<long long>(n) - n_left;
            const double weighted =
                (static_cast<double>(n_left) * gini_impurity(left0, left1) +
                 static_cast<double>(n_right) * gini_impurity(total0 - left0, total1 - left1)) /
                static_cast<double>(n);
            const double decrease = parent_gini - weighted;
            if (decrease > 0.0 && (!best || decrease > best->impurity_decrease))
                best = Split{f, threshold, decrease};
        }
    }
    return best;
}

namespace {

int build_node(const Dataset& dataset, std::vector<std::size_t>& rows, int depth,
               const TreeConfig& config, const CandidateSampler& candidates,
               std::vector<TreeNode>& nodes) {
    long long n0 = 0, n1 = 0;
    for (std::size_t r : rows)
        dataset.labels[r] == 1 ? ++n1 : ++n0;

    const int index = static_cast<int>(nodes.size());
    nodes.emplace_back();

    auto make_leaf = [&] {
        TreeNode& leaf = nodes[index];
        leaf.feature = -1;
        leaf.n0 = n0;
        leaf.n1 = n1;
        leaf.leaf_class = n1 > n0 ? 1 : 0;
        return index;
    };

    if (depth >= config.max_depth || n0 == 0 || n1 == 0 ||
        static_cast<long long>(rows.size()) < config.min_samples_split)
        return make_leaf();

    auto split = best_split(dataset, rows, candidates());
    if (!split || split->impurity_decrease < config.min_impurity_decrease)
        return make_leaf();

    std::vector<std::size_t> left_rows, right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (std::size_t r : rows) {
        if (dataset.at(r, split->feature) <= split->threshold)
            left_rows.push_back(r);
        else
            right_rows.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const std::size_t feature = split->feature;
    const double threshold = split->threshold;
    const int left = build_node(dataset, left_rows, depth + 1, config, candidates, nodes);
    const int right = build_node(dataset, right_rows, depth + 1, config, candidates, nodes);
    TreeNode& node = nodes[index];
    node.feature = static_cast<int>(feature);
    node.threshold = threshold;
    node.left = left;
    node.right = right;
    return index;
}

} // namespace

TreeModel fit_tree_on_rows(const Dataset& dataset, const std::vector<std::size_t>& rows,
                           const TreeConfig& config, const CandidateSampler& candidates) {
    if (rows.empty())
        throw DataError("cannot fit a tree on an empty training set");
    TreeModel model;
    model.config = config;
    std::vector<std::size_t> mutable_rows = rows;
    build_node(dataset, mutable_rows, 0, config, candidates, model.nodes);
    return model;
}

TreeModel fit_tree(const Dataset& train, const TreeConfig& config) {
    if (train.rows() == 0)
        throw DataError("cannot fit a tree on an empty training set");
    std::vector<std::size_t> rows(train.rows());
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i] = i;
    std::vector<std::size_t> all_features(train.cols());
    for (std::size_t j = 0; j < all_features.size(); ++j)
        all_features[j] = j;
    return fit_tree_on_rows(train, rows, config, [&all_features] { return all_features; });
}

double tree_proba(const TreeModel& model, const std::vector<double>& features) {
    const TreeNode* node = &model.nodes[0];
    while (node->feature >= 0) {
        if (static_cast<std::size_t>(node->feature) >= features.size())
            throw DataError("feature vector too short for tree model");
        node = features[static_cast<std::size_t>(node->feature)] <= node->threshold
                   ? &model.nodes[static_cast<std::size_t>(node->left)]
                   : &model.nodes[static_cast<std::size_t>(node->right)];
    }
    return static_cast<double>(node->n1) / static_cast<double>(node->n0 + node->n1);
}

} // namespace patentcite
