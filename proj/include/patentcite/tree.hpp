#ifndef PATENTCITE_TREE_HPP
#define PATENTCITE_TREE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "patentcite/dataset.hpp"

namespace patentcite {

struct TreeConfig {
    int max_depth = 12;
    int min_samples_split = 2;
    double min_impurity_decrease = 0.0;
};

// Flat arena; node 0 is the root. feature < 0 marks a leaf.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int leaf_class = 0;       // argmax of counts, ties to class 0
    long long n0 = 0;         // class counts reaching a leaf
    long long n1 = 0;
};

struct TreeModel {
    std::vector<TreeNode> nodes;
    TreeConfig config;
};

// 1 - p0^2 - p1^2 over the two class counts.
double gini_impurity(long long n0, long long n1);

struct Split {
    std::size_t feature = 0;
    double threshold = 0.0;
    double impurity_decrease = 0.0;
};

// Scans every candidate feature's midpoints between consecutive distinct
// sorted values and returns the split with the largest weighted Gini
// decrease. Ties keep the lower feature index, then the lower threshold.
// Empty when no candidate produces a positive decrease. Rows go left when
// value <= threshold.
std::optional<Split> best_split(const Dataset& dataset,
                                const std::vector<std::size_t>& rows,
                                const std::vector<std::size_t>& candidate_features);

TreeModel fit_tree(const Dataset& train, const TreeConfig& config);

// Forest hook: trains on a row multiset (bootstrap indices) and asks
// `candidates` for the feature subset to scan at each node. The returned
// list must be sorted ascending so the tie-break stays well defined.
using CandidateSampler = std::function<std::vector<std::size_t>()>;
TreeModel fit_tree_on_rows(const Dataset& dataset, const std::vector<std::size_t>& rows,
                           const TreeConfig& config, const CandidateSampler& candidates);

// Class-1 fraction of the leaf the feature vector falls into.
double tree_proba(const TreeModel& model, const std::vector<double>& features);

} // namespace patentcite

#endif // PATENTCITE_TREE_HPP
