#ifndef PATENTCITE_NAIVE_BAYES_HPP
#define PATENTCITE_NAIVE_BAYES_HPP

#include <array>
#include <vector>

#include "patentcite/dataset.hpp"

namespace patentcite {

struct NBConfig {
    double variance_floor = 1e-9;
};

// Gaussian naive Bayes over log1p-transformed counts. means[c][f] and
// variances[c][f] are the per-class per-feature population statistics in
// transformed space; every stored variance is at least variance_floor.
struct NBModel {
    std::array<double, 2> class_priors = {0.5, 0.5};
    std::array<std::vector<double>, 2> means;
    std::array<std::vector<double>, 2> variances;
    double variance_floor = 1e-9;
};

NBModel fit_naive_bayes(const Dataset& train, const NBConfig& config);

// Posterior probabilities {P(class 0 | x), P(class 1 | x)} for a raw feature
// vector; Bayes rule evaluated in log space and normalized, so the pair sums
// to 1 exactly.
std::array<double, 2> nb_posteriors(const NBModel& model, const std::vector<double>& features);

// P(class 1 | x).
double nb_posterior(const NBModel& model, const std::vector<double>& features);

} // namespace patentcite

#endif // PATENTCITE_NAIVE_BAYES_HPP
