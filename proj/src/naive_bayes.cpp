#include "patentcite/naive_bayes.hpp"

#include <cmath>

#include "patentcite/error.hpp"

namespace patentcite {

NBModel fit_naive_bayes(const Dataset& train, const NBConfig& config) {
    const std::size_t n = train.rows();
    const std::size_t d = train.cols();
    std::array<long long, 2> counts = {0, 0};
    for (int label : train.labels)
        ++counts[static_cast<std::size_t>(label)];
    if (counts[0] == 0 || counts[1] == 0)
        throw DataError("naive Bayes needs at least one row of each class");

    NBModel model;
    model.variance_floor = config.variance_floor;
    for (int c = 0; c < 2; ++c) {
        model.class_priors[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
        model.means[c].assign(d, 0.0);
        model.variances[c].assign(d, 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(train.labels[i]);
        for (std::size_t j = 0; j < d; ++j)
            model.means[c][j] += std::log1p(train.at(i, j));
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j)
            model.means[c][j] /= static_cast<double>(counts[c]);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(train.labels[i]);
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = std::log1p(train.at(i, j)) - model.means[c][j];
            model.variances[c][j] += diff * diff;
        }
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j) {
            model.variances[c][j] /= static_cast<double>(counts[c]);
            if (model.variances[c][j] < config.variance_floor)
                model.variances[c][j] = config.variance_floor;
        }
    return model;
}

std::array<double, 2> nb_posteriors(const NBModel& model, const std::vector<double>& features) {
    const std::size_t d = model.means[0].size();
    if (features.size() != d)
        throw DataError("feature vector length " + std::to_string(features.size()) +
                        " does not match model arity " + std::to_string(d));

    std::array<double, 2> log_joint;
    for (int c = 0; c < 2; ++c) {
        double lj = std::log(model.class_priors[c]);
        for (std::size_t j = 0; j < d; ++j) {
            const double x = std::log1p(features[j]);
            const double var = model.variances[c][j];
            const double diff = x - model.means[c][j];
            lj += -0.5 * std::log(2.0 * M_PI * var) - diff * diff / (2.0 * var);
        }
        log_joint[c] = lj;
    }
    const double max_lj = std::max(log_joint[0], log_joint[1]);
    const double e0 = std::exp(log_joint[0] - max_lj);
    const double e1 = std::exp(log_joint[1] - max_lj);
    double p1 = e1 / (e0 + e1);
    if (p1 < 1e-15) p1 = 1e-15;
    if (p1 > 1.0 - 1e-15) p1 = 1.0 - 1e-15;
    return {1.0 - p1, p1};
}

double nb_posterior(const NBModel& model, const std::vector<double>& features) {
    return nb_posteriors(model, features)[1];
}

} // namespace patentcite
