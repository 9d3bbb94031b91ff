#ifndef PATENTCITE_LOGISTIC_HPP
#define PATENTCITE_LOGISTIC_HPP

#include <vector>

#include "patentcite/dataset.hpp"

namespace patentcite {

// Feature transform applied before scoring. Counts are heavy-tailed, so
// log1p is the training default; tests and callers with pre-scaled inputs
// can switch it off.
enum class Transform { None, Log1p };

struct LogisticConfig {
    double learning_rate = 0.1;
    double l2 = 0.0;            // strength of the (l2/2)*||w||^2 penalty; bias unregularized
    int max_iters = 5000;
    double tolerance = 1e-8;    // stop when per-step loss improvement falls below this
    Transform transform = Transform::Log1p;
};

struct LogisticModel {
    std::vector<double> weights;
    double bias = 0.0;
    Transform transform = Transform::Log1p;
    LogisticConfig config;  // training configuration echo
};

// 1/(1+e^-z), clamped to (1e-15, 1-1e-15) so the cross-entropy loss stays finite.
double sigmoid(double z);

double apply_transform(Transform t, double value);

struct LossAndGradient {
    double loss = 0.0;
    std::vector<double> grad_weights;
    double grad_bias = 0.0;
};

// Mean binary cross-entropy plus (l2/2)*||w||^2 and its exact analytic
// gradient. Features are used as stored; any transform happens upstream.
LossAndGradient logistic_loss_and_gradient(const std::vector<double>& weights, double bias,
                                           const Dataset& dataset, double l2);

// Batch gradient descent from zero-initialized weights. Deterministic.
// Optionally records the loss after every iteration (index 0 = initial loss).
LogisticModel fit_logistic(const Dataset& train, const LogisticConfig& config,
                           std::vector<double>* loss_trace = nullptr);

// Probability of class 1 for a raw (untransformed) feature vector.
double logistic_proba(const LogisticModel& model, const std::vector<double>& features);

} // namespace patentcite

#endif // PATENTCITE_LOGISTIC_HPP
