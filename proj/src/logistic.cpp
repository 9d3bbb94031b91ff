#include "patentcite/logistic.hpp"

#include <cmath>

#include "patentcite/error.hpp"

namespace patentcite {

double sigmoid(double z) {
    double p = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
    if (p < 1e-15) return 1e-15;
    if (p > 1.0 - 1e-15) return 1.0 - 1e-15;
    return p;
}

double apply_transform(Transform t, double value) {
    return t == Transform::Log1p ? std::log1p(value) : value;
}

LossAndGradient logistic_loss_and_gradient(const std::vector<double>& weights, double bias,
                                           const Dataset& dataset, double l2) {
    const std::size_t n = dataset.rows();
    const std::size_t d = dataset.cols();
    if (weights.size() != d)
        throw DataError("weight vector length " + std::to_string(weights.size()) +
                        " does not match feature count " + std::to_string(d));
    if (n == 0)
        throw DataError("cannot evaluate loss on an empty dataset");

    LossAndGradient out;
    out.grad_weights.assign(d, 0.0);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = bias;
        for (std::size_t j = 0; j < d; ++j)
            z += weights[j] * dataset.at(i, j);
        const double p = sigmoid(z);
        const double y = static_cast<double>(dataset.labels[i]);
        loss += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
        const double residual = p - y;
        for (std::size_t j = 0; j < d; ++j)
            out.grad_weights[j] += residual * dataset.at(i, j);
        out.grad_bias += residual;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    loss *= inv_n;
    out.grad_bias *= inv_n;
    for (std::size_t j = 0; j < d; ++j) {
        out.grad_weights[j] = out.grad_weights[j] * inv_n + l2 * weights[j];
        loss += 0.5 * l2 * weights[j] * weights[j];
    }
    out.loss = loss;
    return out;
}

namespace {

Dataset transformed_copy(const Dataset& dataset, Transform t) {
    Dataset copy = dataset;
    if (t == Transform::Log1p)
        for (auto& v : copy.features)
            v = std::log1p(v);
    return copy;
}

} // namespace

LogisticModel fit_logistic(const Dataset& train, const LogisticConfig& config,
                           std::vector<double>* loss_trace) {
    auto [positives, negatives] = [&] {
        long long pos = 0;
        for (int label : train.labels) pos += label;
        return std::pair<long long, long long>(pos, static_cast<long long>(train.rows()) - pos);
    }();
    if (positives == 0 || negatives == 0)
        throw DataError("logistic regression needs at least one row of each class");

    const Dataset data = transformed_copy(train, config.transform);
    LogisticModel model;
    model.weights.assign(data.cols(), 0.0);
    model.bias = 0.0;
    model.transform = config.transform;
    model.config = config;

    auto lg = logistic_loss_and_gradient(model.weights, model.bias, data, config.l2);
    if (loss_trace)
        loss_trace->push_back(lg.loss);
    for (int iter = 0; iter < config.max_iters; ++iter) {
        for (std::size_t j = 0; j < model.weights.size(); ++j)
            model.weights[j] -= config.learning_rate * lg.grad_weights[j];
        model.bias -= config.learning_rate * lg.grad_bias;
        auto next = logistic_loss_and_gradient(model.weights, model.bias, data, config.l2);
        if (loss_trace)
            loss_trace->push_back(next.loss);
        if (lg.loss - next.loss < config.tolerance)
            break;
        lg = std::move(next);
    }
    return model;
}

double logistic_proba(const LogisticModel& model, const std::vector<double>& features) {
    if (features.size() != model.weights.size())
        throw DataError("feature vector length " + std::to_string(features.size()) +
                        " does not match model arity " + std::to_string(model.weights.size()));
    double z = model.bias;
    for (std::size_t j = 0; j < features.size(); ++j)
        z += model.weights[j] * apply_transform(model.transform, features[j]);
    return sigmoid(z);
}

} // namespace patentcite
