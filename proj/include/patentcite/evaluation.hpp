#ifndef PATENTCITE_EVALUATION_HPP
#define PATENTCITE_EVALUATION_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "patentcite/dataset.hpp"
#include "patentcite/model.hpp"

namespace patentcite {

// Positive class is 1 (patent-cited).
struct ConfusionMatrix {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    long long tn = 0;

    long long total() const { return tp + fp + fn + tn; }
};

struct EvalMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Comparison table in the fixed LR, DT, NB, RF column order.
struct ReportTable {
    std::array<std::string, 4> model_names = {"LR", "DT", "NB", "RF"};
    std::array<EvalMetrics, 4> metrics;
    double test_fraction = 0.2;
    std::uint64_t seed = 0;
    std::size_t dataset_rows = 0;
    std::size_t dataset_features = 0;
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
};

enum class ReportStyle { Text, Csv };

struct ModelConfigs {
    LogisticConfig lr;
    TreeConfig dt;
    NBConfig nb;
    ForestConfig rf;
};

// Seeded per-class shuffle, then round(class_count * test_fraction) rows of
// each class go to test. Row order within each half follows the original
// dataset order.
std::pair<Dataset, Dataset> stratified_split(const Dataset& dataset, double test_fraction,
                                             std::uint64_t seed);

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred);

// accuracy, precision, recall, f1; zero-denominator cases yield 0 rather
// than NaN.
EvalMetrics metrics(const ConfusionMatrix& cm);

// Schema-checked batch prediction over every row of `data`.
std::vector<int> predict_all(const TrainedModel& model, const Dataset& data,
                             double threshold = 0.5);

EvalMetrics evaluate_model(const TrainedModel& model, const Dataset& test,
                           double threshold = 0.5);

// One shared stratified split, four fits, four evaluations. The split uses
// `seed` directly (so stratified_split reproduces it) and the forest's
// master seed is derived from it; the whole run is a pure function of its
// arguments.
ReportTable benchmark_all(const Dataset& dataset, const ModelConfigs& configs,
                          double test_fraction, std::uint64_t seed);

// Accuracy renders as a percent with one decimal; the other rows use the
// same 0-100 scale without the percent sign.
std::string format_report(const ReportTable& table, ReportStyle style);

} // namespace patentcite

#endif // PATENTCITE_EVALUATION_HPP
