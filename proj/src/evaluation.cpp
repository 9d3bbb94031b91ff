#include "patentcite/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "patentcite/error.hpp"
#include "patentcite/rng.hpp"

namespace patentcite {

namespace {

Dataset take_rows(const Dataset& dataset, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.feature_names = dataset.feature_names;
    const std::size_t d = dataset.cols();
    out.features.reserve(rows.size() * d);
    for (std::size_t r : rows) {
        for (std::size_t j = 0; j < d; ++j)
            out.features.push_back(dataset.at(r, j));
        out.labels.push_back(dataset.labels[r]);
        out.paper_citations.push_back(dataset.paper_citations[r]);
        out.patent_citations.push_back(dataset.patent_citations[r]);
        out.years.push_back(dataset.years[r]);
        out.ids.push_back(dataset.ids[r]);
    }
    return out;
}

std::string fmt_pct(double v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.1f%%", v * 100.0);
    return buf;
}

std::string fmt_scale(double v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.1f", v * 100.0);
    return buf;
}

} // namespace

std::pair<Dataset, Dataset> stratified_split(const Dataset& dataset, double test_fraction,
                                             std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw DataError("test fraction must lie strictly between 0 and 1");

    std::vector<std::size_t> class_rows[2];
    for (std::size_t i = 0; i < dataset.rows(); ++i)
        class_rows[dataset.labels[i] == 1 ? 1 : 0].push_back(i);

    Rng rng(seed);
    std::vector<std::size_t> test_rows, train_rows;
    for (int c = 0; c < 2; ++c) {
        auto& rows = class_rows[c];
        if (rows.size() < 2)
            throw DataError("class " + std::to_string(c) + " has fewer than 2 rows");
        const long long k = std::lround(static_cast<double>(rows.size()) * test_fraction);
        if (k < 1 || k >= static_cast<long long>(rows.size()))
            throw DataError("class " + std::to_string(c) +
                            " is too small to put at least one row on each side of the split");
        rng.shuffle(rows);
        test_rows.insert(test_rows.end(), rows.begin(), rows.begin() + k);
        train_rows.insert(train_rows.end(), rows.begin() + k, rows.end());
    }
    std::sort(test_rows.begin(), test_rows.end());
    std::sort(train_rows.begin(), train_rows.end());
    return {take_rows(dataset, train_rows), take_rows(dataset, test_rows)};
}

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size())
        throw DataError("label vectors differ in length (" + std::to_string(y_true.size()) +
                        " vs " + std::to_string(y_pred.size()) + ")");
    if (y_true.empty())
        throw DataError("cannot build a confusion matrix from zero examples");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i];
        const int p = y_pred[i];
        if ((t != 0 && t != 1) || (p != 0 && p != 1))
            throw DataError("labels must be 0 or 1 (index " + std::to_string(i) + ")");
        if (t == 1)
            p == 1 ? ++cm.tp : ++cm.fn;
        else
            p == 1 ? ++cm.fp : ++cm.tn;
    }
    return cm;
}

EvalMetrics metrics(const ConfusionMatrix& cm) {
    const long long total = cm.total();
    if (total <= 0)
        throw DataError("empty confusion matrix");
    EvalMetrics m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
    m.precision = (cm.tp + cm.fp) > 0
                      ? static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp)
                      : 0.0;
    m.recall = (cm.tp + cm.fn) > 0
                   ? static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn)
                   : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

std::vector<int> predict_all(const TrainedModel& model, const Dataset& data, double threshold) {
    if (data.feature_names != model.feature_names) {
        auto join = [](const std::vector<std::string>& names) {
            std::string out;
            for (std::size_t i = 0; i < names.size(); ++i)
                out += (i ? ", " : "") + names[i];
            return out;
        };
        throw DataError("feature schema mismatch: model expects [" + join(model.feature_names) +
                        "] but data provides [" + join(data.feature_names) + "]");
    }
    std::vector<int> predictions;
    predictions.reserve(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i)
        predictions.push_back(predict(model, data.row(i), threshold));
    return predictions;
}

EvalMetrics evaluate_model(const TrainedModel& model, const Dataset& test, double threshold) {
    if (test.rows() == 0)
        throw DataError("cannot evaluate on an empty test set");
    return metrics(confusion(test.labels, predict_all(model, test, threshold)));
}

ReportTable benchmark_all(const Dataset& dataset, const ModelConfigs& configs,
                          double test_fraction, std::uint64_t seed) {
    auto [train, test] = stratified_split(dataset, test_fraction, seed);

    ForestConfig rf = configs.rf;
    rf.seed = derive_seed(seed, 1);

    std::array<TrainedModel, 4> models;
    models[0] = {train.feature_names, fit_logistic(train, configs.lr)};
    models[1] = {train.feature_names, fit_tree(train, configs.dt)};
    models[2] = {train.feature_names, fit_naive_bayes(train, configs.nb)};
    models[3] = {train.feature_names, fit_forest(train, rf)};

    ReportTable table;
    table.test_fraction = test_fraction;
    table.seed = seed;
    table.dataset_rows = dataset.rows();
    table.dataset_features = dataset.cols();
    table.train_rows = train.rows();
    table.test_rows = test.rows();
    for (std::size_t i = 0; i < models.size(); ++i)
        table.metrics[i] = evaluate_model(models[i], test);
    return table;
}

std::string format_report(const ReportTable& table, ReportStyle style) {
    const std::array<std::string, 4> row_names = {"Accuracy", "F1-score", "Precision", "Recall"};
    auto cell = [&](std::size_t row, std::size_t col) {
        const EvalMetrics& m = table.metrics[col];
        const double value = row == 0 ? m.accuracy
                             : row == 1 ? m.f1
                             : row == 2 ? m.precision
                                        : m.recall;
        return row == 0 ? fmt_pct(value) : fmt_scale(value);
    };

    std::ostringstream out;
    char split_desc[128];
    std::snprintf(split_desc, sizeof(split_desc),
                  "%.0f/%.0f stratified split, seed %llu; %zu rows, %zu features (train %zu / test %zu)",
                  (1.0 - table.test_fraction) * 100.0, table.test_fraction * 100.0,
                  static_cast<unsigned long long>(table.seed), table.dataset_rows,
                  table.dataset_features, table.train_rows, table.test_rows);

    if (style == ReportStyle::Csv) {
        out << "metric";
        for (const auto& name : table.model_names)
            out << ',' << name;
        out << "\n";
        for (std::size_t r = 0; r < row_names.size(); ++r) {
            out << row_names[r];
            for (std::size_t c = 0; c < table.model_names.size(); ++c)
                out << ',' << cell(r, c);
            out << "\n";
        }
        out << "# " << split_desc << "\n";
        return out.str();
    }

    out << "positive-class (label 1) metrics, decision threshold 0.5\n"
        << split_desc << "\n\n";
    out << "         ";
    for (const auto& name : table.model_names) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%8s", name.c_str());
        out << buf;
    }
    out << "\n";
    for (std::size_t r = 0; r < row_names.size(); ++r) {
        char label[16];
        std::snprintf(label, sizeof(label), "%-9s", row_names[r].c_str());
        out << label;
        for (std::size_t c = 0; c < table.model_names.size(); ++c) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%8s", cell(r, c).c_str());
            out << buf;
        }
        out << "\n";
    }
    out << "\nzero-denominator metrics are reported as 0\n";
    return out.str();
}

} // namespace patentcite
