#include "patentcite/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "patentcite/error.hpp"

namespace patentcite {

PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw DataError("pearson: column lengths differ (" + std::to_string(x.size()) +
                        " vs " + std::to_string(y.size()) + ")");
    if (x.size() < 2)
        throw DataError("pearson: need at least 2 values");

    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    const double var_x = n * sxx - sx * sx;
    const double var_y = n * syy - sy * sy;
    if (var_x <= 0.0 || var_y <= 0.0)
        return {0.0, true};
    double r = (n * sxy - sx * sy) / std::sqrt(var_x * var_y);
    r = std::clamp(r, -1.0, 1.0);
    return {r, false};
}

namespace {

std::vector<std::vector<double>> numeric_columns(const Dataset& dataset, CorrScale scale) {
    const std::size_t n = dataset.rows();
    const std::size_t d = dataset.cols();
    std::vector<std::vector<double>> cols(d + 2, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            cols[j][i] = dataset.at(i, j);
        cols[d][i] = static_cast<double>(dataset.paper_citations[i]);
        cols[d + 1][i] = static_cast<double>(dataset.patent_citations[i]);
    }
    if (scale == CorrScale::Log1p)
        for (auto& col : cols)
            for (auto& v : col)
                v = std::log1p(v);
    return cols;
}

} // namespace

CorrelationMatrix correlation_matrix(const Dataset& dataset, CorrScale scale) {
    if (dataset.rows() < 2)
        throw DataError("correlation matrix needs at least 2 rows");

    CorrelationMatrix m;
    m.labels = dataset.feature_names;
    m.labels.push_back("paper_citations");
    m.labels.push_back("patent_citations");

    auto cols = numeric_columns(dataset, scale);
    const std::size_t k = m.labels.size();
    m.values.assign(k * k, 0.0);
    m.constant_columns.assign(k, false);
    for (std::size_t i = 0; i < k; ++i)
        m.constant_columns[i] = pearson(cols[i], cols[i]).constant_input;
    for (std::size_t i = 0; i < k; ++i) {
        m.values[i * k + i] = m.constant_columns[i] ? 0.0 : 1.0;
        for (std::size_t j = i + 1; j < k; ++j) {
            double value = pearson(cols[i], cols[j]).value;
            m.values[i * k + j] = value;
            m.values[j * k + i] = value;
        }
    }
    return m;
}

std::pair<long long, long long> class_balance(const Dataset& dataset) {
    long long positives = 0;
    for (int label : dataset.labels)
        if (label == 1)
            ++positives;
    return {positives, static_cast<long long>(dataset.labels.size()) - positives};
}

ThresholdReport citation_threshold_analysis(const Dataset& dataset, long long threshold) {
    if (threshold < 0)
        throw DataError("citation threshold must be non-negative");
    ThresholdReport report;
    report.threshold = threshold;
    for (std::size_t i = 0; i < dataset.rows(); ++i) {
        if (dataset.paper_citations[i] > threshold) {
            ++report.above_threshold;
            if (dataset.labels[i] == 1)
                ++report.above_and_patented;
        }
    }
    report.fraction = report.above_threshold == 0
                          ? 0.0
                          : static_cast<double>(report.above_and_patented) /
                                static_cast<double>(report.above_threshold);
    return report;
}

std::string ThresholdReport::to_text() const {
    char frac[16];
    std::snprintf(frac, sizeof(frac), "%.3f", fraction);
    std::ostringstream out;
    out << "rows with paper_citations > " << threshold << ": " << above_threshold
        << "; patent-cited among them: " << above_and_patented << " (fraction " << frac << ")";
    return out.str();
}

void emit_heatmap_data(const CorrelationMatrix& matrix, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot open output file: " + path);
    char value[32];
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            std::snprintf(value, sizeof(value), "%.6f", matrix.at(i, j));
            out << matrix.labels[i] << ',' << matrix.labels[j] << ',' << value << "\n";
        }
    }
    if (!out)
        throw DataError("failed writing " + path);
}

std::string format_correlation_matrix(const CorrelationMatrix& matrix) {
    std::size_t width = 8;
    for (const auto& label : matrix.labels)
        width = std::max(width, label.size() + 1);
    std::ostringstream out;
    out << std::string(width, ' ');
    for (const auto& label : matrix.labels) {
        out << std::string(width > label.size() ? width - label.size() : 1, ' ') << label;
    }
    out << "\n";
    char cell[32];
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        const auto& label = matrix.labels[i];
        out << label << std::string(width > label.size() ? width - label.size() : 1, ' ');
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            std::snprintf(cell, sizeof(cell), "%*.3f", static_cast<int>(width), matrix.at(i, j));
            out << cell;
        }
        if (matrix.constant_columns[i])
            out << "  (constant)";
        out << "\n";
    }
    return out.str();
}

} // namespace patentcite
