#ifndef PATENTCITE_ANALYTICS_HPP
#define PATENTCITE_ANALYTICS_HPP

#include <string>
#include <utility>
#include <vector>

#include "patentcite/dataset.hpp"

namespace patentcite {

struct PearsonResult {
    double value = 0.0;        // 0 when either input is constant
    bool constant_input = false;
};

// Symmetric Pearson matrix over the dataset's numeric columns: the retained
// features, paper_citations, and the raw patent_citations count.
struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<double> values;  // row-major labels.size() x labels.size()
    std::vector<bool> constant_columns;

    std::size_t size() const { return labels.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }
};

struct ThresholdReport {
    long long threshold = 0;
    long long above_threshold = 0;     // rows with paper_citations > threshold
    long long above_and_patented = 0;  // of those, rows with label 1
    double fraction = 0.0;             // above_and_patented / above_threshold (0 when empty)

    std::string to_text() const;
};

enum class CorrScale { Raw, Log1p };

// Pearson product-moment coefficient, computed from exact sufficient sums so
// the result does not depend on row order for integer-valued columns.
// Constant input yields value 0 with the flag set instead of NaN.
PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y);

CorrelationMatrix correlation_matrix(const Dataset& dataset, CorrScale scale = CorrScale::Raw);

// (positives, negatives)
std::pair<long long, long long> class_balance(const Dataset& dataset);

// Strict inequality: a row counts when paper_citations > threshold.
ThresholdReport citation_threshold_analysis(const Dataset& dataset, long long threshold = 100);

// Long-format CSV, one `row_label,col_label,value` line per matrix entry in
// label order, values with six decimal places. No header line.
void emit_heatmap_data(const CorrelationMatrix& matrix, const std::string& path);

// Fixed-width text rendering for terminal output.
std::string format_correlation_matrix(const CorrelationMatrix& matrix);

} // namespace patentcite

#endif // PATENTCITE_ANALYTICS_HPP
