#ifndef PATENTCITE_DATASET_HPP
#define PATENTCITE_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace patentcite {

// One altmetric-style article record as read from disk. Absent or empty
// fields are null counts; present counts are non-negative.
struct RawRecord {
    std::string id;
    int year = 0;
    std::map<std::string, std::optional<long long>> mentions;
    std::optional<long long> paper_citations;
    std::optional<long long> patent_citations;
};

enum class NullCountPolicy { TreatAsZero, DropRecord };

struct CleanConfig {
    int min_year_exclusive = 2010;      // keep records with year > this
    double sparse_null_fraction = 0.5;  // drop a source when its null fraction exceeds this
    NullCountPolicy null_count_policy = NullCountPolicy::TreatAsZero;
};

// Modeling-ready matrix. Features hold raw (untransformed) counts; the raw
// patent count and publication year survive alongside the binary label so
// analytics and re-export keep working after cleaning.
struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<double> features;  // row-major, rows() x feature_names.size()
    std::vector<int> labels;       // 0/1, 1 = cited by at least one patent
    std::vector<long long> paper_citations;
    std::vector<long long> patent_citations;
    std::vector<int> years;
    std::vector<std::string> ids;

    std::size_t rows() const { return labels.size(); }
    std::size_t cols() const { return feature_names.size(); }
    double at(std::size_t row, std::size_t col) const {
        return features[row * feature_names.size() + col];
    }
    // One row as a contiguous feature vector.
    std::vector<double> row(std::size_t r) const {
        return std::vector<double>(features.begin() + static_cast<long>(r * cols()),
                                   features.begin() + static_cast<long>((r + 1) * cols()));
    }
};

struct CleanReport {
    long long records_read = 0;
    long long duplicates_removed = 0;
    long long year_filtered = 0;
    long long null_dropped = 0;
    std::vector<std::pair<std::string, double>> dropped_features;  // (source, null fraction)
    long long positives = 0;
    long long negatives = 0;

    std::string to_text() const;
    std::string to_json() const;
};

enum class RecordFormat { Csv, Jsonl };

// The canonical column order: the eight modeled sources first, then the four
// sparse ones that cleaning is expected to drop.
const std::vector<std::string>& canonical_sources();

// CSV header shared by every corpus file this tool reads or writes.
std::string csv_header();

std::vector<RawRecord> parse_records(const std::string& path, RecordFormat format);
std::vector<RawRecord> parse_records(std::istream& in, RecordFormat format);

std::vector<RawRecord> filter_by_year(const std::vector<RawRecord>& records,
                                      int min_year_exclusive);

// Keep-first by id; second member counts removals.
std::pair<std::vector<RawRecord>, long long> deduplicate(const std::vector<RawRecord>& records);

struct FeatureSelection {
    std::vector<std::string> retained;
    std::vector<std::pair<std::string, double>> dropped;  // (source, null fraction)
};

// A source is dropped iff its null fraction over all records exceeds
// config.sparse_null_fraction. Retained names keep canonical order.
FeatureSelection select_features(const std::vector<RawRecord>& records,
                                 const CleanConfig& config);

// 1 iff the count is present and positive; 0 for a present zero. A null
// target throws: callers drop such records instead of fabricating a label.
int binarize_target(const std::optional<long long>& patent_citations);

// Full cleaning pipeline: year filter, dedup, sparse-feature selection,
// per-record null policy, target binarization.
std::pair<Dataset, CleanReport> clean(const std::vector<RawRecord>& records,
                                      const CleanConfig& config);

// Corpus writers; both emit the canonical CSV schema. Dataset export leaves
// dropped source columns empty, so re-ingesting a cleaned file is a no-op.
void write_records_csv(const std::vector<RawRecord>& records, const std::string& path);
void write_dataset_csv(const Dataset& dataset, const std::string& path);

} // namespace patentcite

#endif // PATENTCITE_DATASET_HPP
