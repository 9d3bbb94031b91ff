#include "patentcite/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "patentcite/error.hpp"

namespace patentcite {

namespace {

const std::vector<std::string> kSources = {
    "news", "blogs", "policy", "twitter", "facebook", "wikipedia",
    "googleplus", "mendeley", "weibo", "f1000", "qna", "reddit"};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

long long parse_count(const std::string& text, std::size_t line_no, const std::string& field) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw DataError("line " + std::to_string(line_no) + ": invalid " + field +
                        " value '" + text + "'");
    if (value < 0)
        throw DataError("line " + std::to_string(line_no) + ": negative " + field +
                        " value " + text);
    return value;
}

std::vector<RawRecord> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        return {};
    // strip a UTF-8 BOM if present
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
        line.erase(0, 3);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (split_csv_line(line) != split_csv_line(csv_header()))
        throw DataError("unexpected CSV header\n  expected: " + csv_header() +
                        "\n  got:      " + line);

    std::vector<RawRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 16)
            throw DataError("line " + std::to_string(line_no) + ": expected 16 fields, got " +
                            std::to_string(fields.size()));
        RawRecord rec;
        rec.id = fields[0];
        if (rec.id.empty())
            throw DataError("line " + std::to_string(line_no) + ": empty id");
        if (fields[1].empty())
            throw DataError("line " + std::to_string(line_no) + ": missing year");
        {
            int year = 0;
            auto [ptr, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), year);
            if (ec != std::errc() || ptr != fields[1].data() + fields[1].size())
                throw DataError("line " + std::to_string(line_no) + ": invalid year '" +
                                fields[1] + "'");
            rec.year = year;
        }
        for (std::size_t s = 0; s < kSources.size(); ++s) {
            const std::string& text = fields[2 + s];
            if (text.empty())
                rec.mentions[kSources[s]] = std::nullopt;
            else
                rec.mentions[kSources[s]] = parse_count(text, line_no, kSources[s]);
        }
        if (!fields[14].empty())
            rec.paper_citations = parse_count(fields[14], line_no, "paper_citations");
        if (!fields[15].empty())
            rec.patent_citations = parse_count(fields[15], line_no, "patent_citations");
        records.push_back(std::move(rec));
    }
    return records;
}

std::optional<long long> json_count(const nlohmann::json& obj, const std::string& key,
                                    std::size_t line_no) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return std::nullopt;
    if (!it->is_number_integer())
        throw DataError("line " + std::to_string(line_no) + ": field '" + key +
                        "' is not an integer");
    long long value = it->get<long long>();
    if (value < 0)
        throw DataError("line " + std::to_string(line_no) + ": negative " + key + " value " +
                        std::to_string(value));
    return value;
}

std::vector<RawRecord> parse_jsonl(std::istream& in) {
    std::vector<RawRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
        }
        if (!obj.is_object())
            throw DataError("line " + std::to_string(line_no) + ": expected a JSON object");
        RawRecord rec;
        if (!obj.contains("id") || !obj["id"].is_string() || obj["id"].get<std::string>().empty())
            throw DataError("line " + std::to_string(line_no) + ": missing or empty id");
        rec.id = obj["id"].get<std::string>();
        if (!obj.contains("year") || !obj["year"].is_number_integer())
            throw DataError("line " + std::to_string(line_no) + ": missing or non-integer year");
        rec.year = obj["year"].get<int>();
        for (const auto& source : kSources) {
            auto v = json_count(obj, source, line_no);
            if (v.has_value() || obj.contains(source))
                rec.mentions[source] = v;
        }
        // sources beyond the canonical set are accepted and flow into
        // feature selection like any other count column
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            const std::string& key = it.key();
            if (key == "id" || key == "year" || key == "paper_citations" ||
                key == "patent_citations")
                continue;
            if (std::find(kSources.begin(), kSources.end(), key) != kSources.end())
                continue;
            rec.mentions[key] = json_count(obj, key, line_no);
        }
        rec.paper_citations = json_count(obj, "paper_citations", line_no);
        rec.patent_citations = json_count(obj, "patent_citations", line_no);
        records.push_back(std::move(rec));
    }
    return records;
}

std::optional<long long> mention_value(const RawRecord& rec, const std::string& source) {
    auto it = rec.mentions.find(source);
    if (it == rec.mentions.end())
        return std::nullopt;
    return it->second;
}

// Canonical sources in canonical order, then any extra sources alphabetically.
std::vector<std::string> observed_sources(const std::vector<RawRecord>& records) {
    std::vector<std::string> result = kSources;
    std::unordered_set<std::string> known(kSources.begin(), kSources.end());
    std::vector<std::string> extras;
    for (const auto& rec : records)
        for (const auto& [name, value] : rec.mentions)
            if (known.insert(name).second)
                extras.push_back(name);
    std::sort(extras.begin(), extras.end());
    result.insert(result.end(), extras.begin(), extras.end());
    return result;
}

std::string format_value(double v) {
    if (v == std::floor(v) && std::abs(v) < 9.0e15)
        return std::to_string(static_cast<long long>(v));
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

const std::vector<std::string>& canonical_sources() { return kSources; }

std::string csv_header() {
    std::string h = "id,year";
    for (const auto& s : kSources) h += "," + s;
    return h + ",paper_citations,patent_citations";
}

std::vector<RawRecord> parse_records(const std::string& path, RecordFormat format) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open input file: " + path);
    return parse_records(in, format);
}

std::vector<RawRecord> parse_records(std::istream& in, RecordFormat format) {
    return format == RecordFormat::Csv ? parse_csv(in) : parse_jsonl(in);
}

std::vector<RawRecord> filter_by_year(const std::vector<RawRecord>& records,
                                      int min_year_exclusive) {
    std::vector<RawRecord> kept;
    kept.reserve(records.size());
    for (const auto& rec : records)
        if (rec.year > min_year_exclusive)
            kept.push_back(rec);
    return kept;
}

std::pair<std::vector<RawRecord>, long long> deduplicate(const std::vector<RawRecord>& records) {
    std::vector<RawRecord> kept;
    kept.reserve(records.size());
    std::unordered_set<std::string> seen;
    long long removed = 0;
    for (const auto& rec : records) {
        if (seen.insert(rec.id).second)
            kept.push_back(rec);
        else
            ++removed;
    }
    return {std::move(kept), removed};
}

FeatureSelection select_features(const std::vector<RawRecord>& records,
                                 const CleanConfig& config) {
    if (records.empty())
        throw DataError("cannot select features from an empty record list");
    FeatureSelection sel;
    const double n = static_cast<double>(records.size());
    for (const auto& source : observed_sources(records)) {
        long long nulls = 0;
        for (const auto& rec : records)
            if (!mention_value(rec, source).has_value())
                ++nulls;
        double fraction = static_cast<double>(nulls) / n;
        if (fraction > config.sparse_null_fraction)
            sel.dropped.emplace_back(source, fraction);
        else
            sel.retained.push_back(source);
    }
    return sel;
}

int binarize_target(const std::optional<long long>& patent_citations) {
    if (!patent_citations.has_value())
        throw DataError("cannot binarize a null patent-citation count");
    if (*patent_citations < 0)
        throw DataError("negative patent-citation count " + std::to_string(*patent_citations));
    return *patent_citations > 0 ? 1 : 0;
}

std::pair<Dataset, CleanReport> clean(const std::vector<RawRecord>& records,
                                      const CleanConfig& config) {
    CleanReport report;
    report.records_read = static_cast<long long>(records.size());

    auto after_year = filter_by_year(records, config.min_year_exclusive);
    report.year_filtered = report.records_read - static_cast<long long>(after_year.size());
    if (after_year.empty())
        throw DataError("cleaning eliminated every record (year filter)");

    auto [deduped, removed] = deduplicate(after_year);
    report.duplicates_removed = removed;

    auto selection = select_features(deduped, config);
    report.dropped_features = selection.dropped;

    Dataset ds;
    ds.feature_names = selection.retained;
    const std::size_t d = ds.feature_names.size();
    for (const auto& rec : deduped) {
        // a null target always drops the record: imputing a label would
        // fabricate ground truth
        if (!rec.patent_citations.has_value()) {
            ++report.null_dropped;
            continue;
        }
        std::vector<double> row(d, 0.0);
        bool drop = false;
        for (std::size_t j = 0; j < d && !drop; ++j) {
            auto v = mention_value(rec, ds.feature_names[j]);
            if (v.has_value()) {
                if (*v < 0)
                    throw DataError("negative count for '" + ds.feature_names[j] +
                                    "' in record " + rec.id);
                row[j] = static_cast<double>(*v);
            } else if (config.null_count_policy == NullCountPolicy::DropRecord) {
                drop = true;
            }
        }
        long long paper = 0;
        if (rec.paper_citations.has_value())
            paper = *rec.paper_citations;
        else if (config.null_count_policy == NullCountPolicy::DropRecord)
            drop = true;
        if (drop) {
            ++report.null_dropped;
            continue;
        }
        int label = binarize_target(rec.patent_citations);
        ds.features.insert(ds.features.end(), row.begin(), row.end());
        ds.labels.push_back(label);
        ds.paper_citations.push_back(paper);
        ds.patent_citations.push_back(*rec.patent_citations);
        ds.years.push_back(rec.year);
        ds.ids.push_back(rec.id);
        if (label == 1)
            ++report.positives;
        else
            ++report.negatives;
    }
    if (ds.rows() == 0)
        throw DataError("cleaning eliminated every record (null policy)");
    return {std::move(ds), std::move(report)};
}

std::string CleanReport::to_text() const {
    std::ostringstream out;
    out << "records read:       " << records_read << "\n"
        << "year filtered:      " << year_filtered << "\n"
        << "duplicates removed: " << duplicates_removed << "\n"
        << "null-dropped:       " << null_dropped << "\n";
    out << "dropped features:   ";
    if (dropped_features.empty()) {
        out << "none";
    } else {
        for (std::size_t i = 0; i < dropped_features.size(); ++i) {
            if (i) out << ", ";
            char frac[16];
            std::snprintf(frac, sizeof(frac), "%.2f", dropped_features[i].second);
            out << dropped_features[i].first << " (null fraction " << frac << ")";
        }
    }
    out << "\n"
        << "rows kept:          " << (positives + negatives) << " (" << positives
        << " positive / " << negatives << " negative)\n";
    return out.str();
}

std::string CleanReport::to_json() const {
    nlohmann::json j;
    j["records_read"] = records_read;
    j["duplicates_removed"] = duplicates_removed;
    j["year_filtered"] = year_filtered;
    j["null_dropped"] = null_dropped;
    j["dropped_features"] = nlohmann::json::array();
    for (const auto& [source, fraction] : dropped_features)
        j["dropped_features"].push_back({{"source", source}, {"null_fraction", fraction}});
    j["positives"] = positives;
    j["negatives"] = negatives;
    return j.dump(2);
}

void write_records_csv(const std::vector<RawRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot open output file: " + path);
    out << csv_header() << "\n";
    for (const auto& rec : records) {
        out << rec.id << ',' << rec.year;
        for (const auto& source : kSources) {
            out << ',';
            auto v = mention_value(rec, source);
            if (v.has_value()) out << *v;
        }
        out << ',';
        if (rec.paper_citations.has_value()) out << *rec.paper_citations;
        out << ',';
        if (rec.patent_citations.has_value()) out << *rec.patent_citations;
        out << "\n";
    }
    if (!out)
        throw DataError("failed writing " + path);
}

void write_dataset_csv(const Dataset& dataset, const std::string& path) {
    for (const auto& name : dataset.feature_names)
        if (std::find(kSources.begin(), kSources.end(), name) == kSources.end())
            throw DataError("feature '" + name +
                            "' is outside the canonical column set; CSV export would lose it");
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot open output file: " + path);
    out << csv_header() << "\n";
    for (std::size_t r = 0; r < dataset.rows(); ++r) {
        out << dataset.ids[r] << ',' << dataset.years[r];
        for (const auto& source : kSources) {
            out << ',';
            auto it = std::find(dataset.feature_names.begin(), dataset.feature_names.end(), source);
            if (it != dataset.feature_names.end()) {
                std::size_t j = static_cast<std::size_t>(it - dataset.feature_names.begin());
                out << format_value(dataset.at(r, j));
            }
        }
        out << ',' << dataset.paper_citations[r] << ',' << dataset.patent_citations[r] << "\n";
    }
    if (!out)
        throw DataError("failed writing " + path);
}

} // namespace patentcite
