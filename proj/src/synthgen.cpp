#include "patentcite/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "patentcite/error.hpp"
#include "patentcite/rng.hpp"

namespace patentcite {

namespace {

// Paper-citation counts are floor(exp(N(mu, sigma^2))); with these constants
// the median is ~12 citations and roughly 12% of records clear 100.
constexpr double kLogMu = 2.5;
constexpr double kLogSigma = 1.8;
constexpr long long kTailThreshold = 100;

// Channels outside base_means: mostly null, tiny counts otherwise, no class
// signal. They exist so cleaning has something to drop.
constexpr double kSparseNullRate = 0.9;
constexpr double kSparseMean = 0.2;

// Extra patent citations on top of the guaranteed one for positives.
constexpr double kPatentExtraMean = 2.0;

// P(count > kTailThreshold) under the log-normal above.
double tail_probability() {
    const double z = (std::log(static_cast<double>(kTailThreshold + 1)) - kLogMu) / kLogSigma;
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

// Positive rate for non-tail records, chosen so the marginal positive rate
// equals positive_fraction while the tail is positive at citation_link.
double non_tail_positive_rate(const SynthConfig& config) {
    const double q = tail_probability();
    return (config.positive_fraction - q * config.citation_link) / (1.0 - q);
}

void validate(const SynthConfig& config) {
    if (config.n_records < 10)
        throw DataError("n_records must be at least 10");
    if (!(config.positive_fraction > 0.0 && config.positive_fraction < 1.0))
        throw DataError("positive_fraction must lie strictly between 0 and 1");
    if (config.signal_strength < 0.0)
        throw DataError("signal_strength must be non-negative");
    if (!(config.citation_link >= 0.0 && config.citation_link <= 1.0))
        throw DataError("citation_link must lie in [0, 1]");
    if (config.base_means.empty())
        throw DataError("base_means must not be empty");

    const auto& canonical = canonical_sources();
    std::set<std::string> seen;
    for (const auto& [source, mean] : config.base_means) {
        if (std::find(canonical.begin(), canonical.end(), source) == canonical.end())
            throw DataError("unknown source in base_means: " + source);
        if (!seen.insert(source).second)
            throw DataError("duplicate source in base_means: " + source);
        if (!(mean > 0.0))
            throw DataError("base mean for " + source + " must be positive");
    }

    const double r = non_tail_positive_rate(config);
    if (r < 0.0 || r > 1.0)
        throw DataError("positive_fraction is unreachable: citation_link puts the "
                        "non-tail positive rate outside [0, 1]");
}

} // namespace

std::vector<std::pair<std::string, double>> SynthConfig::default_base_means() {
    return {{"news", 1.5},      {"blogs", 1.0},     {"policy", 0.4},
            {"twitter", 12.0},  {"facebook", 2.0},  {"wikipedia", 0.6},
            {"googleplus", 1.2}, {"mendeley", 25.0}};
}

std::vector<RawRecord> generate_records(const SynthConfig& config) {
    validate(config);

    const double non_tail_rate = non_tail_positive_rate(config);
    std::vector<std::string> sparse;
    for (const auto& source : canonical_sources()) {
        bool modeled = std::any_of(config.base_means.begin(), config.base_means.end(),
                                   [&](const auto& bm) { return bm.first == source; });
        if (!modeled) sparse.push_back(source);
    }

    Rng rng(config.seed);
    std::vector<RawRecord> records;
    records.reserve(config.n_records);
    for (std::size_t i = 0; i < config.n_records; ++i) {
        RawRecord rec;
        char id[24];
        std::snprintf(id, sizeof(id), "syn-%06zu", i + 1);
        rec.id = id;
        rec.year = 2011 + static_cast<int>(rng.bounded(8));

        const double cites = std::floor(std::exp(kLogMu + kLogSigma * rng.normal()));
        rec.paper_citations = static_cast<long long>(std::min(cites, 1e15));

        const bool tail = *rec.paper_citations > kTailThreshold;
        const int label = rng.uniform01() < (tail ? config.citation_link : non_tail_rate) ? 1 : 0;

        for (const auto& [source, mean] : config.base_means)
            rec.mentions[source] =
                rng.poisson(mean * (1.0 + config.signal_strength * static_cast<double>(label)));
        for (const auto& source : sparse) {
            if (rng.uniform01() < kSparseNullRate)
                rec.mentions[source] = std::nullopt;
            else
                rec.mentions[source] = rng.poisson(kSparseMean);
        }

        rec.patent_citations = label == 1 ? 1 + rng.poisson(kPatentExtraMean) : 0;
        records.push_back(std::move(rec));
    }
    return records;
}

Dataset generate(const SynthConfig& config) {
    return clean(generate_records(config), CleanConfig{}).first;
}

} // namespace patentcite
