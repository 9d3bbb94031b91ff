#ifndef PATENTCITE_SYNTHGEN_HPP
#define PATENTCITE_SYNTHGEN_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "patentcite/dataset.hpp"

namespace patentcite {

// Generator for altmetric-like corpora with a planted signal. Labels land at
// positive_fraction on average; feature counts are Poisson with mean
// base_mean * (1 + signal_strength * label); paper citation counts are heavy
// tailed and their upper tail (> 100) is positive with probability
// citation_link. Everything is a pure function of the seed.
struct SynthConfig {
    std::size_t n_records = 5000;
    double positive_fraction = 0.475;
    double signal_strength = 1.0;
    std::vector<std::pair<std::string, double>> base_means = default_base_means();
    double citation_link = 0.8;
    std::uint64_t seed = 42;

    static std::vector<std::pair<std::string, double>> default_base_means();
};

// Pre-cleaning form: all twelve canonical sources populated, the four
// channels outside base_means left null most of the time so that cleaning
// drops them, and years always inside the default keep range.
std::vector<RawRecord> generate_records(const SynthConfig& config);

// generate_records piped through the default cleaning config.
Dataset generate(const SynthConfig& config);

} // namespace patentcite

#endif // PATENTCITE_SYNTHGEN_HPP
