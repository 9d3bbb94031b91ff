#ifndef PATENTCITE_RNG_HPP
#define PATENTCITE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace patentcite {

// All sampling is built on std::mt19937_64 raw output plus the helpers below.
// The standard pins the mt19937_64 bit stream, while std::*_distribution and
// std::shuffle are implementation-defined, so every derived draw is hand
// rolled here. Seeded runs are therefore reproducible across toolchains.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream member i of the splitmix sequence started at `master`. Used to give
// each forest tree its own seed; computable in O(1) so trees could be built
// in parallel without changing the result.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + index * 0x9e3779b97f4a7c15ULL);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Modulo bias is negligible for the sizes
    // used here and keeps the draw count fixed at one word.
    std::uint64_t bounded(std::uint64_t n) { return engine_() % n; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // First m entries of a random permutation of {0, ..., n-1}.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t m) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        for (std::size_t i = 0; i < m && i + 1 < n; ++i) {
            std::size_t j = i + static_cast<std::size_t>(bounded(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(m);
        return idx;
    }

    // Knuth's product-of-uniforms method; fine for the mean range used by
    // the generator (lambda stays well under a few hundred).
    long long poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        const double limit = std::exp(-lambda);
        double product = uniform01();
        long long k = 0;
        while (product > limit) {
            product *= uniform01();
            ++k;
        }
        return k;
    }

    // Standard normal via Box-Muller (one value per call, no caching, so the
    // draw count is predictable).
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace patentcite

#endif // PATENTCITE_RNG_HPP
