#pragma once

#include <cmath>
#include <cstdint>

namespace vqrsim {

// Counter-based deterministic generator: an independent stream per
// (seed, kind, index) triple, so generation order and scheduling cannot
// affect the output. splitmix64 underneath.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t kind, std::uint64_t index) {
        state_ = seed;
        state_ = mix(state_ + kGamma * (kind + 1));
        state_ = mix(state_ + kGamma * (index + 1));
    }

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    // [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // inclusive bounds
    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() %
                                     static_cast<std::uint64_t>(hi - lo + 1));
    }

    double next_normal(double mu, double sigma) {
        double u1 = 1.0 - next_unit();  // (0, 1]
        double u2 = next_unit();
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
        return mu + sigma * z;
    }

    double next_lognormal(double mu, double sigma) { return std::exp(next_normal(mu, sigma)); }

    int next_poisson(double mean) {
        int total = 0;
        // Knuth's product method is exact; chunking keeps exp(-lambda) in
        // normal double range for large means.
        while (mean > 20.0) {
            total += poisson_knuth(20.0);
            mean -= 20.0;
        }
        if (mean > 0.0)
            total += poisson_knuth(mean);
        return total;
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    int poisson_knuth(double lambda) {
        double limit = std::exp(-lambda);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_unit();
        } while (p > limit);
        return k - 1;
    }

    std::uint64_t state_;
};

}  // namespace vqrsim
