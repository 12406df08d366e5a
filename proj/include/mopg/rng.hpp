#ifndef MOPG_RNG_HPP
#define MOPG_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mopg {

// Seeded random stream with hand-rolled real distributions.
//
// mt19937_64 output is pinned by the standard, but std::uniform_real_distribution
// and std::normal_distribution are implementation-defined. Runs and frozen test
// values must reproduce across toolchains, so the real-valued draws are derived
// from raw 64-bit output here.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n); n must be >= 1. 53-bit scaling, bias is
    // negligible for the small n used here (arities, bins).
    int uniform_int(int n) {
        int v = static_cast<int>(uniform() * static_cast<double>(n));
        return v >= n ? n - 1 : v;
    }

    // Standard normal via Box-Muller; one spare value cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Derives an independent, reproducible stream from a root seed and a salt
// (one per run, per M-DF target, per calibration pass, ...).
inline RngStream make_stream(std::uint64_t seed, std::uint64_t salt = 0) {
    return RngStream(seed ^ (salt * 0x9e3779b97f4a7c15ull + (salt ? 0x632be59bd9b4e019ull : 0)));
}

} // namespace mopg

#endif
