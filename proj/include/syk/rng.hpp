#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace syk {

// splitmix64 step (Vigna); used only for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Splitting rule for per-sample streams: the stream for sample r under a
// master seed is splitmix64(splitmix64(master) ^ (r + 1)).  Independent of
// scheduling, so parallel sample generation reproduces serial output.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ (index + 1));
}

// Deterministic Gaussian stream: mt19937_64 (bit-exact per the standard)
// plus an explicit Box-Muller transform, avoiding the
// implementation-defined std::normal_distribution.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {  // in (0, 1]
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
    }

    double standard_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double stddev) { return stddev * standard_normal(); }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace syk
