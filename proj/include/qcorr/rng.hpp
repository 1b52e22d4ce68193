#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace qcorr {

// Counter-based generator: the stream is a pure function of (seed, index),
// so sweeps are reproducible regardless of evaluation order or worker
// count. splitmix64 finalizer over an additive counter.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t index)
        : state_(mix(mix(seed + kGamma) ^ mix(index + 0x6A09E667F3BCC909ULL))) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Standard normal via Box-Muller; second value cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

    // Uniform direction on the unit sphere.
    std::array<double, 3> unit_vector() {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, 2.0 * std::numbers::pi);
        const double s = std::sqrt(std::max(1.0 - z * z, 0.0));
        return {s * std::cos(phi), s * std::sin(phi), z};
    }

    // Uniform point on the probability simplex (normalized exponentials).
    std::vector<double> simplex(std::size_t n) {
        std::vector<double> w(n);
        double sum = 0.0;
        for (double& x : w) {
            x = -std::log(1.0 - uniform());
            sum += x;
        }
        for (double& x : w) x /= sum;
        return w;
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

} // namespace qcorr
