#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "qcorr/errors.hpp"
#include "qcorr/prob.hpp"

namespace qcorr {

namespace detail {

// Entropy of (1+C)/2, (1-C)/2 in nats.
inline double binary_entropy_nats(double c) {
    const double p[2] = {(1.0 + c) / 2.0, (1.0 - c) / 2.0};
    return entropy_nats(p, 2);
}

inline double h1_nats(double c) {
    const double p[4] = {(1.0 - c) / 4.0, (1.0 - c) / 4.0, (1.0 + c) / 4.0,
                         (1.0 + c) / 4.0};
    return entropy_nats(p, 4);
}

inline double h2_nats(double c) {
    const double p[4] = {0.25 - c / 2.0, 0.25 + c / 6.0, 0.25 - c / 6.0,
                         0.25 - c / 6.0};
    return entropy_nats(p, 4);
}

inline double h3_nats(double c) {
    const double p[4] = {0.25 + c / 2.0, 0.25 - c / 6.0, 0.25 - c / 6.0,
                         0.25 - c / 6.0};
    return entropy_nats(p, 4);
}

} // namespace detail

// Pinsker-type lower bound I >= C^2 / 2 (nats).
inline double pinsker_bound(double c, Unit unit = Unit::bits) {
    if (c < 0.0) throw domain_error("pinsker_bound: C must be nonnegative");
    return from_nats(0.5 * c * c, unit);
}

// Tight classical bound I >= ln 2 - H((1+C)/2, (1-C)/2) for two-valued
// variables, C in [0, 1].
inline double classical_tight_bound(double c, Unit unit = Unit::bits) {
    if (c < 0.0 || c > 1.0)
        throw domain_error("classical_tight_bound: C must lie in [0, 1]");
    return from_nats(std::numbers::ln2 - detail::binary_entropy_nats(c), unit);
}

// The three entropy branch curves, in bits. A component is absent when its
// argument list leaves the probability simplex.
struct EntropyCurves {
    std::optional<double> h1;
    std::optional<double> h2;
    std::optional<double> h3;
};

inline EntropyCurves entropy_curves(double c) {
    EntropyCurves e;
    if (c >= -detail::kNegativeClip && c <= 1.0 + detail::kNegativeClip)
        e.h1 = from_nats(detail::h1_nats(std::clamp(c, 0.0, 1.0)), Unit::bits);
    if (c >= -detail::kNegativeClip && c <= 0.5 + detail::kNegativeClip)
        e.h2 = from_nats(detail::h2_nats(std::clamp(c, 0.0, 0.5)), Unit::bits);
    if (c >= -detail::kNegativeClip && c <= 1.5 + detail::kNegativeClip)
        e.h3 = from_nats(detail::h3_nats(std::clamp(c, 0.0, 1.5)), Unit::bits);
    return e;
}

// Crossing point of H1 and H3 on (0.5, 1), located by bisection.
// H1 > H3 below the root and H1 < H3 above it.
inline double compute_c0(double tolerance = 1e-12) {
    if (tolerance <= 0.0) throw domain_error("compute_c0: tolerance must be positive");
    double lo = 0.5, hi = 1.0;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (detail::h1_nats(mid) - detail::h3_nats(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Cached threshold, computed once on first use.
inline double c0() {
    static const double value = compute_c0(1e-12);
    return value;
}

// Tight quantum bound for two qubits with maximally mixed marginals.
// Coincides with the classical bound up to C0 and switches to the H3
// branch above it; C in [0, 3/2].
inline double quantum_tight_bound(double c, Unit unit = Unit::bits) {
    if (c < 0.0 || c > 1.5)
        throw domain_error("quantum_tight_bound: C must lie in [0, 3/2]");
    if (c <= c0()) return classical_tight_bound(c, unit);
    return from_nats(2.0 * std::numbers::ln2 - detail::h3_nats(c), unit);
}

enum class SystemKind { classical, quantum };

// Largest possible correlation distance for a pair of n-valued systems:
// 2(n-1)/n classically, 2(n^2-1)/n^2 for quantum states.
inline double max_correlation_distance(int n, SystemKind kind) {
    if (n < 2) throw domain_error("max_correlation_distance: n must be >= 2");
    const double nn = static_cast<double>(n);
    if (kind == SystemKind::classical) return 2.0 * (nn - 1.0) / nn;
    return 2.0 * (nn * nn - 1.0) / (nn * nn);
}

} // namespace qcorr
