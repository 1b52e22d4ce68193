#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qcorr/bell.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/prob.hpp"
#include "qcorr/qubit.hpp"
#include "qcorr/rng.hpp"

namespace qcorr::sample {

// Uniform over the physical (x, y, r) polytope by rejection from the cube;
// the polytope fills over a third of the cube, so rejection is cheap.
inline BinaryParams binary_params(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    for (;;) {
        BinaryParams b{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                       rng.uniform(-1.0, 1.0)};
        if (is_physical(b, 0.0)) return b;
    }
}

inline JointTable joint_table(std::size_t rows, std::size_t cols, std::uint64_t seed,
                              std::uint64_t index) {
    CounterRng rng(seed, index);
    return JointTable(rows, cols, rng.simplex(rows * cols));
}

// Hilbert-Schmidt-induced random state: rho = G G^dagger / tr(G G^dagger)
// with G a 4x4 complex Gaussian (Ginibre) matrix.
inline TwoQubitState state_hs(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    Mat4 g;
    for (auto& x : g.a) x = cplx(rng.normal(), rng.normal());
    Mat4 rho = mul(g, adjoint(g));
    rho *= 1.0 / trace(rho).real();
    return TwoQubitState(rho);
}

// Uniform over the Bell-diagonal eigenvalue simplex, mapped back to the
// Pauli coefficients via r_j = 1 - 2(p_0 + p_j).
inline TwoQubitState state_bell_diagonal(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    const auto p = rng.simplex(4);
    return make_bell_diagonal(1.0 - 2.0 * (p[0] + p[1]), 1.0 - 2.0 * (p[0] + p[2]),
                              1.0 - 2.0 * (p[0] + p[3]));
}

// Bloch vector uniform in the unit ball.
inline Vec3 bloch_in_ball(CounterRng& rng) {
    const auto dir = rng.unit_vector();
    const double r = std::cbrt(rng.uniform());
    return {r * dir[0], r * dir[1], r * dir[2]};
}

// Convex mixture of k random product states; separable by construction.
inline TwoQubitState state_separable(int k, std::uint64_t seed, std::uint64_t index) {
    if (k < 1) throw domain_error("state_separable: k must be >= 1");
    CounterRng rng(seed, index);
    const auto w = rng.simplex(static_cast<std::size_t>(k));
    Mat4 rho;
    for (int i = 0; i < k; ++i) {
        Mat4 term = kron(qubit_from_bloch(bloch_in_ball(rng)),
                         qubit_from_bloch(bloch_in_ball(rng)));
        term *= w[static_cast<std::size_t>(i)];
        rho += term;
    }
    return TwoQubitState(rho);
}

// Bell-diagonal state rotated on side A only; both marginals stay
// maximally mixed while the covariance matrix loses its diagonal form.
inline TwoQubitState state_mixed_marginal(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    const auto p = rng.simplex(4);
    const TwoQubitState bd =
        make_bell_diagonal(1.0 - 2.0 * (p[0] + p[1]), 1.0 - 2.0 * (p[0] + p[2]),
                           1.0 - 2.0 * (p[0] + p[3]));
    const Mat2 u = rotation_unitary(rng.unit_vector(),
                                    rng.uniform(0.0, 2.0 * std::numbers::pi));
    return apply_local_unitaries(bd, u, Mat2::identity());
}

inline ProjectivePair projective_pair(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    ProjectivePair pair;
    pair.a_axis = rng.unit_vector();
    pair.b_axis = rng.unit_vector();
    return pair;
}

// Random no-signaling model: 2-4 hidden values; for each lambda the four
// setting-pair tables share marginal parameters (x or x') and (y or y'),
// with r drawn uniformly inside its feasibility interval.
inline LhvModel lhv_model(std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 3);
    LhvModel m;
    m.lambda_weights = rng.simplex(n);
    for (std::size_t l = 0; l < n; ++l) {
        const double x = rng.uniform(-1.0, 1.0);
        const double xp = rng.uniform(-1.0, 1.0);
        const double y = rng.uniform(-1.0, 1.0);
        const double yp = rng.uniform(-1.0, 1.0);
        const double xs[4] = {x, x, xp, xp};
        const double ys[4] = {y, yp, y, yp};
        for (std::size_t pair = 0; pair < 4; ++pair) {
            const auto [lo, hi] = binary_r_interval(xs[pair], ys[pair]);
            m.conditionals[pair].push_back(
                joint_from_binary({xs[pair], ys[pair], rng.uniform(lo, hi)}));
        }
    }
    return m;
}

// As lhv_model but outcome independent: every conditional factorizes (r = 0).
inline LhvModel lhv_model_outcome_independent(std::uint64_t seed,
                                              std::uint64_t index) {
    CounterRng rng(seed, index);
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 3);
    LhvModel m;
    m.lambda_weights = rng.simplex(n);
    for (std::size_t l = 0; l < n; ++l) {
        const double x = rng.uniform(-1.0, 1.0);
        const double xp = rng.uniform(-1.0, 1.0);
        const double y = rng.uniform(-1.0, 1.0);
        const double yp = rng.uniform(-1.0, 1.0);
        const double xs[4] = {x, x, xp, xp};
        const double ys[4] = {y, yp, y, yp};
        for (std::size_t pair = 0; pair < 4; ++pair)
            m.conditionals[pair].push_back(
                joint_from_binary({xs[pair], ys[pair], 0.0}));
    }
    return m;
}

} // namespace qcorr::sample
