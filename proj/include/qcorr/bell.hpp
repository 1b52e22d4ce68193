#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qcorr/errors.hpp"
#include "qcorr/prob.hpp"

namespace qcorr {

// Local hidden-variable model with a finite lambda alphabet shared by all
// four setting pairs (free choice) and per-lambda conditional tables.
// Setting pairs are ordered (A,B), (A,B'), (A',B), (A',B').
struct LhvModel {
    static constexpr std::size_t kAB = 0;
    static constexpr std::size_t kABp = 1;
    static constexpr std::size_t kApB = 2;
    static constexpr std::size_t kApBp = 3;

    std::vector<double> lambda_weights;
    std::array<std::vector<JointTable>, 4> conditionals;
};

namespace detail {

inline void require_close(const ProbVector& p, const ProbVector& q, const char* what) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (std::abs(p[i] - q[i]) > kNormTol) {
            std::ostringstream os;
            os << "LhvModel: no-signaling violated (" << what << ")";
            throw validation_error(os.str());
        }
}

} // namespace detail

// Checks distribution validity of the weights and tables and the
// no-signaling constraints: for every lambda the A-side marginal must not
// depend on whether B or B' is measured, and symmetrically.
inline void validate_model(const LhvModel& m) {
    const ProbVector weights{std::vector<double>(m.lambda_weights)};
    const std::size_t n = weights.size();
    for (const auto& tables : m.conditionals) {
        if (tables.size() != n)
            throw validation_error("LhvModel: conditional count does not match weights");
        for (const auto& t : tables)
            if (t.rows() != 2 || t.cols() != 2)
                throw validation_error("LhvModel: conditionals must be 2x2");
    }
    for (std::size_t l = 0; l < n; ++l) {
        detail::require_close(m.conditionals[LhvModel::kAB][l].row_marginal(),
                              m.conditionals[LhvModel::kABp][l].row_marginal(),
                              "A marginal, B vs B'");
        detail::require_close(m.conditionals[LhvModel::kApB][l].row_marginal(),
                              m.conditionals[LhvModel::kApBp][l].row_marginal(),
                              "A' marginal, B vs B'");
        detail::require_close(m.conditionals[LhvModel::kAB][l].col_marginal(),
                              m.conditionals[LhvModel::kApB][l].col_marginal(),
                              "B marginal, A vs A'");
        detail::require_close(m.conditionals[LhvModel::kABp][l].col_marginal(),
                              m.conditionals[LhvModel::kApBp][l].col_marginal(),
                              "B' marginal, A vs A'");
    }
}

// <AB> + <AB'> + <A'B> - <A'B'> for correlators in [-1, 1].
inline double chsh_value(const std::array<double, 4>& correlators) {
    for (double c : correlators)
        if (std::abs(c) > 1.0 + detail::kNegativeClip)
            throw domain_error("chsh_value: correlator outside [-1, 1]");
    return correlators[0] + correlators[1] + correlators[2] - correlators[3];
}

// CHSH bound 4/(2 - C_max) under relaxed outcome independence.
inline double relaxed_chsh_bound(double c_max) {
    if (c_max < 0.0 || c_max > 1.0)
        throw domain_error("relaxed_chsh_bound: C_max must lie in [0, 1]");
    return 4.0 / (2.0 - c_max);
}

// Resources needed to simulate a CHSH value of 2 + V: conditional
// correlation distance at least 2V/(2+V) and the matching shared mutual
// information ln 2 - H((2+3V)/(4+2V), (2-V)/(4+2V)).
struct SimulationResources {
    double c_max_required = 0.0;
    double i_min_bits = 0.0;
};

inline SimulationResources simulation_resources(double v) {
    if (v < 0.0 || v > 2.0)
        throw domain_error("simulation_resources: V must lie in [0, 2]");
    SimulationResources out;
    out.c_max_required = 2.0 * v / (2.0 + v);
    const double p[2] = {(2.0 + 3.0 * v) / (4.0 + 2.0 * v),
                         (2.0 - v) / (4.0 + 2.0 * v)};
    out.i_min_bits =
        from_nats(std::numbers::ln2 - detail::entropy_nats(p, 2), Unit::bits);
    return out;
}

// Outcome +1 maps to table index 0.
inline double table_correlator(const JointTable& t) {
    return t(0, 0) - t(0, 1) - t(1, 0) + t(1, 1);
}

struct ModelAnalysis {
    std::array<double, 4> correlators{};  // <AB>, <AB'>, <A'B>, <A'B'>
    double chsh = 0.0;
    double c_max = 0.0;
    bool outcome_independent = false;
};

inline ModelAnalysis model_analysis(const LhvModel& m) {
    validate_model(m);
    ModelAnalysis out;
    for (std::size_t pair = 0; pair < 4; ++pair) {
        double corr = 0.0;
        for (std::size_t l = 0; l < m.lambda_weights.size(); ++l)
            corr += m.lambda_weights[l] * table_correlator(m.conditionals[pair][l]);
        out.correlators[pair] = corr;
        for (const auto& t : m.conditionals[pair])
            out.c_max = std::max(out.c_max, correlation_distance(t));
    }
    out.chsh = chsh_value(out.correlators);
    out.outcome_independent = out.c_max < detail::kNormTol;
    return out;
}

} // namespace qcorr
