#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qcorr/bell.hpp"
#include "qcorr/bounds.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/io.hpp"
#include "qcorr/prob.hpp"
#include "qcorr/qubit.hpp"
#include "qcorr/sample.hpp"

namespace qcorr::verify {

// Margin convention: a sample satisfies its inequality iff margin >= -1e-9.
constexpr double kViolationMargin = -1e-9;

// Secondary sample streams (measurement axes paired with a state, ...)
// fold a tag into the seed so they are independent of the primary stream.
constexpr std::uint64_t kPairStreamTag = 0xA24BAED4963EE407ULL;

struct SweepReport {
    std::string kind;
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;  // margins below -1e-9
    std::uint64_t skipped = 0;     // samples where the inequality did not apply
    double worst_margin = std::numeric_limits<double>::infinity();
    std::uint64_t worst_index = 0;
    std::string worst_case;  // serialized input attaining worst_margin
    std::uint64_t seed = 0;
    bool asserted = true;  // conjecture sweeps report but never fail
};

// CLI exit code: asserted sweep with violations -> 3, otherwise 0.
inline int exit_code_for(const SweepReport& r) {
    return r.asserted && r.violations > 0 ? 3 : 0;
}

namespace detail {

using qcorr::detail::h3_nats;

inline double clamp_c_quantum(double c) { return std::clamp(c, 0.0, 1.5); }

// --- per-kind margin evaluators ---------------------------------------

inline std::optional<double> margin_pinsker_classical(std::uint64_t seed,
                                                      std::uint64_t index) {
    CounterRng shape(seed ^ kPairStreamTag, index);
    const std::size_t n = 2 + shape.next_u64() % 4;
    const std::size_t m = 2 + shape.next_u64() % 4;
    const JointTable t = sample::joint_table(n, m, seed, index);
    const double c = correlation_distance(t);
    return mutual_information(t, Unit::nats) - 0.5 * c * c;
}

inline std::optional<double> margin_classical_tight(std::uint64_t seed,
                                                    std::uint64_t index) {
    return witness_f(sample::binary_params(seed, index), Unit::nats);
}

inline std::optional<double> margin_quantum_tight_bell_diagonal(std::uint64_t seed,
                                                                std::uint64_t index) {
    const TwoQubitState rho = sample::state_bell_diagonal(seed, index);
    const double c = clamp_c_quantum(correlation_distance(rho));
    return mutual_information(rho, Unit::bits) - quantum_tight_bound(c, Unit::bits);
}

inline std::optional<double> margin_cdist_crosscheck(std::uint64_t seed,
                                                     std::uint64_t index) {
    const TwoQubitState rho = sample::state_hs(seed, index);
    const Mat4 prod =
        kron(partial_trace(rho, Side::A), partial_trace(rho, Side::B));
    const double viaTraceNorm = trace_norm(rho.matrix() - prod);
    const SingularTriple s = singular_triple(fano_decompose(rho).t);
    const double viaSingular = 0.5 * std::max(s.t1 + s.t2 + s.t3, 2.0 * s.t1);
    return -std::abs(viaTraceNorm - viaSingular);
}

inline std::optional<double> margin_separable_cdist(std::uint64_t seed,
                                                    std::uint64_t index) {
    const TwoQubitState rho = sample::state_separable(8, seed, index);
    const FanoForm f = fano_decompose(rho);
    const double rhs =
        std::sqrt(std::max(1.0 - dot(f.u, f.u), 0.0) * std::max(1.0 - dot(f.v, f.v), 0.0));
    return rhs - correlation_distance(rho);
}

inline TwoQubitState chain_sample(std::uint64_t seed, std::uint64_t index) {
    switch (index % 4) {
        case 0: return sample::state_hs(seed, index);
        case 1: return sample::state_separable(8, seed, index);
        case 2: return sample::state_bell_diagonal(seed, index);
        default: return make_werner(static_cast<double>((index / 4) % 1001) / 1000.0);
    }
}

inline std::optional<double> margin_entanglement_chain(std::uint64_t seed,
                                                       std::uint64_t index) {
    const EntanglementReport rep = entanglement_report(chain_sample(seed, index));
    const bool ok = (!rep.cdist_gt_one || rep.purity_criterion) &&
                    (!rep.purity_criterion || rep.covariance_criterion) &&
                    (!rep.covariance_criterion || rep.ppt_entangled);
    return ok ? 1.0 : -1.0;
}

inline std::optional<double> margin_relaxed_chsh(std::uint64_t seed,
                                                 std::uint64_t index) {
    const ModelAnalysis an = model_analysis(sample::lhv_model(seed, index));
    return relaxed_chsh_bound(std::clamp(an.c_max, 0.0, 1.0)) - an.chsh;
}

inline std::optional<double> margin_chsh_outcome_independent(std::uint64_t seed,
                                                             std::uint64_t index) {
    const ModelAnalysis an =
        model_analysis(sample::lhv_model_outcome_independent(seed, index));
    if (!an.outcome_independent) return -1.0;
    return 2.0 - an.chsh;
}

inline std::optional<double> margin_data_processing(std::uint64_t seed,
                                                    std::uint64_t index) {
    const TwoQubitState rho = sample::state_hs(seed, index);
    const ProjectivePair axes = sample::projective_pair(seed ^ kPairStreamTag, index);
    const JointTable observed = measure_projective(rho, axes);
    const double di = mutual_information(rho, Unit::bits) -
                      mutual_information(observed, Unit::bits);
    const double dc = correlation_distance(rho) - correlation_distance(observed);
    return std::min(di, dc);
}

inline std::optional<double> margin_data_processing_equality(std::uint64_t seed,
                                                             std::uint64_t index) {
    const JointTable table = sample::joint_table(2, 2, seed, index);
    const ProjectivePair axes = sample::projective_pair(seed ^ kPairStreamTag, index);
    const TwoQubitState rho =
        make_classically_correlated(table, axes.a_axis, axes.b_axis);
    const JointTable observed = measure_projective(rho, axes);
    const double di = std::abs(mutual_information(rho, Unit::bits) -
                               mutual_information(observed, Unit::bits));
    const double dc =
        std::abs(correlation_distance(rho) - correlation_distance(observed));
    return -std::max(di, dc);
}

inline std::optional<double> margin_mixed_marginal_h3(std::uint64_t seed,
                                                      std::uint64_t index) {
    const TwoQubitState rho = sample::state_mixed_marginal(seed, index);
    const double c = clamp_c_quantum(correlation_distance(rho));
    if (c < c0()) return std::nullopt;
    const double bound =
        from_nats(2.0 * std::numbers::ln2 - h3_nats(c), Unit::bits);
    return mutual_information(rho, Unit::bits) - bound;
}

inline std::optional<double> margin_conjecture_shift_cdist(std::uint64_t seed,
                                                           std::uint64_t index) {
    const TwoQubitState rho = sample::state_hs(seed, index);
    const ConjectureShift shift = conjecture_shift(rho);
    if (!shift.state) return std::nullopt;
    return -std::abs(correlation_distance(*shift.state) - correlation_distance(rho));
}

inline std::optional<double> margin_conjecture_shift_f(std::uint64_t seed,
                                                       std::uint64_t index) {
    const TwoQubitState rho = sample::state_hs(seed, index);
    const ConjectureShift shift = conjecture_shift(rho);
    if (!shift.state) return std::nullopt;
    return mutual_information(rho, Unit::bits) -
           mutual_information(*shift.state, Unit::bits);
}

inline std::optional<double> margin_conjecture_general_states(std::uint64_t seed,
                                                              std::uint64_t index) {
    const TwoQubitState rho = sample::state_hs(seed, index);
    const double c = clamp_c_quantum(correlation_distance(rho));
    return mutual_information(rho, Unit::bits) - quantum_tight_bound(c, Unit::bits);
}

// --- worst-case serializers --------------------------------------------

inline std::string show_binary_params(std::uint64_t seed, std::uint64_t index) {
    const BinaryParams b = sample::binary_params(seed, index);
    std::ostringstream os;
    os << "{\"x\":" << io::format_sig(b.x, 17) << ",\"y\":" << io::format_sig(b.y, 17)
       << ",\"r\":" << io::format_sig(b.r, 17) << "}";
    return os.str();
}

inline std::string show_table(const JointTable& t) {
    std::ostringstream os;
    os << "[";
    for (std::size_t a = 0; a < t.rows(); ++a) {
        os << (a ? ",[" : "[");
        for (std::size_t b = 0; b < t.cols(); ++b)
            os << (b ? "," : "") << io::format_sig(t(a, b), 17);
        os << "]";
    }
    os << "]";
    return os.str();
}

inline std::string show_pinsker_table(std::uint64_t seed, std::uint64_t index) {
    CounterRng shape(seed ^ kPairStreamTag, index);
    const std::size_t n = 2 + shape.next_u64() % 4;
    const std::size_t m = 2 + shape.next_u64() % 4;
    return show_table(sample::joint_table(n, m, seed, index));
}

inline std::string show_hs_state(std::uint64_t seed, std::uint64_t index) {
    return io::write_state_json(sample::state_hs(seed, index));
}

inline std::string show_bell_diagonal(std::uint64_t seed, std::uint64_t index) {
    return io::write_state_json(sample::state_bell_diagonal(seed, index));
}

inline std::string show_separable(std::uint64_t seed, std::uint64_t index) {
    return io::write_state_json(sample::state_separable(8, seed, index));
}

inline std::string show_chain_sample(std::uint64_t seed, std::uint64_t index) {
    return io::write_state_json(chain_sample(seed, index));
}

inline std::string show_mixed_marginal(std::uint64_t seed, std::uint64_t index) {
    return io::write_state_json(sample::state_mixed_marginal(seed, index));
}

inline std::string show_lhv_model(std::uint64_t seed, std::uint64_t index) {
    return io::write_model_json(sample::lhv_model(seed, index));
}

inline std::string show_lhv_model_oi(std::uint64_t seed, std::uint64_t index) {
    return io::write_model_json(sample::lhv_model_outcome_independent(seed, index));
}

inline std::string show_state_and_axes(std::uint64_t seed, std::uint64_t index) {
    const ProjectivePair axes = sample::projective_pair(seed ^ kPairStreamTag, index);
    std::ostringstream os;
    os << "{\"state\":" << show_hs_state(seed, index) << ",\"a_axis\":["
       << io::format_sig(axes.a_axis[0], 17) << "," << io::format_sig(axes.a_axis[1], 17)
       << "," << io::format_sig(axes.a_axis[2], 17) << "],\"b_axis\":["
       << io::format_sig(axes.b_axis[0], 17) << "," << io::format_sig(axes.b_axis[1], 17)
       << "," << io::format_sig(axes.b_axis[2], 17) << "]}";
    return os.str();
}

inline std::string show_cc_table_and_axes(std::uint64_t seed, std::uint64_t index) {
    const JointTable table = sample::joint_table(2, 2, seed, index);
    const ProjectivePair axes = sample::projective_pair(seed ^ kPairStreamTag, index);
    std::ostringstream os;
    os << "{\"table\":" << show_table(table) << ",\"a_axis\":["
       << io::format_sig(axes.a_axis[0], 17) << "," << io::format_sig(axes.a_axis[1], 17)
       << "," << io::format_sig(axes.a_axis[2], 17) << "],\"b_axis\":["
       << io::format_sig(axes.b_axis[0], 17) << "," << io::format_sig(axes.b_axis[1], 17)
       << "," << io::format_sig(axes.b_axis[2], 17) << "]}";
    return os.str();
}

struct KindSpec {
    const char* name;
    bool asserted;
    std::optional<double> (*margin)(std::uint64_t, std::uint64_t);
    std::string (*describe)(std::uint64_t, std::uint64_t);
};

inline const std::vector<KindSpec>& kind_table() {
    static const std::vector<KindSpec> kinds = {
        {"pinsker_classical", true, margin_pinsker_classical, show_pinsker_table},
        {"classical_tight", true, margin_classical_tight, show_binary_params},
        {"quantum_tight_bell_diagonal", true, margin_quantum_tight_bell_diagonal,
         show_bell_diagonal},
        {"cdist_crosscheck", true, margin_cdist_crosscheck, show_hs_state},
        {"separable_cdist", true, margin_separable_cdist, show_separable},
        {"entanglement_chain", true, margin_entanglement_chain, show_chain_sample},
        {"relaxed_chsh", true, margin_relaxed_chsh, show_lhv_model},
        {"chsh_outcome_independent", true, margin_chsh_outcome_independent,
         show_lhv_model_oi},
        {"data_processing", true, margin_data_processing, show_state_and_axes},
        {"data_processing_equality", true, margin_data_processing_equality,
         show_cc_table_and_axes},
        {"mixed_marginal_h3", true, margin_mixed_marginal_h3, show_mixed_marginal},
        {"conjecture_shift_cdist", true, margin_conjecture_shift_cdist, show_hs_state},
        {"conjecture_shift_f", false, margin_conjecture_shift_f, show_hs_state},
        {"conjecture_general_states", false, margin_conjecture_general_states,
         show_hs_state},
    };
    return kinds;
}

} // namespace detail

inline std::vector<std::string> sweep_kinds() {
    std::vector<std::string> names;
    for (const auto& k : detail::kind_table()) names.emplace_back(k.name);
    return names;
}

// Evaluates the named inequality over n deterministic samples. The report
// is a pure function of (kind, n_samples, seed); worker partials are merged
// by (margin, index) so the result does not depend on the worker count.
inline SweepReport run_sweep(const std::string& kind, std::uint64_t n_samples,
                             std::uint64_t seed, unsigned workers = 0) {
    if (n_samples < 1) throw domain_error("run_sweep: n_samples must be >= 1");
    const detail::KindSpec* spec = nullptr;
    for (const auto& k : detail::kind_table())
        if (kind == k.name) spec = &k;
    if (!spec) throw domain_error("run_sweep: unknown kind '" + kind + "'");

    if (workers == 0)
        workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, n_samples));

    struct Partial {
        std::uint64_t violations = 0;
        std::uint64_t skipped = 0;
        double worst = std::numeric_limits<double>::infinity();
        std::uint64_t worst_index = 0;
        bool any = false;
    };
    std::vector<Partial> partials(workers);
    const std::uint64_t chunk = (n_samples + workers - 1) / workers;

    auto work = [&](unsigned w) {
        Partial& p = partials[w];
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min(n_samples, lo + chunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const auto m = spec->margin(seed, i);
            if (!m) {
                ++p.skipped;
                continue;
            }
            if (*m < kViolationMargin) ++p.violations;
            if (!p.any || *m < p.worst || (*m == p.worst && i < p.worst_index)) {
                p.any = true;
                p.worst = *m;
                p.worst_index = i;
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }

    SweepReport rep;
    rep.kind = kind;
    rep.samples = n_samples;
    rep.seed = seed;
    rep.asserted = spec->asserted;
    bool any = false;
    for (const Partial& p : partials) {
        rep.violations += p.violations;
        rep.skipped += p.skipped;
        if (p.any && (!any || p.worst < rep.worst_margin ||
                      (p.worst == rep.worst_margin && p.worst_index < rep.worst_index))) {
            any = true;
            rep.worst_margin = p.worst;
            rep.worst_index = p.worst_index;
        }
    }
    if (any) rep.worst_case = spec->describe(seed, rep.worst_index);
    return rep;
}

enum class BruteKind { classical, bell_diagonal };

namespace detail {

// I(x, y, r) for the induced 2x2 table, in nats. Entries are clipped at
// zero to absorb rounding on the polytope boundary.
inline double binary_mi_nats(double x, double y, double r) {
    const double pa[2] = {(1.0 + x) / 2.0, (1.0 - x) / 2.0};
    const double pb[2] = {(1.0 + y) / 2.0, (1.0 - y) / 2.0};
    double mi = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double a = i == 0 ? 1.0 : -1.0;
            const double b = j == 0 ? 1.0 : -1.0;
            const double p = ((1.0 + a * x) * (1.0 + b * y) + a * b * r) / 4.0;
            if (p <= 0.0) continue;
            mi += p * (std::log(p) - std::log(pa[i] * pb[j]));
        }
    return mi;
}

inline double brute_force_classical(double c, int resolution) {
    double best = std::numeric_limits<double>::infinity();
    const double step = 2.0 / resolution;
    for (int sign = 0; sign < (c > 0.0 ? 2 : 1); ++sign) {
        const double r = sign == 0 ? c : -c;
        for (int i = 0; i <= resolution; ++i) {
            const double x = -1.0 + step * i;
            // Feasible y interval from the four nonnegativity constraints
            // alpha + beta y >= 0.
            double ylo = -1.0, yhi = 1.0;
            bool empty = false;
            const double alphas[4] = {1.0 + x + r, 1.0 - x + r, 1.0 + x - r,
                                      1.0 - x - r};
            const double betas[4] = {1.0 + x, -(1.0 - x), -(1.0 + x), 1.0 - x};
            for (int k = 0; k < 4 && !empty; ++k) {
                if (betas[k] > 0.0)
                    ylo = std::max(ylo, -alphas[k] / betas[k]);
                else if (betas[k] < 0.0)
                    yhi = std::min(yhi, -alphas[k] / betas[k]);
                else if (alphas[k] < 0.0)
                    empty = true;
            }
            if (empty || ylo > yhi) continue;
            best = std::min(best, binary_mi_nats(x, ylo, r));
            best = std::min(best, binary_mi_nats(x, yhi, r));
            const int jlo = static_cast<int>(std::ceil((ylo + 1.0) / step));
            const int jhi = static_cast<int>(std::floor((yhi + 1.0) / step));
            for (int j = jlo; j <= jhi; ++j)
                best = std::min(best, binary_mi_nats(x, -1.0 + step * j, r));
        }
    }
    return best;
}

// log 4 - H(spectrum) in nats for canonical coefficients alpha*(t1,t2,t3);
// +inf when the spectrum leaves the simplex.
inline double bell_mi_nats(double alpha, double t1, double t2, double t3) {
    const double p0 = 0.25 * (1.0 - alpha * (t1 + t2 + t3));
    const double p1 = 0.25 * (1.0 - alpha * (t1 - t2 - t3));
    const double p2 = 0.25 * (1.0 - alpha * (-t1 + t2 - t3));
    const double p3 = 0.25 * (1.0 - alpha * (-t1 - t2 + t3));
    const double ps[4] = {p0, p1, p2, p3};
    double h = 0.0;
    for (double p : ps) {
        if (p < -1e-12) return std::numeric_limits<double>::infinity();
        if (p > 0.0) h -= p * std::log(p);
    }
    return 2.0 * std::numbers::ln2 - h;
}

// Minimum over Bell-diagonal states at fixed correlation distance c. Any
// sign pattern of the Pauli coefficients is equivalent, up to a spectrum-
// and C-preserving double sign flip, to alpha*(t1,t2,t3) with ordered
// nonnegative t, so only the canonical form is scanned.
inline double brute_force_bell(double c, int resolution) {
    double best = std::numeric_limits<double>::infinity();
    const double step = 1.0 / resolution;
    for (int a = 0; a < 2; ++a) {
        const double alpha = a == 0 ? 1.0 : -1.0;
        // Branch with C = (t1+t2+t3)/2 and t1 = 2c - t2 - t3 <= t2 + t3.
        for (int i = 0; i <= resolution; ++i) {
            const double t2 = step * i;
            for (int j = 0; j <= i; ++j) {
                const double t3 = step * j;
                const double t1 = 2.0 * c - t2 - t3;
                if (t1 < t2 - 1e-15 || t1 > t2 + t3 + 1e-15) continue;
                best = std::min(best, bell_mi_nats(alpha, t1, t2, t3));
            }
            // Edge t1 = t2 of the ordering constraint.
            const double t3e = 2.0 * c - 2.0 * t2;
            if (t3e >= 0.0 && t3e <= t2)
                best = std::min(best, bell_mi_nats(alpha, t2, t2, t3e));
        }
        // Vertex t1 = t2 = t3.
        best = std::min(best, bell_mi_nats(alpha, 2.0 * c / 3.0, 2.0 * c / 3.0,
                                           2.0 * c / 3.0));
        // Branch with C = t1 > (t2+t3+t1)/2, i.e. t2 + t3 < t1 = c.
        for (int i = 0; i <= resolution; ++i) {
            const double t2 = step * i;
            if (t2 > c) break;
            const double t3max = std::min(t2, c - t2);
            for (int j = 0; step * j <= t3max; ++j)
                best = std::min(best, bell_mi_nats(alpha, c, t2, step * j));
            best = std::min(best, bell_mi_nats(alpha, c, t2, t3max));
        }
    }
    return best;
}

} // namespace detail

// Grid minimization of the mutual information at fixed correlation
// distance; the independent oracle for the closed-form bound curves.
inline double brute_force_min_mi(BruteKind kind, double c, int resolution,
                                 Unit unit = Unit::bits) {
    if (resolution < 100)
        throw domain_error("brute_force_min_mi: resolution must be >= 100");
    if (kind == BruteKind::classical) {
        if (c < 0.0 || c > 1.0)
            throw domain_error("brute_force_min_mi: classical C must lie in [0, 1]");
        return from_nats(detail::brute_force_classical(c, resolution), unit);
    }
    if (c < 0.0 || c > 1.5)
        throw domain_error("brute_force_min_mi: Bell-diagonal C must lie in [0, 3/2]");
    return from_nats(detail::brute_force_bell(c, resolution), unit);
}

enum class Figure { fig1, fig2 };

// CSV bound curves: fig1 over [0, 1] with the Pinsker and classical
// curves, fig2 over [0, 3/2] adding the quantum curve (classical column
// empty beyond C = 1) and a "# C0=..." comment line.
inline void emit_figure(Figure which, double grid_step, const std::string& path) {
    if (grid_step <= 0.0) throw domain_error("emit_figure: grid_step must be positive");
    std::ostringstream os;
    const double end = which == Figure::fig1 ? 1.0 : 1.5;
    if (which == Figure::fig2) os << "# C0=" << io::format_sig(c0(), 9) << "\n";
    os << (which == Figure::fig1 ? "C,pinsker,classical_tight"
                                 : "C,pinsker,classical_tight,quantum_tight")
       << "\n";
    for (std::uint64_t k = 0;; ++k) {
        double c = static_cast<double>(k) * grid_step;
        if (c > end + 1e-12) break;
        c = std::min(c, end);
        os << io::format_sig(c, 9) << "," << io::format_sig(pinsker_bound(c), 9) << ",";
        if (c <= 1.0 + 1e-12)
            os << io::format_sig(classical_tight_bound(std::min(c, 1.0)), 9);
        if (which == Figure::fig2)
            os << "," << io::format_sig(quantum_tight_bound(c), 9);
        os << "\n";
    }
    io::write_file(path, os.str());
}

// Best single-lambda model found for a given conditional correlation
// distance budget; numerical probe of how closely the relaxed CHSH bound
// can be approached. A mixture over lambda cannot beat its best member,
// so one lambda suffices, and for fixed marginal parameters the CHSH
// value is linear in each r, so the r's sit at the ends of their
// feasibility intervals clipped to +-c_max.
struct ChshSearchResult {
    LhvModel model;
    double chsh = 0.0;
    double c_max = 0.0;
    double bound = 0.0;
};

namespace detail {

inline double chsh_at(double c, double x, double xp, double y, double yp,
                      double r[4]) {
    const double xs[4] = {x, x, xp, xp};
    const double ys[4] = {y, yp, y, yp};
    double value = 0.0;
    for (int pair = 0; pair < 4; ++pair) {
        const auto [lo, hi] = binary_r_interval(xs[pair], ys[pair]);
        r[pair] = pair == 3 ? std::max(-c, lo) : std::min(c, hi);
        const double corr = xs[pair] * ys[pair] + r[pair];
        value += pair == 3 ? -corr : corr;
    }
    return value;
}

} // namespace detail

inline ChshSearchResult search_max_chsh_model(double c_max, int grid = 24,
                                              int refinements = 8) {
    if (c_max < 0.0 || c_max > 1.0)
        throw domain_error("search_max_chsh_model: C_max must lie in [0, 1]");
    if (grid < 2) throw domain_error("search_max_chsh_model: grid must be >= 2");
    double center[4] = {0.0, 0.0, 0.0, 0.0};
    double halfwidth = 1.0;
    double best[4] = {0.0, 0.0, 0.0, 0.0};
    double bestValue = -std::numeric_limits<double>::infinity();
    double r[4];
    for (int round = 0; round <= refinements; ++round) {
        const double lo[4] = {std::max(center[0] - halfwidth, -1.0),
                              std::max(center[1] - halfwidth, -1.0),
                              std::max(center[2] - halfwidth, -1.0),
                              std::max(center[3] - halfwidth, -1.0)};
        const double hi[4] = {std::min(center[0] + halfwidth, 1.0),
                              std::min(center[1] + halfwidth, 1.0),
                              std::min(center[2] + halfwidth, 1.0),
                              std::min(center[3] + halfwidth, 1.0)};
        for (int i0 = 0; i0 <= grid; ++i0)
            for (int i1 = 0; i1 <= grid; ++i1)
                for (int i2 = 0; i2 <= grid; ++i2)
                    for (int i3 = 0; i3 <= grid; ++i3) {
                        const double x = lo[0] + (hi[0] - lo[0]) * i0 / grid;
                        const double xp = lo[1] + (hi[1] - lo[1]) * i1 / grid;
                        const double y = lo[2] + (hi[2] - lo[2]) * i2 / grid;
                        const double yp = lo[3] + (hi[3] - lo[3]) * i3 / grid;
                        const double v = detail::chsh_at(c_max, x, xp, y, yp, r);
                        if (v > bestValue) {
                            bestValue = v;
                            best[0] = x;
                            best[1] = xp;
                            best[2] = y;
                            best[3] = yp;
                        }
                    }
        for (int k = 0; k < 4; ++k) center[k] = best[k];
        halfwidth /= 3.0;
    }

    ChshSearchResult out;
    detail::chsh_at(c_max, best[0], best[1], best[2], best[3], r);
    const double xs[4] = {best[0], best[0], best[1], best[1]};
    const double ys[4] = {best[2], best[3], best[2], best[3]};
    out.model.lambda_weights = {1.0};
    for (std::size_t pair = 0; pair < 4; ++pair)
        out.model.conditionals[pair].push_back(
            joint_from_binary({xs[pair], ys[pair], r[pair]}));
    const ModelAnalysis an = model_analysis(out.model);
    out.chsh = an.chsh;
    out.c_max = an.c_max;
    out.bound = relaxed_chsh_bound(c_max);
    return out;
}

} // namespace qcorr::verify
