// Acceptance suite: runs every release criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "qcorr/qcorr.hpp"

using namespace qcorr;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", number,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string fmt(double v) { return io::format_sig(v, 9); }

void criterion_1_c0() {
    const auto start = std::chrono::steady_clock::now();
    const double value = compute_c0(1e-9);
    const double elapsed = seconds_since(start);
    const double err = std::abs(value - 0.72654);
    std::ostringstream os;
    os << "C0 = " << fmt(value) << ", |err| = " << fmt(err) << ", " << fmt(elapsed)
       << " s";
    report(1, "C0 reproduction", err < 5e-5 && elapsed < 1.0, os.str());
}

void criterion_2_werner() {
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        worst = std::max(worst,
                         std::abs(correlation_distance(make_werner(p)) - 1.5 * p));
    }
    const double singlet_c = correlation_distance(make_werner(1.0));
    const double singlet_i = mutual_information(make_werner(1.0));
    const bool ok = worst <= 1e-9 && std::abs(singlet_c - 1.5) <= 1e-9 &&
                    std::abs(singlet_i - 2.0) <= 1e-9;
    std::ostringstream os;
    os << "max |C - 3p/2| = " << fmt(worst) << ", singlet C = " << fmt(singlet_c)
       << ", I = " << fmt(singlet_i) << " bits";
    report(2, "Werner family", ok, os.str());
}

void criterion_3_classical_sweep() {
    const auto start = std::chrono::steady_clock::now();
    const verify::SweepReport rep = verify::run_sweep("classical_tight", 100000, 42);
    const double elapsed = seconds_since(start);
    double worst_sat = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double c = i / 100.0;
        for (double r : {c, -c}) {
            const double got = mutual_information(joint_from_binary({0.0, 0.0, r}));
            worst_sat = std::max(worst_sat, std::abs(got - classical_tight_bound(c)));
        }
    }
    const bool ok = rep.violations == 0 && worst_sat <= 1e-9 && elapsed < 10.0;
    std::ostringstream os;
    os << rep.violations << " violations in 1e5 samples, worst margin "
       << fmt(rep.worst_margin) << " nats, saturation |err| = " << fmt(worst_sat)
       << ", " << fmt(elapsed) << " s";
    report(3, "classical bound sweep", ok, os.str());
}

void criterion_4_quantum_sweep() {
    const auto start = std::chrono::steady_clock::now();
    const verify::SweepReport bd = verify::run_sweep("quantum_tight_bell_diagonal",
                                                     100000, 42);
    double worst_sat = 0.0;
    for (int i = 0; i <= 150; ++i) {
        const double c = i / 100.0;
        const double got = mutual_information(make_saturating(c));
        worst_sat = std::max(worst_sat, std::abs(got - quantum_tight_bound(c)));
    }
    const verify::SweepReport mm = verify::run_sweep("mixed_marginal_h3", 100000, 42);
    const double elapsed = seconds_since(start);
    const bool ok = bd.violations == 0 && mm.violations == 0 && worst_sat <= 1e-9 &&
                    elapsed < 60.0;
    std::ostringstream os;
    os << "Bell-diagonal violations " << bd.violations << " (worst margin "
       << fmt(bd.worst_margin) << " bits), saturating |err| = " << fmt(worst_sat)
       << ", mixed-marginal violations " << mm.violations << " over "
       << mm.samples - mm.skipped << " applicable, " << fmt(elapsed) << " s";
    report(4, "quantum bound sweep", ok, os.str());
}

void criterion_5_oracles() {
    bool ok = true;
    std::ostringstream os;
    for (double c : {0.25, 0.5, 1.0}) {
        const double got =
            verify::brute_force_min_mi(verify::BruteKind::classical, c, 2000);
        const double err = std::abs(got - classical_tight_bound(c));
        ok = ok && err <= 1e-5;
        os << "classical(" << c << ") err " << fmt(err) << "; ";
    }
    const double bd = verify::brute_force_min_mi(verify::BruteKind::bell_diagonal,
                                                 1.0, 2000);
    const double bd_err = std::abs(bd - 0.792481250360578);
    ok = ok && bd_err <= 1e-3;
    os << "bell_diagonal(1.0) err " << fmt(bd_err);
    report(5, "oracle agreement", ok, os.str());
}

void criterion_6_entanglement_chain() {
    const verify::SweepReport rep = verify::run_sweep("entanglement_chain", 100000, 42);
    double first_covariance = 2.0, first_cdist = 2.0;
    for (int i = 0; i <= 1000; ++i) {
        const double p = i / 1000.0;
        const EntanglementReport er = entanglement_report(make_werner(p));
        if (er.covariance_criterion && p < first_covariance) first_covariance = p;
        if (er.cdist_gt_one && p < first_cdist) first_cdist = p;
    }
    const bool ok = rep.violations == 0 &&
                    std::abs(first_covariance - 1.0 / 3.0) <= 1e-3 + 1e-12 &&
                    std::abs(first_cdist - 2.0 / 3.0) <= 1e-3 + 1e-12;
    std::ostringstream os;
    os << rep.violations << " chain violations in 1e5 samples; Werner thresholds "
       << fmt(first_covariance) << " (covariance) and " << fmt(first_cdist)
       << " (C > 1)";
    report(6, "entanglement chain", ok, os.str());
}

void criterion_7_ordering() {
    bool ok = true;
    double strict_margin_09 =
        classical_tight_bound(0.9) - quantum_tight_bound(0.9);
    for (int i = 0; i <= 1000 && ok; ++i) {
        const double c = i / 1000.0;
        const double p = pinsker_bound(c);
        const double q = quantum_tight_bound(c);
        const double cl = classical_tight_bound(c);
        if (p > q + 1e-12 || q > cl + 1e-12) ok = false;
        const bool equal = std::abs(q - cl) <= 1e-9;
        if (equal != (c <= c0())) ok = false;
    }
    ok = ok && strict_margin_09 > 1e-6;
    std::ostringstream os;
    os << "pinsker <= quantum <= classical on 1e-3 grid, equality iff C <= C0, "
          "gap at 0.9 = "
       << fmt(strict_margin_09) << " bits";
    report(7, "bound ordering", ok, os.str());
}

void criterion_8_bell_resources() {
    const SimulationResources lo = simulation_resources(0.0);
    const SimulationResources hi = simulation_resources(2.0);
    const verify::SweepReport rep = verify::run_sweep("relaxed_chsh", 10000, 42);
    const bool ok = std::abs(lo.c_max_required) <= 1e-12 &&
                    std::abs(lo.i_min_bits) <= 1e-12 &&
                    std::abs(hi.c_max_required - 1.0) <= 1e-12 &&
                    std::abs(hi.i_min_bits - 1.0) <= 1e-12 && rep.violations == 0;
    std::ostringstream os;
    os << "endpoints (" << fmt(lo.c_max_required) << ", " << fmt(lo.i_min_bits)
       << ") and (" << fmt(hi.c_max_required) << ", " << fmt(hi.i_min_bits) << "); "
       << rep.violations << " bound violations in 1e4 models";
    report(8, "Bell resources", ok, os.str());
}

void criterion_9_data_processing() {
    const verify::SweepReport dp = verify::run_sweep("data_processing", 10000, 42);
    const verify::SweepReport eq = verify::run_sweep("data_processing_equality",
                                                     10000, 42);
    const bool ok = dp.violations == 0 && eq.violations == 0;
    std::ostringstream os;
    os << dp.violations << " monotonicity violations (worst margin "
       << fmt(dp.worst_margin) << " bits); " << eq.violations
       << " equality violations (worst margin " << fmt(eq.worst_margin) << ")";
    report(9, "data processing", ok, os.str());
}

void criterion_10_conjecture() {
    const verify::SweepReport a = verify::run_sweep("conjecture_shift_f", 100000, 42);
    const verify::SweepReport b = verify::run_sweep("conjecture_shift_f", 100000, 42);
    const bool deterministic = a.worst_margin == b.worst_margin &&
                               a.worst_index == b.worst_index &&
                               a.worst_case == b.worst_case &&
                               a.skipped == b.skipped;
    std::ostringstream os;
    os << "min F = " << fmt(a.worst_margin) << " bits over " << a.samples - a.skipped
       << " positive shifts (" << a.skipped << " non-positive reported), deterministic="
       << (deterministic ? "yes" : "no");
    if (a.worst_margin < -1e-6) {
        os << "; counterexample state: " << a.worst_case;
        std::printf("conjecture counterexample (F = %s): %s\n",
                    fmt(a.worst_margin).c_str(), a.worst_case.c_str());
    }
    report(10, "conjecture exploration", deterministic, os.str());
}

} // namespace

int main() {
    criterion_1_c0();
    criterion_2_werner();
    criterion_3_classical_sweep();
    criterion_4_quantum_sweep();
    criterion_5_oracles();
    criterion_6_entanglement_chain();
    criterion_7_ordering();
    criterion_8_bell_resources();
    criterion_9_data_processing();
    criterion_10_conjecture();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria failed\n", failures);
    return failures;
}
