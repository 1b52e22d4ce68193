// Command-line frontend: every library computation and sweep behind a
// subcommand. Exit codes: 0 success, 1 domain or validation error,
// 2 usage error, 3 asserted sweep with violations.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcorr/qcorr.hpp"

namespace {

using namespace qcorr;

std::string fmt(double v) { return io::format_sig(v, 9); }

const char* yesno(bool b) { return b ? "true" : "false"; }

Vec3 parse_vec3(const std::string& text, const char* what) {
    Vec3 v{};
    std::istringstream is(text);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(is, cell, ',')) {
        if (i >= 3) throw domain_error(std::string(what) + ": expected 3 components");
        try {
            v[i++] = std::stod(cell);
        } catch (const std::exception&) {
            throw domain_error(std::string(what) + ": bad component '" + cell + "'");
        }
    }
    if (i != 3) throw domain_error(std::string(what) + ": expected 3 components");
    return v;
}

struct FileInput {
    std::string table;
    std::string state;

    void add_options(CLI::App* cmd) {
        auto* t = cmd->add_option("--table", table, "joint table CSV file");
        auto* s = cmd->add_option("--state", state, "two-qubit state JSON file");
        t->excludes(s);
        s->excludes(t);
    }
};

int run(int argc, char** argv) {
    CLI::App app{"mutual information bounds and correlation distances for "
                 "two-level systems"};
    app.require_subcommand(1);
    bool nats = false;
    app.add_flag("--nats", nats, "report entropic quantities in nats (default bits)");
    auto unit = [&] { return nats ? Unit::nats : Unit::bits; };

    int exit_code = 0;

    // mi / cdist
    FileInput mi_in;
    auto* mi_cmd = app.add_subcommand("mi", "mutual information of a table or state");
    mi_in.add_options(mi_cmd);
    mi_cmd->callback([&] {
        if (!mi_in.table.empty())
            std::cout << fmt(mutual_information(io::load_table(mi_in.table), unit()))
                      << "\n";
        else if (!mi_in.state.empty())
            std::cout << fmt(mutual_information(io::load_state(mi_in.state), unit()))
                      << "\n";
        else
            throw CLI::RequiredError("--table or --state");
    });

    FileInput cd_in;
    auto* cd_cmd =
        app.add_subcommand("cdist", "correlation distance of a table or state");
    cd_in.add_options(cd_cmd);
    cd_cmd->callback([&] {
        if (!cd_in.table.empty())
            std::cout << fmt(correlation_distance(io::load_table(cd_in.table))) << "\n";
        else if (!cd_in.state.empty())
            std::cout << fmt(correlation_distance(io::load_state(cd_in.state))) << "\n";
        else
            throw CLI::RequiredError("--table or --state");
    });

    // bound curves
    double bound_c = 0.0;
    auto* cb_cmd = app.add_subcommand("classical-bound",
                                      "tight classical lower bound at distance C");
    cb_cmd->add_option("--c", bound_c, "correlation distance")->required();
    cb_cmd->callback([&] { std::cout << fmt(classical_tight_bound(bound_c, unit())) << "\n"; });

    double qbound_c = 0.0;
    auto* qb_cmd =
        app.add_subcommand("quantum-bound", "tight quantum lower bound at distance C");
    qb_cmd->add_option("--c", qbound_c, "correlation distance")->required();
    qb_cmd->callback([&] { std::cout << fmt(quantum_tight_bound(qbound_c, unit())) << "\n"; });

    double pins_c = 0.0;
    auto* pi_cmd = app.add_subcommand("pinsker", "Pinsker lower bound at distance C");
    pi_cmd->add_option("--c", pins_c, "correlation distance")->required();
    pi_cmd->callback([&] { std::cout << fmt(pinsker_bound(pins_c, unit())) << "\n"; });

    auto* c0_cmd = app.add_subcommand("c0", "branch threshold of the quantum bound");
    c0_cmd->callback([&] { std::cout << fmt(c0()) << "\n"; });

    // entangle
    std::string ent_state;
    auto* en_cmd = app.add_subcommand("entangle", "entanglement criteria for a state");
    en_cmd->add_option("--state", ent_state, "state JSON file")->required();
    en_cmd->callback([&] {
        const EntanglementReport r = entanglement_report(io::load_state(ent_state));
        std::cout << "cdist=" << fmt(r.cdist) << "\n"
                  << "covariance_sum=" << fmt(r.covariance_sum) << "\n"
                  << "separable_rhs=" << fmt(r.separable_rhs) << "\n"
                  << "min_ppt_eigenvalue=" << fmt(r.min_ppt_eigenvalue) << "\n"
                  << "cdist_gt_one=" << yesno(r.cdist_gt_one) << "\n"
                  << "purity_criterion=" << yesno(r.purity_criterion) << "\n"
                  << "covariance_criterion=" << yesno(r.covariance_criterion) << "\n"
                  << "ppt_entangled=" << yesno(r.ppt_entangled) << "\n";
    });

    // make-state
    std::string family, mk_out, mk_table, mk_axis_a = "0,0,1", mk_axis_b = "0,0,1";
    std::string mk_u, mk_v;
    double mk_p = 0.0, mk_c = 0.0, mk_r1 = 0.0, mk_r2 = 0.0, mk_r3 = 0.0;
    auto* mk_cmd = app.add_subcommand("make-state", "construct a named state family");
    mk_cmd->add_option("--family", family, "werner | bell_diagonal | saturating | "
                                           "classically_correlated | product")
        ->required();
    mk_cmd->add_option("--out", mk_out, "output state JSON file")->required();
    mk_cmd->add_option("--p", mk_p, "werner weight in [-1/3, 1]");
    mk_cmd->add_option("--c", mk_c, "saturating correlation distance in [0, 3/2]");
    mk_cmd->add_option("--r1", mk_r1, "Bell-diagonal coefficient");
    mk_cmd->add_option("--r2", mk_r2, "Bell-diagonal coefficient");
    mk_cmd->add_option("--r3", mk_r3, "Bell-diagonal coefficient");
    mk_cmd->add_option("--table", mk_table, "2x2 table CSV for classically_correlated");
    mk_cmd->add_option("--axis-a", mk_axis_a, "local basis axis on A, \"x,y,z\"");
    mk_cmd->add_option("--axis-b", mk_axis_b, "local basis axis on B, \"x,y,z\"");
    mk_cmd->add_option("--u", mk_u, "Bloch vector of A for product, \"x,y,z\"");
    mk_cmd->add_option("--v", mk_v, "Bloch vector of B for product, \"x,y,z\"");
    mk_cmd->callback([&] {
        std::optional<TwoQubitState> state;
        if (family == "werner") {
            state = make_werner(mk_p);
        } else if (family == "bell_diagonal") {
            state = make_bell_diagonal(mk_r1, mk_r2, mk_r3);
        } else if (family == "saturating") {
            state = make_saturating(mk_c);
        } else if (family == "classically_correlated") {
            if (mk_table.empty()) throw CLI::RequiredError("--table");
            state = make_classically_correlated(io::load_table(mk_table),
                                                parse_vec3(mk_axis_a, "--axis-a"),
                                                parse_vec3(mk_axis_b, "--axis-b"));
        } else if (family == "product") {
            if (mk_u.empty() || mk_v.empty()) throw CLI::RequiredError("--u and --v");
            state = make_product(parse_vec3(mk_u, "--u"), parse_vec3(mk_v, "--v"));
        } else {
            throw CLI::ValidationError("--family", "unknown family '" + family + "'");
        }
        io::save_state(*state, mk_out);
    });

    // twirl
    std::string tw_state, tw_out;
    auto* tw_cmd = app.add_subcommand("twirl", "project a state onto the Werner family");
    tw_cmd->add_option("--state", tw_state, "state JSON file")->required();
    tw_cmd->add_option("--out", tw_out, "output file (stdout when omitted)");
    tw_cmd->callback([&] {
        const TwoQubitState t = twirl(io::load_state(tw_state));
        if (tw_out.empty())
            std::cout << io::write_state_json(t) << "\n";
        else
            io::save_state(t, tw_out);
    });

    // bell-resources
    double bell_v = 0.0;
    auto* br_cmd = app.add_subcommand(
        "bell-resources", "classical resources to simulate CHSH value 2 + V");
    br_cmd->add_option("--v", bell_v, "violation V in [0, 2]")->required();
    br_cmd->callback([&] {
        const SimulationResources r = simulation_resources(bell_v);
        std::cout << "c_max=" << fmt(r.c_max_required) << "\n"
                  << "i_min=" << fmt(from_nats(r.i_min_bits * std::numbers::ln2, unit()))
                  << "\n";
    });

    // model-check
    std::string model_path;
    auto* mc_cmd = app.add_subcommand("model-check", "analyze an LHV model file");
    mc_cmd->add_option("--model", model_path, "model JSON file")->required();
    mc_cmd->callback([&] {
        const ModelAnalysis an = model_analysis(io::load_model(model_path));
        std::cout << "chsh=" << fmt(an.chsh) << "\n"
                  << "c_max=" << fmt(an.c_max) << "\n"
                  << "outcome_independent=" << yesno(an.outcome_independent) << "\n"
                  << "chsh_bound=" << fmt(relaxed_chsh_bound(std::min(an.c_max, 1.0)))
                  << "\n";
    });

    // verify
    std::string kind;
    std::uint64_t samples = 100000, seed = 42;
    unsigned workers = 0;
    auto* vf_cmd = app.add_subcommand("verify", "run a seeded property sweep");
    vf_cmd->add_option("--kind", kind, "sweep kind")
        ->required()
        ->check(CLI::IsMember(verify::sweep_kinds()));
    vf_cmd->add_option("--samples", samples, "number of samples (default 100000)");
    vf_cmd->add_option("--seed", seed, "sweep seed (default 42)");
    vf_cmd->add_option("--workers", workers, "worker threads (default: auto)");
    vf_cmd->callback([&] {
        const verify::SweepReport rep = verify::run_sweep(kind, samples, seed, workers);
        std::cout << "kind=" << rep.kind << "\n"
                  << "samples=" << rep.samples << "\n"
                  << "violations=" << rep.violations << "\n"
                  << "skipped=" << rep.skipped << "\n"
                  << "worst_margin=" << fmt(rep.worst_margin) << "\n"
                  << "worst_index=" << rep.worst_index << "\n"
                  << "worst_case=" << rep.worst_case << "\n"
                  << "seed=" << rep.seed << "\n"
                  << "asserted=" << yesno(rep.asserted) << "\n";
        exit_code = verify::exit_code_for(rep);
    });

    // figure
    std::string which, fig_out;
    double step = 0.01;
    auto* fg_cmd = app.add_subcommand("figure", "emit bound-curve CSV data");
    fg_cmd->add_option("--which", which, "fig1 | fig2")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2"}));
    fg_cmd->add_option("--step", step, "C grid step (default 0.01)");
    fg_cmd->add_option("--out", fig_out, "output CSV file")->required();
    fg_cmd->callback([&] {
        verify::emit_figure(which == "fig1" ? verify::Figure::fig1 : verify::Figure::fig2,
                            step, fig_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const qcorr::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
