#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "qcorr/qcorr.hpp"

using namespace qcorr;
using Catch::Approx;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

std::string binary() {
    const char* env = std::getenv("QCORR_BIN");
    REQUIRE(env != nullptr);
    return env;
}

CliResult run_cli(const std::string& args) {
    const std::string cmd = binary() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    std::array<char, 512> buf;
    while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string first_line(const std::string& s) {
    return s.substr(0, s.find('\n'));
}

std::string field(const std::string& output, const std::string& key) {
    const std::string needle = key + "=";
    std::size_t pos = 0;
    while (pos < output.size()) {
        const std::size_t eol = output.find('\n', pos);
        const std::string line = output.substr(pos, eol - pos);
        if (line.rfind(needle, 0) == 0) return line.substr(needle.size());
        if (eol == std::string::npos) break;
        pos = eol + 1;
    }
    FAIL("missing field " << key << " in:\n" << output);
    return {};
}

} // namespace

TEST_CASE("cli c0 and bound curves match the library") {
    const CliResult c0r = run_cli("c0");
    CHECK(c0r.exit_code == 0);
    CHECK(first_line(c0r.output) == io::format_sig(c0(), 9));
    CHECK(std::stod(c0r.output) == Approx(0.72654).margin(5e-5));

    CHECK(first_line(run_cli("classical-bound --c 0.5").output) ==
          io::format_sig(classical_tight_bound(0.5), 9));
    CHECK(first_line(run_cli("quantum-bound --c 1.0").output) ==
          io::format_sig(quantum_tight_bound(1.0), 9));
    CHECK(first_line(run_cli("pinsker --c 1.0").output) ==
          io::format_sig(pinsker_bound(1.0), 9));
    CHECK(first_line(run_cli("--nats pinsker --c 1.0").output) ==
          io::format_sig(0.5, 9));
}

TEST_CASE("cli make-state, mi, cdist, entangle, twirl") {
    const std::string state = temp_path("qcorr_cli_w1.json");
    CHECK(run_cli("make-state --family werner --p 1 --out " + state).exit_code == 0);

    const CliResult cd = run_cli("cdist --state " + state);
    CHECK(cd.exit_code == 0);
    CHECK(first_line(cd.output) == "1.5");

    const CliResult mi = run_cli("mi --state " + state);
    CHECK(first_line(mi.output) == "2");

    const CliResult en = run_cli("entangle --state " + state);
    CHECK(en.exit_code == 0);
    CHECK(field(en.output, "cdist_gt_one") == "true");
    CHECK(field(en.output, "ppt_entangled") == "true");

    const CliResult tw = run_cli("twirl --state " + state);
    CHECK(tw.exit_code == 0);
    const TwoQubitState twirled = io::parse_state_json(tw.output);
    for (std::size_t k = 0; k < 16; ++k) {
        CHECK(twirled.matrix().a[k].real() ==
              Approx(make_werner(1.0).matrix().a[k].real()).margin(1e-12));
    }
    std::remove(state.c_str());

    const std::string table = temp_path("qcorr_cli_table.csv");
    io::write_file(table, "0.5,0.0\n0.0,0.5\n");
    CHECK(first_line(run_cli("mi --table " + table).output) == "1");
    CHECK(first_line(run_cli("cdist --table " + table).output) == "1");
    std::remove(table.c_str());
}

TEST_CASE("cli bell-resources") {
    const CliResult r = run_cli("bell-resources --v 2");
    CHECK(r.exit_code == 0);
    CHECK(field(r.output, "c_max") == "1");
    CHECK(field(r.output, "i_min") == "1");
}

TEST_CASE("cli model-check") {
    const std::string path = temp_path("qcorr_cli_model.json");
    io::write_file(path, io::write_model_json(sample::lhv_model(3, 0)));
    const CliResult r = run_cli("model-check --model " + path);
    CHECK(r.exit_code == 0);
    const ModelAnalysis an = model_analysis(sample::lhv_model(3, 0));
    CHECK(field(r.output, "chsh") == io::format_sig(an.chsh, 9));
    CHECK(field(r.output, "c_max") == io::format_sig(an.c_max, 9));
    std::remove(path.c_str());
}

TEST_CASE("cli verify") {
    const CliResult r = run_cli("verify --kind classical_tight --samples 2000 --seed 42");
    CHECK(r.exit_code == 0);
    CHECK(field(r.output, "violations") == "0");
    CHECK(field(r.output, "kind") == "classical_tight");
    const verify::SweepReport rep = verify::run_sweep("classical_tight", 2000, 42);
    CHECK(field(r.output, "worst_margin") == io::format_sig(rep.worst_margin, 9));

    const CliResult conj =
        run_cli("verify --kind conjecture_shift_f --samples 500 --seed 7");
    CHECK(conj.exit_code == 0);
    CHECK(field(conj.output, "asserted") == "false");
}

TEST_CASE("cli figure") {
    const std::string path = temp_path("qcorr_cli_fig.csv");
    const CliResult r = run_cli("figure --which fig2 --step 0.5 --out " + path);
    CHECK(r.exit_code == 0);
    const std::string text = io::read_file(path);
    CHECK(text.rfind("# C0=", 0) == 0);
    CHECK(text.find("C,pinsker,classical_tight,quantum_tight") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli error exit codes") {
    // domain error -> 1
    CHECK(run_cli("classical-bound --c 1.5").exit_code == 1);
    // missing file -> 1
    CHECK(run_cli("mi --state /nonexistent/state.json").exit_code == 1);
    // usage errors -> 2
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("classical-bound").exit_code == 2);
    CHECK(run_cli("mi").exit_code == 2);
    CHECK(run_cli("verify --kind bogus --samples 10 --seed 1").exit_code == 2);
    // help -> 0
    CHECK(run_cli("--help").exit_code == 0);
}
