#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qcorr/prob.hpp"
#include "qcorr/rng.hpp"

using namespace qcorr;
using Catch::Approx;

namespace {
constexpr double kTol = 1e-9;
}

TEST_CASE("ProbVector validation") {
    CHECK_NOTHROW(ProbVector({0.5, 0.5}));
    CHECK_NOTHROW(ProbVector({1.0, -5e-13}));  // clipped to zero
    CHECK(ProbVector({1.0, -5e-13})[1] == 0.0);
    CHECK_THROWS_AS(ProbVector({1.0, -1e-6}), validation_error);
    CHECK_THROWS_AS(ProbVector({0.5, 0.4}), validation_error);
    CHECK_THROWS_AS(ProbVector(std::vector<double>{}), validation_error);
}

TEST_CASE("shannon_entropy") {
    CHECK(shannon_entropy({0.5, 0.5}) == Approx(1.0).margin(1e-12));
    CHECK(shannon_entropy({1.0, 0.0}) == Approx(0.0).margin(1e-12));
    // direct evaluation of the defining sum
    CHECK(shannon_entropy({0.75, 0.25}) ==
          Approx(0.8112781244591328).margin(1e-12));
    CHECK(shannon_entropy({0.5, 0.5}, Unit::nats) ==
          Approx(std::numbers::ln2).margin(1e-12));
}

TEST_CASE("relative_entropy") {
    const ProbVector p{0.3, 0.7};
    CHECK(relative_entropy(p, p) == Approx(0.0).margin(1e-12));
    CHECK(relative_entropy({1.0, 0.0}, {0.5, 0.5}) == Approx(1.0).margin(1e-12));
    CHECK(std::isinf(relative_entropy({0.5, 0.5}, {1.0, 0.0})));
    CHECK_THROWS_AS(relative_entropy({1.0}, {0.5, 0.5}), validation_error);
}

TEST_CASE("variational_distance") {
    const ProbVector p{0.3, 0.7};
    CHECK(variational_distance(p, p) == 0.0);
    CHECK(variational_distance({1.0, 0.0}, {0.0, 1.0}) == Approx(2.0));
    CHECK(variational_distance({0.75, 0.25}, {0.5, 0.5}) == Approx(0.5));
    CHECK_THROWS_AS(variational_distance({1.0}, {0.5, 0.5}), validation_error);
}

TEST_CASE("mutual_information on tables") {
    // product table is uncorrelated
    const JointTable prod(2, 3, {0.2 * 0.1, 0.2 * 0.4, 0.2 * 0.5,
                                 0.8 * 0.1, 0.8 * 0.4, 0.8 * 0.5});
    CHECK(mutual_information(prod) == Approx(0.0).margin(1e-12));

    const JointTable corr(2, 2, {0.5, 0.0, 0.0, 0.5});
    CHECK(mutual_information(corr) == Approx(1.0).margin(1e-12));

    // maximally random marginals with r = 0.5 attain the classical bound
    const JointTable half = joint_from_binary({0.0, 0.0, 0.5});
    CHECK(mutual_information(half) == Approx(0.1887218755408671).margin(kTol));

    CHECK_THROWS_AS(JointTable(2, 2, {0.5, 0.5, 0.5, 0.5}), validation_error);
}

TEST_CASE("mutual information routes agree on random tables") {
    for (std::uint64_t i = 0; i < 500; ++i) {
        CounterRng rng(7, i);
        const std::size_t n = 2 + rng.next_u64() % 4;
        const std::size_t m = 2 + rng.next_u64() % 4;
        const JointTable t(n, m, rng.simplex(n * m));
        // mutual_information cross-checks the two defining formulas itself
        const double mi = mutual_information(t, Unit::nats);
        CHECK(mi >= 0.0);
        const double rel =
            relative_entropy(ProbVector(t.probs()), [&] {
                const ProbVector pa = t.row_marginal();
                const ProbVector pb = t.col_marginal();
                std::vector<double> w;
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < m; ++b) w.push_back(pa[a] * pb[b]);
                return ProbVector(w);
            }(), Unit::nats);
        CHECK(mi == Approx(rel).margin(kTol));
    }
}

TEST_CASE("distance caps") {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        CounterRng rng(101, i);
        const std::size_t n = 2 + rng.next_u64() % 5;
        const ProbVector p(rng.simplex(n));
        const ProbVector q(rng.simplex(n));
        CHECK(variational_distance(p, q) <= 2.0);
        const JointTable t(n, n, rng.simplex(n * n));
        CHECK(correlation_distance(t) <=
              2.0 * double(n - 1) / double(n) + 1e-9);
    }
}

TEST_CASE("correlation_distance on tables") {
    const JointTable prod(2, 2, {0.25, 0.25, 0.25, 0.25});
    CHECK(correlation_distance(prod) == Approx(0.0).margin(1e-12));
    CHECK(correlation_distance(JointTable(2, 2, {0.5, 0.0, 0.0, 0.5})) ==
          Approx(1.0).margin(1e-12));
    for (std::size_t n = 2; n <= 5; ++n) {
        std::vector<double> diag(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) diag[i * n + i] = 1.0 / double(n);
        CHECK(correlation_distance(JointTable(n, n, diag)) ==
              Approx(2.0 * double(n - 1) / double(n)).margin(kTol));
    }
}

TEST_CASE("joint_from_binary") {
    const JointTable uniform = joint_from_binary({0.0, 0.0, 0.0});
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) CHECK(uniform(a, b) == Approx(0.25));

    const JointTable diag = joint_from_binary({0.0, 0.0, 1.0});
    CHECK(diag(0, 0) == Approx(0.5));
    CHECK(diag(0, 1) == Approx(0.0).margin(1e-15));
    CHECK(diag(1, 1) == Approx(0.5));

    CHECK_THROWS_MATCHES(joint_from_binary({1.0, 1.0, 1.0}), domain_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("exceeds")));
    CHECK_THROWS_MATCHES(joint_from_binary({1.0, -1.0, -0.5}), domain_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("below")));
}

TEST_CASE("binary_from_joint") {
    const BinaryParams u = binary_from_joint(JointTable(2, 2, {0.25, 0.25, 0.25, 0.25}));
    CHECK(u.x == Approx(0.0).margin(1e-15));
    CHECK(u.y == Approx(0.0).margin(1e-15));
    CHECK(u.r == Approx(0.0).margin(1e-15));

    const BinaryParams d = binary_from_joint(JointTable(2, 2, {0.5, 0.0, 0.0, 0.5}));
    CHECK(d.r == Approx(1.0));

    const BinaryParams g = binary_from_joint(JointTable(2, 2, {0.4, 0.1, 0.2, 0.3}));
    CHECK(g.x == Approx(0.0).margin(1e-15));
    CHECK(g.y == Approx(0.2));
    CHECK(g.r == Approx(0.4));

    CHECK_THROWS_AS(binary_from_joint(JointTable(2, 3, {0.1, 0.1, 0.1, 0.2, 0.2, 0.3})),
                    validation_error);
}

TEST_CASE("binary params round-trip") {
    for (std::uint64_t i = 0; i < 2000; ++i) {
        CounterRng rng(11, i);
        BinaryParams b;
        do {
            b = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        } while (!is_physical(b, 0.0));
        const JointTable t = joint_from_binary(b);
        const BinaryParams back = binary_from_joint(t);
        CHECK(back.x == Approx(b.x).margin(1e-12));
        CHECK(back.y == Approx(b.y).margin(1e-12));
        CHECK(back.r == Approx(b.r).margin(1e-12));
        const JointTable t2 = joint_from_binary(back);
        for (std::size_t k = 0; k < 4; ++k)
            CHECK(t2.probs()[k] == Approx(t.probs()[k]).margin(1e-12));
        // correlation distance of the induced table is |r|
        CHECK(correlation_distance(t) == Approx(std::abs(b.r)).margin(kTol));
    }
}

TEST_CASE("positivity predicate matches entrywise nonnegativity") {
    for (std::uint64_t i = 0; i < 20000; ++i) {
        CounterRng rng(13, i);
        const BinaryParams b{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2),
                             rng.uniform(-1.5, 1.5)};
        bool entrywise = true;
        for (int ia = 0; ia < 2 && entrywise; ++ia)
            for (int ib = 0; ib < 2 && entrywise; ++ib) {
                const double a = ia == 0 ? 1.0 : -1.0;
                const double c = ib == 0 ? 1.0 : -1.0;
                if ((1.0 + a * b.x) * (1.0 + c * b.y) + a * c * b.r < 0.0)
                    entrywise = false;
            }
        CHECK(is_physical(b, 0.0) == entrywise);
    }
}

TEST_CASE("witness_f") {
    CHECK(witness_f({0.0, 0.0, 0.7}) == Approx(0.0).margin(1e-12));
    for (std::uint64_t i = 0; i < 200; ++i) {
        CounterRng rng(17, i);
        CHECK(witness_f({rng.uniform(-0.99, 0.99), rng.uniform(-0.99, 0.99), 0.0}) ==
              Approx(0.0).margin(1e-12));
    }
    CHECK(witness_f({0.5, 0.5, 0.2}) > 0.0);
}

TEST_CASE("witness_f nonnegative over sampled params") {
    for (std::uint64_t i = 0; i < 5000; ++i) {
        CounterRng rng(19, i);
        BinaryParams b;
        do {
            b = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        } while (!is_physical(b, 0.0));
        CHECK(witness_f(b, Unit::nats) >= -kTol);
    }
}

TEST_CASE("witness_second_derivative") {
    CHECK(witness_second_derivative(0.0, 0.0) == Approx(0.0).margin(1e-15));
    CHECK(witness_second_derivative(0.5, 0.0) == Approx(1.0 / 3.0).margin(1e-12));
    CHECK(witness_second_derivative(0.9, 0.9) ==
          Approx(26.70083102493075).margin(1e-10));
    CHECK_THROWS_AS(witness_second_derivative(1.0, 0.0), domain_error);
    CHECK_THROWS_AS(witness_second_derivative(0.0, -1.0), domain_error);
}

TEST_CASE("witness_second_derivative matches finite differences") {
    const double h = 1e-4;
    for (std::uint64_t i = 0; i < 300; ++i) {
        CounterRng rng(23, i);
        const double x = rng.uniform(-0.9, 0.9);
        const double y = rng.uniform(-0.9, 0.9);
        const double fp = witness_f({x, y, h}, Unit::nats);
        const double f0 = witness_f({x, y, 0.0}, Unit::nats);
        const double fm = witness_f({x, y, -h}, Unit::nats);
        const double numeric = (fp - 2.0 * f0 + fm) / (h * h);
        const double closed = witness_second_derivative(x, y);
        // 1e-5 relative, with the double-precision noise floor of the
        // second difference (~4e-16 / h^2) as the absolute cutoff
        CHECK(numeric == Approx(closed).epsilon(1e-5).margin(5e-8));
    }
}
