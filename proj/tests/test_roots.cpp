#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qloss/bounds.hpp"
#include "qloss/errors.hpp"
#include "qloss/roots.hpp"

using namespace qloss;

namespace {

// Least root of z = exp(-a + a z), computed independently.
double phase_root_oracle(double a) {
    return test::bisect_fixed_point([a](double z) { return std::exp(-a + a * z); },
                                    0.0, 1.0 - 1e-9);
}

}  // namespace

TEST_CASE("memoryless arrivals give the quadratic root exactly") {
    const auto r = takacs_root(Distribution::exponential(1.0), 2.0);
    // 2z^2 - 3z + 1 = 0 picks z = 1/2 below the unit root.
    CHECK(std::abs(r.root - 0.5) <= 1e-12);
    CHECK(r.residual < 1e-12);
    CHECK(r.bracket_lo <= r.root);
    CHECK(r.bracket_hi >= r.root);
    CHECK(r.warnings.empty());
}

TEST_CASE("deterministic arrivals match plain bisection") {
    const auto r = takacs_root(Distribution::deterministic(1.0), 2.0);
    CHECK(r.root == doctest::Approx(phase_root_oracle(2.0)).epsilon(1e-12));
    CHECK(r.root == doctest::Approx(0.2031878699799800).epsilon(1e-12));
}

TEST_CASE("unstable configurations are rejected") {
    CHECK_THROWS_AS(takacs_root(Distribution::exponential(1.0), 0.9), ModelError);
    CHECK_THROWS_AS(takacs_root(Distribution::deterministic(2.0), 0.5), ModelError);
}

TEST_CASE("root is nonincreasing in mu") {
    const auto d = Distribution::deterministic(1.0);
    double prev = 1.0;
    for (double mu : {1.2, 1.5, 2.0, 3.0, 5.0}) {
        const double root = takacs_root(d, mu).root;
        CHECK(root < prev);
        prev = root;
    }
}

TEST_CASE("solver agrees with the bisection oracle across the catalog") {
    Rng rng({23, "root-sweep"});
    for (int trial = 0; trial < 250; ++trial) {
        const auto draw = test::random_catalog(rng);
        const double expect = test::bisect_fixed_point(
            [&](double z) { return draw.dist.lst(draw.mu - draw.mu * z); }, 0.0,
            1.0 - 1e-9);
        const auto r = takacs_root(draw.dist, draw.mu);
        CHECK(std::abs(r.root - expect) <= 1e-10);
    }
}

TEST_CASE("every catalog root lands inside its class bounds") {
    Rng rng({29, "root-sandwich"});
    for (int trial = 0; trial < 250; ++trial) {
        const auto draw = test::random_catalog(rng);
        const double g1 = draw.dist.mean();
        const double g2 = draw.dist.second_moment();
        const double ell = ell_root(g1, draw.mu).root;
        const double upper = 1.0 + g1 * g1 / g2 * (ell - 1.0);
        const double root = takacs_root(draw.dist, draw.mu).root;
        CHECK(root >= ell - 1e-12);
        CHECK(root <= upper + 1e-12);
    }
}

TEST_CASE("phase root values and consistency with the catalog solver") {
    const auto ell = ell_root(1.0, 2.0);
    CHECK(ell.root == doctest::Approx(0.2031878699799800).epsilon(1e-12));

    const auto det = takacs_root(Distribution::deterministic(1.0), 2.0);
    CHECK(std::abs(ell.root - det.root) <= 1e-12);

    // Near-critical case stays strictly inside (0.99, 1) and warns.
    const auto near = ell_root(1.0, 1.0001);
    CHECK(near.root > 0.99);
    CHECK(near.root < 1.0);
    CHECK(near.root == doctest::Approx(0.9998000266635559).epsilon(1e-9));

    const auto warned = ell_root(1.0, 1.0 + 1e-7);
    REQUIRE_FALSE(warned.warnings.empty());
    CHECK(warned.warnings.front().find("near-critical") != std::string::npos);
}

TEST_CASE("literal sign convention has a root below the consistent one") {
    const auto consistent = ell_root(1.0, 2.0, 1, 1.0, EllSign::kConsistent);
    const auto literal = ell_root(1.0, 2.0, 1, 1.0, EllSign::kLiteral);
    CHECK(literal.root < consistent.root);
    // Fixed-point identity for the literal variant.
    const double z = literal.root;
    CHECK(std::abs(z - std::exp(-2.0 * (1.0 + z))) < 1e-12);
    // The literal variant has a fixed point for any load.
    CHECK_NOTHROW(ell_root(1.0, 0.5, 1, 1.0, EllSign::kLiteral));
}

TEST_CASE("thinned stream solves through the generic engine") {
    // Thinning a memoryless stream by 1/2 is again memoryless at half rate,
    // so the root is the load 0.5/2.
    const auto base = Distribution::exponential(1.0);
    const double p_k = 0.5;
    const std::function<double(double)> f = [&](double s) {
        const double a = base.lst(s);
        return p_k * a / (1.0 - (1.0 - p_k) * a);
    };
    const std::function<double(double)> fp = [&](double s) {
        const double a = base.lst(s);
        const double q = 1.0 - (1.0 - p_k) * a;
        return p_k * base.lst_derivative(s) / (q * q);
    };
    const auto r = least_root(f, fp, base.mean() / p_k, 2.0);
    CHECK(std::abs(r.root - 0.25) <= 1e-12);
}

TEST_CASE("boundary mean reproduces the class upper bound") {
    const MomentClass cls{1.0, 2.0};
    const auto bm = boundary_m(cls, 2.0);
    CHECK(bm.m == doctest::Approx(0.6377570931941818).epsilon(1e-9));
    CHECK(bm.m > 0.5);
    CHECK(bm.m <= 1.0);

    const double ell = ell_root(1.0, 2.0).root;
    const double target = 1.0 + 0.5 * (ell - 1.0);
    CHECK(target == doctest::Approx(0.601594).epsilon(1e-6));
    CHECK(std::abs(bm.ell_at_m.root - target) <= 1e-9);
}

TEST_CASE("boundary mean degenerates to g1 with a trivial class") {
    const auto exact = boundary_m({1.0, 1.0}, 2.0);
    CHECK(exact.m == doctest::Approx(1.0).epsilon(1e-12));

    const auto close = boundary_m({1.0, 1.0 + 1e-6}, 2.0);
    CHECK(close.m == doctest::Approx(1.0).epsilon(1e-4));
}
