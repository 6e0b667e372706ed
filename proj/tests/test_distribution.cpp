#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qloss/distribution.hpp"
#include "qloss/errors.hpp"
#include "qloss/kolmogorov.hpp"
#include "qloss/rng.hpp"

using namespace qloss;

TEST_CASE("cdf basics") {
    const auto det = Distribution::deterministic(2.0);
    CHECK(det.cdf(1.9) == 0.0);
    CHECK(det.cdf(2.0) == 1.0);
    CHECK(det.cdf(-1.0) == 0.0);

    const auto exp1 = Distribution::exponential(1.0);
    CHECK(exp1.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));

    const auto emp = Distribution::empirical({3.0, 1.0, 2.0});  // sorted on entry
    CHECK(emp.cdf(0.5) == 0.0);
    CHECK(emp.cdf(1.0) == doctest::Approx(1.0 / 3));
    CHECK(emp.cdf(2.5) == doctest::Approx(2.0 / 3));
    CHECK(emp.cdf(3.0) == 1.0);
}

TEST_CASE("cdf is nondecreasing and tends to one") {
    Rng rng({7, "cdf-shape"});
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = test::random_catalog(rng).dist;
        const double hi = d.upper_range(1e-10);
        double prev = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double c = d.cdf(hi * i / 200);
            CHECK(c >= prev - 1e-15);
            prev = c;
        }
        CHECK(d.cdf(hi) >= 1.0 - 1e-9);
    }
}

TEST_CASE("lst normalization and closed forms") {
    const auto exp2 = Distribution::exponential(2.0);
    CHECK(exp2.lst(0.0) == 1.0);
    for (double s : {0.1, 0.5, 1.0, 5.0})
        CHECK(exp2.lst(s) == doctest::Approx(2.0 / (2.0 + s)).epsilon(1e-14));

    // Extremal two-point law: value matches its class upper envelope exactly.
    const auto gmax = Distribution::two_point_gmax(1.0, 2.0);
    const double expected = 1.0 - 0.5 + 0.5 * std::exp(-2.0);
    CHECK(gmax.lst(1.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(gmax.lst(1.0) == doctest::Approx(0.56767).epsilon(1e-4));
}

TEST_CASE("lst is in (0,1] and strictly decreasing") {
    Rng rng({11, "lst-shape"});
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = test::random_catalog(rng).dist;
        const double scale = 1.0 / d.mean();
        double prev = 1.0 + 1e-15;
        for (int i = 0; i <= 100; ++i) {
            const double v = d.lst(0.3 * scale * i);
            CHECK(v > 0.0);
            CHECK(v <= 1.0);
            CHECK(v <= prev);
            // Strict decrease where the decrement is representable; laws with
            // an atom at zero flatten onto that mass once s is large.
            if (i <= 20) CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("lst derivative closed forms against finite differences") {
    CHECK(Distribution::exponential(1.0).lst_derivative(0.0) ==
          doctest::Approx(-1.0).epsilon(1e-12));

    const auto det = Distribution::deterministic(1.5);
    for (double s : {0.0, 0.4, 2.0})
        CHECK(det.lst_derivative(s) ==
              doctest::Approx(-1.5 * std::exp(-1.5 * s)).epsilon(1e-12));

    const auto erl = Distribution::erlang(2, 2.0);
    CHECK(erl.lst_derivative(1.0) == doctest::Approx(-8.0 / 27.0).epsilon(1e-13));
    CHECK(erl.lst_derivative(1.0) ==
          doctest::Approx(test::fd_lst_derivative(erl, 1.0)).epsilon(1e-7));

    Rng rng({13, "lstd"});
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = test::random_catalog(rng).dist;
        const double s = 0.2 + 2.0 * rng.uniform();
        CHECK(d.lst_derivative(s) ==
              doctest::Approx(test::fd_lst_derivative(d, s)).epsilon(1e-6));
        CHECK(d.lst_derivative(0.0) == doctest::Approx(-d.mean()).epsilon(1e-10));
    }
}

TEST_CASE("moments satisfy the Cauchy-Schwarz floor") {
    Rng rng({17, "moments"});
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = test::random_catalog(rng).dist;
        CHECK(d.mean() > 0.0);
        CHECK(d.second_moment() >= d.mean() * d.mean() * (1.0 - 1e-12));
    }
}

TEST_CASE("class envelopes bracket every in-class transform") {
    Rng rng({19, "envelope"});
    const MomentClass cls{1.0, 2.0};
    for (int trial = 0; trial < 40; ++trial) {
        const auto d = test::random_in_class(cls, rng);
        REQUIRE(d.mean() == doctest::Approx(1.0).epsilon(1e-9));
        REQUIRE(d.second_moment() == doctest::Approx(2.0).epsilon(1e-9));
        for (int i = 0; i <= 100; ++i) {
            const double s = 0.25 * i;
            const double lo = std::exp(-s * cls.g1);
            const double hi = 1.0 - 0.5 + 0.5 * std::exp(-2.0 * s);
            const double v = d.lst(s);
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
    }
}

TEST_CASE("envelope gap grows monotonically to the class width") {
    const MomentClass cls{1.0, 3.0};
    const double width = 1.0 - cls.g1 * cls.g1 / cls.g2;
    double prev = -1.0;
    for (int i = 0; i <= 400; ++i) {
        const double s = 0.1 * i;
        const double gap = (1.0 - cls.g1 * cls.g1 / cls.g2) +
                           cls.g1 * cls.g1 / cls.g2 *
                               std::exp(-(cls.g2 / cls.g1) * s) -
                           std::exp(-s * cls.g1);
        CHECK(gap >= prev - 1e-15);
        prev = gap;
    }
    CHECK(prev == doctest::Approx(width).epsilon(1e-10));
}

TEST_CASE("construction rejects invalid parameters") {
    CHECK_THROWS_AS(Distribution::exponential(0.0), ConfigError);
    CHECK_THROWS_AS(Distribution::deterministic(-1.0), ConfigError);
    CHECK_THROWS_AS(Distribution::erlang(0, 1.0), ConfigError);
    CHECK_THROWS_AS(Distribution::hyperexponential({0.5, 0.4}, {1.0, 2.0}),
                    ConfigError);
    CHECK_THROWS_AS(Distribution::hyperexponential({0.5, 0.5}, {1.0, -2.0}),
                    ConfigError);
    CHECK_THROWS_AS(Distribution::two_point_gmax(1.0, 0.5), ConfigError);
    CHECK_THROWS_AS(Distribution::empirical({1.0, -2.0}), ConfigError);
    CHECK_THROWS_AS(Distribution::mixture(1.5, Distribution::exponential(1.0),
                                          Distribution::exponential(2.0)),
                    ConfigError);
}

TEST_CASE("in-class mixture keeps moments and stays within p") {
    const MomentClass cls{1.0, 2.0};
    const auto f = Distribution::two_point_gmax(1.0, 2.0);
    const auto base = Distribution::exponential(1.0);

    const auto mixed = in_class_mixture(cls, f, base, 0.04);
    CHECK(mixed.mean() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mixed.second_moment() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(kolmogorov_distance(mixed, base).value < 0.04);

    // Degenerate weight: the mixture collapses onto the base.
    const auto tiny = in_class_mixture(cls, f, base, 1e-4);
    CHECK(kolmogorov_distance(tiny, base).value <= 1e-4);

    CHECK_THROWS_AS(
        in_class_mixture(cls, Distribution::exponential(2.0), base, 0.1),
        ModelError);
    CHECK_THROWS_AS(in_class_mixture(cls, f, base, 0.0), ConfigError);
}

TEST_CASE("empirical estimates report sample moments") {
    const auto flat = empirical_from_samples({1.0, 1.0, 1.0, 1.0});
    CHECK(flat.moments.g1 == doctest::Approx(1.0));
    CHECK(flat.moments.g2 == doctest::Approx(1.0));
    CHECK_FALSE(flat.moments.nontrivial());

    const auto two = empirical_from_samples({1.0, 3.0});
    CHECK(two.moments.g1 == doctest::Approx(2.0));
    CHECK(two.moments.g2 == doctest::Approx(5.0));

    CHECK_THROWS_AS(empirical_from_samples({1.0}), ConfigError);
    CHECK_THROWS_AS(empirical_from_samples({}), ConfigError);
}

TEST_CASE("empirical deviation stays inside the 1.36/sqrt(N) band") {
    // Monte-Carlo check of the large-sample confidence band: the asymptotic
    // coverage of 1.36 is about 95%, so with 200 fixed seeds at N = 1e5 at
    // least 95% of the draws must fall inside.
    const auto ref = Distribution::exponential(1.0);
    const std::size_t n = 100000;
    const double band = 1.36 / std::sqrt(static_cast<double>(n));
    int inside = 0;
    for (int seed = 4000; seed < 4200; ++seed) {
        Rng rng({static_cast<std::uint64_t>(seed), "ks-band"});
        std::vector<double> draws(n);
        for (auto& x : draws) x = rng.exponential(1.0);
        const auto est = empirical_from_samples(std::move(draws));
        if (kolmogorov_distance(est.dist, ref).value < band) ++inside;
    }
    CHECK(inside >= 190);
}
