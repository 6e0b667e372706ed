#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qloss/errors.hpp"
#include "qloss/models.hpp"
#include "qloss/sim.hpp"

using namespace qloss;

namespace {

GIM1nConfig mm1n(double rho, int n) {
    return GIM1nConfig{Distribution::exponential(1.0), 1.0 / rho, n};
}

}  // namespace

TEST_CASE("identical rng specs reproduce identical estimates") {
    const auto cfg = mm1n(0.5, 10);
    const RngSpec spec{42, "repro"};
    const auto a = simulate_gim1n(cfg, 50000, spec);
    const auto b = simulate_gim1n(cfg, 50000, spec);
    CHECK(a.point == b.point);
    CHECK(a.half_width == b.half_width);
    CHECK(a.losses == b.losses);
    CHECK(a.rng_algorithm == std::string("mt19937_64/inverse-transform"));

    const auto c = simulate_gim1n(cfg, 50000, RngSpec{42, "other-stream"});
    CHECK(c.losses != a.losses);
}

TEST_CASE("memoryless loss estimate covers the closed form") {
    const auto est = simulate_gim1n(mm1n(0.5, 10), 1000000, {42, "mm1n"});
    const double exact = test::mm1n_loss(0.5, 10);
    CHECK(std::abs(est.point - exact) <= 3.0 * est.half_width);
    CHECK(est.half_width > 0.0);
    CHECK(est.losses <= est.arrivals);
}

TEST_CASE("single-place system reproduces the blocking formula") {
    // Capacity one means every arrival finding a busy server is lost.
    const auto est = simulate_gim1n(mm1n(0.5, 1), 200000, {42, "erlang-b"});
    CHECK(std::abs(est.point - test::erlang_b1(0.5)) <= 3.0 * est.half_width);
}

TEST_CASE("deterministic arrivals agree with the asymptotic formula") {
    GIM1nConfig cfg{Distribution::deterministic(1.0), 2.0, 6};
    const double formula = gim1n_loss_asymptotic(cfg).value;
    const auto est = simulate_gim1n(cfg, 2000000, {7, "det-gim1n"});
    const auto env = gim1n_envelope({1.0, 1.0}, 2.0, 6, 0.2031878699799800, 0.0);
    CHECK(est.point >= env.lower - 3.0 * est.half_width);
    CHECK(est.point <= env.upper + 3.0 * est.half_width);
    CHECK(std::abs(est.point - formula) <= 3.0 * est.half_width);
}

TEST_CASE("smoother arrivals: simulation validates the asymptotic value") {
    GIM1nConfig cfg{Distribution::erlang(2, 2.0), 2.0, 6};
    const double formula = gim1n_loss_asymptotic(cfg).value;  // 1.642e-3
    const auto est = simulate_gim1n(cfg, 1000000, {11, "erlang-gim1n"});
    CHECK(std::abs(est.point - formula) <= 3.0 * est.half_width);
}

TEST_CASE("buffer simulator limits") {
    MGI1BufferConfig cfg;
    cfg.lambda = 1.0;
    cfg.service = Distribution::exponential(2.0 / 3.0);
    cfg.capacity = 100.0;
    cfg.mean_batch = 2.0;
    cfg.batch_lower = 1;
    cfg.batch_upper = 3;

    SUBCASE("all batches corrupted means every batch lost") {
        cfg.error_prob = 1.0;
        const auto est = simulate_mgi1_buffer(cfg, 20000, {3, "buf-p1"});
        CHECK(est.point == 1.0);
    }

    SUBCASE("overload without errors sheds the excess exactly") {
        cfg.error_prob = 0.0;
        const auto est = simulate_mgi1_buffer(cfg, 200000, {5, "buf-p0"});
        CHECK(std::abs(est.point - 0.5 / 1.5) <= 3.0 * est.half_width);
    }

    SUBCASE("error losses match the asymptotic formula") {
        cfg.error_prob = 0.1;
        cfg.capacity = 60.0;
        const double formula = mgi1_buffer_loss(cfg).value;
        const auto est = simulate_mgi1_buffer(cfg, 200000, {9, "buf-cross"});
        CHECK(std::abs(est.point - formula) <= 3.0 * est.half_width);
    }
}

TEST_CASE("departure rule drains by priority") {
    std::vector<long long> counts{3, 3, 1};
    const long long removed = remove_by_priority(counts, 5);
    CHECK(removed == 5);
    CHECK(counts == std::vector<long long>{0, 1, 1});

    std::vector<long long> few{1, 0, 1};
    CHECK(remove_by_priority(few, 5) == 2);
    CHECK(few == std::vector<long long>{0, 0, 0});
}

TEST_CASE("single-type single-departure stream matches the plain simulator") {
    PriorityConfig cfg;
    cfg.lambda = 1.0;
    cfg.interarrival = Distribution::exponential(1.0);
    cfg.type_probs = {1.0};
    cfg.group_size = 1;
    cfg.mu = 2.0;
    cfg.capacities = {10};

    const auto pri = simulate_priority(cfg, 2000000, {21, "pri-reduction"});
    REQUIRE(pri.size() == 1);
    const auto plain = simulate_gim1n(mm1n(0.5, 10), 1000000, {22, "plain"});
    // Confidence intervals of the two estimators overlap.
    CHECK(pri[0].point - pri[0].half_width <= plain.point + plain.half_width);
    CHECK(plain.point - plain.half_width <= pri[0].point + pri[0].half_width);
}

TEST_CASE("paired departures: simulator matches the exact chain") {
    PriorityConfig cfg;
    cfg.lambda = 1.0;
    cfg.interarrival = Distribution::exponential(1.0);
    cfg.type_probs = {1.0};
    cfg.group_size = 2;
    cfg.mu = 0.75;
    cfg.capacities = {16};

    // With memoryless gaps the system is a finite Markov chain (up by one at
    // rate lambda, down by min(2, n) at rate mu); its stationary blocking
    // probability solves the balance equations exactly.
    const double chain_exact = 4.1696952414105514e-3;
    const auto est = simulate_priority(cfg, 3000000, {23, "pri-c2"});
    REQUIRE(est.size() == 1);
    CHECK(std::abs(est[0].point - chain_exact) <= 3.0 * est[0].half_width);

    // Known issue: the printed grouped-departure point formula understates
    // the chain value by a constant factor (~4.42 here); its decay rate
    // alpha^N is right, its prefactor is not. The exact tail constant is
    // 1 + C mu alpha^(C-1) A'(mu - mu alpha^C), not the printed one. Pinned
    // so the discrepancy stays visible.
    const double formula = priority_loss(cfg, 1).value;  // 9.36e-4
    CHECK(formula < 0.5 * chain_exact);
    const double alpha = priority_loss(cfg, 1).alpha.root;
    const double true_prefactor =
        1.0 + 2.0 * cfg.mu * alpha *
                  cfg.interarrival.lst_derivative(cfg.mu - cfg.mu * alpha * alpha);
    // Deeper buffer (N = 30) where the finite-size correction is ~3e-4.
    const double chain_n30 = 8.59791366165175e-5;
    CHECK(chain_n30 / std::pow(alpha, 30) ==
          doctest::Approx(true_prefactor).epsilon(2e-3));

    // The envelope's upper side still covers the true (simulated) value at
    // this configuration; the lower side overshoots it (pinned in the models
    // suite).
    const auto env = priority_envelope(cfg, 1, alpha, 0.02, {1.0, 2.0});
    CHECK(est[0].point <= env.upper + 3.0 * est[0].half_width);
}

TEST_CASE("wide high-priority buffers starve their losses") {
    PriorityConfig cfg;
    cfg.lambda = 1.0;
    cfg.interarrival = Distribution::exponential(1.0);
    cfg.type_probs = {0.5, 0.5};
    cfg.group_size = 1;
    cfg.mu = 2.0;
    cfg.capacities = {6, 3};

    const auto est = simulate_priority(cfg, 2000000, {25, "pri-two"});
    REQUIRE(est.size() == 2);
    CHECK(est[0].point < est[1].point);
    CHECK(est[1].point > 3.0 * est[1].half_width);
    CHECK_THROWS_AS(simulate_priority(PriorityConfig{1.0,
                                                     Distribution::exponential(1.0),
                                                     {0.5, 0.5},
                                                     1,
                                                     2.0,
                                                     {6}},
                                      20000, {1, "bad"}),
                    ConfigError);
}

TEST_CASE("interval estimates are calibrated") {
    const auto cfg = mm1n(0.5, 10);
    const double exact = test::mm1n_loss(0.5, 10);
    int covered = 0;
    for (int seed = 0; seed < 100; ++seed) {
        const auto est = simulate_gim1n(
            cfg, 100000, {static_cast<std::uint64_t>(seed), "calibration"});
        if (std::abs(est.point - exact) <= est.half_width) ++covered;
    }
    CHECK(covered >= 90);
}

TEST_CASE("larger buffers never lose significantly more") {
    double prev_point = 1.0, prev_hw = 0.0;
    for (int n : {5, 10, 20}) {
        const auto est = simulate_gim1n(mm1n(0.7, n), 400000, {31, "monotone"});
        CHECK(est.point <=
              prev_point + 3.0 * (est.half_width + prev_hw) / 1.96);
        prev_point = est.point;
        prev_hw = est.half_width;
    }
}

TEST_CASE("merged replications add counts and tighten the interval") {
    const auto cfg = mm1n(0.5, 10);
    const auto a = simulate_gim1n(cfg, 200000, {1, "rep-a"});
    const auto b = simulate_gim1n(cfg, 200000, {1, "rep-b"});
    const auto c = simulate_gim1n(cfg, 200000, {1, "rep-c"});

    const auto ab = merge(a, b);
    CHECK(ab.arrivals == a.arrivals + b.arrivals);
    CHECK(ab.losses == a.losses + b.losses);
    CHECK(ab.half_width < std::max(a.half_width, b.half_width));

    const auto abc1 = merge(ab, c);
    const auto abc2 = merge(a, merge(b, c));
    CHECK(abc1.point == doctest::Approx(abc2.point).epsilon(1e-15));
    CHECK(abc1.half_width == doctest::Approx(abc2.half_width).epsilon(1e-12));
}

TEST_CASE("confidence band width for empirical CDFs") {
    const double eps = ks_confidence_epsilon(10000, 0.95);
    CHECK(eps >= 0.01357);
    CHECK(eps <= 0.01359);
    CHECK(eps == doctest::Approx(0.0135809863932255).epsilon(1e-9));

    // 1/sqrt(N) scaling: quadrupling the sample count halves the band.
    CHECK(ks_confidence_epsilon(40000, 0.95) == doctest::Approx(eps / 2).epsilon(1e-12));

    // A tiny coverage still yields a tiny positive band.
    const double lo = ks_confidence_epsilon(10000, 1e-4);
    CHECK(lo > 0.0);
    CHECK(lo < ks_confidence_epsilon(10000, 0.5));

    CHECK_THROWS_AS(ks_confidence_epsilon(10, 0.95), ConfigError);
    CHECK_THROWS_AS(ks_confidence_epsilon(10000, 0.0), ConfigError);
    CHECK_THROWS_AS(ks_confidence_epsilon(10000, 1.0), ConfigError);
}

TEST_CASE("simulation budgets below the floor are rejected") {
    CHECK_THROWS_AS(simulate_gim1n(mm1n(0.5, 10), 5000, {1, "small"}), ConfigError);
}
