#include "doctest.h"

#include "kemeny/markov_core.hpp"
#include "kemeny/markov_mc.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace kemeny;
using Rows = std::vector<std::vector<double>>;

namespace {

Chain uniform2() { return validate_chain(Rows{{0.5, 0.5}, {0.5, 0.5}}); }
Chain two_state() { return validate_chain(Rows{{0.7, 0.3}, {0.2, 0.8}}); }

bool within(const McEstimate& e, double target, double k = 4.0) {
    return std::abs(e.mean - target) <= k * e.std_error;
}

double combined(const McEstimate& a, const McEstimate& b) { return std::hypot(a.std_error, b.std_error); }

}  // namespace

TEST_CASE("first hitting samples are at least one step") {
    const Chain c = validate_chain(oracle::random_ergodic_matrix(6, 2, oracle::ChainKind::Sparse));
    const ChainSampler s(c);
    for (std::size_t e = 0; e < 2000; ++e) {
        RngStream rng(3, e);
        const std::size_t i = e % 6, j = (e / 6) % 6;
        const HittingSample h = s.sample_first_hitting(i, j, rng);
        CHECK(h.steps >= 1);
        CHECK_FALSE(h.truncated);
    }
    CHECK(s.cap() == 1000000);
    CHECK(ChainSampler(validate_chain(oracle::lazy_cycle(200))).cap() == 2000000);
}

TEST_CASE("return and hitting times on the uniform chain have mean 2") {
    const McOptions opts{100000, 17, 0};
    const McEstimate ret = estimate_return_time(uniform2(), 0, opts);
    CHECK(within(ret, 2.0));
    CHECK(ret.horizon_hits == 0);
    const McEstimate hit = estimate_hitting_time(uniform2(), 0, 1, opts);
    CHECK(within(hit, 2.0));
}

TEST_CASE("return times on a random chain match 1 / w_j") {
    const Chain c = validate_chain(oracle::random_ergodic_matrix(5, 8, oracle::ChainKind::Dense));
    const auto w = stationary_measure(c);
    for (std::size_t j = 0; j < 5; ++j) {
        CHECK(within(estimate_return_time(c, j, McOptions{40000, 100 + j, 0}), 1.0 / w[j]));
    }
}

TEST_CASE("Game I on the uniform chain: K = 1 from both starts") {
    const McOptions opts{100000, 7, 0};
    const McEstimate g0 = play_game(uniform2(), GameI{0}, opts);
    const McEstimate g1 = play_game(uniform2(), GameI{1}, McOptions{100000, 8, 0});
    CHECK(within(g0, 1.0));
    CHECK(within(g1, 1.0));
    CHECK(std::abs(g0.mean - g1.mean) <= 4.0 * combined(g0, g1));
}

TEST_CASE("Game II on the (0.3, 0.2) chain matches G_11") {
    const auto inv = analyze_chain(two_state());
    const McEstimate g = play_game(two_state(), GameII{1}, McOptions{100000, 9, 0});
    CHECK(within(g, inv.green(1, 1)));
    CHECK(g.std_error <= 0.02 * inv.green(1, 1));
}

TEST_CASE("excess visits estimate Z") {
    const Chain c = uniform2();
    const McOptions opts{100000, 21, 0};
    const McEstimate z00 = estimate_excess_visits(c, 0, 0, 50, opts);
    const McEstimate z01 = estimate_excess_visits(c, 0, 1, 50, opts);
    CHECK(within(z00, 0.5));
    CHECK(within(z01, -0.5));
    // Same seed, same paths: visits to 0 and 1 over 51 steps add up to 51 on both sides.
    CHECK(z00.mean + z01.mean == doctest::Approx(0.0).epsilon(1e-12));

    const Chain r = validate_chain(oracle::random_ergodic_matrix(4, 31, oracle::ChainKind::Dense));
    const auto inv = analyze_chain(r);
    const auto w = inv.stationary;
    double achieved = 0.0;
    const auto n = mixing_horizon(r, w, kExcessVisitsMixingTolerance, 10000, &achieved);
    REQUIRE(n);
    double sum = 0.0, var = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        const McEstimate e = estimate_excess_visits(r, 2, j, *n, McOptions{40000, 50 + j, 0});
        CHECK(within(e, inv.fundamental(2, static_cast<Eigen::Index>(j))));
        sum += e.mean;
        var += e.std_error * e.std_error;
    }
    CHECK(std::abs(sum) <= 4.0 * std::sqrt(var));
}

TEST_CASE("too-short horizons are refused") {
    const Chain c = two_state();
    try {
        estimate_excess_visits(c, 0, 0, 3, McOptions{1000, 1, 0});
        FAIL("expected HorizonTooShort");
    } catch (const HorizonTooShort& e) {
        CHECK(e.horizon == 3);
        CHECK(e.achieved_norm == doctest::Approx(1.2 * 0.125).epsilon(1e-12));
    }
    CHECK_NOTHROW(estimate_excess_visits(c, 0, 0, 11, McOptions{1000, 1, 0}));
}

TEST_CASE("estimates are reproducible and independent of threading") {
    const Chain c = validate_chain(oracle::random_ergodic_matrix(8, 5, oracle::ChainKind::Sparse));
    const McEstimate a = play_game(c, GameI{3}, McOptions{20000, 99, 1});
    const McEstimate b = play_game(c, GameI{3}, McOptions{20000, 99, 3});
    const McEstimate d = play_game(c, GameI{3}, McOptions{20000, 100, 1});
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.seed == 99);
    CHECK(a.episodes == 20000);
    CHECK(a.mean != d.mean);
}

TEST_CASE("Game I constancy on a random chain") {
    const Chain c = validate_chain(oracle::random_ergodic_matrix(6, 12, oracle::ChainKind::Dense));
    const auto inv = analyze_chain(c);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(within(play_game(c, GameI{i}, McOptions{30000, 200 + i, 0}), inv.kemeny.trace));
    }
}
