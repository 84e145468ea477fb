#include "doctest.h"

#include "kemeny/chain.hpp"
#include "oracles.hpp"

#include <string>

using namespace kemeny;
using Rows = std::vector<std::vector<double>>;

TEST_CASE("validate_chain accepts a doubly stochastic two-state chain") {
    const Chain c = validate_chain(Rows{{0.5, 0.5}, {0.5, 0.5}});
    CHECK(c.size() == 2);
    CHECK(c(0, 1) == 0.5);
    CHECK(c.label(1) == "1");
}

TEST_CASE("row-sum violations are reported, not renormalized") {
    try {
        validate_chain(Rows{{0.5, 0.4}, {0.5, 0.5}});
        FAIL("expected NotStochastic");
    } catch (const NotStochastic& e) {
        CHECK(e.row == 0);
        CHECK(e.sum == doctest::Approx(0.9).epsilon(1e-15));
        CHECK(std::string(e.what()) == "NotStochastic(row=0, sum=0.9)");
    }
    // Within TOL_STOCH passes, just past it fails.
    CHECK_NOTHROW(validate_chain(Rows{{0.5, 0.5 + 5e-10}, {0.5, 0.5}}));
    CHECK_THROWS_AS(validate_chain(Rows{{0.5, 0.5 + 2e-9}, {0.5, 0.5}}), NotStochastic);
}

TEST_CASE("negative and non-finite entries") {
    CHECK_THROWS_AS(validate_chain(Rows{{1.2, -0.2}, {0.5, 0.5}}), NegativeEntry);
    CHECK_THROWS_AS(validate_chain(Rows{{std::nan(""), 1.0}, {0.5, 0.5}}), NonFiniteEntry);
}

TEST_CASE("shape errors") {
    CHECK_THROWS_AS(validate_chain(Rows{{1.0}}), TooFewStates);
    CHECK_THROWS_AS(validate_chain(Rows{{0.5, 0.5}, {1.0}}), NotSquare);
    CHECK_THROWS_AS(validate_chain(Matrix::Constant(2, 3, 1.0 / 3.0)), NotSquare);
    CHECK_THROWS_AS(validate_chain(Rows{{0.5, 0.5}, {0.5, 0.5}}, {"only-one"}), LabelMismatch);
}

TEST_CASE("two-cycle is periodic with period 2") {
    try {
        validate_chain(Rows{{0.0, 1.0}, {1.0, 0.0}});
        FAIL("expected Periodic");
    } catch (const Periodic& e) {
        CHECK(e.period == 2);
    }
}

TEST_CASE("pure 3-cycle has period 3; a self-loop breaks it") {
    Matrix c = Matrix::Zero(3, 3);
    c(0, 1) = c(1, 2) = c(2, 0) = 1.0;
    CHECK(chain_period(c) == 3);
    CHECK_THROWS_AS(validate_chain(c), Periodic);
    CHECK_NOTHROW(validate_chain(oracle::lazy_cycle(3)));
}

TEST_CASE("bipartite walk on a 4-cycle has period 2 even with chords of even length") {
    // 0-1-2-3-0 both directions: all cycles even.
    Matrix p = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        p(i, (i + 1) % 4) = 0.5;
        p(i, (i + 3) % 4) = 0.5;
    }
    CHECK(chain_period(p) == 2);
}

TEST_CASE("reducible chains report their strongly connected components") {
    const Matrix p = (Matrix(3, 3) << 1.0, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0, 0.5, 0.5).finished();
    try {
        validate_chain(p);
        FAIL("expected Reducible");
    } catch (const Reducible& e) {
        REQUIRE(e.components.size() == 3);
        CHECK(e.components[0] == std::vector<std::size_t>{0});
    }
    const Matrix two = (Matrix(4, 4) << 0.5, 0.5, 0, 0, 0.5, 0.5, 0, 0, 0, 0, 0.5, 0.5, 0, 0, 0.5, 0.5).finished();
    const auto comps = strongly_connected_components(two);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<std::size_t>{0, 1});
    CHECK(comps[1] == std::vector<std::size_t>{2, 3});
}

TEST_CASE("random fixture family is all valid") {
    for (const auto& p : oracle::fixture_family()) CHECK_NOTHROW(validate_chain(p));
}
