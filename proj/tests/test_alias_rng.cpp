#include "doctest.h"

#include "kemeny/alias_table.hpp"
#include "kemeny/mc_estimate.hpp"
#include "kemeny/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

using namespace kemeny;

TEST_CASE("alias table encodes the input distribution exactly") {
    const std::vector<double> w{0.1, 0.0, 0.25, 0.65};
    const AliasTable t(w);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(t.probability(i) == doctest::Approx(w[i]).epsilon(1e-14));

    const std::vector<double> unnormalized{3.0, 1.0};
    const AliasTable u(unnormalized);
    CHECK(u.probability(0) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("zero-weight outcomes are never drawn") {
    const std::vector<double> w{0.0, 0.5, 0.0, 0.5};
    const AliasTable t(w);
    RngStream rng(1, 0);
    for (int k = 0; k < 100000; ++k) {
        const auto s = t.sample(rng.uniform());
        CHECK((s == 1 || s == 3));
    }
    CHECK((t.sample(0.0) == 1 || t.sample(0.0) == 3));
    CHECK((t.sample(std::nextafter(1.0, 0.0)) == 1 || t.sample(std::nextafter(1.0, 0.0)) == 3));
}

TEST_CASE("empirical frequencies within 4 sigma") {
    const std::vector<double> w{0.05, 0.15, 0.3, 0.5};
    const AliasTable t(w);
    RngStream rng(99, 3);
    const int n = 200000;
    std::vector<int> counts(w.size(), 0);
    for (int k = 0; k < n; ++k) ++counts[t.sample(rng.uniform())];
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double sd = std::sqrt(w[i] * (1 - w[i]) / n);
        CHECK(std::abs(counts[i] / double(n) - w[i]) < 4 * sd);
    }
}

TEST_CASE("invalid weights are rejected") {
    CHECK_THROWS_AS(AliasTable(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(AliasTable(std::vector<double>{0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(AliasTable(std::vector<double>{0.5, -0.1}), std::invalid_argument);
}

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(7, 11), b(7, 11), c(7, 12), d(8, 11);
    std::set<double> firsts;
    for (int k = 0; k < 100; ++k) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(a.normal() == b.normal());
    firsts.insert(RngStream(7, 11).uniform());
    firsts.insert(c.uniform());
    firsts.insert(d.uniform());
    CHECK(firsts.size() == 3);
    CHECK(RngStream::derive(0, 0) != RngStream::derive(0, 1));
    CHECK(RngStream::derive(1, 0) != RngStream::derive(0, 1));
}

TEST_CASE("pairwise sum and summarize") {
    std::vector<double> xs(10001, 0.1);
    CHECK(pairwise_sum(xs) == doctest::Approx(1000.1).epsilon(1e-13));
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);

    const std::vector<EpisodeOutcome> outs{{1.0, false}, {3.0, false}, {100.0, true}, {2.0, false}};
    const McEstimate e = summarize(outs, 5);
    CHECK(e.mean == doctest::Approx(2.0));
    CHECK(e.episodes == 4);
    CHECK(e.horizon_hits == 1);
    CHECK(e.samples() == 3);
    CHECK(e.seed == 5);
    // sample sd 1, three samples
    CHECK(e.std_error == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("run_episodes does not depend on the thread count") {
    auto episode = [](RngStream& rng) { return EpisodeOutcome{rng.uniform() + rng.normal(), false}; };
    const McEstimate one = run_episodes(5000, 123, 1, episode);
    const McEstimate four = run_episodes(5000, 123, 4, episode);
    const McEstimate seven = run_episodes(5000, 123, 7, episode);
    CHECK(one.mean == four.mean);
    CHECK(one.mean == seven.mean);
    CHECK(one.std_error == seven.std_error);
    const McEstimate other = run_episodes(5000, 124, 1, episode);
    CHECK(other.mean != one.mean);
}

TEST_CASE("parallel_for covers every index once and propagates exceptions") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 3, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 1000);
    CHECK(*std::min_element(hits.begin(), hits.end()) == 1);
    CHECK_THROWS_AS(parallel_for(10, 2,
                                 [](std::size_t b, std::size_t) {
                                     if (b == 0) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
