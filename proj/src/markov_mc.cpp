#include "kemeny/markov_mc.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace kemeny {
namespace {

void check_state(const Chain& chain, std::size_t s, const char* what) {
    if (s >= chain.size()) {
        throw std::out_of_range(std::string(what) + " state " + std::to_string(s) + " out of range");
    }
}

std::string horizon_message(std::size_t horizon, double norm) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "HorizonTooShort(N=%zu, norm=%.6g)", horizon, norm);
    return buf;
}

}  // namespace

HorizonTooShort::HorizonTooShort(std::size_t n, double norm)
    : std::runtime_error(horizon_message(n, norm)), horizon(n), achieved_norm(norm) {}

ChainSampler::ChainSampler(const Chain& chain)
    : cap_(std::max<std::uint64_t>(1000000, 10000 * static_cast<std::uint64_t>(chain.size()))) {
    const auto n = static_cast<Eigen::Index>(chain.size());
    rows_.reserve(chain.size());
    std::vector<double> row(chain.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = chain.transition()(i, j);
        rows_.emplace_back(row);
    }
}

ChainSampler::ChainSampler(const Chain& chain, const StationaryMeasure& w) : ChainSampler(chain) {
    stationary_ = AliasTable(std::span<const double>(w.w.data(), static_cast<std::size_t>(w.w.size())));
}

HittingSample ChainSampler::sample_first_hitting(std::size_t start, std::size_t target,
                                                 RngStream& rng) const {
    std::size_t state = start;
    for (std::uint64_t n = 1; n <= cap_; ++n) {
        state = step(state, rng);
        if (state == target) return {n, false};
    }
    return {cap_, true};
}

HittingSample sample_first_hitting(const Chain& chain, std::size_t start, std::size_t target,
                                   RngStream& rng) {
    check_state(chain, start, "start");
    check_state(chain, target, "target");
    return ChainSampler(chain).sample_first_hitting(start, target, rng);
}

McEstimate play_game(const Chain& chain, const GameMode& mode, const McOptions& opts) {
    const StationaryMeasure w = stationary_measure(chain);
    const ChainSampler sampler(chain, w);
    if (const auto* g = std::get_if<GameI>(&mode)) {
        check_state(chain, g->start, "start");
        const std::size_t start = g->start;
        return run_episodes(opts.episodes, opts.seed, opts.threads, [&](RngStream& rng) {
            const std::size_t hider = sampler.draw_stationary(rng);
            if (hider == start) return EpisodeOutcome{0.0, false};
            const auto hit = sampler.sample_first_hitting(start, hider, rng);
            return EpisodeOutcome{static_cast<double>(hit.steps), hit.truncated};
        });
    }
    const std::size_t target = std::get<GameII>(mode).target;
    check_state(chain, target, "target");
    return run_episodes(opts.episodes, opts.seed, opts.threads, [&](RngStream& rng) {
        const std::size_t seeker = sampler.draw_stationary(rng);
        if (seeker == target) return EpisodeOutcome{0.0, false};
        const auto hit = sampler.sample_first_hitting(seeker, target, rng);
        return EpisodeOutcome{static_cast<double>(hit.steps), hit.truncated};
    });
}

McEstimate estimate_excess_visits(const Chain& chain, std::size_t i, std::size_t j,
                                  std::size_t horizon, const McOptions& opts) {
    check_state(chain, i, "start");
    check_state(chain, j, "visited");
    const StationaryMeasure w = stationary_measure(chain);
    const double norm = distance_to_stationarity(chain, w, horizon);
    if (!(norm <= kExcessVisitsMixingTolerance)) throw HorizonTooShort(horizon, norm);

    const ChainSampler sampler(chain, w);
    return run_episodes(opts.episodes, opts.seed, opts.threads, [&](RngStream& rng) {
        // Steps 0..horizon inclusive on both trajectories.
        std::size_t from_i = i;
        std::size_t from_w = sampler.draw_stationary(rng);
        long long excess = (from_i == j) - (from_w == j);
        for (std::size_t k = 1; k <= horizon; ++k) {
            from_i = sampler.step(from_i, rng);
            from_w = sampler.step(from_w, rng);
            excess += (from_i == j) - (from_w == j);
        }
        return EpisodeOutcome{static_cast<double>(excess), false};
    });
}

McEstimate estimate_hitting_time(const Chain& chain, std::size_t i, std::size_t j,
                                 const McOptions& opts) {
    check_state(chain, i, "start");
    check_state(chain, j, "target");
    const ChainSampler sampler(chain);
    return run_episodes(opts.episodes, opts.seed, opts.threads, [&](RngStream& rng) {
        const auto hit = sampler.sample_first_hitting(i, j, rng);
        return EpisodeOutcome{static_cast<double>(hit.steps), hit.truncated};
    });
}

McEstimate estimate_return_time(const Chain& chain, std::size_t j, const McOptions& opts) {
    return estimate_hitting_time(chain, j, j, opts);
}

}  // namespace kemeny
