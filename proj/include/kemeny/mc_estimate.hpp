#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "kemeny/rng.hpp"

namespace kemeny {

/// Every simulation result carries its uncertainty and provenance.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(samples)
    std::size_t episodes = 0;
    std::uint64_t seed = 0;
    std::size_t horizon_hits = 0;  // episodes cut off by the safety cap

    /// Number of episodes that entered the mean.
    std::size_t samples() const { return episodes - horizon_hits; }
};

/// One episode's outcome; truncated episodes are counted, never averaged.
struct EpisodeOutcome {
    double value = 0.0;
    bool truncated = false;
};

/// Pairwise (cascade) summation; result depends only on the input order.
double pairwise_sum(std::span<const double> xs);

/// Mean and standard error over the non-truncated outcomes, reduced in
/// episode order.
McEstimate summarize(std::span<const EpisodeOutcome> outcomes, std::uint64_t seed);

/// Runs `episode` for indices 0..episodes-1, each with RngStream(seed, index),
/// on up to `threads` workers (0 = default_thread_count()). Output is
/// independent of the schedule.
McEstimate run_episodes(std::size_t episodes, std::uint64_t seed, std::size_t threads,
                        const std::function<EpisodeOutcome(RngStream&)>& episode);

/// Worker count from KEMENY_LAB_THREADS, else hardware concurrency (min 1).
std::size_t default_thread_count();

/// Static block partition of [0, count) over `threads` workers.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace kemeny
