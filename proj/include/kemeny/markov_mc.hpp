#pragma once

#include "kemeny/alias_table.hpp"
#include "kemeny/chain.hpp"
#include "kemeny/markov_core.hpp"
#include "kemeny/mc_estimate.hpp"
#include "kemeny/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

namespace kemeny {

/// Result of one first-hitting trajectory.
struct HittingSample {
    std::uint64_t steps = 0;
    bool truncated = false;  // the safety cap was reached before the target
};

/// Game I: seeker starts at a fixed state, hider drawn from w each episode.
struct GameI {
    std::size_t start;
};
/// Game II: hider fixed at a target state, seeker drawn from w each episode.
struct GameII {
    std::size_t target;
};
using GameMode = std::variant<GameI, GameII>;

class HorizonTooShort : public std::runtime_error {
public:
    HorizonTooShort(std::size_t horizon, double achieved_norm);
    std::size_t horizon;
    double achieved_norm;
};

/// Alias tables for every row of P plus the stationary measure.
class ChainSampler {
public:
    explicit ChainSampler(const Chain& chain);
    ChainSampler(const Chain& chain, const StationaryMeasure& w);

    std::size_t size() const { return rows_.size(); }
    /// Safety cap max(1e6, 1e4 n) on trajectory length.
    std::uint64_t cap() const { return cap_; }

    std::size_t step(std::size_t state, RngStream& rng) const { return rows_[state].sample(rng.uniform()); }
    /// Requires the (chain, w) constructor.
    std::size_t draw_stationary(RngStream& rng) const { return stationary_.sample(rng.uniform()); }

    /// T = inf{n >= 1 : X_n = target} given X_0 = start (a return time when
    /// start == target).
    HittingSample sample_first_hitting(std::size_t start, std::size_t target, RngStream& rng) const;

private:
    std::vector<AliasTable> rows_;
    AliasTable stationary_;
    std::uint64_t cap_;
};

struct McOptions {
    std::size_t episodes = 100000;
    std::uint64_t seed = 0;
    std::size_t threads = 0;  // 0 = default_thread_count()
};

HittingSample sample_first_hitting(const Chain& chain, std::size_t start, std::size_t target,
                                   RngStream& rng);

/// Mean game duration in steps; Game I/II episodes whose random endpoint
/// coincides with the fixed one have duration 0.
McEstimate play_game(const Chain& chain, const GameMode& mode, const McOptions& opts);

/// Estimates Z_ij by paired trajectories over steps 0..horizon: visits to j
/// from i minus visits to j from a w-distributed start.
/// Throws HorizonTooShort unless ||P^horizon - W||_inf <= 1e-3.
McEstimate estimate_excess_visits(const Chain& chain, std::size_t i, std::size_t j,
                                  std::size_t horizon, const McOptions& opts);

/// Mean first return time to j (compare with 1 / w_j).
McEstimate estimate_return_time(const Chain& chain, std::size_t j, const McOptions& opts);

/// Mean first hitting time from i to j (compare with m_ij).
McEstimate estimate_hitting_time(const Chain& chain, std::size_t i, std::size_t j,
                                 const McOptions& opts);

inline constexpr double kExcessVisitsMixingTolerance = 1e-3;

}  // namespace kemeny
