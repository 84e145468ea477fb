#pragma once

#include "kemeny/mc_estimate.hpp"
#include "kemeny/rng.hpp"
#include "kemeny/torus_core.hpp"

#include <cstdint>
#include <stdexcept>
#include <variant>

namespace kemeny {

class InvalidBmConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Brownian hitting-time simulation settings.
 *
 * Increments are sqrt(2 h) N(0, I), so the generator is the flat Laplacian
 * div grad and E[tau] solves Delta H = 1 for the positive Laplacian
 * Delta = -div grad. Standard Brownian motion (generator half of that) would
 * take twice as long.
 */
struct BmConfig {
    double step = 0.0;     // time step h, at most (eps/10)^2
    double epsilon = 0.0;  // target ball radius, below L2/4
    std::size_t episodes = 0;
    std::uint64_t seed = 0;
    std::size_t threads = 0;  // 0 = default_thread_count()
    // Discrete-time monitoring misses excursions into the ball between steps
    // and overestimates tau by about 0.58 sqrt(2h) in effective radius. When
    // set, each step also stops with the Brownian-bridge crossing probability
    // exp(-d_a d_b / h) of the flat boundary approximation.
    bool bridge_correction = true;
};

/// Step size (eps / divisor)^2.
inline double bm_step_for(double eps, double divisor = 10.0) { return (eps / divisor) * (eps / divisor); }

void validate_bm_config(const FlatTorus& torus, const BmConfig& cfg);

struct BmSample {
    double time = 0.0;
    bool truncated = false;
};

/// Simulates wrapped Euler-Maruyama walks until they come within eps of a
/// target. Holds the truncation horizon T_MAX = 1e3 (-(V/2 pi) log eps + V m).
class TorusWalker {
public:
    TorusWalker(const FlatTorus& torus, const BmConfig& cfg);
    TorusWalker(const TorusGreen& green, const BmConfig& cfg);

    const FlatTorus& torus() const { return torus_; }
    double time_cap() const { return t_max_; }
    const BmConfig& config() const { return cfg_; }

    BmSample hit(TorusPoint x, TorusPoint y, RngStream& rng) const;

    /// One Brownian path monitored on two grids: step h/4 (fine) and every
    /// fourth fine step (coarse, h). Coarse detection never sees a hit the
    /// fine grid misses, so fine.time <= coarse.time pathwise. No bridge
    /// correction on either grid.
    std::pair<BmSample, BmSample> hit_refined(TorusPoint x, TorusPoint y, RngStream& rng) const;

private:
    FlatTorus torus_;
    BmConfig cfg_;
    double t_max_;
};

BmSample simulate_bm_hitting(const FlatTorus& torus, TorusPoint x, TorusPoint y, const BmConfig& cfg,
                             RngStream& rng);

/// Game I: seeker starts at x, hider uniform on the torus each episode.
struct TorusGameI {
    TorusPoint start;
};
/// Game II: hider fixed at y, seeker uniform on the torus.
struct TorusGameII {
    TorusPoint target;
};
using TorusGameMode = std::variant<TorusGameI, TorusGameII>;

/// Mean game duration. A uniform draw already within eps of the fixed point
/// counts as found at time 0.
McEstimate play_torus_game(const FlatTorus& torus, const TorusGameMode& mode, const BmConfig& cfg);

/// Mean hitting time of B_eps(y) from x.
McEstimate estimate_bm_hitting(const FlatTorus& torus, TorusPoint x, TorusPoint y, const BmConfig& cfg);

struct RefinementComparison {
    McEstimate coarse;  // step h
    McEstimate fine;    // step h/4, same paths
};

RefinementComparison compare_step_refinement(const FlatTorus& torus, TorusPoint x, TorusPoint y,
                                             const BmConfig& cfg);

}  // namespace kemeny
