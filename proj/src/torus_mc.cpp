#include "kemeny/torus_mc.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace kemeny {
namespace {

// Bridge crossing probabilities below exp(-40) are not worth a draw.
constexpr double kBridgeExponentCutoff = 40.0;

struct Wrapped {
    double l1, l2, y1, y2;

    void wrap(double& p1, double& p2) const {
        if (p1 >= l1) p1 -= l1;
        else if (p1 < 0.0) p1 += l1;
        if (p2 >= l2) p2 -= l2;
        else if (p2 < 0.0) p2 += l2;
    }
    double dist2(double p1, double p2) const {
        double d1 = p1 - y1;
        double d2 = p2 - y2;
        if (d1 > 0.5 * l1) d1 -= l1;
        else if (d1 < -0.5 * l1) d1 += l1;
        if (d2 > 0.5 * l2) d2 -= l2;
        else if (d2 < -0.5 * l2) d2 += l2;
        return d1 * d1 + d2 * d2;
    }
};

double time_cap_for(const TorusGreen& green, double eps) {
    const double pred = game_duration_prediction(green, eps);
    const double floor = green.torus().volume();
    return 1e3 * std::max(pred, floor * 1e-3);
}

}  // namespace

void validate_bm_config(const FlatTorus& torus, const BmConfig& cfg) {
    if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < torus.l2() / 4.0)) {
        throw InvalidBmConfig("InvalidBmConfig: need 0 < eps < L2/4, got eps=" + std::to_string(cfg.epsilon));
    }
    const double hmax = bm_step_for(cfg.epsilon);
    if (!(cfg.step > 0.0) || cfg.step > hmax * (1.0 + 1e-12)) {
        throw InvalidBmConfig("InvalidBmConfig: need 0 < h <= (eps/10)^2 = " + std::to_string(hmax) +
                              ", got h=" + std::to_string(cfg.step));
    }
}

TorusWalker::TorusWalker(const TorusGreen& green, const BmConfig& cfg)
    : torus_(green.torus()), cfg_(cfg), t_max_(0.0) {
    validate_bm_config(torus_, cfg_);
    t_max_ = time_cap_for(green, cfg.epsilon);
}

TorusWalker::TorusWalker(const FlatTorus& torus, const BmConfig& cfg) : TorusWalker(TorusGreen(torus), cfg) {}

BmSample TorusWalker::hit(TorusPoint x, TorusPoint y, RngStream& rng) const {
    const TorusPoint start = torus_.reduce(x);
    const TorusPoint target = torus_.reduce(y);
    const Wrapped geo{torus_.l1(), torus_.l2(), target.x1, target.x2};
    const double eps = cfg_.epsilon;
    const double eps2 = eps * eps;
    const double h = cfg_.step;
    const double sigma = std::sqrt(2.0 * h);

    double p1 = start.x1;
    double p2 = start.x2;
    double r2 = geo.dist2(p1, p2);
    if (r2 <= eps2) return {0.0, false};

    // Bridge checks only matter within this distance of the ball.
    const double near = eps + std::sqrt(kBridgeExponentCutoff * h);
    const double near2 = near * near;
    const bool bridge = cfg_.bridge_correction;
    double gap_prev = std::sqrt(r2) - eps;

    const auto max_steps = static_cast<std::uint64_t>(std::ceil(t_max_ / h));
    for (std::uint64_t n = 1; n <= max_steps; ++n) {
        p1 += sigma * rng.normal();
        p2 += sigma * rng.normal();
        geo.wrap(p1, p2);
        r2 = geo.dist2(p1, p2);
        if (r2 <= eps2) return {static_cast<double>(n) * h, false};
        if (bridge) {
            if (r2 < near2) {
                const double gap = std::sqrt(r2) - eps;
                const double expo = gap * gap_prev / h;
                if (expo < kBridgeExponentCutoff && rng.uniform() < std::exp(-expo)) {
                    return {static_cast<double>(n) * h, false};
                }
                gap_prev = gap;
            } else {
                gap_prev = near;  // any value past the cutoff
            }
        }
    }
    return {static_cast<double>(max_steps) * h, true};
}

std::pair<BmSample, BmSample> TorusWalker::hit_refined(TorusPoint x, TorusPoint y, RngStream& rng) const {
    const TorusPoint start = torus_.reduce(x);
    const TorusPoint target = torus_.reduce(y);
    const Wrapped geo{torus_.l1(), torus_.l2(), target.x1, target.x2};
    const double eps2 = cfg_.epsilon * cfg_.epsilon;
    const double h_fine = cfg_.step / 4.0;
    const double sigma = std::sqrt(2.0 * h_fine);

    double p1 = start.x1;
    double p2 = start.x2;
    if (geo.dist2(p1, p2) <= eps2) return {BmSample{0.0, false}, BmSample{0.0, false}};

    BmSample fine{0.0, true};
    const auto max_fine = static_cast<std::uint64_t>(std::ceil(t_max_ / h_fine));
    for (std::uint64_t n = 1; n <= max_fine; ++n) {
        p1 += sigma * rng.normal();
        p2 += sigma * rng.normal();
        geo.wrap(p1, p2);
        if (geo.dist2(p1, p2) > eps2) continue;
        if (fine.truncated) fine = {static_cast<double>(n) * h_fine, false};
        if (n % 4 == 0) return {BmSample{static_cast<double>(n) * h_fine, false}, fine};
    }
    return {BmSample{static_cast<double>(max_fine) * h_fine, true}, fine};
}

BmSample simulate_bm_hitting(const FlatTorus& torus, TorusPoint x, TorusPoint y, const BmConfig& cfg,
                             RngStream& rng) {
    return TorusWalker(torus, cfg).hit(x, y, rng);
}

McEstimate estimate_bm_hitting(const FlatTorus& torus, TorusPoint x, TorusPoint y, const BmConfig& cfg) {
    const TorusWalker walker(torus, cfg);
    return run_episodes(cfg.episodes, cfg.seed, cfg.threads, [&](RngStream& rng) {
        const BmSample s = walker.hit(x, y, rng);
        return EpisodeOutcome{s.time, s.truncated};
    });
}

McEstimate play_torus_game(const FlatTorus& torus, const TorusGameMode& mode, const BmConfig& cfg) {
    const TorusWalker walker(torus, cfg);
    const bool game_one = std::holds_alternative<TorusGameI>(mode);
    const TorusPoint fixed = game_one ? std::get<TorusGameI>(mode).start : std::get<TorusGameII>(mode).target;
    return run_episodes(cfg.episodes, cfg.seed, cfg.threads, [&](RngStream& rng) {
        const TorusPoint other{rng.uniform() * torus.l1(), rng.uniform() * torus.l2()};
        if (torus.distance(fixed, other) <= cfg.epsilon) return EpisodeOutcome{0.0, false};
        const BmSample s = game_one ? walker.hit(fixed, other, rng) : walker.hit(other, fixed, rng);
        return EpisodeOutcome{s.time, s.truncated};
    });
}

RefinementComparison compare_step_refinement(const FlatTorus& torus, TorusPoint x, TorusPoint y,
                                             const BmConfig& cfg) {
    const TorusWalker walker(torus, cfg);
    std::vector<EpisodeOutcome> coarse(cfg.episodes);
    std::vector<EpisodeOutcome> fine(cfg.episodes);
    parallel_for(cfg.episodes, cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e) {
            RngStream rng(cfg.seed, e);
            const auto [c, f] = walker.hit_refined(x, y, rng);
            coarse[e] = {c.time, c.truncated};
            fine[e] = {f.time, f.truncated};
        }
    });
    return {summarize(coarse, cfg.seed), summarize(fine, cfg.seed)};
}

}  // namespace kemeny
