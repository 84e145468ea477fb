#include "kemeny/mc_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace kemeny {

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 16) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

McEstimate summarize(std::span<const EpisodeOutcome> outcomes, std::uint64_t seed) {
    McEstimate est;
    est.episodes = outcomes.size();
    est.seed = seed;
    std::vector<double> values;
    values.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        if (o.truncated) {
            ++est.horizon_hits;
        } else {
            values.push_back(o.value);
        }
    }
    if (values.empty()) return est;
    const double n = static_cast<double>(values.size());
    est.mean = pairwise_sum(values) / n;
    if (values.size() > 1) {
        for (double& v : values) v = (v - est.mean) * (v - est.mean);
        const double var = pairwise_sum(values) / (n - 1.0);
        est.std_error = std::sqrt(var / n);
    }
    return est;
}

std::size_t default_thread_count() {
    if (const char* env = std::getenv("KEMENY_LAB_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (threads == 0) threads = default_thread_count();
    threads = std::min(threads, std::max<std::size_t>(count, 1));
    if (threads <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t block = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(count, t * block);
        const std::size_t end = std::min(count, begin + block);
        pool.emplace_back([&, t, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

McEstimate run_episodes(std::size_t episodes, std::uint64_t seed, std::size_t threads,
                        const std::function<EpisodeOutcome(RngStream&)>& episode) {
    std::vector<EpisodeOutcome> outcomes(episodes);
    parallel_for(episodes, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e) {
            RngStream rng(seed, e);
            outcomes[e] = episode(rng);
        }
    });
    return summarize(outcomes, seed);
}

}  // namespace kemeny
