#include "kemeny/chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <queue>
#include <sstream>

namespace kemeny {
namespace {

std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string fmt_components(const std::vector<std::vector<std::size_t>>& comps) {
    std::ostringstream os;
    os << "Reducible(components=[";
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (c) os << ", ";
        os << "{";
        for (std::size_t k = 0; k < comps[c].size(); ++k) {
            if (k) os << ",";
            os << comps[c][k];
        }
        os << "}";
    }
    os << "])";
    return os.str();
}

std::vector<std::vector<std::size_t>> adjacency(const Matrix& p, bool transpose) {
    const auto n = static_cast<std::size_t>(p.rows());
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0.0) {
                if (transpose) {
                    adj[j].push_back(i);
                } else {
                    adj[i].push_back(j);
                }
            }
        }
    }
    return adj;
}

}  // namespace

NotSquare::NotSquare(std::size_t rows, std::size_t cols)
    : ChainError("NotSquare(rows=" + std::to_string(rows) + ", cols=" + std::to_string(cols) + ")") {}

TooFewStates::TooFewStates(std::size_t n)
    : ChainError("TooFewStates(n=" + std::to_string(n) + ", minimum=2)") {}

TooManyStates::TooManyStates(std::size_t n)
    : ChainError("TooManyStates(n=" + std::to_string(n) + ", maximum=" +
                 std::to_string(kMaxStates) + ")") {}

NonFiniteEntry::NonFiniteEntry(std::size_t i, std::size_t j)
    : ChainError("NonFiniteEntry(i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")") {}

NegativeEntry::NegativeEntry(std::size_t i, std::size_t j, double value)
    : ChainError("NegativeEntry(i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                 ", value=" + fmt_real(value) + ")"),
      row(i),
      col(j) {}

NotStochastic::NotStochastic(std::size_t r, double s)
    : ChainError("NotStochastic(row=" + std::to_string(r) + ", sum=" + fmt_real(s) + ")"),
      row(r),
      sum(s) {}

Reducible::Reducible(std::vector<std::vector<std::size_t>> comps)
    : ChainError(fmt_components(comps)), components(std::move(comps)) {}

Periodic::Periodic(std::size_t d)
    : ChainError("Periodic(period=" + std::to_string(d) + ")"), period(d) {}

LabelMismatch::LabelMismatch(std::size_t labels, std::size_t states)
    : ChainError("LabelMismatch(labels=" + std::to_string(labels) +
                 ", states=" + std::to_string(states) + ")") {}

std::string Chain::label(std::size_t i) const {
    if (i < labels_.size()) return labels_[i];
    return std::to_string(i);
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const Matrix& p) {
    // Kosaraju with explicit stacks; n can reach kMaxStates.
    const auto n = static_cast<std::size_t>(p.rows());
    const auto fwd = adjacency(p, false);
    const auto rev = adjacency(p, true);

    std::vector<char> seen(n, 0);
    std::vector<std::size_t> finish;
    finish.reserve(n);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        seen[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < fwd[v].size()) {
                const std::size_t u = fwd[v][next++];
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.emplace_back(u, 0);
                }
            } else {
                finish.push_back(v);
                stack.pop_back();
            }
        }
    }

    std::vector<std::size_t> comp(n, n);
    std::vector<std::vector<std::size_t>> comps;
    for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
        if (comp[*it] != n) continue;
        const std::size_t id = comps.size();
        comps.emplace_back();
        std::vector<std::size_t> stack{*it};
        comp[*it] = id;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            comps[id].push_back(v);
            for (std::size_t u : rev[v]) {
                if (comp[u] == n) {
                    comp[u] = id;
                    stack.push_back(u);
                }
            }
        }
    }
    for (auto& c : comps) std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

std::size_t chain_period(const Matrix& p) {
    const auto n = static_cast<std::size_t>(p.rows());
    const auto fwd = adjacency(p, false);
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> level(n, unset);
    std::queue<std::size_t> q;
    level[0] = 0;
    q.push(0);
    while (!q.empty()) {
        const std::size_t v = q.front();
        q.pop();
        for (std::size_t u : fwd[v]) {
            if (level[u] == unset) {
                level[u] = level[v] + 1;
                q.push(u);
            }
        }
    }
    std::size_t g = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (level[v] == unset) continue;
        for (std::size_t u : fwd[v]) {
            // level[u] <= level[v] + 1 by BFS, so this is non-negative.
            g = std::gcd(g, level[v] + 1 - level[u]);
        }
    }
    return g;
}

Chain validate_chain(const Matrix& raw, std::vector<std::string> labels) {
    if (raw.rows() != raw.cols()) {
        throw NotSquare(static_cast<std::size_t>(raw.rows()), static_cast<std::size_t>(raw.cols()));
    }
    const auto n = static_cast<std::size_t>(raw.rows());
    if (n < 2) throw TooFewStates(n);
    if (n > kMaxStates) throw TooManyStates(n);
    if (!labels.empty() && labels.size() != n) throw LabelMismatch(labels.size(), n);

    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (!std::isfinite(v)) throw NonFiniteEntry(i, j);
            if (v < 0.0) throw NegativeEntry(i, j, v);
            sum += v;
        }
        if (std::abs(sum - 1.0) > kStochasticTolerance) throw NotStochastic(i, sum);
    }

    auto comps = strongly_connected_components(raw);
    if (comps.size() > 1) throw Reducible(std::move(comps));

    const std::size_t d = chain_period(raw);
    if (d > 1) throw Periodic(d);

    return Chain(raw, std::move(labels));
}

Chain validate_chain(const std::vector<std::vector<double>>& rows,
                     std::vector<std::string> labels) {
    const auto n = rows.size();
    std::size_t cols = n == 0 ? 0 : rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != cols) {
            cols = r.size();
            throw NotSquare(n, cols);
        }
    }
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return validate_chain(m, std::move(labels));
}

}  // namespace kemeny
