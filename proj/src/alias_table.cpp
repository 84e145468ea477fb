#include "kemeny/alias_table.hpp"

#include <cmath>

namespace kemeny {

AliasTable::AliasTable(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("AliasTable: empty distribution");
    double total = 0.0;
    for (double x : weights) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("AliasTable: bad weight");
        total += x;
    }
    if (!(total > 0.0)) throw std::invalid_argument("AliasTable: zero total weight");

    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small;
    std::vector<std::uint32_t> large;
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = weights[i] * static_cast<double>(n) / total;
        alias_[i] = static_cast<std::uint32_t>(i);
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        const auto s = small.back();
        small.pop_back();
        const auto l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers are 1 up to rounding.
    for (auto l : large) prob_[l] = 1.0;
    for (auto s : small) prob_[s] = 1.0;
    // Zero-weight outcomes must never be returned, even through rounding.
    for (std::size_t i = 0; i < n; ++i) {
        if (weights[i] == 0.0 && prob_[i] > 0.0 && alias_[i] != i) prob_[i] = 0.0;
    }
}

double AliasTable::probability(std::size_t i) const {
    const double n = static_cast<double>(prob_.size());
    double p = prob_[i] / n;
    for (std::size_t c = 0; c < prob_.size(); ++c) {
        if (alias_[c] == i && c != i) p += (1.0 - prob_[c]) / n;
    }
    return p;
}

}  // namespace kemeny
