#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace kemeny {

/// Walker/Vose alias table: O(n) build, O(1) draw from a finite distribution.
class AliasTable {
public:
    AliasTable() = default;
    /// Weights need not be normalized; they must be non-negative with a
    /// positive total.
    explicit AliasTable(std::span<const double> weights);

    std::size_t size() const { return prob_.size(); }

    /// Draw given one uniform on [0, 1).
    std::size_t sample(double u) const {
        const double scaled = u * static_cast<double>(prob_.size());
        auto column = static_cast<std::size_t>(scaled);
        if (column >= prob_.size()) column = prob_.size() - 1;
        const double frac = scaled - static_cast<double>(column);
        return frac < prob_[column] ? column : alias_[column];
    }

    /// Probability mass the table actually encodes for outcome i.
    double probability(std::size_t i) const;

private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

}  // namespace kemeny
