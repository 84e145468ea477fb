#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kemeny {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Row sums must match 1 within this; rows are never renormalized.
inline constexpr double kStochasticTolerance = 1e-9;
inline constexpr std::size_t kMaxStates = 4096;

/// Base class for everything validate_chain can reject.
class ChainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotSquare : public ChainError {
public:
    NotSquare(std::size_t rows, std::size_t cols);
};

class TooFewStates : public ChainError {
public:
    explicit TooFewStates(std::size_t n);
};

class TooManyStates : public ChainError {
public:
    explicit TooManyStates(std::size_t n);
};

class NonFiniteEntry : public ChainError {
public:
    NonFiniteEntry(std::size_t i, std::size_t j);
};

class NegativeEntry : public ChainError {
public:
    NegativeEntry(std::size_t i, std::size_t j, double value);
    std::size_t row;
    std::size_t col;
};

class NotStochastic : public ChainError {
public:
    NotStochastic(std::size_t row, double sum);
    std::size_t row;
    double sum;
};

class Reducible : public ChainError {
public:
    explicit Reducible(std::vector<std::vector<std::size_t>> components);
    std::vector<std::vector<std::size_t>> components;
};

class Periodic : public ChainError {
public:
    explicit Periodic(std::size_t period);
    std::size_t period;
};

class LabelMismatch : public ChainError {
public:
    LabelMismatch(std::size_t labels, std::size_t states);
};

/**
 * A validated finite, irreducible and aperiodic Markov chain.
 *
 * Instances only come out of validate_chain(), so every Chain held by the
 * rest of the library satisfies the stochastic and ergodic invariants.
 */
class Chain {
public:
    std::size_t size() const { return static_cast<std::size_t>(transition_.rows()); }
    const Matrix& transition() const { return transition_; }
    double operator()(std::size_t i, std::size_t j) const {
        return transition_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(std::size_t i) const;

private:
    Chain(Matrix transition, std::vector<std::string> labels)
        : transition_(std::move(transition)), labels_(std::move(labels)) {}

    friend Chain validate_chain(const Matrix& raw, std::vector<std::string> labels);

    Matrix transition_;
    std::vector<std::string> labels_;
};

/// Checks shape, entries, row sums, strong connectivity and aperiodicity.
Chain validate_chain(const Matrix& raw, std::vector<std::string> labels = {});

/// Convenience overload for nested vectors (test fixtures, parsers).
Chain validate_chain(const std::vector<std::vector<double>>& rows,
                     std::vector<std::string> labels = {});

/// Strongly connected components of the support graph {(i,j) : p_ij > 0}.
/// Components are listed with their states ascending, ordered by smallest state.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Matrix& p);

/// Period of an irreducible support graph: gcd of level[u] + 1 - level[v]
/// over all edges, with BFS levels from state 0.
std::size_t chain_period(const Matrix& p);

}  // namespace kemeny
