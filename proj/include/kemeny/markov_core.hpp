#pragma once

#include "kemeny/chain.hpp"
#include "kemeny/eigenvalues.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kemeny {

/// A linear solve that should be well posed for an ergodic chain was not.
class SingularSystem : public std::runtime_error {
public:
    explicit SingularSystem(const std::string& what) : std::runtime_error("SingularSystem(" + what + ")") {}
};

/// Unique positive left eigenvector of P at eigenvalue 1, total mass 1.
struct StationaryMeasure {
    Vector w;

    std::size_t size() const { return static_cast<std::size_t>(w.size()); }
    double operator[](std::size_t i) const { return w(static_cast<Eigen::Index>(i)); }
    /// Rank-one matrix whose every row is w^T.
    Matrix rank_one() const;
    /// Diag(1 / w_i).
    Matrix inverse_diagonal() const;
};

struct KemenyBundle {
    Vector by_start;                        // K^i = sum_j m_ij w_j
    double trace = 0.0;                     // Tr Z
    std::optional<double> spectral;         // sum over non-unit eigenvalues of 1/(1 - nu)
    double spectral_imaginary = 0.0;        // discarded imaginary part of that sum
    Vector density;                         // K_j = G_jj
    std::vector<std::complex<double>> eigenvalues;  // non-unit eigenvalues of P
    bool eigen_converged = true;
    std::size_t eigen_iterations = 0;
};

struct ChainInvariants {
    StationaryMeasure stationary;
    Matrix fundamental;  // Z
    Matrix green;        // G
    Matrix hitting;      // M, zero diagonal
    KemenyBundle kemeny;
};

/// Residual norms (max-abs) backing every exact quantity.
struct ChainDiagnostics {
    double null_right = 0.0;          // (I-P) 1
    double null_left = 0.0;           // w^T (I-P)
    double stationary_mass = 0.0;     // |sum w - 1|
    double z_row_sums = 0.0;          // Z 1
    double wz = 0.0;                  // W Z
    double wg = 0.0;                  // W G
    double green_equation = 0.0;      // (I-P)G - (I-W)D
    double hitting_system = 0.0;      // (I-P)M - (1 - D)
    double return_time_relation = 0.0;  // 1 + sum_k p_ik m_ki - 1/w_i
    double kemeny_spread = 0.0;       // max_i K^i - min_i K^i
    double trace_vs_start0 = 0.0;     // |Tr Z - K^0|
    double trace_vs_spectral = 0.0;   // |Tr Z - spectral|, NaN when spectral absent
    double density_vs_hitting = 0.0;  // |G_jj - sum_i w_i m_ij|
    double density_mass = 0.0;        // |sum_j w_j K_j - K|
};

StationaryMeasure stationary_measure(const Chain& chain);

/// Z = (I - (P - W))^{-1} - W.
Matrix fundamental_matrix(const Chain& chain, const StationaryMeasure& w);

/// G = Z D with D = Diag(1 / w_i).
Matrix greens_matrix(const Matrix& z, const StationaryMeasure& w);

/// m_ij = G_jj - G_ij, diagonal set to exactly zero.
Matrix hitting_times(const Matrix& g);

KemenyBundle kemeny_bundle(const Chain& chain, const StationaryMeasure& w, const Matrix& z,
                           const Matrix& g, const Matrix& m);

/// Runs the whole exact pipeline.
ChainInvariants analyze_chain(const Chain& chain);

ChainDiagnostics compute_diagnostics(const Chain& chain, const ChainInvariants& inv);

/// Max-abs entry norm used by all residual checks.
double max_abs(const Matrix& m);

/// Smallest N <= max_steps with ||P^N - W||_inf <= tol (infinity norm = max
/// row sum). Returns the achieved norm through `achieved`; nullopt if not reached.
std::optional<std::size_t> mixing_horizon(const Chain& chain, const StationaryMeasure& w, double tol,
                                          std::size_t max_steps, double* achieved = nullptr);

/// ||P^N - W||_inf.
double distance_to_stationarity(const Chain& chain, const StationaryMeasure& w, std::size_t steps);

}  // namespace kemeny
