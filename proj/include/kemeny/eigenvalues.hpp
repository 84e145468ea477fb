#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace kemeny {

struct EigenResult {
    // Complex pairs are adjacent, with the positive imaginary part first.
    std::vector<std::complex<double>> values;
    bool converged = true;
    std::size_t iterations = 0;
};

inline constexpr std::size_t kDefaultQrIterationsPerEigenvalue = 60;

/// Eigenvalues of a dense real nonsymmetric matrix: balancing, Householder
/// reduction to upper Hessenberg form, then Francis double-shift QR down to
/// real Schur form. On iteration exhaustion returns converged = false and the
/// eigenvalues found so far.
EigenResult nonsymmetric_eigenvalues(const Eigen::MatrixXd& a,
                                     std::size_t max_iterations_per_eigenvalue =
                                         kDefaultQrIterationsPerEigenvalue);

/// In-place orthogonal similarity to upper Hessenberg form (entries below the
/// first subdiagonal are set to zero).
void reduce_to_hessenberg(Eigen::MatrixXd& a);

}  // namespace kemeny
