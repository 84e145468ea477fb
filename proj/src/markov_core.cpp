#include "kemeny/markov_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kemeny {
namespace {

using Index = Eigen::Index;

// Reciprocal condition estimates below this mean the solve is meaningless.
constexpr double kMinRcond = 1e-14;

Eigen::PartialPivLU<Matrix> factor(const Matrix& a, const char* what) {
    Eigen::PartialPivLU<Matrix> lu(a);
    const double rc = lu.rcond();
    if (!(rc > kMinRcond)) throw SingularSystem(std::string(what) + ", rcond=" + std::to_string(rc));
    return lu;
}

}  // namespace

Matrix StationaryMeasure::rank_one() const {
    return Vector::Ones(w.size()) * w.transpose();
}

Matrix StationaryMeasure::inverse_diagonal() const {
    return w.cwiseInverse().asDiagonal();
}

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

StationaryMeasure stationary_measure(const Chain& chain) {
    const auto n = static_cast<Index>(chain.size());
    Matrix a = Matrix::Identity(n, n) - chain.transition().transpose();
    a.row(n - 1).setOnes();
    Vector rhs = Vector::Zero(n);
    rhs(n - 1) = 1.0;
    Vector w = factor(a, "stationary").solve(rhs);

    const double mass_err = std::abs(w.sum() - 1.0);
    const double balance_err = (w.transpose() * chain.transition() - w.transpose()).cwiseAbs().maxCoeff();
    if (!(w.minCoeff() > 0.0) || mass_err > 1e-12 || balance_err > 1e-10) {
        throw SingularSystem("stationary measure failed its invariants");
    }
    return StationaryMeasure{std::move(w)};
}

Matrix fundamental_matrix(const Chain& chain, const StationaryMeasure& w) {
    const auto n = static_cast<Index>(chain.size());
    const Matrix big_w = w.rank_one();
    const Matrix a = Matrix::Identity(n, n) - chain.transition() + big_w;
    Matrix z = factor(a, "fundamental").solve(Matrix::Identity(n, n));
    z -= big_w;
    return z;
}

Matrix greens_matrix(const Matrix& z, const StationaryMeasure& w) {
    return z * w.w.cwiseInverse().asDiagonal();
}

Matrix hitting_times(const Matrix& g) {
    const Index n = g.rows();
    Matrix m(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) m(i, j) = g(j, j) - g(i, j);
        m(j, j) = 0.0;
    }
    return m;
}

KemenyBundle kemeny_bundle(const Chain& chain, const StationaryMeasure& w, const Matrix& z,
                           const Matrix& g, const Matrix& m) {
    KemenyBundle k;
    k.by_start = m * w.w;
    k.trace = z.trace();
    k.density = g.diagonal();

    const EigenResult eig = nonsymmetric_eigenvalues(chain.transition());
    k.eigen_converged = eig.converged;
    k.eigen_iterations = eig.iterations;
    if (!eig.converged) return k;

    // The unit eigenvalue is simple for an ergodic chain; drop the closest one.
    std::size_t unit = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
        const double d = std::abs(eig.values[i] - 1.0);
        if (d < best) {
            best = d;
            unit = i;
        }
    }
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
        if (i == unit) continue;
        k.eigenvalues.push_back(eig.values[i]);
        sum += 1.0 / (1.0 - eig.values[i]);
    }
    k.spectral_imaginary = sum.imag();
    if (std::abs(sum.imag()) <= 1e-8 * (1.0 + std::abs(k.trace))) k.spectral = sum.real();
    return k;
}

ChainInvariants analyze_chain(const Chain& chain) {
    ChainInvariants inv;
    inv.stationary = stationary_measure(chain);
    inv.fundamental = fundamental_matrix(chain, inv.stationary);
    inv.green = greens_matrix(inv.fundamental, inv.stationary);
    inv.hitting = hitting_times(inv.green);
    inv.kemeny = kemeny_bundle(chain, inv.stationary, inv.fundamental, inv.green, inv.hitting);
    return inv;
}

ChainDiagnostics compute_diagnostics(const Chain& chain, const ChainInvariants& inv) {
    const auto n = static_cast<Index>(chain.size());
    const Matrix& p = chain.transition();
    const Vector& w = inv.stationary.w;
    const Matrix i_minus_p = Matrix::Identity(n, n) - p;
    const Matrix big_w = inv.stationary.rank_one();
    const Matrix d = inv.stationary.inverse_diagonal();

    ChainDiagnostics out;
    out.null_right = (i_minus_p * Vector::Ones(n)).cwiseAbs().maxCoeff();
    out.null_left = (w.transpose() * i_minus_p).cwiseAbs().maxCoeff();
    out.stationary_mass = std::abs(w.sum() - 1.0);
    out.z_row_sums = (inv.fundamental * Vector::Ones(n)).cwiseAbs().maxCoeff();
    out.wz = max_abs(big_w * inv.fundamental);
    out.wg = max_abs(big_w * inv.green);
    out.green_equation = max_abs(i_minus_p * inv.green - (Matrix::Identity(n, n) - big_w) * d);
    out.hitting_system = max_abs(i_minus_p * inv.hitting - (Matrix::Ones(n, n) - d));

    const Vector ret = Vector::Ones(n) + (p.cwiseProduct(inv.hitting.transpose())).rowwise().sum();
    out.return_time_relation = (ret - w.cwiseInverse()).cwiseAbs().maxCoeff();

    const auto& k = inv.kemeny;
    out.kemeny_spread = k.by_start.maxCoeff() - k.by_start.minCoeff();
    out.trace_vs_start0 = std::abs(k.trace - k.by_start(0));
    out.trace_vs_spectral = k.spectral ? std::abs(k.trace - *k.spectral)
                                       : std::numeric_limits<double>::quiet_NaN();
    const Vector game2 = inv.hitting.transpose() * w;
    out.density_vs_hitting = (k.density - game2).cwiseAbs().maxCoeff();
    out.density_mass = std::abs(w.dot(k.density) - k.trace);
    return out;
}

double distance_to_stationarity(const Chain& chain, const StationaryMeasure& w, std::size_t steps) {
    const auto n = static_cast<Index>(chain.size());
    Matrix pk = Matrix::Identity(n, n);
    for (std::size_t s = 0; s < steps; ++s) pk = pk * chain.transition();
    return (pk - w.rank_one()).cwiseAbs().rowwise().sum().maxCoeff();
}

std::optional<std::size_t> mixing_horizon(const Chain& chain, const StationaryMeasure& w, double tol,
                                          std::size_t max_steps, double* achieved) {
    const auto n = static_cast<Index>(chain.size());
    const Matrix big_w = w.rank_one();
    Matrix pk = Matrix::Identity(n, n);
    double norm = (pk - big_w).cwiseAbs().rowwise().sum().maxCoeff();
    for (std::size_t s = 0; s <= max_steps; ++s) {
        if (norm <= tol) {
            if (achieved) *achieved = norm;
            return s;
        }
        if (s == max_steps) break;
        pk = pk * chain.transition();
        norm = (pk - big_w).cwiseAbs().rowwise().sum().maxCoeff();
    }
    if (achieved) *achieved = norm;
    return std::nullopt;
}

}  // namespace kemeny
