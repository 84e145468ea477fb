#include "doctest.h"

#include "kemeny/eigenvalues.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>

using kemeny::nonsymmetric_eigenvalues;
using cplx = std::complex<double>;

namespace {

// Greedy nearest matching; fine for the well separated spectra used here.
double spectrum_distance(std::vector<cplx> a, std::vector<cplx> b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (const cplx& x : a) {
        auto it = std::min_element(b.begin(), b.end(),
                                   [&](const cplx& l, const cplx& r) { return std::abs(l - x) < std::abs(r - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

std::vector<cplx> eigen_reference(const Eigen::MatrixXd& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
    std::vector<cplx> out;
    for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

}  // namespace

TEST_CASE("lazy cycle spectrum is (1 + e^{2 pi i k/n}) / 2") {
    for (std::size_t n : {3u, 5u, 8u, 17u}) {
        const auto res = nonsymmetric_eigenvalues(oracle::lazy_cycle(n));
        REQUIRE(res.converged);
        std::vector<cplx> expected;
        for (std::size_t k = 0; k < n; ++k) {
            expected.push_back(0.5 + 0.5 * std::polar(1.0, 2.0 * std::numbers::pi * k / n));
        }
        CHECK(spectrum_distance(res.values, expected) < 1e-12);
    }
}

TEST_CASE("complex pairs are stored positive imaginary part first") {
    const auto res = nonsymmetric_eigenvalues(oracle::lazy_cycle(3));
    for (std::size_t i = 0; i < res.values.size(); ++i) {
        if (res.values[i].imag() > 0.0) {
            REQUIRE(i + 1 < res.values.size());
            CHECK(res.values[i + 1] == std::conj(res.values[i]));
        }
    }
}

TEST_CASE("agrees with a library eigensolver on random stochastic and general matrices") {
    for (std::size_t n = 2; n <= 40; n += 3) {
        const auto p = oracle::random_ergodic_matrix(n, 100 + n, n % 2 ? oracle::ChainKind::Dense
                                                                         : oracle::ChainKind::Sparse);
        const auto res = nonsymmetric_eigenvalues(p);
        REQUIRE(res.converged);
        CHECK(spectrum_distance(res.values, eigen_reference(p)) < 1e-9);
    }
    std::mt19937_64 gen(5);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::MatrixXd a(12, 12);
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = nd(gen);
        const auto res = nonsymmetric_eigenvalues(a);
        REQUIRE(res.converged);
        CHECK(spectrum_distance(res.values, eigen_reference(a)) < 1e-9);
    }
}

TEST_CASE("badly scaled matrix is handled by balancing") {
    Eigen::MatrixXd a(3, 3);
    a << 1.0, 1e6, 0.0, 1e-6, 2.0, 1e4, 0.0, 1e-4, 3.0;
    const auto res = nonsymmetric_eigenvalues(a);
    REQUIRE(res.converged);
    CHECK(spectrum_distance(res.values, eigen_reference(a)) < 1e-9);
}

TEST_CASE("Hessenberg reduction preserves the spectrum and zeroes the lower part") {
    const auto p = oracle::random_ergodic_matrix(9, 3, oracle::ChainKind::Dense);
    Eigen::MatrixXd h = p;
    kemeny::reduce_to_hessenberg(h);
    for (Eigen::Index i = 2; i < h.rows(); ++i)
        for (Eigen::Index j = 0; j + 1 < i; ++j) CHECK(h(i, j) == 0.0);
    CHECK(std::abs(h.trace() - p.trace()) < 1e-12);
    CHECK(spectrum_distance(eigen_reference(h), eigen_reference(p)) < 1e-10);
}

TEST_CASE("iteration cap exhaustion is reported") {
    const auto p = oracle::random_ergodic_matrix(20, 9, oracle::ChainKind::Dense);
    const auto res = nonsymmetric_eigenvalues(p, 0);
    CHECK_FALSE(res.converged);
}
