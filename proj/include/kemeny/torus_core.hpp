#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kemeny {

class InvalidGeometry : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class CoincidentPoints : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class EpsilonTooLarge : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct TorusPoint {
    double x1 = 0.0;
    double x2 = 0.0;
};

/// Flat rectangular torus R^2 / (L1 Z x L2 Z), stored with L1 >= L2.
class FlatTorus {
public:
    FlatTorus(double l1, double l2);

    double l1() const { return l1_; }
    double l2() const { return l2_; }
    double volume() const { return l1_ * l2_; }

    /// Coordinates reduced into [0, L1) x [0, L2).
    TorusPoint reduce(TorusPoint p) const;
    /// Minimal-image displacement from a to b, each component in [-L/2, L/2].
    std::array<double, 2> displacement(TorusPoint a, TorusPoint b) const;
    /// Flat geodesic distance, minimized over the 9 nearest lattice translates.
    double distance(TorusPoint a, TorusPoint b) const;

    /// Same shape with both sides multiplied by factor.
    FlatTorus scaled(double factor) const { return FlatTorus(l1_ * factor, l2_ * factor); }
    /// Factor taking this torus to volume 4 pi.
    double scale_to_4pi() const;

private:
    double l1_;
    double l2_;
};

/// The `count` smallest nonzero Laplace eigenvalues 4 pi^2 (p^2/L1^2 + q^2/L2^2),
/// with multiplicity, ascending.
std::vector<double> torus_eigenvalues(const FlatTorus& torus, std::size_t count);

/**
 * Green's function of the (positive) Laplacian on a flat torus, normalized to
 * integrate to zero, evaluated by Ewald splitting of the heat kernel at
 * t0 = 1 / alpha^2 with alpha = 2 pi / sqrt(V):
 *
 *   G(r) = (1/V) sum'_k exp(-|k|^2 t0) cos(k.r) / |k|^2
 *        + (1/4 pi) sum_n E1(|r + n|^2 / 4 t0) - t0 / V.
 *
 * Both lattice sums are truncated where the omitted terms fall below ~1e-17.
 * Construction precomputes the immutable term tables.
 */
class TorusGreen {
public:
    explicit TorusGreen(const FlatTorus& torus);

    const FlatTorus& torus() const { return torus_; }
    double splitting_time() const { return t0_; }

    /// G(x, y); throws CoincidentPoints when d(x, y) < 1e-12.
    double operator()(TorusPoint x, TorusPoint y) const;
    /// G evaluated at a minimal-image displacement r.
    double at_displacement(double r1, double r2) const;
    /// G(x, y) + (1/2 pi) log d(x, y).
    double regular_part(TorusPoint x, TorusPoint y) const;

    /// Robin's mass: the finite part of the Ewald sum at coincidence.
    double robins_mass() const;

private:
    struct Wave {
        double k1, k2, weight;  // weight already includes 1/V and the +-k pairing
    };
    FlatTorus torus_;
    double t0_;
    std::vector<Wave> waves_;
    std::vector<std::array<double, 2>> images_;  // lattice translates n, including 0
};

double robins_mass(const FlatTorus& torus);

/// Richardson extrapolation of G(x, x + d u) + (1/2 pi) log d to d -> 0, with
/// d halving from d0 over `levels` points, eliminating the even powers of d.
double robins_mass_extrapolated(const FlatTorus& torus, TorusPoint x, double direction_angle = 0.3,
                                double d0 = 0.02, std::size_t levels = 5);

/// Spectral zeta sum' lambda^{-s} by its heat-trace representation (valid for
/// real s > 0, s != 1): the interval t <= 1 by quadrature of the
/// Poisson-resummed theta series, the tail t >= 1 through eigenvalue sums.
double spectral_zeta(const FlatTorus& torus, double s);

struct RegularizedTrace {
    double value = 0.0;  // lim_{s->1} (Z(s) - 1/(s-1)) at volume 4 pi
    double scale = 1.0;  // length factor applied to reach volume 4 pi
};

/// Zeta-regularized trace of the inverse Laplacian at volume 4 pi; the torus
/// is rescaled internally and the factor reported.
RegularizedTrace regularized_trace(const FlatTorus& torus);

/// V m + (V / 4 pi)(-2 log 2 + 2 gamma).
double mass_trace_rhs(double volume, double mass);

struct MassTraceIdentity {
    double lhs = 0.0;       // heat-trace Z~(1)
    double rhs = 0.0;       // from the Ewald Robin's mass
    double residual = 0.0;  // |lhs - rhs|
    double scale = 1.0;
    double mass = 0.0;      // Robin's mass of the rescaled torus
};

MassTraceIdentity mass_trace_identity(const FlatTorus& torus);

struct TorusInvariants {
    double robins_mass = 0.0;  // at the torus' own size
    RegularizedTrace reg_trace;
    MassTraceIdentity identity;
};

TorusInvariants torus_invariants(const FlatTorus& torus);

/// -V G(x,y) - (V / 2 pi) log eps + V m, without the harmonic corrector u_eps
/// (an O(eps) model error). Requires eps < d(x,y) and eps < L2/4.
double expected_hitting_formula(const TorusGreen& green, TorusPoint x, TorusPoint y, double eps);
double expected_hitting_formula(const FlatTorus& torus, TorusPoint x, TorusPoint y, double eps);

/// Game I / Game II duration up to O(eps): -(V / 2 pi) log eps + V m.
double game_duration_prediction(const FlatTorus& torus, double eps);
double game_duration_prediction(const TorusGreen& green, double eps);

}  // namespace kemeny
