#include "kemeny/torus_core.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kemeny {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

// Gaussian exponents beyond this contribute below ~1e-17.
constexpr double kExponentCutoff = 40.0;
// Heat-trace tail: eigenvalues past this are negligible after exp(-lambda).
constexpr double kTailEigenvalueCutoff = 60.0;
constexpr double kCoincidence = 1e-12;

double wrap(double v, double len) {
    double r = std::fmod(v, len);
    if (r < 0.0) r += len;
    if (r >= len) r -= len;
    return r;
}

double min_image(double d, double len) {
    d = std::fmod(d, len);
    if (d > 0.5 * len) d -= len;
    if (d < -0.5 * len) d += len;
    return d;
}

double e1(double x) {
    if (x > 700.0) return 0.0;
    return boost::math::expint(1, x);
}

// sigma(t) = sum_{n != 0} exp(-n^2 L^2 / 4t), the Poisson side of a 1D theta.
double theta_tail(double len, double t) {
    double s = 0.0;
    for (int n = 1;; ++n) {
        const double e = static_cast<double>(n) * n * len * len / (4.0 * t);
        if (e > kExponentCutoff * 1.5) break;
        s += 2.0 * std::exp(-e);
    }
    return s;
}

// R(t) = Theta(t) - V/(4 pi t) for 0 < t <= 1.
double heat_trace_remainder(const FlatTorus& torus, double t) {
    const double s1 = theta_tail(torus.l1(), t);
    const double s2 = theta_tail(torus.l2(), t);
    return torus.volume() / (4.0 * kPi * t) * (s1 + s2 + s1 * s2);
}

}  // namespace

FlatTorus::FlatTorus(double l1, double l2) {
    if (!(l1 > 0.0) || !(l2 > 0.0) || !std::isfinite(l1) || !std::isfinite(l2)) {
        throw InvalidGeometry("InvalidGeometry(L1=" + std::to_string(l1) + ", L2=" + std::to_string(l2) +
                              "): side lengths must be positive and finite");
    }
    l1_ = std::max(l1, l2);
    l2_ = std::min(l1, l2);
}

TorusPoint FlatTorus::reduce(TorusPoint p) const { return {wrap(p.x1, l1_), wrap(p.x2, l2_)}; }

std::array<double, 2> FlatTorus::displacement(TorusPoint a, TorusPoint b) const {
    return {min_image(b.x1 - a.x1, l1_), min_image(b.x2 - a.x2, l2_)};
}

double FlatTorus::distance(TorusPoint a, TorusPoint b) const {
    const TorusPoint ra = reduce(a);
    const TorusPoint rb = reduce(b);
    const double d1 = rb.x1 - ra.x1;
    const double d2 = rb.x2 - ra.x2;
    double best = std::numeric_limits<double>::infinity();
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            best = std::min(best, std::hypot(d1 + i * l1_, d2 + j * l2_));
        }
    }
    return best;
}

double FlatTorus::scale_to_4pi() const { return std::sqrt(4.0 * kPi / volume()); }

std::vector<double> torus_eigenvalues(const FlatTorus& torus, std::size_t count) {
    if (count == 0) return {};
    const double a = 4.0 * kPi * kPi / (torus.l1() * torus.l1());
    const double b = 4.0 * kPi * kPi / (torus.l2() * torus.l2());
    // Weyl: lambda_j ~ 4 pi j / V; start a little above it and grow.
    double bound = std::max(4.0 * kPi * static_cast<double>(count) / torus.volume() * 1.25, a) + b;
    for (;;) {
        std::vector<double> out;
        const int pmax = static_cast<int>(std::sqrt(bound / a)) + 1;
        const int qmax = static_cast<int>(std::sqrt(bound / b)) + 1;
        for (int p = -pmax; p <= pmax; ++p) {
            for (int q = -qmax; q <= qmax; ++q) {
                if (p == 0 && q == 0) continue;
                const double lam = a * p * p + b * q * q;
                if (lam <= bound) out.push_back(lam);
            }
        }
        if (out.size() >= count) {
            std::sort(out.begin(), out.end());
            out.resize(count);
            return out;
        }
        bound *= 2.0;
    }
}

TorusGreen::TorusGreen(const FlatTorus& torus) : torus_(torus) {
    const double v = torus.volume();
    t0_ = v / (4.0 * kPi * kPi);

    // Fourier side: half lattice (p > 0, or p == 0 and q > 0), doubled.
    const double c1 = 2.0 * kPi / torus.l1();
    const double c2 = 2.0 * kPi / torus.l2();
    const double kmax2 = kExponentCutoff / t0_;
    const int pmax = static_cast<int>(std::sqrt(kmax2) / c1) + 1;
    const int qmax = static_cast<int>(std::sqrt(kmax2) / c2) + 1;
    for (int p = 0; p <= pmax; ++p) {
        for (int q = -qmax; q <= qmax; ++q) {
            if (p == 0 && q <= 0) continue;
            const double k1 = c1 * p;
            const double k2 = c2 * q;
            const double kk = k1 * k1 + k2 * k2;
            if (kk > kmax2) continue;
            waves_.push_back({k1, k2, 2.0 * std::exp(-kk * t0_) / (v * kk)});
        }
    }
    // Smallest weights first keeps the cosine sum's rounding low.
    std::sort(waves_.begin(), waves_.end(), [](const Wave& a, const Wave& b) { return a.weight < b.weight; });

    // Real side: translates n whose distance to the central cell is in range.
    const double reach = std::sqrt(kExponentCutoff * 4.0 * t0_);
    const double half_diag = 0.5 * std::hypot(torus.l1(), torus.l2());
    const int nmax1 = static_cast<int>((reach + half_diag) / torus.l1()) + 1;
    const int nmax2 = static_cast<int>((reach + half_diag) / torus.l2()) + 1;
    for (int n1 = -nmax1; n1 <= nmax1; ++n1) {
        for (int n2 = -nmax2; n2 <= nmax2; ++n2) {
            const double t1 = n1 * torus.l1();
            const double t2 = n2 * torus.l2();
            if (std::hypot(t1, t2) - half_diag > reach) continue;
            images_.push_back({t1, t2});
        }
    }
}

double TorusGreen::at_displacement(double r1, double r2) const {
    if (std::hypot(r1, r2) < kCoincidence) {
        throw CoincidentPoints("CoincidentPoints: Green's function is singular on the diagonal");
    }
    double fourier = 0.0;
    for (const auto& w : waves_) fourier += w.weight * std::cos(w.k1 * r1 + w.k2 * r2);
    double real = 0.0;
    for (const auto& n : images_) {
        const double a = r1 + n[0];
        const double b = r2 + n[1];
        real += e1((a * a + b * b) / (4.0 * t0_));
    }
    return fourier + real / (4.0 * kPi) - t0_ / torus_.volume();
}

double TorusGreen::operator()(TorusPoint x, TorusPoint y) const {
    const auto r = torus_.displacement(x, y);
    return at_displacement(r[0], r[1]);
}

double TorusGreen::regular_part(TorusPoint x, TorusPoint y) const {
    const auto r = torus_.displacement(x, y);
    return at_displacement(r[0], r[1]) + std::log(std::hypot(r[0], r[1])) / (2.0 * kPi);
}

double TorusGreen::robins_mass() const {
    double fourier = 0.0;
    for (const auto& w : waves_) fourier += w.weight;
    double real = 0.0;
    for (const auto& n : images_) {
        if (n[0] == 0.0 && n[1] == 0.0) continue;
        real += e1((n[0] * n[0] + n[1] * n[1]) / (4.0 * t0_));
    }
    // E1(z) = -gamma - log z + O(z) for the n = 0 image: its finite part.
    const double self = (std::log(4.0 * t0_) - kEulerGamma) / (4.0 * kPi);
    return fourier + real / (4.0 * kPi) - t0_ / torus_.volume() + self;
}

double robins_mass(const FlatTorus& torus) { return TorusGreen(torus).robins_mass(); }

double robins_mass_extrapolated(const FlatTorus& torus, TorusPoint x, double angle, double d0,
                                std::size_t levels) {
    const TorusGreen green(torus);
    const double u1 = std::cos(angle);
    const double u2 = std::sin(angle);
    // Neville table in h = d^2; the regular part is even in d.
    std::vector<double> h(levels);
    std::vector<double> f(levels);
    double d = d0;
    for (std::size_t k = 0; k < levels; ++k, d *= 0.5) {
        h[k] = d * d;
        f[k] = green.regular_part(x, {x.x1 + d * u1, x.x2 + d * u2});
    }
    for (std::size_t m = 1; m < levels; ++m) {
        for (std::size_t k = levels - 1; k >= m; --k) {
            f[k] = (h[k - m] * f[k] - h[k] * f[k - 1]) / (h[k - m] - h[k]);
            if (k == m) break;
        }
    }
    return f[levels - 1];
}

double spectral_zeta(const FlatTorus& torus, double s) {
    if (!(s > 0.0) || s == 1.0) throw std::domain_error("spectral_zeta: need real s > 0, s != 1");
    const double v = torus.volume();
    namespace bq = boost::math::quadrature;
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::pow(t, s - 1.0) * heat_trace_remainder(torus, t);
    };
    double err = 0.0;
    const double head = bq::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 12, 1e-12, &err);

    const double a = 4.0 * kPi * kPi / (torus.l1() * torus.l1());
    const double b = 4.0 * kPi * kPi / (torus.l2() * torus.l2());
    const int pmax = static_cast<int>(std::sqrt(kTailEigenvalueCutoff / a)) + 1;
    const int qmax = static_cast<int>(std::sqrt(kTailEigenvalueCutoff / b)) + 1;
    double tail = 0.0;
    for (int p = -pmax; p <= pmax; ++p) {
        for (int q = -qmax; q <= qmax; ++q) {
            if (p == 0 && q == 0) continue;
            const double lam = a * p * p + b * q * q;
            if (lam > kTailEigenvalueCutoff) continue;
            // int_1^inf t^{s-1} e^{-lam t} dt = lam^{-s} Gamma(s, lam)
            tail += std::pow(lam, -s) * boost::math::tgamma(s, lam);
        }
    }
    const double bracket = (v / (4.0 * kPi)) / (s - 1.0) - 1.0 / s + head + tail;
    return bracket / std::tgamma(s);
}

RegularizedTrace regularized_trace(const FlatTorus& torus) {
    RegularizedTrace out;
    out.scale = torus.scale_to_4pi();
    const FlatTorus t = torus.scaled(out.scale);

    namespace bq = boost::math::quadrature;
    double err = 0.0;
    const double head = bq::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return x <= 0.0 ? 0.0 : heat_trace_remainder(t, x); }, 0.0, 1.0, 12, 1e-12, &err);

    const double a = 4.0 * kPi * kPi / (t.l1() * t.l1());
    const double b = 4.0 * kPi * kPi / (t.l2() * t.l2());
    const int pmax = static_cast<int>(std::sqrt(kTailEigenvalueCutoff / a)) + 1;
    const int qmax = static_cast<int>(std::sqrt(kTailEigenvalueCutoff / b)) + 1;
    double tail = 0.0;
    for (int p = -pmax; p <= pmax; ++p) {
        for (int q = -qmax; q <= qmax; ++q) {
            if (p == 0 && q == 0) continue;
            const double lam = a * p * p + b * q * q;
            if (lam <= kTailEigenvalueCutoff) tail += std::exp(-lam) / lam;
        }
    }
    // Z(s) = [1/(s-1) + F(s)] / Gamma(s) with 1/Gamma(s) = 1 + gamma (s-1) + ...
    out.value = kEulerGamma - 1.0 + head + tail;
    return out;
}

double mass_trace_rhs(double volume, double mass) {
    return volume * mass + volume / (4.0 * kPi) * (-2.0 * std::numbers::ln2 + 2.0 * kEulerGamma);
}

MassTraceIdentity mass_trace_identity(const FlatTorus& torus) {
    MassTraceIdentity out;
    const RegularizedTrace tr = regularized_trace(torus);
    out.scale = tr.scale;
    const FlatTorus t = torus.scaled(tr.scale);
    out.mass = robins_mass(t);
    out.lhs = tr.value;
    out.rhs = mass_trace_rhs(t.volume(), out.mass);
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

TorusInvariants torus_invariants(const FlatTorus& torus) {
    TorusInvariants inv;
    inv.robins_mass = robins_mass(torus);
    inv.identity = mass_trace_identity(torus);
    inv.reg_trace = RegularizedTrace{inv.identity.lhs, inv.identity.scale};
    return inv;
}

double game_duration_prediction(const TorusGreen& green, double eps) {
    const double v = green.torus().volume();
    return -v / (2.0 * kPi) * std::log(eps) + v * green.robins_mass();
}

double game_duration_prediction(const FlatTorus& torus, double eps) {
    return game_duration_prediction(TorusGreen(torus), eps);
}

double expected_hitting_formula(const TorusGreen& green, TorusPoint x, TorusPoint y, double eps) {
    const FlatTorus& torus = green.torus();
    const double d = torus.distance(x, y);
    if (!(eps > 0.0) || !(eps < d) || !(eps < torus.l2() / 4.0)) {
        throw EpsilonTooLarge("EpsilonTooLarge(eps=" + std::to_string(eps) + ", d=" + std::to_string(d) +
                              ", L2/4=" + std::to_string(torus.l2() / 4.0) + ")");
    }
    return -torus.volume() * green(x, y) + game_duration_prediction(green, eps);
}

double expected_hitting_formula(const FlatTorus& torus, TorusPoint x, TorusPoint y, double eps) {
    return expected_hitting_formula(TorusGreen(torus), x, y, eps);
}

}  // namespace kemeny
