#include "kemeny/eigenvalues.hpp"

#include <cmath>
#include <limits>

namespace kemeny {
namespace {

using Index = Eigen::Index;

double sign_of(double magnitude, double s) { return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

// Parlett-Reinsch balancing by powers of the floating-point radix, so the
// similarity is exact.
void balance(Eigen::MatrixXd& a) {
    const Index n = a.rows();
    constexpr double radix = std::numeric_limits<double>::radix;
    constexpr double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (Index i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (Index j = 0; j < n; ++j) {
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

}  // namespace

void reduce_to_hessenberg(Eigen::MatrixXd& a) {
    const Index n = a.rows();
    Eigen::VectorXd v;
    for (Index k = 0; k + 2 < n; ++k) {
        const Index len = n - k - 1;
        auto x = a.col(k).segment(k + 1, len);
        const double norm = x.norm();
        if (norm == 0.0) continue;
        const double alpha = -sign_of(norm, x(0));
        v = x;
        v(0) -= alpha;
        const double vnorm = v.norm();
        if (vnorm == 0.0) continue;
        v /= vnorm;
        // H = I - 2 v v^T applied from both sides.
        auto rows = a.block(k + 1, k, len, n - k);
        rows.noalias() -= 2.0 * v * (v.transpose() * rows);
        auto cols = a.block(0, k + 1, n, len);
        cols.noalias() -= 2.0 * (cols * v) * v.transpose();
        a.col(k).segment(k + 2, len - 1).setZero();
        a(k + 1, k) = alpha;
    }
}

EigenResult nonsymmetric_eigenvalues(const Eigen::MatrixXd& input,
                                     std::size_t max_iterations_per_eigenvalue) {
    const Index n = input.rows();
    EigenResult out;
    out.values.assign(static_cast<std::size_t>(n), {0.0, 0.0});
    if (n == 0) return out;

    Eigen::MatrixXd a = input;
    balance(a);
    reduce_to_hessenberg(a);

    const double eps = std::numeric_limits<double>::epsilon();
    double anorm = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = std::max<Index>(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
    }

    auto& w = out.values;
    Index nn = n - 1;
    double t = 0.0;  // accumulated exceptional shifts
    while (nn >= 0) {
        std::size_t its = 0;
        Index l = 0;
        do {
            // Look for a single small subdiagonal element.
            for (l = nn; l > 0; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= eps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                w[static_cast<std::size_t>(nn)] = {x + t, 0.0};
                --nn;
                continue;
            }
            double y = a(nn - 1, nn - 1);
            double ww = a(nn, nn - 1) * a(nn - 1, nn);
            if (l == nn - 1) {
                // Trailing 2x2 block.
                const double p = 0.5 * (y - x);
                const double q = p * p + ww;
                double z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) {
                    z = p + sign_of(z, p);
                    w[static_cast<std::size_t>(nn - 1)] = {x + z, 0.0};
                    w[static_cast<std::size_t>(nn)] = {z != 0.0 ? x - ww / z : x + z, 0.0};
                } else {
                    w[static_cast<std::size_t>(nn - 1)] = {x + p, z};
                    w[static_cast<std::size_t>(nn)] = {x + p, -z};
                }
                nn -= 2;
                continue;
            }

            if (its == max_iterations_per_eigenvalue) {
                out.converged = false;
                // Report what is known; the unreduced block keeps its diagonal.
                for (Index i = 0; i <= nn; ++i) w[static_cast<std::size_t>(i)] = {a(i, i) + t, 0.0};
                return out;
            }
            if (its > 0 && its % 10 == 0) {
                t += x;
                for (Index i = 0; i <= nn; ++i) a(i, i) -= x;
                const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                y = x = 0.75 * s;
                ww = -0.4375 * s * s;
            }
            ++its;
            ++out.iterations;

            // Form the shift and look for two consecutive small subdiagonals.
            Index m = nn - 2;
            double p = 0.0;
            double q = 0.0;
            double r = 0.0;
            double z = 0.0;
            for (; m >= l; --m) {
                z = a(m, m);
                r = x - z;
                double s = y - z;
                p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
                q = a(m + 1, m + 1) - z - r - s;
                r = a(m + 2, m + 1);
                s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                                std::abs(a(m + 1, m + 1)));
                if (u <= eps * v) break;
            }
            for (Index i = m; i < nn - 1; ++i) {
                a(i + 2, i) = 0.0;
                if (i != m) a(i + 2, i - 1) = 0.0;
            }

            // Double-shift QR sweep on rows/columns l..nn.
            for (Index k = m; k < nn; ++k) {
                if (k != m) {
                    p = a(k, k - 1);
                    q = a(k + 1, k - 1);
                    r = 0.0;
                    if (k + 1 != nn) r = a(k + 2, k - 1);
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x != 0.0) {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                if (s == 0.0) continue;
                if (k == m) {
                    if (l != m) a(k, k - 1) = -a(k, k - 1);
                } else {
                    a(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;
                for (Index j = k; j <= nn; ++j) {
                    p = a(k, j) + q * a(k + 1, j);
                    if (k + 1 != nn) {
                        p += r * a(k + 2, j);
                        a(k + 2, j) -= p * z;
                    }
                    a(k + 1, j) -= p * y;
                    a(k, j) -= p * x;
                }
                const Index mmin = nn < k + 3 ? nn : k + 3;
                for (Index i = l; i <= mmin; ++i) {
                    p = x * a(i, k) + y * a(i, k + 1);
                    if (k + 1 != nn) {
                        p += z * a(i, k + 2);
                        a(i, k + 2) -= p * r;
                    }
                    a(i, k + 1) -= p * q;
                    a(i, k) -= p;
                }
            }
        } while (l + 1 < nn);
    }
    return out;
}

}  // namespace kemeny
