#include "oneq/neg_bounds.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace oneq {

double bound_s12(double alpha) {
    if (std::abs(alpha) > 1.0) {
        throw std::invalid_argument("bound_s12: |alpha| <= 1 required");
    }
    return std::sqrt(1.0 + alpha * alpha);
}

double bound_s12_optimal_t(std::int64_t big_n, double alpha) {
    return static_cast<double>(big_n) * (1.0 - 1.0 / std::sqrt(1.0 + alpha * alpha));
}

double bound_s12_integer(std::int64_t big_n, double alpha) {
    if (big_n < 2 || (big_n & (big_n - 1)) != 0) {
        throw std::invalid_argument("bound_s12_integer: N must be a power of two >= 2");
    }
    if (alpha == 0.0) {
        return 1.0;
    }
    if (std::abs(alpha) > 1.0) {
        throw std::invalid_argument("bound_s12_integer: |alpha| <= 1 required");
    }
    const double n = static_cast<double>(big_n);
    auto value = [&](std::int64_t t) {
        const double td = static_cast<double>(t);
        return (n - td + std::abs(alpha) * std::sqrt(td * (2.0 * n - td))) / n;
    };
    double best = 1.0;
    auto consider = [&](std::int64_t t) {
        if (t >= 1 && t <= 2 * big_n - 1) {
            best = std::max(best, value(t));
        }
    };
    const double t_star = bound_s12_optimal_t(big_n, alpha);
    consider(static_cast<std::int64_t>(std::floor(t_star)));
    consider(static_cast<std::int64_t>(std::ceil(t_star)));
    if (big_n <= (std::int64_t{1} << 10)) {
        for (std::int64_t t = 1; t <= 2 * big_n - 1; ++t) {
            consider(t);
        }
    }
    return best;
}

double bound_s123_asymptotic(std::int64_t big_n) {
    if (big_n < 2) {
        throw std::invalid_argument("bound_s123_asymptotic: N >= 2 required");
    }
    return std::numbers::sqrt2 -
           std::pow(2.0, -7.0 / 6.0) * std::pow(static_cast<double>(big_n), -1.0 / 3.0);
}

double moment_constraints(std::int64_t big_n, double alpha, int s) {
    if (s < 1 || s > 3) {
        throw std::invalid_argument("moment_constraints: s must be 1, 2, or 3");
    }
    const double n = static_cast<double>(big_n);
    return (std::pow(1.0 + alpha, s) + std::pow(1.0 - alpha, s)) /
           (std::pow(2.0, s) * std::pow(n, s - 1));
}

namespace {

// Everything below works in the rescaled eigenvalues a = 2N lambda / 2,
// i.e. a = N lambda, where all three moment targets become N:
//   u a + v b + w c = u a^2 + v b^2 + w c^2 = u a^3 + v b^3 + w c^3 = N.

struct TripleSolution {
    double a, b, c;  // scaled eigenvalues, slot order (u, v, w)
    double objective;
};

struct ScaledSystem {
    double u, v, w, n;

    std::array<double, 3> residual(double a, double b, double c) const {
        return {u * a + v * b + w * c - n,
                u * a * a + v * b * b + w * c * c - n,
                u * a * a * a + v * b * b * b + w * c * c * c - n};
    }

    bool newton_polish(double& a, double& b, double& c) const {
        for (int it = 0; it < 40; ++it) {
            const auto r = residual(a, b, c);
            const double norm = std::abs(r[0]) + std::abs(r[1]) + std::abs(r[2]);
            if (norm < 1e-13 * n) {
                return true;
            }
            Eigen::Matrix3d jac;
            jac << u, v, w, 2 * u * a, 2 * v * b, 2 * w * c, 3 * u * a * a, 3 * v * b * b,
                3 * w * c * c;
            Eigen::Vector3d rhs(r[0], r[1], r[2]);
            Eigen::FullPivLU<Eigen::Matrix3d> lu(jac);
            if (!lu.isInvertible()) {
                return false;
            }
            const Eigen::Vector3d step = lu.solve(rhs);
            a -= step(0);
            b -= step(1);
            c -= step(2);
            if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
                return false;
            }
        }
        const auto r = residual(a, b, c);
        return std::abs(r[0]) + std::abs(r[1]) + std::abs(r[2]) < 1e-10 * n;
    }
};

// Quadratic from eliminating c in the second equation at fixed a.
std::array<double, 3> quad_coeffs(const ScaledSystem& sys, double a) {
    const double s1 = sys.n - sys.u * a;
    const double s2 = sys.n - sys.u * a * a;
    return {sys.v + sys.v * sys.v / sys.w, -2.0 * s1 * sys.v / sys.w,
            s1 * s1 / sys.w - s2};
}

// Cubic from eliminating c in the third equation at fixed a.
std::array<double, 4> cubic_coeffs(const ScaledSystem& sys, double a) {
    const double s1 = sys.n - sys.u * a;
    const double s3 = sys.n - sys.u * a * a * a;
    const double w2 = sys.w * sys.w;
    return {sys.v - sys.v * sys.v * sys.v / w2, 3.0 * s1 * sys.v * sys.v / w2,
            -3.0 * s1 * s1 * sys.v / w2, s1 * s1 * s1 / w2 - s3};
}

double sylvester_resultant(const std::array<double, 3>& p, const std::array<double, 4>& q) {
    Eigen::Matrix<double, 5, 5> m = Eigen::Matrix<double, 5, 5>::Zero();
    for (int r = 0; r < 3; ++r) {
        m(r, r) = p[0];
        m(r, r + 1) = p[1];
        m(r, r + 2) = p[2];
    }
    for (int r = 0; r < 2; ++r) {
        m(3 + r, r) = q[0];
        m(3 + r, r + 1) = q[1];
        m(3 + r, r + 2) = q[2];
        m(3 + r, r + 3) = q[3];
    }
    return m.determinant();
}

// Real roots of a polynomial given by coefficients c[0] x^d + ... + c[d],
// via the companion matrix.
std::vector<double> real_roots(std::vector<double> coeffs) {
    double max_abs = 0.0;
    for (double c : coeffs) {
        max_abs = std::max(max_abs, std::abs(c));
    }
    if (max_abs == 0.0) {
        return {};
    }
    std::size_t lead = 0;
    while (lead < coeffs.size() && std::abs(coeffs[lead]) < 1e-11 * max_abs) {
        ++lead;
    }
    coeffs.erase(coeffs.begin(), coeffs.begin() + lead);
    const std::size_t deg = coeffs.empty() ? 0 : coeffs.size() - 1;
    if (deg == 0) {
        return {};
    }
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (std::size_t i = 0; i < deg; ++i) {
        comp(0, i) = -coeffs[i + 1] / coeffs[0];
        if (i + 1 < deg) {
            comp(i + 1, i) = 1.0;
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    std::vector<double> roots;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const auto z = es.eigenvalues()(i);
        if (std::abs(z.imag()) < 1e-6 * (1.0 + std::abs(z.real()))) {
            roots.push_back(z.real());
        }
    }
    return roots;
}

void consider_candidate(const ScaledSystem& sys, double a, double b, double c,
                        std::vector<TripleSolution>& out) {
    if (!sys.newton_polish(a, b, c)) {
        return;
    }
    const auto r = sys.residual(a, b, c);
    // residuals of the unscaled equations (targets 1, 1/N, 1/N^2)
    if (std::abs(r[0]) / sys.n > 1e-10 || std::abs(r[1]) / sys.n > 1e-10 ||
        std::abs(r[2]) / sys.n > 1e-10) {
        return;
    }
    const double obj =
        (sys.u * std::abs(a) + sys.v * std::abs(b) + sys.w * std::abs(c)) / sys.n;
    out.push_back({a, b, c, obj});
}

// All consistent solutions for one degeneracy triple with u, v, w >= 1.
std::vector<TripleSolution> solve_triple(double n, std::int64_t u, std::int64_t v,
                                         std::int64_t w) {
    const ScaledSystem sys{static_cast<double>(u), static_cast<double>(v),
                           static_cast<double>(w), n};
    std::vector<TripleSolution> out;

    // Interpolate the Sylvester resultant R(a) on Chebyshev nodes, then take
    // companion-matrix roots.  R has degree <= 12 in a; spurious roots are
    // removed by the residual filter above.
    constexpr int kDegree = 12;
    constexpr int kNodes = 25;
    const double limit = 1.05 * std::sqrt(n / sys.u);
    Eigen::MatrixXd vand(kNodes, kDegree + 1);
    Eigen::VectorXd rhs(kNodes);
    for (int i = 0; i < kNodes; ++i) {
        const double xi = std::cos(std::numbers::pi * (i + 0.5) / kNodes);
        const double a = limit * xi;
        double p = 1.0;
        for (int d = kDegree; d >= 0; --d) {
            vand(i, d) = p;  // column d holds xi^(kDegree - d)
            p *= xi;
        }
        rhs(i) = sylvester_resultant(quad_coeffs(sys, a), cubic_coeffs(sys, a));
    }
    const double scale = rhs.cwiseAbs().maxCoeff();
    if (scale > 0.0) {
        rhs /= scale;
    }
    const Eigen::VectorXd coeffs = vand.colPivHouseholderQr().solve(rhs);
    std::vector<double> cv(coeffs.data(), coeffs.data() + coeffs.size());

    for (double xi : real_roots(cv)) {
        if (std::abs(xi) > 1.05) {
            continue;
        }
        const double a = limit * xi;
        const auto q = quad_coeffs(sys, a);
        const double disc = q[1] * q[1] - 4.0 * q[0] * q[2];
        if (disc < 0.0) {
            continue;
        }
        for (const double sgn : {1.0, -1.0}) {
            const double b = (-q[1] + sgn * std::sqrt(disc)) / (2.0 * q[0]);
            const double c = (n - sys.u * a - sys.v * b) / sys.w;
            consider_candidate(sys, a, b, c, out);
        }
    }
    return out;
}

// Two-value case (one degeneracy is zero): the first two moments fix the
// candidates and the third must hold on its own.
std::vector<TripleSolution> solve_pair(double n, std::int64_t v, std::int64_t w) {
    std::vector<TripleSolution> out;
    if (v < 1 || w < 1) {
        return out;
    }
    const ScaledSystem sys{0.0, static_cast<double>(v), static_cast<double>(w), n};
    const auto q = quad_coeffs(sys, 0.0);
    const double disc = q[1] * q[1] - 4.0 * q[0] * q[2];
    if (disc < 0.0) {
        return out;
    }
    for (const double sgn : {1.0, -1.0}) {
        const double b = (-q[1] + sgn * std::sqrt(disc)) / (2.0 * q[0]);
        const double c = (n - sys.v * b) / sys.w;
        const auto r = sys.residual(0.0, b, c);
        if (std::abs(r[0]) / n > 1e-10 || std::abs(r[1]) / n > 1e-10 ||
            std::abs(r[2]) / n > 1e-10) {
            continue;
        }
        const double obj = (sys.v * std::abs(b) + sys.w * std::abs(c)) / n;
        out.push_back({0.0, b, c, obj});
    }
    return out;
}

struct RawResult {
    double bound = -1.0;
    std::int64_t u = 0, v = 0, w = 0;
    double a = 0.0, b = 0.0, c = 0.0;
};

void absorb(RawResult& best, std::int64_t u, std::int64_t v, std::int64_t w,
            const std::vector<TripleSolution>& sols) {
    for (const auto& s : sols) {
        if (s.objective > best.bound) {
            best = RawResult{s.objective, u, v, w, s.a, s.b, s.c};
        }
    }
}

}  // namespace

BoundResult bound_s123(std::int64_t big_n) {
    const std::int64_t two_n = 2 * big_n;
    if (two_n < 4 || two_n > 2048) {
        throw std::invalid_argument("bound_s123: supported range is 4 <= 2N <= 2048");
    }
    const double n = static_cast<double>(big_n);
    RawResult best;

    if (two_n <= 78) {
        // exhaustive over unordered degeneracy multisets
        for (std::int64_t u = 0; u <= two_n / 3; ++u) {
            for (std::int64_t v = std::max<std::int64_t>(u, 1); v <= (two_n - u) / 2; ++v) {
                const std::int64_t w = two_n - u - v;
                if (w < v) {
                    continue;
                }
                if (u == 0) {
                    absorb(best, u, v, w, solve_pair(n, v, w));
                } else {
                    absorb(best, u, v, w, solve_triple(n, u, v, w));
                }
            }
        }
    } else {
        // window around the known maximizer pattern
        const std::int64_t u_star =
            static_cast<std::int64_t>(std::llround(n * (1.0 - 1.0 / std::numbers::sqrt2)));
        for (std::int64_t u = std::max<std::int64_t>(1, u_star - 3); u <= u_star + 3; ++u) {
            for (std::int64_t v = 1; v <= 4; ++v) {
                const std::int64_t w = two_n - u - v;
                if (w < 1) {
                    continue;
                }
                absorb(best, u, v, w, solve_triple(n, u, v, w));
            }
        }
    }

    if (best.bound < 0.0) {
        throw std::runtime_error("bound_s123: no consistent triple found");
    }

    // Canonical labels: A the most negative value, B the largest, C the rest.
    std::array<std::pair<double, std::int64_t>, 3> vals{
        std::pair{best.a, best.u}, std::pair{best.b, best.v}, std::pair{best.c, best.w}};
    std::sort(vals.begin(), vals.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    BoundResult res;
    res.bound = best.bound;
    res.eig_a = vals[0].first / n;
    res.eig_c = vals[1].first / n;
    res.eig_b = vals[2].first / n;
    res.triple = DegeneracyTriple{vals[0].second, vals[2].second, vals[1].second};
    return res;
}

}  // namespace oneq
