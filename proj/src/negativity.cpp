#include "oneq/negativity.hpp"

#include <quadmath.h>

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "oneq/random_unitary.hpp"

namespace oneq {

double multiplicative_negativity(const DensityMatrix& rho, const BipartiteSplit& split) {
    const Matrix pt = partial_transpose(rho.matrix(), split, /*on_a=*/false);
    return hermitian_spectrum(pt).sum_abs();
}

double dqc1_negativity_fast(const UnitaryOperator& u, double alpha, const BipartiteSplit& split) {
    if (std::abs(alpha) > 1.0) {
        throw std::invalid_argument("dqc1_negativity_fast: |alpha| <= 1 required");
    }
    if (split.total_qubits() != u.num_qubits() + 1) {
        throw std::invalid_argument("dqc1_negativity_fast: split must cover n+1 qubits");
    }
    // Unpolarized qubits of the part opposite the control, in the unitary's
    // own indexing (circuit qubit q corresponds to unitary qubit q-1).
    const bool control_in_a = split.contains_a(0);
    std::vector<int> transpose_set;
    for (int q = 1; q <= u.num_qubits(); ++q) {
        if (split.contains_a(q) != control_in_a) {
            transpose_set.push_back(q - 1);
        }
    }
    Matrix breve_u;
    if (transpose_set.empty()) {
        // degenerate split: nothing opposite the control carries a transpose
        breve_u = u.matrix();
    } else if (static_cast<int>(transpose_set.size()) == u.num_qubits()) {
        breve_u = u.matrix().transpose();
    } else {
        const BipartiteSplit usplit(transpose_set, u.num_qubits());
        breve_u = partial_transpose(u.matrix(), usplit, /*on_a=*/true);
    }
    const Spectrum s = singular_values(breve_u);
    double acc = 0.0;
    for (double sj : s.values) {
        acc += std::max(std::abs(alpha) * sj, 1.0);
    }
    return acc / static_cast<double>(u.dim());
}

UnitaryOperator special_u2() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 3) = 1;  // C block
    m(1, 1) = 1;  // A block
    m(2, 2) = 1;  // B block
    m(3, 0) = 1;  // D block
    return UnitaryOperator(std::move(m), 2, UnitaryOperator::Unchecked{});
}

UnitaryOperator family_unitary(int n, const UnitaryOperator& u2) {
    if (n < 2) {
        throw std::invalid_argument("family_unitary needs n >= 2");
    }
    if (u2.dim() != 4) {
        throw std::invalid_argument("family_unitary needs a two-qubit seed gate");
    }
    const Matrix gram = u2.matrix().adjoint() * u2.matrix();
    if ((gram - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() > tol::unitary) {
        throw std::invalid_argument("family_unitary: seed gate is not unitary");
    }
    if (n == 2) {
        return u2;
    }
    const Matrix a1 = u2.matrix().block(0, 0, 2, 2);
    const Matrix c1 = u2.matrix().block(0, 2, 2, 2);
    const Matrix d1 = u2.matrix().block(2, 0, 2, 2);
    const Matrix b1 = u2.matrix().block(2, 2, 2, 2);

    Matrix x_mid = pauli_x();
    Matrix i_mid = identity(2);
    for (int q = 1; q < n - 2; ++q) {
        x_mid = tensor_product(x_mid, pauli_x());
        i_mid = tensor_product(i_mid, identity(2));
    }

    const std::int64_t d = std::int64_t{1} << n;
    const std::int64_t half = d / 2;
    Matrix u = Matrix::Zero(d, d);
    u.topLeftCorner(half, half) = tensor_product(i_mid, a1);
    u.bottomRightCorner(half, half) = tensor_product(i_mid, b1);
    u.topRightCorner(half, half) = tensor_product(x_mid, c1);
    u.bottomLeftCorner(half, half) = tensor_product(x_mid, d1);
    return UnitaryOperator(std::move(u), n, UnitaryOperator::Unchecked{});
}

Spectrum dqc1_family_spectrum(double alpha) {
    if (std::abs(alpha) > 1.0) {
        throw std::invalid_argument("dqc1_family_spectrum: |alpha| <= 1 required");
    }
    std::vector<double> v{(1.0 + 2.0 * alpha) / 8.0, 0.125, 0.125, 0.125,
                          0.125, 0.125, 0.125, (1.0 - 2.0 * alpha) / 8.0};
    std::sort(v.begin(), v.end(), std::greater<double>());
    return Spectrum{std::move(v)};
}

BipartiteSplit near_equal_split(int n) {
    std::vector<int> a{0};
    for (int q = 1; q <= n / 2; ++q) {
        a.push_back(q);
    }
    return BipartiteSplit(a, n + 1);
}

EnsembleStats random_ensemble_negativity(int n, const BipartiteSplit& split, int samples,
                                         RngSeed seed, Exec exec) {
    if (samples < 2) {
        throw std::invalid_argument("random_ensemble_negativity needs samples >= 2");
    }
    const auto values = map_indexed<double>(samples, exec, [&](std::size_t k) {
        Rng rng = Rng::derived(seed, k);
        const UnitaryOperator u = pseudo_random_unitary(n, rng);
        return dqc1_negativity_fast(u, 1.0, split);
    });
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= samples;
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= (samples - 1);
    return EnsembleStats{mean, std::sqrt(var), samples};
}

namespace {

// ln|Gamma(x)| plus the sign of Gamma(x); x is never a nonpositive integer
// here (the arguments are half-integers), so no pole handling is needed.
std::pair<__float128, int> signed_lgamma_q(double x) {
    const __float128 lg = lgammaq(static_cast<__float128>(x));
    int sign = 1;
    if (x < 0.0) {
        sign = (static_cast<long long>(std::floor(-x)) % 2 == 0) ? -1 : 1;
    }
    return {lg, sign};
}

}  // namespace

double laguerre_overlap_integral(int k, int l) {
    if (k < 0 || l < 0) {
        throw std::invalid_argument("laguerre_overlap_integral: negative order");
    }
    // sum_t (-1)^t C(k,t) Gamma(t+3/2)^2 / (t! Gamma(t-l+3/2)), scaled by
    // (-1)^l/l!; the arguments t-l+3/2 are always half-integers so Gamma
    // never hits a pole.  The (-1)^t comes from the Pochhammer factor
    // (-k)_t = (-1)^t C(k,t) t! in the terminating hypergeometric sum;
    // without it the sum is not even symmetric in (k, l).  The alternating
    // terms cancel down by up to ~25 orders of magnitude at k = 63, so the
    // sum is accumulated in quad precision.  Checked against direct
    // quadrature in the tests.
    auto lg = [](double x) { return lgammaq(static_cast<__float128>(x)); };
    const __float128 log_lfact = lg(l + 1.0);
    __float128 acc = 0;
    for (int t = 0; t <= k; ++t) {
        const __float128 log_binom = lg(k + 1.0) - lg(t + 1.0) - lg(k - t + 1.0);
        const __float128 log_num = 2 * lg(t + 1.5);
        const auto [log_den_gamma, den_sign] = signed_lgamma_q(t - l + 1.5);
        const __float128 log_term =
            log_binom + log_num - lg(t + 1.0) - log_den_gamma - log_lfact;
        const int t_sign = (t % 2 == 0) ? 1 : -1;
        acc += t_sign * den_sign * expq(log_term);
    }
    const int sign = (l % 2 == 0) ? 1 : -1;
    return static_cast<double>(sign * acc);
}

double avg_pure_negativity_exact(int mu) {
    if (mu < 1 || mu > 64 || (mu & (mu - 1)) != 0) {
        throw std::invalid_argument("avg_pure_negativity_exact: mu must be a power of two <= 64");
    }
    std::vector<double> diag(mu);
    std::vector<std::vector<double>> ikl(mu, std::vector<double>(mu));
    for (int k = 0; k < mu; ++k) {
        for (int l = 0; l < mu; ++l) {
            ikl[k][l] = laguerre_overlap_integral(k, l);
        }
        diag[k] = ikl[k][k];
    }
    long double acc = 0.0L;
    for (int k = 0; k < mu; ++k) {
        for (int l = 0; l < mu; ++l) {
            acc += static_cast<long double>(diag[k]) * diag[l] -
                   static_cast<long double>(ikl[k][l]) * ikl[k][l];
        }
    }
    return 1.0 + static_cast<double>(acc) / (static_cast<double>(mu) * mu);
}

MonteCarloStats avg_pure_negativity_mc(int n, const BipartiteSplit& split, int samples,
                                       RngSeed seed, Exec exec) {
    if (samples < 2) {
        throw std::invalid_argument("avg_pure_negativity_mc needs samples >= 2");
    }
    if (split.total_qubits() != n) {
        throw std::invalid_argument("avg_pure_negativity_mc: split must cover n qubits");
    }
    const std::int64_t da = split.dim_a();
    const std::int64_t db = split.dim_b();
    const auto a_tab = split.part_a();
    const auto b_tab = split.part_b();

    const auto values = map_indexed<double>(samples, exec, [&](std::size_t s) {
        Rng rng = Rng::derived(seed, s);
        const Vector psi = haar_state(std::int64_t{1} << n, rng);
        // reshape along the split and read the Schmidt coefficients
        Matrix m = Matrix::Zero(da, db);
        for (std::int64_t i = 0; i < psi.size(); ++i) {
            std::int64_t row = 0, col = 0;
            for (std::size_t p = 0; p < a_tab.size(); ++p) {
                row = (row << 1) |
                      ((static_cast<std::uint64_t>(i) & qubit_bit(n, a_tab[p])) ? 1 : 0);
            }
            for (std::size_t p = 0; p < b_tab.size(); ++p) {
                col = (col << 1) |
                      ((static_cast<std::uint64_t>(i) & qubit_bit(n, b_tab[p])) ? 1 : 0);
            }
            m(row, col) = psi(i);
        }
        Eigen::BDCSVD<Matrix> svd(m);
        double root_sum = 0.0;
        for (Eigen::Index j = 0; j < svd.singularValues().size(); ++j) {
            root_sum += svd.singularValues()(j);  // sqrt(mu_j) is the singular value
        }
        return root_sum * root_sum;
    });

    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= samples;
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= (samples - 1);
    return MonteCarloStats{mean, std::sqrt(var / samples), samples};
}

}  // namespace oneq
