#include "oneq/dqc1.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace oneq {

DQC1State build_state(const UnitaryOperator& u, double alpha) {
    if (std::abs(alpha) > 1.0) {
        throw std::invalid_argument("polarization must satisfy |alpha| <= 1");
    }
    const std::int64_t big_n = u.dim();
    const std::int64_t d = 2 * big_n;
    Matrix m = Matrix::Zero(d, d);
    m.topLeftCorner(big_n, big_n) = Matrix::Identity(big_n, big_n);
    m.bottomRightCorner(big_n, big_n) = Matrix::Identity(big_n, big_n);
    m.topRightCorner(big_n, big_n) = alpha * u.matrix().adjoint();
    m.bottomLeftCorner(big_n, big_n) = alpha * u.matrix();
    m /= static_cast<double>(d);
    return DQC1State{u.num_qubits(), alpha, u,
                     DensityMatrix(std::move(m), u.num_qubits() + 1, DensityMatrix::Unchecked{})};
}

Complex normalized_trace_exact(const UnitaryOperator& u) {
    return u.matrix().trace() / static_cast<double>(u.dim());
}

std::pair<double, double> expectation_xy(const DQC1State& state) {
    const std::int64_t big_n = state.unitary.dim();
    // 2 tr(upper-right block) = alpha tr(U^dag)/N = alpha conj(tau)
    const Complex coh =
        2.0 * state.state.matrix().topRightCorner(big_n, big_n).trace();
    return {coh.real(), coh.imag()};
}

TraceEstimate sample_trace(const DQC1State& state, int runs, Rng& rng) {
    if (runs < 1) {
        throw std::invalid_argument("sample_trace needs runs >= 1");
    }
    if (state.alpha == 0.0) {
        throw std::invalid_argument("sample_trace: alpha = 0 carries no signal");
    }
    const auto [x, y] = expectation_xy(state);
    const double px = (1.0 + x) / 2.0;
    const double py = (1.0 + y) / 2.0;

    double sum_x = 0.0, sumsq_x = 0.0;
    double sum_y = 0.0, sumsq_y = 0.0;
    for (int i = 0; i < runs; ++i) {
        const double ox = rng.bernoulli(px) ? 1.0 : -1.0;
        sum_x += ox;
        sumsq_x += 1.0;
        const double oy = rng.bernoulli(py) ? 1.0 : -1.0;
        sum_y += oy;
        sumsq_y += 1.0;
    }
    const double mean_x = sum_x / runs;
    const double mean_y = sum_y / runs;
    const double var_x = runs > 1 ? (sumsq_x - runs * mean_x * mean_x) / (runs - 1) : 0.0;
    const double var_y = runs > 1 ? (sumsq_y - runs * mean_y * mean_y) / (runs - 1) : 0.0;

    const double a = state.alpha;
    TraceEstimate est;
    est.value = Complex(mean_x / a, -mean_y / a);
    est.std_error = std::sqrt(std::max(0.0, var_x) + std::max(0.0, var_y)) /
                    (std::abs(a) * std::sqrt(static_cast<double>(runs)));
    est.runs = runs;
    return est;
}

long long runs_for_accuracy(double eps, double p_err, double alpha) {
    if (eps <= 0.0 || p_err <= 0.0 || p_err >= 1.0 || alpha == 0.0) {
        throw std::invalid_argument("runs_for_accuracy: bad arguments");
    }
    return static_cast<long long>(std::ceil(std::log(1.0 / p_err) / (alpha * alpha * eps * eps)));
}

DensityMatrix control_qubit_state(const DQC1State& state) {
    const std::int64_t big_n = state.unitary.dim();
    const Complex coh = state.state.matrix().topRightCorner(big_n, big_n).trace();
    Matrix m(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    m(0, 1) = coh;
    m(1, 0) = std::conj(coh);
    return DensityMatrix(std::move(m), 1, DensityMatrix::Unchecked{});
}

std::vector<SeparableTerm> separable_decomposition(const DQC1State& state) {
    const std::int64_t big_n = state.unitary.dim();
    const double theta = 0.5 * std::asin(state.alpha);
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    // Schur rather than ComplexEigenSolver: U is normal, so the Schur basis
    // is an orthonormal eigenbasis even for degenerate eigenvalues, and the
    // reconstruction needs sum_j |e_j><e_j| = I.
    Eigen::ComplexSchur<Matrix> schur(state.unitary.matrix());
    std::vector<SeparableTerm> terms;
    terms.reserve(2 * static_cast<std::size_t>(big_n));
    const double weight = 1.0 / static_cast<double>(2 * big_n);
    for (std::int64_t j = 0; j < big_n; ++j) {
        const Complex lambda = schur.matrixT()(j, j);
        const Complex phase = lambda / std::abs(lambda);
        const Vector e = schur.matrixU().col(j);
        Vector a(2), b(2);
        a << Complex(c, 0.0), phase * s;
        b << Complex(s, 0.0), phase * c;
        terms.push_back({weight, a, e});
        terms.push_back({weight, b, e});
    }
    return terms;
}

}  // namespace oneq
