#include "oneq/random_unitary.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace oneq {

namespace {
constexpr double kPi = std::numbers::pi;
}

Matrix su2_matrix(double theta, double phi, double chi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Matrix r(2, 2);
    r(0, 0) = std::polar(c, phi);
    r(0, 1) = std::polar(s, chi);
    r(1, 0) = -std::polar(s, -chi);
    r(1, 1) = std::polar(c, -phi);
    return r;
}

UnitaryOperator random_su2(Rng& rng) {
    const double theta = rng.uniform(0.0, kPi / 2.0);
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    const double chi = rng.uniform(0.0, 2.0 * kPi);
    return UnitaryOperator(su2_matrix(theta, phi, chi), 1, UnitaryOperator::Unchecked{});
}

UnitaryOperator mixing_operator(int n) {
    if (n < 2) {
        throw std::invalid_argument("mixing_operator needs n >= 2");
    }
    const std::int64_t d = std::int64_t{1} << n;
    Matrix m = Matrix::Zero(d, d);
    for (std::int64_t i = 0; i < d; ++i) {
        int coupling = 0;
        for (int q = 0; q + 1 < n; ++q) {
            const int z1 = (static_cast<std::uint64_t>(i) & qubit_bit(n, q)) ? -1 : 1;
            const int z2 = (static_cast<std::uint64_t>(i) & qubit_bit(n, q + 1)) ? -1 : 1;
            coupling += z1 * z2;
        }
        m(i, i) = std::polar(1.0, kPi / 4.0 * coupling);
    }
    return UnitaryOperator(std::move(m), n, UnitaryOperator::Unchecked{});
}

UnitaryOperator pseudo_random_unitary(int n, Rng& rng, int j) {
    if (n < 2 || j < 1) {
        throw std::invalid_argument("pseudo_random_unitary needs n >= 2 and j >= 1");
    }
    const Matrix mix = mixing_operator(n).matrix();
    auto layer = [&]() {
        Matrix r = random_su2(rng).matrix();
        for (int q = 1; q < n; ++q) {
            r = tensor_product(r, random_su2(rng).matrix());
        }
        return r;
    };
    Matrix u = layer();  // R_1
    for (int k = 2; k <= j; ++k) {
        u = mix * u;
        u = layer() * u;
    }
    return UnitaryOperator(std::move(u), n, UnitaryOperator::Unchecked{});
}

UnitaryOperator haar_unitary(std::int64_t dim, Rng& rng) {
    if (dim < 1) {
        throw std::invalid_argument("haar_unitary needs dim >= 1");
    }
    Matrix g(dim, dim);
    for (std::int64_t i = 0; i < dim; ++i) {
        for (std::int64_t k = 0; k < dim; ++k) {
            g(i, k) = Complex(rng.gaussian(), rng.gaussian());
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge: without this, QR output is not Haar distributed.
    for (std::int64_t k = 0; k < dim; ++k) {
        const Complex rkk = r(k, k);
        const double a = std::abs(rkk);
        q.col(k) *= (a > 0.0) ? rkk / a : Complex(1.0, 0.0);
    }
    const int n = (dim & (dim - 1)) == 0 ? qubits_for_dim(dim) : 0;
    return UnitaryOperator(std::move(q), n, UnitaryOperator::Unchecked{});
}

void apply_two_qubit_gate(Vector& state, const Matrix& gate, int num_qubits, int q1, int q2) {
    if (gate.rows() != 4 || gate.cols() != 4) {
        throw std::invalid_argument("apply_two_qubit_gate: gate must be 4x4");
    }
    const std::uint64_t b1 = qubit_bit(num_qubits, q1);
    const std::uint64_t b2 = qubit_bit(num_qubits, q2);
    const std::int64_t d = state.size();
    for (std::int64_t i = 0; i < d; ++i) {
        const std::uint64_t u = static_cast<std::uint64_t>(i);
        if (u & (b1 | b2)) {
            continue;  // visit each 4-amplitude block once, from its 00 index
        }
        const std::int64_t i00 = i;
        const std::int64_t i01 = static_cast<std::int64_t>(u | b2);
        const std::int64_t i10 = static_cast<std::int64_t>(u | b1);
        const std::int64_t i11 = static_cast<std::int64_t>(u | b1 | b2);
        const Complex a00 = state(i00), a01 = state(i01), a10 = state(i10), a11 = state(i11);
        state(i00) = gate(0, 0) * a00 + gate(0, 1) * a01 + gate(0, 2) * a10 + gate(0, 3) * a11;
        state(i01) = gate(1, 0) * a00 + gate(1, 1) * a01 + gate(1, 2) * a10 + gate(1, 3) * a11;
        state(i10) = gate(2, 0) * a00 + gate(2, 1) * a01 + gate(2, 2) * a10 + gate(2, 3) * a11;
        state(i11) = gate(3, 0) * a00 + gate(3, 1) * a01 + gate(3, 2) * a10 + gate(3, 3) * a11;
    }
}

namespace {

std::pair<int, int> random_pair(Rng& rng, int n) {
    const std::uint64_t num_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::uint64_t k = rng.uniform_index(num_pairs);
    for (int a = 0; a < n - 1; ++a) {
        const std::uint64_t row = static_cast<std::uint64_t>(n - 1 - a);
        if (k < row) {
            return {a, a + 1 + static_cast<int>(k)};
        }
        k -= row;
    }
    return {n - 2, n - 1};
}

}  // namespace

UnitaryOperator random_two_qubit_circuit(const RandomCircuitSpec& spec) {
    if (spec.num_qubits < 2 && spec.num_gates > 0) {
        throw std::invalid_argument("random_two_qubit_circuit needs >= 2 qubits");
    }
    const std::int64_t d = std::int64_t{1} << spec.num_qubits;
    Rng rng(spec.seed);
    Matrix u = Matrix::Identity(d, d);
    for (int g = 0; g < spec.num_gates; ++g) {
        const auto [q1, q2] = random_pair(rng, spec.num_qubits);
        const Matrix gate = haar_unitary(4, rng).matrix();
        u = embed_two_qubit_gate(gate, spec.num_qubits, q1, q2) * u;
    }
    return UnitaryOperator(std::move(u), spec.num_qubits, UnitaryOperator::Unchecked{});
}

Vector random_circuit_state(const RandomCircuitSpec& spec) {
    const std::int64_t d = std::int64_t{1} << spec.num_qubits;
    Rng rng(spec.seed);
    Vector state = Vector::Zero(d);
    state(0) = 1.0;
    for (int g = 0; g < spec.num_gates; ++g) {
        const auto [q1, q2] = random_pair(rng, spec.num_qubits);
        const Matrix gate = haar_unitary(4, rng).matrix();
        apply_two_qubit_gate(state, gate, spec.num_qubits, q1, q2);
    }
    return state;
}

Vector haar_state(std::int64_t dim, Rng& rng) {
    Vector v(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
        v(i) = Complex(rng.gaussian(), rng.gaussian());
    }
    v.normalize();
    return v;
}

}  // namespace oneq
