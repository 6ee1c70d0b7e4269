#include "oneq/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oneq {

namespace {

bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": entries must be finite");
    }
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

int qubits_for_dim(std::int64_t dim) {
    if (!is_power_of_two(dim)) {
        throw std::invalid_argument("dimension is not a power of two");
    }
    int n = 0;
    while ((std::int64_t{1} << n) < dim) {
        ++n;
    }
    return n;
}

BipartiteSplit::BipartiteSplit(std::vector<int> part_a, int total_qubits)
    : part_a_(std::move(part_a)), total_qubits_(total_qubits), mask_a_(0) {
    if (total_qubits_ < 2) {
        throw std::invalid_argument("split needs at least two qubits");
    }
    std::sort(part_a_.begin(), part_a_.end());
    if (part_a_.empty() || static_cast<int>(part_a_.size()) >= total_qubits_) {
        throw std::invalid_argument("part A must be a nonempty proper subset");
    }
    for (std::size_t i = 0; i < part_a_.size(); ++i) {
        const int q = part_a_[i];
        if (q < 0 || q >= total_qubits_) {
            throw std::invalid_argument("qubit index out of range");
        }
        if (i > 0 && part_a_[i - 1] == q) {
            throw std::invalid_argument("duplicate qubit index in part A");
        }
        mask_a_ |= qubit_bit(total_qubits_, q);
    }
}

std::vector<int> BipartiteSplit::part_b() const {
    std::vector<int> b;
    for (int q = 0; q < total_qubits_; ++q) {
        if (!contains_a(q)) {
            b.push_back(q);
        }
    }
    return b;
}

std::uint64_t BipartiteSplit::mask_b() const {
    const std::uint64_t full = (std::uint64_t{1} << total_qubits_) - 1;
    return full & ~mask_a_;
}

BipartiteSplit BipartiteSplit::last_qubits(int total_qubits, int k) {
    std::vector<int> a;
    for (int q = 0; q < total_qubits - k; ++q) {
        a.push_back(q);
    }
    return BipartiteSplit(a, total_qubits);
}

double Spectrum::min() const { return values.empty() ? 0.0 : values.back(); }
double Spectrum::max() const { return values.empty() ? 0.0 : values.front(); }

double Spectrum::sum_abs() const {
    double s = 0.0;
    for (double v : values) {
        s += std::abs(v);
    }
    return s;
}

UnitaryOperator UnitaryOperator::make(Matrix m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("unitary must be square");
    }
    require_finite(m, "unitary");
    const int n = qubits_for_dim(m.rows());
    const Matrix gram = m.adjoint() * m;
    const double dev = max_abs(gram - Matrix::Identity(m.rows(), m.cols()));
    if (dev > tol::unitary) {
        throw std::invalid_argument("matrix is not unitary (deviation " + std::to_string(dev) + ")");
    }
    return UnitaryOperator(std::move(m), n, Unchecked{});
}

DensityMatrix DensityMatrix::make(Matrix m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    require_finite(m, "density matrix");
    const int n = qubits_for_dim(m.rows());
    if (max_abs(m - m.adjoint()) > tol::hermitian) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(m.trace().real() - 1.0) > tol::trace || std::abs(m.trace().imag()) > tol::trace) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::psd) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
    return DensityMatrix(std::move(m), n, Unchecked{});
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols()) {
        throw std::invalid_argument("tensor_product expects square factors");
    }
    const auto ra = a.rows();
    const auto rb = b.rows();
    Matrix out(ra * rb, ra * rb);
    for (Eigen::Index i = 0; i < ra; ++i) {
        for (Eigen::Index j = 0; j < ra; ++j) {
            out.block(i * rb, j * rb, rb, rb) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

// Scatter tables: sub-index of a part -> bits at that part's positions.
std::vector<std::uint64_t> scatter_table(const std::vector<int>& qubits, int total) {
    const std::size_t k = qubits.size();
    std::vector<std::uint64_t> table(std::size_t{1} << k, 0);
    for (std::uint64_t sub = 0; sub < table.size(); ++sub) {
        std::uint64_t idx = 0;
        for (std::size_t pos = 0; pos < k; ++pos) {
            if (sub & (std::uint64_t{1} << (k - 1 - pos))) {
                idx |= qubit_bit(total, qubits[pos]);
            }
        }
        table[sub] = idx;
    }
    return table;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const BipartiteSplit& split, bool keep_a) {
    if (m.rows() != (std::int64_t{1} << split.total_qubits())) {
        throw std::invalid_argument("partial_trace: split inconsistent with dimension");
    }
    const auto kept = keep_a ? split.part_a() : split.part_b();
    const auto traced = keep_a ? split.part_b() : split.part_a();
    const auto keep_tab = scatter_table(kept, split.total_qubits());
    const auto trace_tab = scatter_table(traced, split.total_qubits());

    const std::int64_t dk = static_cast<std::int64_t>(keep_tab.size());
    Matrix out = Matrix::Zero(dk, dk);
    for (std::int64_t i = 0; i < dk; ++i) {
        for (std::int64_t j = 0; j < dk; ++j) {
            Complex acc(0.0, 0.0);
            for (std::uint64_t t : trace_tab) {
                acc += m(keep_tab[i] | t, keep_tab[j] | t);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteSplit& split, bool keep_a) {
    if (rho.num_qubits() != split.total_qubits()) {
        throw std::invalid_argument("partial_trace: split inconsistent with state");
    }
    Matrix reduced = partial_trace(rho.matrix(), split, keep_a);
    const int n = keep_a ? split.size_a() : split.size_b();
    return DensityMatrix(std::move(reduced), n, DensityMatrix::Unchecked{});
}

Matrix partial_transpose(const Matrix& a, const BipartiteSplit& split, bool on_a) {
    if (a.rows() != a.cols() || a.rows() != (std::int64_t{1} << split.total_qubits())) {
        throw std::invalid_argument("partial_transpose: split inconsistent with dimension");
    }
    const std::uint64_t mask = on_a ? split.mask_a() : split.mask_b();
    const std::uint64_t rest = ~mask;
    const std::int64_t d = a.rows();
    Matrix out(d, d);
    for (std::int64_t i = 0; i < d; ++i) {
        const std::uint64_t ui = static_cast<std::uint64_t>(i);
        for (std::int64_t j = 0; j < d; ++j) {
            const std::uint64_t uj = static_cast<std::uint64_t>(j);
            const std::uint64_t r = (ui & rest) | (uj & mask);
            const std::uint64_t c = (uj & rest) | (ui & mask);
            out(i, j) = a(static_cast<std::int64_t>(r), static_cast<std::int64_t>(c));
        }
    }
    return out;
}

Spectrum hermitian_spectrum(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("hermitian_spectrum: matrix must be square");
    }
    if (max_abs(a - a.adjoint()) > tol::hermitian) {
        throw std::invalid_argument("hermitian_spectrum: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    return Spectrum{std::move(vals)};
}

Spectrum singular_values(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("singular_values: matrix must be square");
    }
    Eigen::BDCSVD<Matrix> svd(a);
    std::vector<double> vals(svd.singularValues().data(),
                             svd.singularValues().data() + svd.singularValues().size());
    return Spectrum{std::move(vals)};  // Eigen returns them descending
}

double entropy_of_spectrum(const std::vector<double>& values) {
    double h = 0.0;
    for (double v : values) {
        if (v < -tol::psd) {
            throw std::invalid_argument("entropy: eigenvalue below -1e-9");
        }
        if (v < tol::entropy_clip) {
            continue;
        }
        h -= v * std::log2(v);
    }
    return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_of_spectrum(hermitian_spectrum(rho.matrix()).values);
}

double binary_entropy(double p) {
    double h = 0.0;
    if (p > tol::entropy_clip) {
        h -= p * std::log2(p);
    }
    if (1.0 - p > tol::entropy_clip) {
        h -= (1.0 - p) * std::log2(1.0 - p);
    }
    return h;
}

double operator_fidelity(const Matrix& o1, const Matrix& o2) {
    if (o1.rows() != o2.rows() || o1.cols() != o2.cols()) {
        throw std::invalid_argument("operator_fidelity: dimension mismatch");
    }
    const double n1 = (o1.adjoint() * o1).trace().real();
    const double n2 = (o2.adjoint() * o2).trace().real();
    if (n1 <= 0.0 || n2 <= 0.0) {
        throw std::invalid_argument("operator_fidelity: zero operator");
    }
    return ((o1.adjoint() * o2).trace() / std::sqrt(n1 * n2)).real();
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix identity(std::int64_t dim) { return Matrix::Identity(dim, dim); }

Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

Matrix embed_two_qubit_gate(const Matrix& gate, int num_qubits, int q1, int q2) {
    if (gate.rows() != 4 || gate.cols() != 4) {
        throw std::invalid_argument("embed_two_qubit_gate: gate must be 4x4");
    }
    if (q1 == q2 || q1 < 0 || q2 < 0 || q1 >= num_qubits || q2 >= num_qubits) {
        throw std::invalid_argument("embed_two_qubit_gate: bad qubit indices");
    }
    const std::int64_t d = std::int64_t{1} << num_qubits;
    const std::uint64_t b1 = qubit_bit(num_qubits, q1);
    const std::uint64_t b2 = qubit_bit(num_qubits, q2);
    Matrix out = Matrix::Zero(d, d);
    for (std::int64_t col = 0; col < d; ++col) {
        const std::uint64_t base = static_cast<std::uint64_t>(col) & ~(b1 | b2);
        const int in1 = (static_cast<std::uint64_t>(col) & b1) ? 1 : 0;
        const int in2 = (static_cast<std::uint64_t>(col) & b2) ? 1 : 0;
        const int gcol = 2 * in1 + in2;
        for (int grow = 0; grow < 4; ++grow) {
            const Complex amp = gate(grow, gcol);
            if (amp == Complex(0.0, 0.0)) {
                continue;
            }
            std::uint64_t row = base;
            if (grow & 2) {
                row |= b1;
            }
            if (grow & 1) {
                row |= b2;
            }
            out(static_cast<std::int64_t>(row), col) += amp;
        }
    }
    return out;
}

Matrix embedded_cnot(int num_qubits, int control, int target) {
    if (control == target) {
        throw std::invalid_argument("cnot: control equals target");
    }
    Matrix gate = Matrix::Zero(4, 4);
    // first slot is the control
    gate(0, 0) = 1;
    gate(1, 1) = 1;
    gate(2, 3) = 1;
    gate(3, 2) = 1;
    return embed_two_qubit_gate(gate, num_qubits, control, target);
}

}  // namespace oneq
