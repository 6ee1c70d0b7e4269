#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace oneq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Numerical contracts used throughout.  All entropies are base-2.
namespace tol {
inline constexpr double hermitian = 1e-9;
inline constexpr double unitary = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-9;
inline constexpr double entropy_clip = 1e-12;
}  // namespace tol

/// Qubit q occupies bit (n-1-q) of a basis index: qubit 0 is the leftmost
/// tensor factor and the most significant bit.
inline std::uint64_t qubit_bit(int num_qubits, int qubit) {
    return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

/// A bipartition of n qubits; part A is a nonempty proper subset.
class BipartiteSplit {
  public:
    BipartiteSplit(std::vector<int> part_a, int total_qubits);

    const std::vector<int>& part_a() const { return part_a_; }
    std::vector<int> part_b() const;
    int total_qubits() const { return total_qubits_; }
    int size_a() const { return static_cast<int>(part_a_.size()); }
    int size_b() const { return total_qubits_ - size_a(); }
    std::int64_t dim_a() const { return std::int64_t{1} << size_a(); }
    std::int64_t dim_b() const { return std::int64_t{1} << size_b(); }
    std::uint64_t mask_a() const { return mask_a_; }
    std::uint64_t mask_b() const;

    /// Split placing the last k qubits in part B, i.e. the (n-k, k) split.
    static BipartiteSplit last_qubits(int total_qubits, int k);

    bool contains_a(int qubit) const { return (mask_a_ & qubit_bit(total_qubits_, qubit)) != 0; }

  private:
    std::vector<int> part_a_;
    int total_qubits_;
    std::uint64_t mask_a_;
};

/// Eigen- or singular-value lists, sorted descending.
struct Spectrum {
    std::vector<double> values;

    double min() const;
    double max() const;
    double sum_abs() const;
};

class DensityMatrix;

/// Dense unitary on num_qubits qubits.  make() verifies U U^dag = I.
class UnitaryOperator {
  public:
    struct Unchecked {};
    UnitaryOperator(Matrix m, int num_qubits, Unchecked) : matrix_(std::move(m)), num_qubits_(num_qubits) {}

    static UnitaryOperator make(Matrix m);

    const Matrix& matrix() const { return matrix_; }
    int num_qubits() const { return num_qubits_; }
    std::int64_t dim() const { return matrix_.rows(); }

  private:
    Matrix matrix_;
    int num_qubits_;
};

/// Dense state on a qubit register: Hermitian, unit trace, PSD within tol.
class DensityMatrix {
  public:
    struct Unchecked {};
    DensityMatrix(Matrix m, int num_qubits, Unchecked) : matrix_(std::move(m)), num_qubits_(num_qubits) {}

    /// Validates all three invariants; the PSD check costs an eigensolve.
    static DensityMatrix make(Matrix m);

    const Matrix& matrix() const { return matrix_; }
    int num_qubits() const { return num_qubits_; }
    std::int64_t dim() const { return matrix_.rows(); }

    double purity() const { return (matrix_ * matrix_).trace().real(); }

  private:
    Matrix matrix_;
    int num_qubits_;
};

int qubits_for_dim(std::int64_t dim);

Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Reduced state on the kept part of the split.
DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteSplit& split, bool keep_a);

/// Raw partial trace over the complement of `keep` positions.
Matrix partial_trace(const Matrix& m, const BipartiteSplit& split, bool keep_a);

/// Transposes the indices of one part in the computational basis.
Matrix partial_transpose(const Matrix& a, const BipartiteSplit& split, bool on_a);

/// Real eigenvalues of a Hermitian matrix, descending.  Rejects
/// non-Hermitian input (max-abs deviation above tol::hermitian).
Spectrum hermitian_spectrum(const Matrix& a);

/// Singular values, descending.
Spectrum singular_values(const Matrix& a);

/// H(rho) = -tr(rho log2 rho) in bits.  Eigenvalues in [-1e-9, 0) are
/// clipped to zero; anything more negative is rejected.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_spectrum(const std::vector<double>& values);

double binary_entropy(double p);

/// tr(O1^dag O2) / sqrt(tr(O1^dag O1) tr(O2^dag O2)); 1 iff equal.
double operator_fidelity(const Matrix& o1, const Matrix& o2);

// Small fixed operators.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity(std::int64_t dim);

/// |psi><psi| for a (not necessarily normalized) vector.
Matrix projector(const Vector& psi);

/// Gate on qubits (q1, q2) of an n-qubit register, identity elsewhere.
/// The gate's first tensor slot is q1.
Matrix embed_two_qubit_gate(const Matrix& gate, int num_qubits, int q1, int q2);

Matrix embedded_cnot(int num_qubits, int control, int target);

}  // namespace oneq
