#pragma once

#include "oneq/linalg.hpp"
#include "oneq/rng.hpp"

namespace oneq {

struct RandomCircuitSpec {
    int num_qubits = 2;
    int num_gates = 0;
    RngSeed seed;
};

/// One-qubit R(theta, phi, chi) with theta ~ U[0, pi/2], phi, chi ~ U[0, 2pi).
UnitaryOperator random_su2(Rng& rng);

Matrix su2_matrix(double theta, double phi, double chi);

/// Diagonal exp(i pi/4 sum_j Z_j Z_{j+1}) on an open nearest-neighbor chain.
UnitaryOperator mixing_operator(int n);

/// R_j M R_{j-1} ... M R_1 with independent single-qubit layers R_k.
/// j = 40 reproduces circular-ensemble statistics closely.
UnitaryOperator pseudo_random_unitary(int n, Rng& rng, int j = 40);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phases divided out.
UnitaryOperator haar_unitary(std::int64_t dim, Rng& rng);

/// Product of Haar two-qubit gates on uniformly chosen unordered pairs
/// (lower index takes the gate's first slot), as a dense matrix.
UnitaryOperator random_two_qubit_circuit(const RandomCircuitSpec& spec);

/// Same circuit applied to |0...0>, without materializing the unitary.
Vector random_circuit_state(const RandomCircuitSpec& spec);

/// In-place two-qubit gate on a state vector; gate's first slot is q1.
void apply_two_qubit_gate(Vector& state, const Matrix& gate, int num_qubits, int q1, int q2);

/// Haar-random pure state: normalized vector of complex Gaussians.
Vector haar_state(std::int64_t dim, Rng& rng);

}  // namespace oneq
