#pragma once

#include <utility>
#include <vector>

#include "oneq/linalg.hpp"
#include "oneq/rng.hpp"

namespace oneq {

/// Output of the one-clean-qubit circuit: control qubit of polarization
/// alpha on top of n maximally mixed qubits pushed through controlled-U.
/// state = (1/2N) [[I, alpha U^dag], [alpha U, I]], N = 2^n.
struct DQC1State {
    int n = 0;
    double alpha = 1.0;
    UnitaryOperator unitary;
    DensityMatrix state;
};

struct TraceEstimate {
    Complex value;
    double std_error = 0.0;
    int runs = 0;
};

DQC1State build_state(const UnitaryOperator& u, double alpha);

/// tr(U)/2^n computed directly from the matrix.
Complex normalized_trace_exact(const UnitaryOperator& u);

/// Control-qubit readout pair (x, y) = (alpha Re tau, -alpha Im tau).
/// The y record follows the convention in which its mean estimates the
/// negated imaginary part, so tau = (x - i y) / alpha.
std::pair<double, double> expectation_xy(const DQC1State& state);

/// Simulates `runs` X measurements and `runs` Y measurements on the
/// control qubit and returns the resulting estimate of tau.
TraceEstimate sample_trace(const DQC1State& state, int runs, Rng& rng);

/// Measurement budget for accuracy eps at error probability p_err:
/// ln(1/p_err) / (alpha^2 eps^2), rounded up.
long long runs_for_accuracy(double eps, double p_err, double alpha);

/// 2x2 marginal [[1, alpha tau*], [alpha tau, 1]] / 2.
DensityMatrix control_qubit_state(const DQC1State& state);

/// One term of the explicit separable decomposition across control vs rest.
struct SeparableTerm {
    double weight;
    Vector control_state;  // 2-vector
    Vector rest_state;     // 2^n-vector, an eigenvector of U
};

/// Decomposition (1/2N) sum_j (|a_j><a_j| + |b_j><b_j|) (x) |e_j><e_j|
/// with sin(2 theta) = alpha; the mixture rebuilds the joint state.
std::vector<SeparableTerm> separable_decomposition(const DQC1State& state);

}  // namespace oneq
