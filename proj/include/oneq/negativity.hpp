#pragma once

#include <utility>

#include "oneq/dqc1.hpp"
#include "oneq/linalg.hpp"
#include "oneq/parallel.hpp"
#include "oneq/rng.hpp"

namespace oneq {

/// Multiplicative negativity tr|rho_pt| = sum_j |lambda_j|.  Equals 1 for
/// separable states; at most min(d_A, d_B).
double multiplicative_negativity(const DensityMatrix& rho, const BipartiteSplit& split);

/// Negativity of the one-clean-qubit output state via the singular values
/// of the partially transposed unitary: (1/N) sum_j max(|alpha| s_j, 1).
/// The split partitions the n+1 circuit qubits (control = qubit 0); the
/// transpose acts on the unpolarized qubits in the part without the control.
double dqc1_negativity_fast(const UnitaryOperator& u, double alpha, const BipartiteSplit& split);

/// Block embedding of a two-qubit gate U2 = [[A, C], [D, B]]:
/// U_n = [[I (x) A, X...X (x) C], [X...X (x) D, I (x) B]].
/// Realizable as U2 on qubits (1, n) bracketed by CNOT fans from qubit 1.
UnitaryOperator family_unitary(int n, const UnitaryOperator& u2);

/// The fixed two-qubit gate whose family attains negativity (2a+3)/4.
UnitaryOperator special_u2();

/// Spectrum (1/8)(1+2a, 1, 1, 1, 1, 1, 1, 1-2a) of the partially
/// transposed three-qubit family state.
Spectrum dqc1_family_spectrum(double alpha);

/// Near-equal split of n+1 circuit qubits: control plus the first
/// floor(n/2) unpolarized qubits in part A.
BipartiteSplit near_equal_split(int n);

struct EnsembleStats {
    double mean = 0.0;
    double std_dev = 0.0;
    int samples = 0;
};

/// Mean/stddev of dqc1_negativity_fast at alpha = 1 over pseudo-random
/// unitaries.  Member k draws from the stream derived as seed + k, so the
/// result is independent of the execution policy.
EnsembleStats random_ensemble_negativity(int n, const BipartiteSplit& split, int samples,
                                         RngSeed seed, Exec exec = Exec::Parallel);

/// Exact Haar average of the pure-state negativity on a mu x mu split,
/// from the terminating Laguerre-integral sums.
double avg_pure_negativity_exact(int mu);

/// The I^{(1/2)}_{kl} integral, evaluated in long-double log space.
double laguerre_overlap_integral(int k, int l);

struct MonteCarloStats {
    double mean = 0.0;
    double std_error = 0.0;
    int samples = 0;
};

/// Monte Carlo mean of (sum_j sqrt(mu_j))^2 over Haar pure states.
MonteCarloStats avg_pure_negativity_mc(int n, const BipartiteSplit& split, int samples,
                                       RngSeed seed, Exec exec = Exec::Parallel);

}  // namespace oneq
