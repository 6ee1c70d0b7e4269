#pragma once

#include <cstdint>

#include "oneq/linalg.hpp"
#include "oneq/rng.hpp"

namespace oneq {

/// Schmidt rank of a pure state across the split: singular values of the
/// reshaped amplitude matrix above tol * largest.
int schmidt_rank(const Vector& psi, const BipartiteSplit& split, double tol = 1e-10);

/// Amplitude matrix of psi along the split (rows indexed by part A).
Matrix reshape_state(const Vector& psi, const BipartiteSplit& split);

/// Operator Schmidt rank: rank of the realigned matrix of rho under the
/// A:B index grouping.  Total dimension capped at 2^12.
int operator_schmidt_rank(const DensityMatrix& rho, const BipartiteSplit& split,
                          double tol = 1e-10);

/// Schmidt rank of rho |t,i,j> for the alpha = 1 one-clean-qubit state,
/// computed without materializing rho.  The probe must be a computational
/// basis product state of the n+1 circuit qubits; the result lower-bounds
/// operator_schmidt_rank across the same split.
int dqc1_rank_lower_bound(const UnitaryOperator& u, const BipartiteSplit& split,
                          const Vector& probe, double tol = 1e-10);

/// Minimum Schmidt rank over balanced bipartitions.  Exhaustive for
/// n <= 10; for n = 12, 14 the minimum over all contiguous windows plus
/// 200 seeded random balanced splits (a sampled upper bound on the true
/// minimum, flagged in `exhaustive`).
struct MinRankResult {
    int rank = 0;
    bool exhaustive = true;
    int splits_examined = 0;
};

MinRankResult min_equal_split_rank(const Vector& psi, double tol = 1e-10,
                                   RngSeed seed = RngSeed{0});

/// Largest overlap |<Psi|Phi>| over unit-norm Phi of Schmidt rank at most
/// chi_prime:  ||Psi|| sqrt(sum of the top chi_prime squared coefficients).
double max_overlap_at_rank(const Vector& psi, const BipartiteSplit& split, int chi_prime);

}  // namespace oneq
