#pragma once

#include <utility>
#include <vector>

#include "oneq/linalg.hpp"

namespace oneq {

/// Measurement direction on the Bloch sphere; the induced projectors are
/// (I +- a.sigma)/2 with a = (sin t cos p, sin t sin p, cos t).
struct BlochMeasurement {
    double theta = 0.0;
    double phi = 0.0;

    std::pair<Matrix, Matrix> projectors() const;
};

struct DiscordReport {
    double discord = 0.0;
    double mutual_information = 0.0;
    double classical_correlation = 0.0;
    BlochMeasurement optimal_measurement;
    long optimizer_evals = 0;
};

struct OptimizerConfig {
    int grid_theta = 33;
    int grid_phi = 64;
    int refine_starts = 3;
    double improvement_tol = 1e-10;  // bits
    int max_refine_iters = 400;
};

/// I(A:B) = H(A) + H(B) - H(AB) in bits.
double mutual_information(const DensityMatrix& rho, const BipartiteSplit& split);

/// Measurement-conditioned entropy  sum_j p_j H(rho_{B|j})  for a rank-1
/// projective measurement on the single-qubit part A of the split.
double conditional_entropy_measured(const DensityMatrix& rho, const BipartiteSplit& split,
                                    const BlochMeasurement& meas);

/// Same quantity for an arbitrary POVM {E_j} on the measured qubit, with
/// post-measurement states tr_A(rho (E_j (x) I)) / p_j.
double conditional_entropy_povm(const DensityMatrix& rho, const BipartiteSplit& split,
                                const std::vector<Matrix>& elements);

/// Quantum discord D(A,B) with the measurement on part A (one qubit):
/// grid search over (theta, phi) followed by simplex refinement.
DiscordReport discord(const DensityMatrix& rho, const BipartiteSplit& split,
                      const OptimizerConfig& config = {});

/// The 2x4 bound entangled state, as 3 qubits with the 2-dim part first.
DensityMatrix horodecki_state(double p);

/// Discord of the one-clean-qubit state across control vs rest, measuring
/// the control qubit.
DiscordReport dqc1_discord_numeric(const UnitaryOperator& u, double alpha,
                                   const OptimizerConfig& config = {});

/// Large-n closed form: 2 - H2((1-a)/2) - log2(1+sqrt(1-a^2))
///                        - (1 - sqrt(1-a^2)) log2(e).
double dqc1_discord_analytic(double alpha);

/// min(H(A), H(B), I(A:B)); an upper bound on discord for separable states.
double separable_discord_bound(const DensityMatrix& rho, const BipartiteSplit& split);

}  // namespace oneq
