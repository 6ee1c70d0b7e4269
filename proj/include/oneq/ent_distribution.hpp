#pragma once

#include <array>

#include "oneq/discord.hpp"
#include "oneq/linalg.hpp"

namespace oneq {

/// The three stages of the three-qubit entanglement distribution protocol
/// on qubits (a, b, c): rho -> CNOT(a->c) -> sigma -> CNOT(b->c) -> tau.
struct ProtocolStates {
    DensityMatrix rho;
    DensityMatrix sigma;
    DensityMatrix tau;
};

/// Hard-coded stage matrices, cross-checked against the gate derivation at
/// construction time.
ProtocolStates protocol_states();

DensityMatrix apply_cnot(const DensityMatrix& rho, int control, int target);

/// Discord of each stage measuring qubit c, with the minimizing angles.
struct ProtocolDiscord {
    std::array<DiscordReport, 3> reports;  // rho, sigma, tau
};

ProtocolDiscord protocol_discord_accounting();

/// Partial-transpose audit of every stage and bipartition, plus the ebit
/// extraction data for the final state.
struct ProtocolAudit {
    // min PT eigenvalue per state (rho, sigma, tau) and per transposed
    // qubit (a, b, c)
    std::array<std::array<double, 3>, 3> min_pt_eigenvalue;
    bool sigma_entangled_a_bc = false;
    double ebit_probability = 0.0;    // chance of the c = 0 outcome on tau
    double bell_negativity = 0.0;     // negativity of the conditional state
};

ProtocolAudit protocol_entanglement_audit();

}  // namespace oneq
