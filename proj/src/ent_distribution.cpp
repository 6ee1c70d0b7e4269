#include "oneq/ent_distribution.hpp"

#include <stdexcept>

#include "oneq/negativity.hpp"

namespace oneq {

namespace {

DensityMatrix state_from_sixths(const double (&entries)[8][8]) {
    Matrix m(8, 8);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            m(i, j) = entries[i][j] / 6.0;
        }
    }
    return DensityMatrix(std::move(m), 3, DensityMatrix::Unchecked{});
}

}  // namespace

DensityMatrix apply_cnot(const DensityMatrix& rho, int control, int target) {
    if (control == target) {
        throw std::invalid_argument("apply_cnot: control equals target");
    }
    const Matrix gate = embedded_cnot(rho.num_qubits(), control, target);
    Matrix out = gate * rho.matrix() * gate.adjoint();
    return DensityMatrix(std::move(out), rho.num_qubits(), DensityMatrix::Unchecked{});
}

ProtocolStates protocol_states() {
    static const double rho_entries[8][8] = {
        {1, 0, 0, 0, 0, 0, 1, 0},
        {0, 1, 0, 0, 0, 0, 0, 0},
        {0, 0, 1, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 1, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0},
        {1, 0, 0, 0, 0, 0, 1, 0},
        {0, 0, 0, 0, 0, 0, 0, 1},
    };
    static const double sigma_entries[8][8] = {
        {1, 0, 0, 0, 0, 0, 0, 1},
        {0, 1, 0, 0, 0, 0, 0, 0},
        {0, 0, 1, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 1, 0, 0},
        {0, 0, 0, 0, 0, 0, 1, 0},
        {1, 0, 0, 0, 0, 0, 0, 1},
    };
    static const double tau_entries[8][8] = {
        {1, 0, 0, 0, 0, 0, 1, 0},
        {0, 1, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 1, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 1, 0, 0},
        {1, 0, 0, 0, 0, 0, 1, 0},
        {0, 0, 0, 0, 0, 0, 0, 1},
    };

    ProtocolStates states{state_from_sixths(rho_entries), state_from_sixths(sigma_entries),
                          state_from_sixths(tau_entries)};

    // The transcription and the gate derivation must agree entrywise.
    const Matrix sigma_derived = apply_cnot(states.rho, /*control=*/0, /*target=*/2).matrix();
    if ((sigma_derived - states.sigma.matrix()).cwiseAbs().maxCoeff() > 1e-14) {
        throw std::logic_error("protocol_states: CNOT(a->c) does not reproduce sigma");
    }
    const Matrix tau_derived = apply_cnot(states.sigma, /*control=*/1, /*target=*/2).matrix();
    if ((tau_derived - states.tau.matrix()).cwiseAbs().maxCoeff() > 1e-14) {
        throw std::logic_error("protocol_states: CNOT(b->c) does not reproduce tau");
    }
    return states;
}

ProtocolDiscord protocol_discord_accounting() {
    const ProtocolStates states = protocol_states();
    const BipartiteSplit measure_c({2}, 3);
    return ProtocolDiscord{{discord(states.rho, measure_c), discord(states.sigma, measure_c),
                            discord(states.tau, measure_c)}};
}

ProtocolAudit protocol_entanglement_audit() {
    const ProtocolStates states = protocol_states();
    const DensityMatrix* stages[3] = {&states.rho, &states.sigma, &states.tau};

    ProtocolAudit audit;
    for (int s = 0; s < 3; ++s) {
        for (int q = 0; q < 3; ++q) {
            const BipartiteSplit split({q}, 3);
            const Matrix pt = partial_transpose(stages[s]->matrix(), split, /*on_a=*/true);
            audit.min_pt_eigenvalue[s][q] = hermitian_spectrum(pt).min();
        }
    }
    audit.sigma_entangled_a_bc = audit.min_pt_eigenvalue[1][0] < -tol::psd;

    // Measure c in the standard basis on tau; the c = 0 branch is a Bell pair.
    const Matrix& tau = states.tau.matrix();
    Matrix cond = Matrix::Zero(4, 4);
    for (int r = 0; r < 4; ++r) {
        for (int s = 0; s < 4; ++s) {
            cond(r, s) = tau(2 * r, 2 * s);  // qubit c is the last bit
        }
    }
    audit.ebit_probability = cond.trace().real();
    cond /= audit.ebit_probability;
    const DensityMatrix bell(std::move(cond), 2, DensityMatrix::Unchecked{});
    audit.bell_negativity = multiplicative_negativity(bell, BipartiteSplit({0}, 2));
    return audit;
}

}  // namespace oneq
