#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oneq/linalg.hpp"
#include "oneq/parallel.hpp"
#include "oneq/rng.hpp"

namespace oneq {

enum class GateKind { H, T, CNOT, TOFFOLI };

struct Gate {
    GateKind kind;
    int q0 = -1;
    int q1 = -1;
    int q2 = -1;  // Toffoli target

    static Gate h(int q) { return {GateKind::H, q, -1, -1}; }
    static Gate t(int q) { return {GateKind::T, q, -1, -1}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, -1}; }
    static Gate toffoli(int c1, int c2, int target) { return {GateKind::TOFFOLI, c1, c2, target}; }
};

struct GateCircuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    void validate() const;

    /// Text format: header "QUBITS n", then one gate per line
    /// ("H q" | "T q" | "CNOT c t" | "TOFFOLI c1 c2 t"), comments with '#'.
    static GateCircuit parse(std::istream& in);
    static GateCircuit parse_string(const std::string& text);
    static GateCircuit load(const std::string& path);
};

/// Feynman path-sum polynomials for tr(U).  Path bits are ordered as the n
/// input bits, the n post-sandwich bits, then per-gate fresh bits in
/// circuit order.
struct PathPolynomialSystem {
    enum class Variant { CubicZ2, QuadZ2LinearZ8 };

    Variant variant = Variant::CubicZ2;
    int num_qubits = 0;
    int hadamard_count = 0;  // h after rewriting
    int num_path_bits = 0;   // 2n + h
    /// Multilinear Z2 polynomial (psi or phi): sorted unique index tuples.
    std::vector<std::vector<int>> monomials;
    /// Z8 coefficient per path bit; present only for QuadZ2LinearZ8.
    std::vector<int> chi;

    int max_degree() const;
};

/// Compiles an {H, TOFFOLI} circuit: a Hadamard pair follows every Toffoli
/// target, so the sign polynomial stays cubic.  Rejects other gates.
PathPolynomialSystem compile_toffoli_path_sum(const GateCircuit& circuit);

/// Compiles an {H, T, CNOT} circuit: a Hadamard pair precedes every T, so
/// phi is purely quadratic and chi a Z8-linear form in fresh bits.
PathPolynomialSystem compile_clifford_t_path_sum(const GateCircuit& circuit);

/// Normalized trace tr(U)/2^n by enumerating all 2^(2n+h) paths into
/// integer phase buckets.  Requires num_path_bits <= 26.
Complex exact_trace_by_counting(const PathPolynomialSystem& polys, Exec exec = Exec::Parallel);

struct TraceSampleReport {
    Complex estimate;
    long long samples = 0;
    double empirical_variance = 0.0;
};

/// Unbiased estimate of the normalized trace from uniform path samples;
/// the per-path statistic is 2^(h/2) times a unit phase.
TraceSampleReport sampled_trace(const PathPolynomialSystem& polys, long long samples,
                                RngSeed seed, Exec exec = Exec::Parallel);

/// Normalized trace by dense gate multiplication (n <= 12).
Complex matrix_trace_oracle(const GateCircuit& circuit);

/// Dense unitary of the circuit, for small registers.
Matrix circuit_unitary(const GateCircuit& circuit);

}  // namespace oneq
