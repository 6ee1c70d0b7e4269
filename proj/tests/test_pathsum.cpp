#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <set>

#include "oneq/pathsum.hpp"
#include "oneq/rng.hpp"

using namespace oneq;
using Catch::Approx;

namespace {

GateCircuit random_toffoli_circuit(int n, int gates, Rng& rng) {
    GateCircuit c;
    c.num_qubits = n;
    for (int g = 0; g < gates; ++g) {
        if (rng.bernoulli(0.5) || n < 3) {
            c.gates.push_back(Gate::h(static_cast<int>(rng.uniform_index(n))));
        } else {
            int a = static_cast<int>(rng.uniform_index(n));
            int b = static_cast<int>(rng.uniform_index(n));
            int t = static_cast<int>(rng.uniform_index(n));
            while (b == a) {
                b = static_cast<int>(rng.uniform_index(n));
            }
            while (t == a || t == b) {
                t = static_cast<int>(rng.uniform_index(n));
            }
            c.gates.push_back(Gate::toffoli(a, b, t));
        }
    }
    return c;
}

GateCircuit random_clifford_t_circuit(int n, int gates, Rng& rng) {
    GateCircuit c;
    c.num_qubits = n;
    for (int g = 0; g < gates; ++g) {
        const double pick = rng.uniform();
        if (pick < 0.4) {
            c.gates.push_back(Gate::h(static_cast<int>(rng.uniform_index(n))));
        } else if (pick < 0.7 || n < 2) {
            c.gates.push_back(Gate::t(static_cast<int>(rng.uniform_index(n))));
        } else {
            int a = static_cast<int>(rng.uniform_index(n));
            int b = static_cast<int>(rng.uniform_index(n));
            while (b == a) {
                b = static_cast<int>(rng.uniform_index(n));
            }
            c.gates.push_back(Gate::cnot(a, b));
        }
    }
    return c;
}

}  // namespace

TEST_CASE("circuit parsing") {
    const GateCircuit c = GateCircuit::parse_string(
        "# sample\nQUBITS 3\nH 0\nT 1   # phase\nCNOT 0 2\nTOFFOLI 0 1 2\n");
    REQUIRE(c.num_qubits == 3);
    REQUIRE(c.gates.size() == 4);
    REQUIRE(c.gates[0].kind == GateKind::H);
    REQUIRE(c.gates[3].kind == GateKind::TOFFOLI);

    REQUIRE_THROWS_AS(GateCircuit::parse_string("H 0\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(GateCircuit::parse_string("QUBITS 2\nH 5\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(GateCircuit::parse_string("QUBITS 2\nCNOT 1 1\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(GateCircuit::parse_string("QUBITS 2\nRX 0\n"), std::invalid_argument);
}

TEST_CASE("compilers reject foreign gates") {
    GateCircuit with_cnot{2, {Gate::cnot(0, 1)}};
    REQUIRE_THROWS_AS(compile_toffoli_path_sum(with_cnot), std::invalid_argument);
    GateCircuit with_t{1, {Gate::t(0)}};
    REQUIRE_THROWS_AS(compile_toffoli_path_sum(with_t), std::invalid_argument);
    GateCircuit with_toffoli{3, {Gate::toffoli(0, 1, 2)}};
    REQUIRE_THROWS_AS(compile_clifford_t_path_sum(with_toffoli), std::invalid_argument);
}

TEST_CASE("empty circuit compiles to the sandwich alone") {
    GateCircuit empty{3, {}};
    const PathPolynomialSystem polys = compile_toffoli_path_sum(empty);
    REQUIRE(polys.num_path_bits == 6);
    REQUIRE(polys.hadamard_count == 0);
    REQUIRE(polys.monomials.empty());  // a.(c+c) cancels termwise
    REQUIRE(exact_trace_by_counting(polys).real() == Approx(1.0).margin(1e-12));
}

TEST_CASE("single gates against the dense oracle") {
    // one Hadamard: traceless
    GateCircuit h1{1, {Gate::h(0)}};
    const auto hp = compile_toffoli_path_sum(h1);
    REQUIRE(hp.hadamard_count == 1);
    REQUIRE(std::abs(exact_trace_by_counting(hp)) < 1e-12);
    REQUIRE(std::abs(matrix_trace_oracle(h1)) < 1e-12);

    // one Toffoli: normalized trace 6/8
    GateCircuit tof{3, {Gate::toffoli(0, 1, 2)}};
    const auto tp = compile_toffoli_path_sum(tof);
    REQUIRE(tp.hadamard_count == 2);  // the inserted pair
    REQUIRE(exact_trace_by_counting(tp).real() == Approx(0.75).margin(1e-12));
    REQUIRE(matrix_trace_oracle(tof).real() == Approx(0.75).margin(1e-12));

    // one T gate: (1 + e^{i pi/4}) / 2
    GateCircuit t1{1, {Gate::t(0)}};
    const auto pt = compile_clifford_t_path_sum(t1);
    const Complex expected = (Complex(1, 0) + std::polar(1.0, std::numbers::pi / 4.0)) / 2.0;
    REQUIRE(std::abs(exact_trace_by_counting(pt) - expected) < 1e-12);
    REQUIRE(std::abs(matrix_trace_oracle(t1) - expected) < 1e-12);

    // one CNOT: normalized trace 1/2
    GateCircuit cx{2, {Gate::cnot(0, 1)}};
    const auto pc = compile_clifford_t_path_sum(cx);
    REQUIRE(exact_trace_by_counting(pc).real() == Approx(0.5).margin(1e-12));

    // diagonal single-qubit phase on a two-qubit register
    GateCircuit t2{2, {Gate::t(0)}};
    const Complex quarter = (Complex(1, 0) + std::polar(1.0, std::numbers::pi / 4.0)) / 2.0;
    REQUIRE(std::abs(matrix_trace_oracle(t2) - quarter) < 1e-12);
    REQUIRE(std::abs(exact_trace_by_counting(compile_clifford_t_path_sum(t2)) - quarter) <
            1e-12);
}

TEST_CASE("degrees stay within the advertised caps") {
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const GateCircuit c = random_toffoli_circuit(3 + static_cast<int>(rng.uniform_index(2)),
                                                     1 + static_cast<int>(rng.uniform_index(10)),
                                                     rng);
        const auto polys = compile_toffoli_path_sum(c);
        REQUIRE(polys.max_degree() <= 3);
        REQUIRE(polys.chi.empty());
    }
    for (int trial = 0; trial < 20; ++trial) {
        const GateCircuit c = random_clifford_t_circuit(
            2 + static_cast<int>(rng.uniform_index(2)),
            1 + static_cast<int>(rng.uniform_index(10)), rng);
        const auto polys = compile_clifford_t_path_sum(c);
        REQUIRE(polys.max_degree() <= 2);
        for (const auto& m : polys.monomials) {
            REQUIRE(m.size() == 2);  // purely quadratic
        }
        for (int coeff : polys.chi) {
            REQUIRE(coeff >= 0);
            REQUIRE(coeff <= 7);
        }
    }
}

TEST_CASE("counting equals the dense oracle on random circuits") {
    Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        GateCircuit c = random_toffoli_circuit(3, 5, rng);
        const auto polys = compile_toffoli_path_sum(c);
        if (polys.num_path_bits > 24) {
            continue;
        }
        REQUIRE(std::abs(exact_trace_by_counting(polys) - matrix_trace_oracle(c)) < 1e-9);
    }
    for (int trial = 0; trial < 10; ++trial) {
        GateCircuit c = random_clifford_t_circuit(3, 7, rng);
        const auto polys = compile_clifford_t_path_sum(c);
        if (polys.num_path_bits > 24) {
            continue;
        }
        REQUIRE(std::abs(exact_trace_by_counting(polys) - matrix_trace_oracle(c)) < 1e-9);
    }
}

TEST_CASE("appending a gate only touches monomials on its wires") {
    // the base circuit leaves qubit 1's wire untouched, so appending a gate
    // there may only move monomials containing that qubit's variables
    GateCircuit base{3, {Gate::h(0), Gate::t(0), Gate::h(2), Gate::cnot(2, 0)}};
    GateCircuit longer = base;
    longer.gates.push_back(Gate::h(1));

    const auto p1 = compile_clifford_t_path_sum(base);
    const auto p2 = compile_clifford_t_path_sum(longer);

    const std::set<std::vector<int>> m1(p1.monomials.begin(), p1.monomials.end());
    const std::set<std::vector<int>> m2(p2.monomials.begin(), p2.monomials.end());
    std::set<int> allowed{1, 3 + 1};  // input bit a_1 and post-sandwich bit c_1
    for (int v = p1.num_path_bits; v < p2.num_path_bits; ++v) {
        allowed.insert(v);  // fresh bits of the appended gate
    }
    auto check_diff = [&](const std::set<std::vector<int>>& from,
                          const std::set<std::vector<int>>& to) {
        for (const auto& m : from) {
            if (to.count(m)) {
                continue;
            }
            bool touches = false;
            for (int v : m) {
                touches |= allowed.count(v) > 0;
            }
            REQUIRE(touches);
        }
    };
    check_diff(m1, m2);
    check_diff(m2, m1);
}

TEST_CASE("sampling is unbiased and deterministic") {
    Rng rng(4);
    const GateCircuit c = random_clifford_t_circuit(3, 6, rng);
    const auto polys = compile_clifford_t_path_sum(c);
    const Complex exact = matrix_trace_oracle(c);

    const auto r1 = sampled_trace(polys, 200000, RngSeed{9});
    const auto r2 = sampled_trace(polys, 200000, RngSeed{9});
    REQUIRE(r1.estimate == r2.estimate);
    REQUIRE(r1.empirical_variance == r2.empirical_variance);

    const double se = std::sqrt(r1.empirical_variance / static_cast<double>(r1.samples));
    REQUIRE(std::abs(r1.estimate - exact) < 5.0 * se + 1e-9);
}

TEST_CASE("batched sampling stays within four sigma of exact") {
    Rng rng(5);
    const GateCircuit c = random_toffoli_circuit(3, 4, rng);
    const auto polys = compile_toffoli_path_sum(c);
    const Complex exact = exact_trace_by_counting(polys);
    const int batches = 50;
    const long long per_batch = 20000;
    Complex mean(0, 0);
    std::vector<Complex> estimates;
    for (int b = 0; b < batches; ++b) {
        const auto rep = sampled_trace(polys, per_batch, RngSeed{500 + b});
        estimates.push_back(rep.estimate);
        mean += rep.estimate;
    }
    mean /= static_cast<double>(batches);
    double var = 0.0;
    for (const Complex& e : estimates) {
        var += std::norm(e - mean);
    }
    var /= (batches - 1);
    const double sigma_batch = std::sqrt(var / batches);
    REQUIRE(std::abs(mean - exact) < 4.0 * sigma_batch + 1e-12);
}

TEST_CASE("identity circuit sampling is exact") {
    GateCircuit empty{2, {}};
    const auto polys = compile_toffoli_path_sum(empty);
    const auto rep = sampled_trace(polys, 1000, RngSeed{1});
    REQUIRE(rep.estimate.real() == Approx(1.0).margin(1e-15));
    REQUIRE(rep.empirical_variance == Approx(0.0).margin(1e-15));
}

TEST_CASE("per-path magnitude is exactly 2^(h/2)") {
    Rng rng(6);
    const GateCircuit c = random_toffoli_circuit(3, 4, rng);
    const auto polys = compile_toffoli_path_sum(c);
    // a single sample is one path statistic
    const auto rep = sampled_trace(polys, 1, RngSeed{3});
    REQUIRE(std::abs(rep.estimate) ==
            Approx(std::pow(2.0, polys.hadamard_count / 2.0)).margin(1e-12));
}

TEST_CASE("variance doubles with every added Hadamard") {
    double prev = 0.0;
    for (int k = 2; k <= 10; ++k) {
        GateCircuit fam;
        fam.num_qubits = k;
        for (int q = 0; q < k; ++q) {
            fam.gates.push_back(Gate::h(q));
        }
        const auto polys = compile_toffoli_path_sum(fam);
        const auto rep = sampled_trace(polys, 100000, RngSeed{40 + k});
        if (k > 2) {
            const double ratio = rep.empirical_variance / prev;
            REQUIRE(ratio > 1.6);
            REQUIRE(ratio < 2.4);
        }
        prev = rep.empirical_variance;
    }
}

TEST_CASE("counting guards its input size") {
    GateCircuit big;
    big.num_qubits = 10;
    for (int q = 0; q < 10; ++q) {
        big.gates.push_back(Gate::h(q));
    }
    const auto polys = compile_toffoli_path_sum(big);  // 30 bits
    REQUIRE_THROWS_AS(exact_trace_by_counting(polys), std::invalid_argument);
}
