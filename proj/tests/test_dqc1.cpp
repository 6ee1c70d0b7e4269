#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "oneq/dqc1.hpp"
#include "oneq/linalg.hpp"
#include "oneq/random_unitary.hpp"
#include "test_support.hpp"

using namespace oneq;
using Catch::Approx;

TEST_CASE("output state block form and spectrum") {
    const UnitaryOperator id2(identity(2), 1, UnitaryOperator::Unchecked{});
    const DQC1State s = build_state(id2, 1.0);
    const Spectrum sp = hermitian_spectrum(s.state.matrix());
    REQUIRE(sp.values[0] == Approx(0.5).margin(1e-12));
    REQUIRE(sp.values[1] == Approx(0.5).margin(1e-12));
    REQUIRE(sp.values[2] == Approx(0.0).margin(1e-12));
    REQUIRE(sp.values[3] == Approx(0.0).margin(1e-12));

    Rng rng(1);
    const UnitaryOperator u = pseudo_random_unitary(3, rng);
    for (double alpha : {0.3, 0.7, 1.0}) {
        const DQC1State st = build_state(u, alpha);
        const Spectrum spect = hermitian_spectrum(st.state.matrix());
        const double hi = (1.0 + alpha) / 16.0;
        const double lo = (1.0 - alpha) / 16.0;
        for (int i = 0; i < 8; ++i) {
            REQUIRE(spect.values[i] == Approx(hi).margin(1e-12));
            REQUIRE(spect.values[8 + i] == Approx(lo).margin(1e-12));
        }
        // purity matches the input state's purity
        REQUIRE(st.state.purity() ==
                Approx((1.0 + alpha * alpha) / 16.0).margin(1e-12));
    }
}

TEST_CASE("zero polarization gives the maximally mixed state") {
    Rng rng(2);
    const UnitaryOperator u = pseudo_random_unitary(2, rng);
    const DQC1State s = build_state(u, 0.0);
    REQUIRE((s.state.matrix() - identity(8) / 8.0).cwiseAbs().maxCoeff() < 1e-15);
    REQUIRE_THROWS_AS(build_state(u, 1.2), std::invalid_argument);
}

TEST_CASE("spectrum of the output state does not depend on the unitary") {
    Rng rng(3);
    const Spectrum ref =
        hermitian_spectrum(build_state(pseudo_random_unitary(3, rng), 0.6).state.matrix());
    for (int trial = 0; trial < 5; ++trial) {
        const Spectrum sp = hermitian_spectrum(
            build_state(pseudo_random_unitary(3, rng), 0.6).state.matrix());
        for (std::size_t i = 0; i < ref.values.size(); ++i) {
            REQUIRE(sp.values[i] == Approx(ref.values[i]).margin(1e-12));
        }
    }
}

TEST_CASE("normalized trace of simple unitaries") {
    const UnitaryOperator id3(identity(8), 3, UnitaryOperator::Unchecked{});
    REQUIRE(std::abs(normalized_trace_exact(id3) - Complex(1.0, 0.0)) < 1e-15);
    const Matrix z_first = tensor_product(pauli_z(), identity(4));
    const UnitaryOperator zu(z_first, 3, UnitaryOperator::Unchecked{});
    REQUIRE(std::abs(normalized_trace_exact(zu)) < 1e-15);
}

TEST_CASE("readout pair matches the exact trace") {
    Rng rng(4);
    for (double alpha : {0.25, 0.8, 1.0}) {
        const UnitaryOperator u = pseudo_random_unitary(4, rng);
        const DQC1State s = build_state(u, alpha);
        const auto [x, y] = expectation_xy(s);
        const Complex tau = normalized_trace_exact(u);
        REQUIRE(x == Approx(alpha * tau.real()).margin(1e-10));
        REQUIRE(y == Approx(-alpha * tau.imag()).margin(1e-10));
        REQUIRE(x * x + y * y <= alpha * alpha + 1e-12);
    }
    // alpha = 0 gives a flat readout
    const UnitaryOperator u = pseudo_random_unitary(3, rng);
    const auto [x0, y0] = expectation_xy(build_state(u, 0.0));
    REQUIRE(x0 == Approx(0.0).margin(1e-15));
    REQUIRE(y0 == Approx(0.0).margin(1e-15));
}

TEST_CASE("identity unitary readout is deterministic") {
    const UnitaryOperator id2(identity(2), 1, UnitaryOperator::Unchecked{});
    const DQC1State s = build_state(id2, 1.0);
    const auto [x, y] = expectation_xy(s);
    REQUIRE(x == Approx(1.0).margin(1e-14));
    REQUIRE(y == Approx(0.0).margin(1e-14));
    Rng rng(5);
    const TraceEstimate est = sample_trace(s, 10000, rng);
    REQUIRE(est.value.real() == Approx(1.0));  // p(+1) = 1 exactly
}

TEST_CASE("sampling errors concentrate at the shot-noise scale") {
    Rng rng(6);
    const UnitaryOperator u = pseudo_random_unitary(6, rng);
    const DQC1State s = build_state(u, 1.0);
    const Complex tau = normalized_trace_exact(u);
    const int runs = 40000;
    int failures = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        Rng sample_rng = Rng::derived(RngSeed{777}, t);
        const TraceEstimate est = sample_trace(s, runs, sample_rng);
        if (std::abs(est.value - tau) >= 3.0 / std::sqrt(static_cast<double>(runs))) {
            ++failures;
        }
        REQUIRE(est.std_error > 0.0);
    }
    REQUIRE(failures <= 1);  // >= 99% of seeds inside the band
}

TEST_CASE("measurement budget scales like ln(1/pe)/(alpha eps)^2") {
    REQUIRE(runs_for_accuracy(0.1, 0.01, 1.0) ==
            static_cast<long long>(std::ceil(std::log(100.0) / 0.01)));
    REQUIRE(runs_for_accuracy(0.1, 0.01, 0.5) == 4 * runs_for_accuracy(0.1, 0.01, 1.0));
    REQUIRE_THROWS_AS(runs_for_accuracy(0.0, 0.01, 1.0), std::invalid_argument);
}

TEST_CASE("sampling rejects zero polarization") {
    Rng rng(7);
    const UnitaryOperator u = pseudo_random_unitary(2, rng);
    const DQC1State s = build_state(u, 0.0);
    REQUIRE_THROWS_AS(sample_trace(s, 100, rng), std::invalid_argument);
}

TEST_CASE("control qubit marginal") {
    Rng rng(8);
    const UnitaryOperator u = pseudo_random_unitary(3, rng);
    const DQC1State s = build_state(u, 0.7);
    const DensityMatrix m = control_qubit_state(s);
    const Complex tau = normalized_trace_exact(u);
    REQUIRE(std::abs(m.matrix()(1, 0) - 0.7 * tau / 2.0) < 1e-12);
    REQUIRE(m.matrix()(0, 0).real() == Approx(0.5).margin(1e-14));

    // agrees with the generic partial trace
    const DensityMatrix via_trace =
        partial_trace(s.state, BipartiteSplit({0}, 4), /*keep_a=*/true);
    REQUIRE((via_trace.matrix() - m.matrix()).cwiseAbs().maxCoeff() < 1e-12);

    // entropy of the marginal
    const double expect = binary_entropy((1.0 - 0.7 * std::abs(tau)) / 2.0);
    REQUIRE(von_neumann_entropy(m) == Approx(expect).margin(1e-10));

    // alpha = 0 and identity edge cases
    REQUIRE((control_qubit_state(build_state(u, 0.0)).matrix() - identity(2) / 2.0)
                .cwiseAbs()
                .maxCoeff() < 1e-15);
    const UnitaryOperator id2(identity(2), 1, UnitaryOperator::Unchecked{});
    const Matrix plus = control_qubit_state(build_state(id2, 1.0)).matrix();
    REQUIRE(plus(0, 1).real() == Approx(0.5).margin(1e-14));
}

TEST_CASE("pseudo-random traces are small") {
    Rng rng(9);
    int big = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const UnitaryOperator u = pseudo_random_unitary(6, rng);
        if (std::abs(normalized_trace_exact(u)) >= 0.2) {
            ++big;
        }
    }
    REQUIRE(big <= 2);
}

TEST_CASE("separable decomposition rebuilds the state") {
    Rng rng(10);
    for (int n : {2, 3, 4, 5}) {
        const UnitaryOperator u = pseudo_random_unitary(n, rng);
        const double alpha = 0.2 + 0.8 * rng.uniform();
        const DQC1State s = build_state(u, alpha);
        Matrix rebuilt = Matrix::Zero(s.state.dim(), s.state.dim());
        for (const SeparableTerm& term : separable_decomposition(s)) {
            rebuilt += term.weight *
                       tensor_product(projector(term.control_state), projector(term.rest_state));
        }
        REQUIRE((rebuilt - s.state.matrix()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("separable decomposition at full polarization is equatorial") {
    const UnitaryOperator id2(identity(2), 1, UnitaryOperator::Unchecked{});
    const DQC1State s = build_state(id2, 1.0);
    for (const SeparableTerm& term : separable_decomposition(s)) {
        // sin(2 theta) = 1 means both control components have modulus 1/sqrt(2)
        REQUIRE(std::abs(term.control_state(0)) == Approx(1.0 / std::sqrt(2.0)).margin(1e-12));
        REQUIRE(std::abs(term.control_state(1)) == Approx(1.0 / std::sqrt(2.0)).margin(1e-12));
    }
}
