#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "oneq/discord.hpp"
#include "oneq/ent_distribution.hpp"
#include "test_support.hpp"

using namespace oneq;
using oneq::testing::basis_state;
using Catch::Approx;

TEST_CASE("cnot conjugation on computational states") {
    const DensityMatrix s00(projector(basis_state(4, 0)), 2, DensityMatrix::Unchecked{});
    REQUIRE((apply_cnot(s00, 0, 1).matrix() - s00.matrix()).cwiseAbs().maxCoeff() < 1e-15);

    const DensityMatrix s10(projector(basis_state(4, 2)), 2, DensityMatrix::Unchecked{});
    const DensityMatrix s11(projector(basis_state(4, 3)), 2, DensityMatrix::Unchecked{});
    REQUIRE((apply_cnot(s10, 0, 1).matrix() - s11.matrix()).cwiseAbs().maxCoeff() < 1e-15);

    Rng rng(1);
    const DensityMatrix rho = oneq::testing::random_density_matrix(3, rng);
    const DensityMatrix twice = apply_cnot(apply_cnot(rho, 0, 2), 0, 2);
    REQUIRE((twice.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);
    REQUIRE_THROWS_AS(apply_cnot(rho, 1, 1), std::invalid_argument);
}

TEST_CASE("stage states are consistent and physical") {
    const ProtocolStates st = protocol_states();
    for (const DensityMatrix* rho : {&st.rho, &st.sigma, &st.tau}) {
        REQUIRE(rho->matrix().trace().real() == Approx(1.0).margin(1e-14));
        REQUIRE(hermitian_spectrum(rho->matrix()).min() >= -1e-12);
    }
    // the gates only relabel basis states, so all three share a spectrum
    const Spectrum a = hermitian_spectrum(st.rho.matrix());
    const Spectrum b = hermitian_spectrum(st.sigma.matrix());
    const Spectrum c = hermitian_spectrum(st.tau.matrix());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        REQUIRE(a.values[i] == Approx(b.values[i]).margin(1e-12));
        REQUIRE(a.values[i] == Approx(c.values[i]).margin(1e-12));
    }
}

TEST_CASE("gate derivation reproduces the tabulated stages") {
    const ProtocolStates st = protocol_states();
    const DensityMatrix sigma = apply_cnot(st.rho, 0, 2);
    REQUIRE((sigma.matrix() - st.sigma.matrix()).cwiseAbs().maxCoeff() < 1e-14);
    const DensityMatrix tau = apply_cnot(st.sigma, 1, 2);
    REQUIRE((tau.matrix() - st.tau.matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("discord accounting across the protocol") {
    const ProtocolDiscord pd = protocol_discord_accounting();
    REQUIRE(pd.reports[0].discord == Approx(0.0).margin(1e-6));
    REQUIRE(pd.reports[1].discord == Approx(1.0 / 3.0).margin(1e-6));
    REQUIRE(pd.reports[2].discord == Approx(0.0).margin(1e-6));
    // each minimization lands on the polar measurement
    for (const auto& rep : pd.reports) {
        REQUIRE(rep.optimal_measurement.theta == Approx(0.0).margin(1e-3));
    }
}

TEST_CASE("conditional spectra as a function of the polar angle") {
    const ProtocolStates st = protocol_states();
    const BipartiteSplit split({2}, 3);
    for (double theta : {0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0}) {
        const double ct = std::cos(theta);
        // first stage
        {
            const auto [pi_plus, pi_minus] = BlochMeasurement{theta, 0.0}.projectors();
            const Matrix full = tensor_product(identity(4), pi_plus);
            Matrix weighted = full * st.rho.matrix() * full.adjoint();
            const double p1 = weighted.trace().real();
            REQUIRE(p1 == Approx((3.0 + ct) / 6.0).margin(1e-12));
            const Matrix cond = partial_trace(weighted, split, false) / p1;
            std::vector<double> expect{0.5, (1.0 + ct) / (2.0 * (3.0 + ct)),
                                       (1.0 + ct) / (2.0 * (3.0 + ct)),
                                       (1.0 - ct) / (2.0 * (3.0 + ct))};
            std::sort(expect.begin(), expect.end(), std::greater<double>());
            const Spectrum sp = hermitian_spectrum(cond);
            for (int i = 0; i < 4; ++i) {
                REQUIRE(sp.values[i] == Approx(expect[i]).margin(1e-10));
            }
        }
        // middle stage: both outcomes share one spectrum
        {
            const auto [pi_plus, pi_minus] = BlochMeasurement{theta, 0.0}.projectors();
            for (const Matrix& proj : {pi_plus, pi_minus}) {
                const Matrix full = tensor_product(identity(4), proj);
                Matrix weighted = full * st.sigma.matrix() * full.adjoint();
                const double p = weighted.trace().real();
                REQUIRE(p == Approx(0.5).margin(1e-12));
                const Matrix cond = partial_trace(weighted, split, false) / p;
                const double stheta = std::sin(theta);
                std::vector<double> expect{
                    std::cos(theta / 2.0) * std::cos(theta / 2.0) / 3.0,
                    std::sin(theta / 2.0) * std::sin(theta / 2.0) / 3.0,
                    (2.0 + stheta) / 6.0, (2.0 - stheta) / 6.0};
                std::sort(expect.begin(), expect.end(), std::greater<double>());
                const Spectrum sp = hermitian_spectrum(cond);
                for (int i = 0; i < 4; ++i) {
                    REQUIRE(sp.values[i] == Approx(expect[i]).margin(1e-10));
                }
            }
        }
    }
}

TEST_CASE("post-measurement states are azimuth independent here") {
    const ProtocolStates st = protocol_states();
    const BipartiteSplit split({2}, 3);
    for (const DensityMatrix* rho : {&st.rho, &st.sigma, &st.tau}) {
        const double a = conditional_entropy_measured(*rho, split, {1.1, 0.0});
        for (double phi : {0.9, 2.5, 5.0}) {
            REQUIRE(conditional_entropy_measured(*rho, split, {1.1, phi}) ==
                    Approx(a).margin(1e-10));
        }
    }
}

TEST_CASE("partial transpose audit flags exactly the middle stage") {
    const ProtocolAudit audit = protocol_entanglement_audit();
    // first stage is separable across every cut
    for (int q = 0; q < 3; ++q) {
        REQUIRE(audit.min_pt_eigenvalue[0][q] >= -1e-10);
    }
    // middle stage: entanglement across the a vs bc cut
    REQUIRE(audit.sigma_entangled_a_bc);
    REQUIRE(audit.min_pt_eigenvalue[1][0] == Approx(-1.0 / 6.0).margin(1e-10));
    // final stage: one ebit a third of the time
    REQUIRE(audit.ebit_probability == Approx(1.0 / 3.0).margin(1e-12));
    REQUIRE(audit.bell_negativity == Approx(2.0).margin(1e-10));
}

TEST_CASE("middle stage transposed spectrum is minus one sixth and sevenfold one sixth") {
    const ProtocolStates st = protocol_states();
    const Matrix pt = partial_transpose(st.sigma.matrix(), BipartiteSplit({0}, 3), true);
    const Spectrum sp = hermitian_spectrum(pt);
    REQUIRE(sp.values.back() == Approx(-1.0 / 6.0).margin(1e-12));
    for (std::size_t i = 0; i + 1 < sp.values.size(); ++i) {
        REQUIRE(sp.values[i] == Approx(1.0 / 6.0).margin(1e-12));
    }
}
