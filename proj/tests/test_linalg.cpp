#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "oneq/linalg.hpp"
#include "oneq/random_unitary.hpp"
#include "test_support.hpp"

using namespace oneq;
using oneq::testing::basis_state;
using oneq::testing::bell_phi_plus;
using oneq::testing::random_density_matrix;
using oneq::testing::random_hermitian;
using oneq::testing::random_state;
using Catch::Approx;

TEST_CASE("tensor product basics") {
    const Matrix i2 = identity(2);
    REQUIRE((tensor_product(i2, i2) - identity(4)).cwiseAbs().maxCoeff() == 0.0);

    Matrix p0(2, 2);
    p0 << 1, 0, 0, 0;
    const Matrix mixed = identity(2) / 2.0;
    const Matrix prod = tensor_product(p0, mixed);
    REQUIRE(prod(0, 0).real() == Approx(0.5));
    REQUIRE(prod(1, 1).real() == Approx(0.5));
    REQUIRE(prod(2, 2).real() == Approx(0.0));
    REQUIRE(prod(3, 3).real() == Approx(0.0));

    const Matrix zz = tensor_product(pauli_z(), pauli_z());
    REQUIRE(zz(0, 0).real() == 1.0);
    REQUIRE(zz(1, 1).real() == -1.0);
    REQUIRE(zz(2, 2).real() == -1.0);
    REQUIRE(zz(3, 3).real() == 1.0);
}

TEST_CASE("partial trace of product and Bell states") {
    Rng rng(42);
    const DensityMatrix a = random_density_matrix(1, rng);
    const DensityMatrix b = random_density_matrix(2, rng);
    const Matrix joint = tensor_product(a.matrix(), b.matrix());
    const DensityMatrix rho(joint, 3, DensityMatrix::Unchecked{});
    const BipartiteSplit split({0}, 3);
    const DensityMatrix kept = partial_trace(rho, split, true);
    REQUIRE((kept.matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    const DensityMatrix keptb = partial_trace(rho, split, false);
    REQUIRE((keptb.matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(kept.matrix().trace().real() == Approx(1.0).margin(1e-12));

    const DensityMatrix bell(projector(bell_phi_plus()), 2, DensityMatrix::Unchecked{});
    const DensityMatrix red = partial_trace(bell, BipartiteSplit({0}, 2), true);
    REQUIRE((red.matrix() - identity(2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace mismatched split is rejected") {
    Rng rng(1);
    const DensityMatrix rho = random_density_matrix(2, rng);
    REQUIRE_THROWS_AS(partial_trace(rho, BipartiteSplit({0}, 3), true), std::invalid_argument);
}

TEST_CASE("partial transpose of a product factorizes") {
    Rng rng(7);
    const DensityMatrix a = random_density_matrix(1, rng);
    const DensityMatrix b = random_density_matrix(1, rng);
    const Matrix joint = tensor_product(a.matrix(), b.matrix());
    const BipartiteSplit split({0}, 2);
    const Matrix pt = partial_transpose(joint, split, false);
    const Matrix expected = tensor_product(a.matrix(), b.matrix().transpose());
    REQUIRE((pt - expected).cwiseAbs().maxCoeff() < 1e-14);

    // Hermitian factor: transposition preserves the spectrum
    const Spectrum s1 = hermitian_spectrum(joint);
    const Spectrum s2 = hermitian_spectrum(pt);
    for (std::size_t i = 0; i < s1.values.size(); ++i) {
        REQUIRE(s1.values[i] == Approx(s2.values[i]).margin(1e-12));
    }
}

TEST_CASE("Bell state partial transpose spectrum") {
    const Matrix rho = projector(bell_phi_plus());
    const Matrix pt = partial_transpose(rho, BipartiteSplit({1}, 2), true);
    const Spectrum s = hermitian_spectrum(pt);
    REQUIRE(s.values[0] == Approx(0.5).margin(1e-12));
    REQUIRE(s.values[1] == Approx(0.5).margin(1e-12));
    REQUIRE(s.values[2] == Approx(0.5).margin(1e-12));
    REQUIRE(s.values[3] == Approx(-0.5).margin(1e-12));
}

TEST_CASE("double partial transpose is the identity map") {
    Rng rng(3);
    const Matrix m = random_hermitian(8, rng);
    const BipartiteSplit split({0, 2}, 3);
    const Matrix twice = partial_transpose(partial_transpose(m, split, true), split, true);
    REQUIRE((twice - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial transpose on A then B equals full transpose") {
    Rng rng(4);
    const Matrix m = random_hermitian(16, rng);
    const BipartiteSplit split({1, 3}, 4);
    const Matrix both = partial_transpose(partial_transpose(m, split, true), split, false);
    REQUIRE((both - m.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial transpose trace identity on random Hermitian pairs") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(3));
        const Matrix a = random_hermitian(std::int64_t{1} << n, rng);
        const Matrix b = random_hermitian(std::int64_t{1} << n, rng);
        std::vector<int> part{static_cast<int>(rng.uniform_index(n))};
        for (int q = 0; q < n; ++q) {
            if (q != part[0] && rng.bernoulli(0.3) && static_cast<int>(part.size()) < n - 1) {
                part.push_back(q);
            }
        }
        const BipartiteSplit split(part, n);
        const Complex lhs = (partial_transpose(a, split, true) * partial_transpose(b, split, true))
                                .trace();
        const Complex rhs = (a * b).trace();
        REQUIRE(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("partial transpose spectrum independent of transposed basis") {
    Rng rng(6);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = random_density_matrix(3, rng);
        const BipartiteSplit split({2}, 3);
        const Spectrum base = hermitian_spectrum(partial_transpose(rho.matrix(), split, true));

        // conjugate the transposed qubit by a random local unitary first
        const Matrix v = haar_unitary(2, rng).matrix();
        const Matrix local = tensor_product(identity(4), v);
        const Matrix rotated = local * rho.matrix() * local.adjoint();
        const Spectrum rot = hermitian_spectrum(partial_transpose(rotated, split, true));
        for (std::size_t i = 0; i < base.values.size(); ++i) {
            REQUIRE(base.values[i] == Approx(rot.values[i]).margin(1e-9));
        }
    }
}

TEST_CASE("hermitian spectrum basics and rejection") {
    const Spectrum s = hermitian_spectrum(identity(4) / 4.0);
    for (double v : s.values) {
        REQUIRE(v == Approx(0.25).margin(1e-14));
    }
    Matrix bad(2, 2);
    bad << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
    REQUIRE_THROWS_AS(hermitian_spectrum(bad), std::invalid_argument);
}

TEST_CASE("singular values of unitary and Hermitian matrices") {
    Rng rng(8);
    const Matrix u = haar_unitary(8, rng).matrix();
    for (double s : singular_values(u).values) {
        REQUIRE(s == Approx(1.0).margin(1e-12));
    }
    const Matrix h = random_hermitian(8, rng);
    const Spectrum sv = singular_values(h);
    std::vector<double> abs_eigs;
    for (double v : hermitian_spectrum(h).values) {
        abs_eigs.push_back(std::abs(v));
    }
    std::sort(abs_eigs.begin(), abs_eigs.end(), std::greater<double>());
    for (std::size_t i = 0; i < abs_eigs.size(); ++i) {
        REQUIRE(sv.values[i] == Approx(abs_eigs[i]).margin(1e-10));
    }
}

TEST_CASE("von Neumann entropy endpoints") {
    Rng rng(9);
    const Vector psi = random_state(8, rng);
    const DensityMatrix pure(projector(psi), 3, DensityMatrix::Unchecked{});
    REQUIRE(von_neumann_entropy(pure) == Approx(0.0).margin(1e-9));

    const DensityMatrix mixed(identity(16) / 16.0, 4, DensityMatrix::Unchecked{});
    REQUIRE(von_neumann_entropy(mixed) == Approx(4.0).margin(1e-12));
}

TEST_CASE("entropy invariant under global unitary conjugation") {
    Rng rng(10);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = random_density_matrix(3, rng);
        const Matrix u = haar_unitary(8, rng).matrix();
        const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), 3,
                                    DensityMatrix::Unchecked{});
        REQUIRE(von_neumann_entropy(rotated) ==
                Approx(von_neumann_entropy(rho)).margin(1e-9));
    }
}

TEST_CASE("operator fidelity") {
    Rng rng(11);
    const Matrix a = random_hermitian(8, rng);
    REQUIRE(operator_fidelity(a, a) == Approx(1.0).margin(1e-12));

    const Vector v1 = basis_state(4, 0);
    const Vector v2 = basis_state(4, 2);
    REQUIRE(operator_fidelity(projector(v1), projector(v2)) == Approx(0.0).margin(1e-14));

    const Vector p1 = random_state(8, rng);
    const Vector p2 = random_state(8, rng);
    const double overlap_sq = std::norm(p1.dot(p2));
    REQUIRE(operator_fidelity(projector(p1), projector(p2)) ==
            Approx(overlap_sq).margin(1e-10));

    REQUIRE_THROWS_AS(operator_fidelity(Matrix::Zero(2, 2), identity(2)),
                      std::invalid_argument);
}

TEST_CASE("density matrix validation") {
    REQUIRE_THROWS_AS(DensityMatrix::make(identity(4)), std::invalid_argument);  // trace 4
    Matrix nonpsd = identity(2);
    nonpsd(0, 0) = 1.5;
    nonpsd(1, 1) = -0.5;
    REQUIRE_THROWS_AS(DensityMatrix::make(nonpsd), std::invalid_argument);
    REQUIRE_NOTHROW(DensityMatrix::make(identity(8) / 8.0));
}

TEST_CASE("unitary validation") {
    REQUIRE_NOTHROW(UnitaryOperator::make(pauli_x()));
    REQUIRE_THROWS_AS(UnitaryOperator::make(pauli_x() * 1.001), std::invalid_argument);
}

TEST_CASE("split validation") {
    REQUIRE_THROWS_AS(BipartiteSplit({}, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(BipartiteSplit({0, 1, 2}, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(BipartiteSplit({3}, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(BipartiteSplit({1, 1}, 3), std::invalid_argument);
    const BipartiteSplit s({2, 0}, 3);
    REQUIRE(s.part_a() == std::vector<int>{0, 2});
    REQUIRE(s.part_b() == std::vector<int>{1});
    REQUIRE(s.dim_a() == 4);
    REQUIRE(s.dim_b() == 2);
}

TEST_CASE("embedded CNOT acts on computational states") {
    const Matrix cnot = embedded_cnot(2, 0, 1);
    const Vector s00 = basis_state(4, 0);
    REQUIRE(((cnot * s00) - s00).norm() < 1e-15);
    const Vector s10 = basis_state(4, 2);
    const Vector s11 = basis_state(4, 3);
    REQUIRE(((cnot * s10) - s11).norm() < 1e-15);
    REQUIRE(((cnot * cnot) - identity(4)).cwiseAbs().maxCoeff() < 1e-15);
}
