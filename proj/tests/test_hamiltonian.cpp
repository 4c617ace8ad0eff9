#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "adiaphase/errors.hpp"
#include "adiaphase/hamiltonian.hpp"
#include "oracles.hpp"

using namespace adiaphase;

TEST_CASE("spin-1/2 Hamiltonian examples") {
    const double b = 0.7;
    const CMatrix hz = spin_half_hamiltonian({1.0}, Vec3(0, 0, b)).matrix();
    CMatrix expected = CMatrix::Zero(2, 2);
    expected(0, 0) = b / 2;
    expected(1, 1) = -b / 2;
    CHECK((hz - expected).norm() == 0.0);
    const auto [lower, upper] = oracle::eigenvalues_2x2(hz);
    CHECK(lower == doctest::Approx(-b / 2));
    CHECK(upper == doctest::Approx(b / 2));

    CHECK(spin_half_hamiltonian({1.0}, Vec3::Zero()).matrix().norm() == 0.0);

    const CMatrix hx = spin_half_hamiltonian({2.0}, Vec3(1, 0, 0)).matrix();
    CHECK((hx - pauli_x()).norm() == 0.0);
}

TEST_CASE("spin-1/2 Hamiltonian is traceless with eigenvalues +-mu|B|/2") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal(0.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec3 field(normal(rng), normal(rng), normal(rng));
        const double mu = normal(rng);
        const CMatrix h = spin_half_hamiltonian({mu}, field).matrix();
        CHECK(std::abs(h.trace()) < 1e-14);
        const auto [lower, upper] = oracle::eigenvalues_2x2(h);
        const double expected = 0.5 * std::abs(mu) * field.norm();
        CHECK(std::abs(upper - expected) <= 1e-12 * expected);
        CHECK(std::abs(lower + expected) <= 1e-12 * expected);
    }
}

TEST_CASE("Hermitian operator rejects non-Hermitian input") {
    CMatrix m = pauli_x();
    m(0, 1) = 2.0;
    CHECK_THROWS_AS(HermitianOperator{m}, DomainError);
    CHECK_THROWS_AS(HermitianOperator{CMatrix::Zero(2, 3)}, DomainError);
    CHECK_NOTHROW(HermitianOperator{pauli_y()});
}

TEST_CASE("family_at composes path and builder") {
    const auto frozen = spin_half_family({1.0}, precessing_path({1.0, 0.0, 1.0}, 10.0));
    for (double t : {0.0, 1.3, 9.9}) {
        const CMatrix h = frozen.at(t).matrix();
        CHECK(h(0, 0).real() == doctest::Approx(0.5));
        CHECK(h(1, 1).real() == doctest::Approx(-0.5));
        CHECK(std::abs(h(0, 1)) < 1e-16);
    }

    RVector zero(1), one(1);
    zero << 0.0;
    one << 1.0;
    // Builder (c/2) sz, matching the spin-model normalization.
    const auto ramp = matrix_family({{0, 0.5 * pauli_z()}}, piecewise_linear_path({{0.0, zero}, {1.0, one}}));
    const CMatrix h = ramp.at(0.25).matrix();
    CHECK(h(0, 0).real() == doctest::Approx(0.125));
    CHECK(h(1, 1).real() == doctest::Approx(-0.125));

    CHECK_THROWS_AS(ramp.at(1.5), DomainError);
    CHECK_THROWS_AS(ramp.at(-0.5), DomainError);
}

TEST_CASE("random Hermitian families stay Hermitian along the path") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    std::vector<FieldTerm> terms;
    for (std::size_t c = 0; c < 3; ++c)
        terms.push_back({c, oracle::random_hermitian(rng, 4)});
    const FieldPath path(3, 4.0, [](double t) {
        RVector r(3);
        r << 1.0, std::sin(t), std::cos(3.0 * t);
        return r;
    });
    const auto family = matrix_family(terms, path);
    for (int trial = 0; trial < 100; ++trial) {
        const auto h = family.at(u(rng));
        CHECK(h.dimension() == 4);
        CHECK(hermiticity_defect(h.matrix()) <= kHermiticityTolerance);
    }
}

TEST_CASE("family construction errors") {
    CHECK_THROWS_AS(spin_half_family({0.0}, precessing_path({1.0, 1.0, 1.0}, 1.0)), DomainError);
    RVector a(2), b(2);
    a << 0, 0;
    b << 1, 1;
    const auto planar = piecewise_linear_path({{0.0, a}, {1.0, b}});
    CHECK_THROWS_AS(spin_half_family({1.0}, planar), DomainError);
    CHECK_THROWS_AS(matrix_family({{2, pauli_z()}}, planar), DomainError);
    CHECK_THROWS_AS(matrix_family({}, planar), DomainError);
    CHECK_THROWS_AS(matrix_family({{0, pauli_z()}, {1, CMatrix::Identity(3, 3)}}, planar), DomainError);
}
