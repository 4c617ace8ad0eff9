#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "adiaphase/errors.hpp"
#include "adiaphase/field_path.hpp"

using namespace adiaphase;

namespace {
RVector vec(std::initializer_list<double> xs) {
    RVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs)
        v(i++) = x;
    return v;
}
} // namespace

TEST_CASE("precessing field closed form") {
    const Vec3 a = precessing_field({1.0, M_PI / 2, 1.0}, 0.0);
    CHECK(a.x() == doctest::Approx(1.0));
    CHECK(std::abs(a.y()) < 1e-15);
    CHECK(std::abs(a.z()) < 1e-15);

    for (double t : {0.0, 0.3, 17.0}) {
        const Vec3 b = precessing_field({1.0, 0.0, 5.0}, t);
        CHECK(b.x() == 0.0);
        CHECK(b.y() == 0.0);
        CHECK(b.z() == 1.0);
    }

    const Vec3 c = precessing_field({2.0, M_PI / 3, M_PI}, 0.5);
    CHECK(std::abs(c.x()) < 1e-15);
    CHECK(c.y() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(c.z() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("precessing field keeps its modulus and period") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const PrecessingFieldParams p{0.1 + 5.0 * u(rng), M_PI * u(rng), 0.01 + 3.0 * u(rng)};
        const double t = 100.0 * u(rng);
        const Vec3 r = precessing_field(p, t);
        CHECK(std::abs(r.norm() - p.modulus) <= 1e-14 * p.modulus);
        const Vec3 shifted = precessing_field(p, t + 2.0 * M_PI / p.angular_frequency);
        CHECK((shifted - r).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("precessing path validates parameters and domain") {
    CHECK_THROWS_AS(precessing_path({0.0, 1.0, 1.0}, 1.0), DomainError);
    CHECK_THROWS_AS(precessing_path({1.0, 4.0, 1.0}, 1.0), DomainError);
    CHECK_THROWS_AS(precessing_path({1.0, 1.0, -1.0}, 1.0), DomainError);
    const FieldPath path = precessing_path({1.0, 1.0, 1.0}, 2.0);
    CHECK(path.dimension() == 3);
    CHECK_NOTHROW(path(2.0));
    CHECK_THROWS_AS(path(2.1), DomainError);
    CHECK_THROWS_AS(path(-0.1), DomainError);
}

TEST_CASE("piecewise linear path interpolates") {
    const FieldPath ramp = piecewise_linear_path({{0.0, vec({0, 0, 1})}, {1.0, vec({0, 0, 2})}});
    CHECK(ramp(0.5)(2) == doctest::Approx(1.5));
    CHECK(ramp.duration() == 1.0);

    const FieldPath diag = piecewise_linear_path({{0.0, vec({1, 0})}, {1.0, vec({0, 1})}});
    const RVector end = diag(1.0);
    CHECK(end(0) == 0.0);
    CHECK(end(1) == 1.0);
}

TEST_CASE("piecewise linear path reproduces knots exactly") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<Knot> knots;
    double t = 0.0;
    for (int i = 0; i < 12; ++i) {
        knots.push_back({t, vec({u(rng), u(rng), u(rng), u(rng)})});
        t += 0.1 + std::abs(u(rng));
    }
    const FieldPath path = piecewise_linear_path(knots);
    for (const auto& knot : knots)
        CHECK(path(knot.time) == knot.value);
}

TEST_CASE("piecewise linear path rejects malformed knots") {
    CHECK_THROWS_AS(piecewise_linear_path({}), DomainError);
    CHECK_THROWS_AS(piecewise_linear_path({{0.0, vec({1, 0, 0})}}), DomainError);
    CHECK_THROWS_AS(piecewise_linear_path({{0.0, vec({1, 0})}, {1.0, vec({1, 0, 0})}}), DomainError);
    CHECK_THROWS_AS(piecewise_linear_path({{0.0, vec({1})}, {1.0, vec({2})}, {1.0, vec({3})}}), DomainError);
    CHECK_THROWS_AS(piecewise_linear_path({{0.0, vec({1})}, {2.0, vec({2})}, {1.0, vec({3})}}), DomainError);
    CHECK_THROWS_AS(piecewise_linear_path({{0.5, vec({1})}, {1.0, vec({2})}}), DomainError);
}

TEST_CASE("time grid is uniform and ends exactly at T") {
    const TimeGrid grid(3.0, 7);
    CHECK(grid.size() == 8);
    CHECK(grid.time(0) == 0.0);
    CHECK(grid.time(7) == 3.0);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        CHECK(grid.time(k + 1) > grid.time(k));
        CHECK(grid.time(k + 1) - grid.time(k) == doctest::Approx(grid.step()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(TimeGrid(1.0, 0), DomainError);
    CHECK_THROWS_AS(TimeGrid(0.0, 4), DomainError);
}
