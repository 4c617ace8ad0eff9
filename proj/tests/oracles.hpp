#pragma once

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline CMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index d, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    CMatrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            a(i, j) = Complex(normal(rng), normal(rng));
    return 0.5 * (a + a.adjoint());
}

inline CVector random_unit_vector(std::mt19937_64& rng, Eigen::Index d) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(d);
    for (Eigen::Index i = 0; i < d; ++i)
        v(i) = Complex(normal(rng), normal(rng));
    return v / v.norm();
}

// Eigenvalues of a 2x2 Hermitian matrix from the characteristic polynomial.
inline std::pair<double, double> eigenvalues_2x2(const CMatrix& h) {
    const double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double half_diff = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double radius = std::sqrt(half_diff * half_diff + std::norm(h(0, 1)));
    return {mean - radius, mean + radius};
}

// gamma(t) = i int_0^t <phi|d phi/dt'> dt' with a central-difference
// derivative and composite Simpson quadrature (intervals must be even).
inline double berry_phase_quadrature(const std::function<CVector(double)>& phi, double t, int intervals,
                                     double fd_step = 1e-5) {
    auto connection = [&](double s) {
        const CVector derivative = (phi(s + fd_step) - phi(s - fd_step)) / (2.0 * fd_step);
        return (Complex(0.0, 1.0) * phi(s).dot(derivative)).real();
    };
    const double h = t / intervals;
    double sum = connection(0.0) + connection(t);
    for (int i = 1; i < intervals; ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * connection(i * h);
    return sum * h / 3.0;
}

// Composite Simpson rule for a scalar integrand.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

// Distance between two angles modulo 2 pi.
inline double angle_distance(double a, double b) {
    return std::abs(std::remainder(a - b, 2.0 * M_PI));
}

} // namespace oracle
