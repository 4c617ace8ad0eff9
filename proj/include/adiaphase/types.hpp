#pragma once

#include <complex>

#include <Eigen/Dense>

namespace adiaphase {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

inline constexpr Complex kI{0.0, 1.0};

} // namespace adiaphase
