#include "adiaphase/analytic_spin.hpp"

#include <cmath>

#include "adiaphase/errors.hpp"

namespace adiaphase {

namespace {

// B - Bz and B + Bz without cancellation near the poles.
double minus_gap(double modulus, const Vec3& b) {
    const double transverse_sq = b.x() * b.x() + b.y() * b.y();
    return b.z() > 0.0 ? transverse_sq / (modulus + b.z()) : modulus - b.z();
}

double plus_gap(double modulus, const Vec3& b) {
    const double transverse_sq = b.x() * b.x() + b.y() * b.y();
    return b.z() < 0.0 ? transverse_sq / (modulus - b.z()) : modulus + b.z();
}

void require_spin_conventions(const SpinModelParams& spin) {
    if (!(spin.coupling > 0.0))
        throw DomainError("closed-form spin oracle assumes mu > 0");
}

} // namespace

SpinEigenvectors analytic_eigenvectors(const Vec3& field, const SpinGauge& gauge, double t) {
    const double modulus = field.norm();
    if (!(modulus > 0.0))
        throw DomainError("closed-form eigenvectors need a nonzero field");
    const Complex transverse(field.x(), field.y());
    const Complex phase_f = std::polar(1.0, gauge.f(t));
    const Complex phase_g = std::polar(1.0, gauge.g(t));

    SpinEigenvectors out{CVector(2), CVector(2), false};

    const double below = minus_gap(modulus, field);
    if (below < kAxisSingularityThreshold * modulus) {
        out.lower << 0.0, -phase_f;
        out.gauge_arbitrary = true;
    } else {
        out.lower << phase_f * std::sqrt(below / (2.0 * modulus)),
            -phase_f * transverse / std::sqrt(2.0 * modulus * below);
    }

    const double above = plus_gap(modulus, field);
    if (above < kAxisSingularityThreshold * modulus) {
        out.upper << 0.0, phase_g;
        out.gauge_arbitrary = true;
    } else {
        out.upper << phase_g * std::sqrt(above / (2.0 * modulus)),
            phase_g * transverse / std::sqrt(2.0 * modulus * above);
    }
    return out;
}

SpinPhases analytic_phases(const PrecessingFieldParams& params, const SpinGauge& gauge, double t) {
    const double swept = params.angular_frequency * t;
    const double c = std::cos(0.5 * params.polar_angle);
    const double s = std::sin(0.5 * params.polar_angle);
    return {-(gauge.f(t) - gauge.f(0.0)) - c * c * swept, -(gauge.g(t) - gauge.g(0.0)) - s * s * swept};
}

StateVector analytic_adiabatic_state(const PrecessingFieldParams& params, const SpinModelParams& spin,
                                     const SpinGauge& gauge, Complex a_lower, Complex a_upper, double t) {
    require_spin_conventions(spin);
    const auto vectors = analytic_eigenvectors(precessing_field(params, t), gauge, t);
    const auto phases = analytic_phases(params, gauge, t);
    const double dynamical = 0.5 * spin.coupling * params.modulus * t;
    CVector psi = a_lower * std::polar(1.0, phases.lower) * std::polar(1.0, dynamical) * vectors.lower +
                  a_upper * std::polar(1.0, phases.upper) * std::polar(1.0, -dynamical) * vectors.upper;
    return StateVector(std::move(psi));
}

StateVector rotating_frame_exact(const PrecessingFieldParams& params, const SpinModelParams& spin,
                                 const StateVector& psi0, double t) {
    if (psi0.dimension() != 2)
        throw DomainError("rotating-frame solution needs a two-component state");
    const double half_field = 0.5 * spin.coupling * params.modulus;
    // H_rot = n . sigma
    const Vec3 n(half_field * std::sin(params.polar_angle), 0.0,
                 half_field * std::cos(params.polar_angle) - 0.5 * params.angular_frequency);
    const double length = n.norm();

    CMatrix propagator = CMatrix::Identity(2, 2);
    if (length > 0.0) {
        const CMatrix n_sigma = (n.x() * pauli_x() + n.z() * pauli_z()) / length;
        propagator = std::cos(length * t) * CMatrix::Identity(2, 2) - kI * std::sin(length * t) * n_sigma;
    }
    const double frame_angle = 0.5 * params.angular_frequency * t;
    CVector psi = propagator * psi0.amplitudes();
    psi(0) *= std::polar(1.0, -frame_angle);
    psi(1) *= std::polar(1.0, frame_angle);
    return StateVector(std::move(psi));
}

SpectralTrajectory analytic_trajectory(const PrecessingFieldParams& params, const SpinModelParams& spin,
                                       const SpinGauge& gauge, const TimeGrid& grid) {
    require_spin_conventions(spin);
    SpectralTrajectory trajectory{grid, {}};
    trajectory.frames.reserve(grid.size());
    const double half = 0.5 * spin.coupling * params.modulus;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.time(k);
        const auto vectors = analytic_eigenvectors(precessing_field(params, t), gauge, t);
        SpectralFrame frame;
        frame.time = t;
        frame.energies = RVector(2);
        frame.energies << -half, half;
        frame.vectors = CMatrix(2, 2);
        frame.vectors.col(0) = vectors.lower;
        frame.vectors.col(1) = vectors.upper;
        frame.min_gap = 2.0 * half;
        trajectory.frames.push_back(std::move(frame));
    }
    return trajectory;
}

} // namespace adiaphase
