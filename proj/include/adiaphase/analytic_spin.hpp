#pragma once

// Closed forms for a spin-1/2 in a field precessing about z at fixed polar
// angle: gauge-dressed instantaneous eigenvectors, geometric phases, the
// adiabatic state built from them, and the exact rotating-frame solution of
// the Schrodinger equation. Used as oracles for the numerical pipeline.
//
// Conventions: hbar = 1, mu > 0, omega >= 0. Level 0 ("lower") has energy
// -mu B / 2, level 1 ("upper") +mu B / 2.

#include "adiaphase/evolution.hpp"
#include "adiaphase/field_path.hpp"
#include "adiaphase/gauge.hpp"
#include "adiaphase/hamiltonian.hpp"
#include "adiaphase/spectral.hpp"
#include "adiaphase/types.hpp"

namespace adiaphase {

// Gauge functions f (lower level) and g (upper level).
struct SpinGauge {
    ScalarFunction f = constant_function(0.0);
    ScalarFunction g = constant_function(0.0);
};

// Relative threshold on B -/+ Bz below which the field counts as lying on the
// +/- z axis, where the closed-form eigenvectors are singular.
inline constexpr double kAxisSingularityThreshold = 1e-12;

struct SpinEigenvectors {
    CVector lower;
    CVector upper;
    // Set when the field sits on the z axis and a fixed limit vector was
    // substituted; its phase is a convention, not a continuous gauge.
    bool gauge_arbitrary = false;
};

// |phi_1>_f = e^{if} sqrt((B - Bz)/2B) [ |up> - (Bx + i By)/(B - Bz) |down> ]
// |phi_2>_g = e^{ig} sqrt((B + Bz)/2B) [ |up> + (Bx + i By)/(B + Bz) |down> ]
// On the +z axis returns |phi_1> = -e^{if}|down>; on the -z axis
// |phi_2> = e^{ig}|down> (theta -> 0, pi limits at azimuth 0).
SpinEigenvectors analytic_eigenvectors(const Vec3& field, const SpinGauge& gauge, double t);

struct SpinPhases {
    double lower;
    double upper;
};

// gamma_1 = -(f(t) - f(0)) - cos^2(theta/2) omega t
// gamma_2 = -(g(t) - g(0)) - sin^2(theta/2) omega t
SpinPhases analytic_phases(const PrecessingFieldParams& params, const SpinGauge& gauge, double t);

// a_1 e^{i gamma_1} e^{i mu B t/2} |phi_1>_f + a_2 e^{i gamma_2} e^{-i mu B t/2} |phi_2>_g
StateVector analytic_adiabatic_state(const PrecessingFieldParams& params, const SpinModelParams& spin,
                                     const SpinGauge& gauge, Complex a_lower, Complex a_upper, double t);

// Exact solution: psi(t) = e^{-i omega t sz/2} e^{-i t H_rot} psi0 with
// H_rot = (mu B/2)(sin(theta) sx + cos(theta) sz) - (omega/2) sz.
StateVector rotating_frame_exact(const PrecessingFieldParams& params, const SpinModelParams& spin,
                                 const StateVector& psi0, double t);

// Trajectory whose frames are the closed-form eigenvectors in gauge (f, g).
SpectralTrajectory analytic_trajectory(const PrecessingFieldParams& params, const SpinModelParams& spin,
                                       const SpinGauge& gauge, const TimeGrid& grid);

} // namespace adiaphase
