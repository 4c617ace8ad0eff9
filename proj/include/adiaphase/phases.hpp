#pragma once

#include <cstddef>
#include <vector>

#include "adiaphase/gauge.hpp"
#include "adiaphase/spectral.hpp"
#include "adiaphase/types.hpp"

namespace adiaphase {

// Per-level series indexed [level][sample].
using PhaseSeries = std::vector<std::vector<double>>;

// Geometric and dynamical phase bookkeeping along a trajectory (hbar = 1).
struct PhaseLedger {
    TimeGrid grid;
    PhaseSeries geometric;          // gamma_j(t_k), not reduced mod 2 pi
    PhaseSeries average_energy;     // <E_j(t_k)> = (1/t_k) int_0^t_k E_j
    PhaseSeries dynamical_argument; // -t_k <E_j(t_k)>

    std::size_t levels() const noexcept { return geometric.size(); }
};

// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

// Discrete Berry connection: gamma_j(t_k) = -sum_{l<k} arg <v_j(t_l)|v_j(t_{l+1})>,
// each link phase in (-pi, pi].
PhaseSeries geometric_phase(const SpectralTrajectory& trajectory);

// Trapezoidal time average of E_j over [0, t_k]; at k = 0 returns E_j(0).
double average_energy(const SpectralTrajectory& trajectory, std::size_t level, std::size_t sample);
std::vector<double> average_energy_series(const SpectralTrajectory& trajectory, std::size_t level);

PhaseLedger build_ledger(const SpectralTrajectory& trajectory);

// exp(-i t_k <E_j(t_k)>)
Complex dynamical_phase_factor(const PhaseLedger& ledger, std::size_t level, std::size_t sample);

// Open-path phase plus the closing link <v_j(T)|v_j(0)>. Invariant under any
// sampled rephasing of the trajectory; equals the Berry phase (mod 2 pi) when
// the path is closed.
double closed_loop_phase(const SpectralTrajectory& trajectory, std::size_t level);

// |Phi_n; t_k> = exp(i alpha_n(t_k)) |phi_n; t_k>; energies untouched.
SpectralTrajectory apply_gauge(const SpectralTrajectory& trajectory, const GaugeFunction& alpha);

// gamma - (alpha(t) - alpha(0))
double gauge_transformed_phase(double gamma, double alpha_initial, double alpha_final);

// gamma_j(t_k) - gamma_k(t_k); throws DomainError when j == k.
double phase_difference(const PhaseLedger& ledger, std::size_t level_a, std::size_t level_b,
                        std::size_t sample);

// The unwrapped gauge alpha with target = exp(i alpha) reference, level by
// level. Both trajectories must span the same eigenvectors on the same grid.
GaugeFunction relative_gauge(const SpectralTrajectory& reference, const SpectralTrajectory& target);

// Phases of `target` re-expressed in the reference basis, where
// target = exp(i alpha) reference: gamma_ref = gamma_target + alpha(t) - alpha(0).
PhaseSeries transport_phases(const PhaseSeries& target_phases, const GaugeFunction& alpha);

} // namespace adiaphase
