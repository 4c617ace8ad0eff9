#pragma once

#include <cstddef>
#include <vector>

#include "adiaphase/field_path.hpp"
#include "adiaphase/hamiltonian.hpp"
#include "adiaphase/types.hpp"

namespace adiaphase {

// Continuation refuses overlaps |<v_prev|v_raw>| below this value.
inline constexpr double kMinContinuationOverlap = 0.5;

struct Eigensystem {
    RVector values;  // ascending
    CMatrix vectors; // column j pairs with values(j); phases unspecified
};

// Throws ConvergenceError if the Hermitian solver fails.
Eigensystem eigensystem(const HermitianOperator& h);

// Instantaneous eigenbasis at one time sample. Level 0 is the ground state.
struct SpectralFrame {
    double time = 0.0;
    RVector energies;
    CMatrix vectors;
    double min_gap = 0.0; // +inf for a one-level system

    Eigen::Index levels() const noexcept { return energies.size(); }
    CVector vector(Eigen::Index level) const { return vectors.col(level); }
};

SpectralFrame make_frame(double time, Eigensystem system);

// Gaps below 1e-8 * max(1, spectral radius) count as degenerate.
double degeneracy_tolerance(const RVector& energies);

// Rotates each eigenvector so its largest-magnitude component (lowest index on
// ties) is real and positive.
SpectralFrame reference_gauge(SpectralFrame frame);

// Rephases each eigenvector of `raw` so that <prev_j|new_j> is real and
// positive. Throws GaugeContinuationError when an overlap magnitude falls below
// kMinContinuationOverlap (level crossing or a grid that is too coarse).
SpectralFrame continue_gauge(const SpectralFrame& prev, SpectralFrame raw);

struct SpectralTrajectory {
    TimeGrid grid;
    std::vector<SpectralFrame> frames; // one per grid sample

    Eigen::Index levels() const noexcept { return frames.front().levels(); }
    Eigen::Index dimension() const noexcept { return frames.front().vectors.rows(); }
};

// Eigensystems along the grid: frame 0 in the reference gauge, the rest
// gauge-continued. Throws NonDegenerateViolation at the first degenerate sample.
SpectralTrajectory spectral_trajectory(const HamiltonianFamily& family, const TimeGrid& grid);

} // namespace adiaphase
