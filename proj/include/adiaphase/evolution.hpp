#pragma once

#include <cstddef>
#include <vector>

#include "adiaphase/gauge.hpp"
#include "adiaphase/hamiltonian.hpp"
#include "adiaphase/phases.hpp"
#include "adiaphase/spectral.hpp"
#include "adiaphase/types.hpp"

namespace adiaphase {

inline constexpr double kStateNormTolerance = 1e-10;
inline constexpr double kDecompositionTolerance = 1e-12;

// Normalized amplitudes in the fixed computational basis.
class StateVector {
public:
    // Throws DomainError if | <psi|psi> - 1 | exceeds `tolerance`.
    explicit StateVector(CVector amplitudes, double tolerance = kStateNormTolerance);

    // Scales a nonzero vector to unit norm.
    static StateVector normalized(CVector amplitudes);

    const CVector& amplitudes() const noexcept { return amplitudes_; }
    Eigen::Index dimension() const noexcept { return amplitudes_.size(); }
    double norm_defect() const { return std::abs(amplitudes_.squaredNorm() - 1.0); }

private:
    CVector amplitudes_;
};

// psi(0) = sum_j a_j |phi_j; 0>. One coefficient per level; levels outside the
// superposition carry zero.
class InitialDecomposition {
public:
    explicit InitialDecomposition(CVector coefficients, double tolerance = kDecompositionTolerance);

    const CVector& coefficients() const noexcept { return coefficients_; }
    Complex operator[](Eigen::Index level) const { return coefficients_(level); }
    Eigen::Index levels() const noexcept { return coefficients_.size(); }

private:
    CVector coefficients_;
};

// a_j = <v_j(0)|psi0>
InitialDecomposition decompose_initial(const StateVector& psi0, const SpectralFrame& frame0);

StateVector reconstruct(const InitialDecomposition& decomposition, const SpectralFrame& frame);

// Coefficients in the rephased basis: a~_j = exp(-i alpha_j(0)) a_j.
InitialDecomposition transform_coefficients(const InitialDecomposition& decomposition, const GaugeFunction& alpha);

// sum_j a_j exp(i gamma_j) exp(-i t <E_j>) |v_j(t_k)>
StateVector adiabatic_state(const InitialDecomposition& decomposition, const SpectralTrajectory& trajectory,
                            const PhaseLedger& ledger, std::size_t sample);

std::vector<StateVector> adiabatic_series(const InitialDecomposition& decomposition,
                                          const SpectralTrajectory& trajectory, const PhaseLedger& ledger);

// exp(-i h H) via the spectral decomposition of H.
CMatrix unitary_step(const HermitianOperator& h, double step);

// psi(t_{k+1}) = exp(-i h H(t_k + h/2)) psi(t_k), the exponential taken through
// the spectral decomposition of the midpoint Hamiltonian. The state is carried
// in extended precision between steps. Returns one state per sample.
std::vector<StateVector> exact_propagate(const HamiltonianFamily& family, const StateVector& psi0,
                                         const TimeGrid& grid);

// min over a global phase of || a - e^{i phi} b || = sqrt(2 - 2 |<a|b>|).
double state_distance(const StateVector& a, const StateVector& b);

std::vector<double> adiabatic_deviation(const std::vector<StateVector>& exact,
                                        const std::vector<StateVector>& adiabatic);

double max_norm_drift(const std::vector<StateVector>& series);

} // namespace adiaphase
