#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "adiaphase/evolution.hpp"
#include "adiaphase/gauge.hpp"
#include "adiaphase/hamiltonian.hpp"
#include "adiaphase/phases.hpp"
#include "adiaphase/spectral.hpp"

namespace adiaphase {

// Hermitian observable, optionally time dependent.
class ObservableOp {
public:
    using Sampler = std::function<HermitianOperator(double)>;

    ObservableOp(std::string name, HermitianOperator fixed);
    ObservableOp(std::string name, Eigen::Index dimension, Sampler sampler);

    const std::string& name() const noexcept { return name_; }
    Eigen::Index dimension() const noexcept { return dimension_; }
    HermitianOperator at(double t) const;

private:
    std::string name_;
    Eigen::Index dimension_;
    std::optional<HermitianOperator> fixed_;
    Sampler sampler_;
};

ObservableOp sigma_x_observable();
ObservableOp sigma_y_observable();
ObservableOp sigma_z_observable();

// a_j a_k^* e^{i(gamma_j - gamma_k)} e^{-i t (<E_j> - <E_k>)} <v_k|O|v_j>
Complex interference_term(const InitialDecomposition& decomposition, const PhaseLedger& ledger,
                          const SpectralTrajectory& trajectory, const ObservableOp& observable,
                          std::size_t level_j, std::size_t level_k, std::size_t sample);

// Sum of all interference terms. Real for Hermitian O up to rounding.
Complex interference_sum(const InitialDecomposition& decomposition, const PhaseLedger& ledger,
                         const SpectralTrajectory& trajectory, const ObservableOp& observable, std::size_t sample);

// <psi|O(t)|psi>; throws DomainError if the imaginary residual exceeds 1e-12.
double expectation_value(const StateVector& state, const ObservableOp& observable, double t = 0.0);

struct GaugeInvarianceReport {
    double time = 0.0;
    double direct_original = 0.0;     // <psi|O|psi>, original basis
    double sum_original = 0.0;        // interference sum, original basis
    double direct_transformed = 0.0;  // <psi~|O|psi~>, rephased basis
    double sum_transformed = 0.0;     // interference sum, rephased basis
    double max_discrepancy = 0.0;     // across bases: max of |direct - direct~|, |sum - sum~|
    double decomposition_residual = 0.0; // within a basis: max of |direct - sum|, |direct~ - sum~|
    double phase_law_residual = 0.0;  // deviation of gamma~ from gamma - (alpha(t) - alpha(0)), per level and per pair
};

// Both bases precomputed once; `report` is cheap per (observable, sample).
class GaugeComparison {
public:
    GaugeComparison(InitialDecomposition decomposition, SpectralTrajectory trajectory, PhaseLedger ledger,
                    GaugeFunction alpha);

    GaugeInvarianceReport report(const ObservableOp& observable, std::size_t sample) const;

    const SpectralTrajectory& transformed_trajectory() const noexcept { return transformed_trajectory_; }
    const PhaseLedger& transformed_ledger() const noexcept { return transformed_ledger_; }
    const InitialDecomposition& transformed_decomposition() const noexcept { return transformed_decomposition_; }

private:
    InitialDecomposition decomposition_;
    SpectralTrajectory trajectory_;
    PhaseLedger ledger_;
    GaugeFunction alpha_;
    InitialDecomposition transformed_decomposition_;
    SpectralTrajectory transformed_trajectory_;
    PhaseLedger transformed_ledger_;
};

GaugeInvarianceReport gauge_invariance_report(const InitialDecomposition& decomposition,
                                              const SpectralTrajectory& trajectory, const PhaseLedger& ledger,
                                              const ObservableOp& observable, const GaugeFunction& alpha,
                                              std::size_t sample);

} // namespace adiaphase
