#include "adiaphase/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adiaphase/errors.hpp"

namespace adiaphase {

ObservableOp::ObservableOp(std::string name, HermitianOperator fixed)
    : name_(std::move(name)), dimension_(fixed.dimension()), fixed_(std::move(fixed)) {}

ObservableOp::ObservableOp(std::string name, Eigen::Index dimension, Sampler sampler)
    : name_(std::move(name)), dimension_(dimension), sampler_(std::move(sampler)) {
    if (!sampler_)
        throw DomainError("observable sampler is empty");
}

HermitianOperator ObservableOp::at(double t) const {
    if (fixed_)
        return *fixed_;
    HermitianOperator op = sampler_(t);
    if (op.dimension() != dimension_)
        throw DomainError("observable " + name_ + " changed dimension at t = " + std::to_string(t));
    return op;
}

ObservableOp sigma_x_observable() { return {"sigma_x", HermitianOperator(pauli_x())}; }
ObservableOp sigma_y_observable() { return {"sigma_y", HermitianOperator(pauli_y())}; }
ObservableOp sigma_z_observable() { return {"sigma_z", HermitianOperator(pauli_z())}; }

namespace {

void check_dimensions(const InitialDecomposition& decomposition, const PhaseLedger& ledger,
                      const SpectralTrajectory& trajectory, const ObservableOp& observable, std::size_t sample) {
    if (observable.dimension() != trajectory.dimension())
        throw DomainError("observable " + observable.name() + " has dimension " +
                          std::to_string(observable.dimension()) + ", state space has " +
                          std::to_string(trajectory.dimension()));
    if (decomposition.levels() != trajectory.levels() ||
        ledger.levels() != static_cast<std::size_t>(trajectory.levels()))
        throw DomainError("decomposition, ledger and trajectory disagree on the level count");
    if (!(ledger.grid == trajectory.grid))
        throw DomainError("ledger and trajectory are on different grids");
    if (sample >= trajectory.frames.size())
        throw DomainError("sample index out of range");
}

Complex term_with_matrix(const InitialDecomposition& decomposition, const PhaseLedger& ledger,
                         const SpectralFrame& frame, const CMatrix& op, std::size_t j, std::size_t k,
                         std::size_t sample) {
    const auto col_j = static_cast<Eigen::Index>(j);
    const auto col_k = static_cast<Eigen::Index>(k);
    const double geometric = ledger.geometric[j][sample] - ledger.geometric[k][sample];
    const double dynamical = ledger.dynamical_argument[j][sample] - ledger.dynamical_argument[k][sample];
    const Complex matrix_element = frame.vectors.col(col_k).dot(op * frame.vectors.col(col_j));
    return decomposition[col_j] * std::conj(decomposition[col_k]) * std::polar(1.0, geometric + dynamical) *
           matrix_element;
}

Complex sum_with_matrix(const InitialDecomposition& decomposition, const PhaseLedger& ledger,
                        const SpectralFrame& frame, const CMatrix& op, std::size_t sample) {
    Complex total = 0.0;
    const auto levels = static_cast<std::size_t>(decomposition.levels());
    for (std::size_t j = 0; j < levels; ++j)
        for (std::size_t k = 0; k < levels; ++k)
            total += term_with_matrix(decomposition, ledger, frame, op, j, k, sample);
    return total;
}

} // namespace

Complex interference_term(const InitialDecomposition& decomposition, const PhaseLedger& ledger,
                          const SpectralTrajectory& trajectory, const ObservableOp& observable,
                          std::size_t level_j, std::size_t level_k, std::size_t sample) {
    check_dimensions(decomposition, ledger, trajectory, observable, sample);
    const auto levels = static_cast<std::size_t>(decomposition.levels());
    if (level_j >= levels || level_k >= levels)
        throw DomainError("interference term level index out of range");
    const auto& frame = trajectory.frames[sample];
    return term_with_matrix(decomposition, ledger, frame, observable.at(frame.time).matrix(), level_j, level_k,
                            sample);
}

Complex interference_sum(const InitialDecomposition& decomposition, const PhaseLedger& ledger,
                         const SpectralTrajectory& trajectory, const ObservableOp& observable, std::size_t sample) {
    check_dimensions(decomposition, ledger, trajectory, observable, sample);
    const auto& frame = trajectory.frames[sample];
    return sum_with_matrix(decomposition, ledger, frame, observable.at(frame.time).matrix(), sample);
}

double expectation_value(const StateVector& state, const ObservableOp& observable, double t) {
    if (state.dimension() != observable.dimension())
        throw DomainError("observable and state dimensions differ");
    const Complex value = state.amplitudes().dot(observable.at(t).matrix() * state.amplitudes());
    if (std::abs(value.imag()) > 1e-12)
        throw DomainError("expectation value of " + observable.name() + " has imaginary part " +
                          std::to_string(value.imag()) + "; operator is not Hermitian");
    return value.real();
}

GaugeComparison::GaugeComparison(InitialDecomposition decomposition, SpectralTrajectory trajectory,
                                 PhaseLedger ledger, GaugeFunction alpha)
    : decomposition_(std::move(decomposition)),
      trajectory_(std::move(trajectory)),
      ledger_(std::move(ledger)),
      alpha_(std::move(alpha)),
      transformed_decomposition_(transform_coefficients(decomposition_, alpha_)),
      transformed_trajectory_(apply_gauge(trajectory_, alpha_)),
      transformed_ledger_(build_ledger(transformed_trajectory_)) {}

GaugeInvarianceReport GaugeComparison::report(const ObservableOp& observable, std::size_t sample) const {
    check_dimensions(decomposition_, ledger_, trajectory_, observable, sample);
    const double t = trajectory_.frames[sample].time;
    const CMatrix op = observable.at(t).matrix();

    GaugeInvarianceReport out;
    out.time = t;
    out.direct_original = expectation_value(adiabatic_state(decomposition_, trajectory_, ledger_, sample), observable, t);
    out.direct_transformed = expectation_value(
        adiabatic_state(transformed_decomposition_, transformed_trajectory_, transformed_ledger_, sample), observable, t);
    out.sum_original = sum_with_matrix(decomposition_, ledger_, trajectory_.frames[sample], op, sample).real();
    out.sum_transformed =
        sum_with_matrix(transformed_decomposition_, transformed_ledger_, transformed_trajectory_.frames[sample], op,
                        sample)
            .real();

    out.max_discrepancy = std::max(std::abs(out.direct_original - out.direct_transformed),
                                   std::abs(out.sum_original - out.sum_transformed));
    out.decomposition_residual = std::max(std::abs(out.direct_original - out.sum_original),
                                          std::abs(out.direct_transformed - out.sum_transformed));

    const auto levels = ledger_.levels();
    for (std::size_t j = 0; j < levels; ++j) {
        const double predicted =
            gauge_transformed_phase(ledger_.geometric[j][sample], alpha_.value(j, 0), alpha_.value(j, sample));
        out.phase_law_residual =
            std::max(out.phase_law_residual, std::abs(transformed_ledger_.geometric[j][sample] - predicted));
        for (std::size_t k = j + 1; k < levels; ++k) {
            const double shift = phase_difference(transformed_ledger_, j, k, sample) -
                                 phase_difference(ledger_, j, k, sample);
            const double expected = -(alpha_.value(j, sample) - alpha_.value(j, 0)) +
                                    (alpha_.value(k, sample) - alpha_.value(k, 0));
            out.phase_law_residual = std::max(out.phase_law_residual, std::abs(shift - expected));
        }
    }
    return out;
}

GaugeInvarianceReport gauge_invariance_report(const InitialDecomposition& decomposition,
                                              const SpectralTrajectory& trajectory, const PhaseLedger& ledger,
                                              const ObservableOp& observable, const GaugeFunction& alpha,
                                              std::size_t sample) {
    return GaugeComparison(decomposition, trajectory, ledger, alpha).report(observable, sample);
}

} // namespace adiaphase
