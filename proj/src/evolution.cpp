#include "adiaphase/evolution.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "adiaphase/errors.hpp"

namespace adiaphase {

StateVector::StateVector(CVector amplitudes, double tolerance) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1)
        throw DomainError("state vector must be non-empty");
    if (!amplitudes_.allFinite())
        throw DomainError("state vector has non-finite amplitudes");
    if (norm_defect() > tolerance)
        throw DomainError("state vector is not normalized (|<psi|psi> - 1| = " + std::to_string(norm_defect()) + ")");
}

StateVector StateVector::normalized(CVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw DomainError("cannot normalize a zero or non-finite state");
    return StateVector(amplitudes / norm);
}

InitialDecomposition::InitialDecomposition(CVector coefficients, double tolerance)
    : coefficients_(std::move(coefficients)) {
    if (coefficients_.size() < 1)
        throw DomainError("initial decomposition must be non-empty");
    const double defect = std::abs(coefficients_.squaredNorm() - 1.0);
    if (!(defect <= tolerance))
        throw DomainError("initial decomposition coefficients are not normalized (defect " +
                          std::to_string(defect) + ")");
}

InitialDecomposition decompose_initial(const StateVector& psi0, const SpectralFrame& frame0) {
    if (psi0.dimension() != frame0.vectors.rows())
        throw DomainError("initial state dimension does not match the eigenbasis");
    if (psi0.norm_defect() > kDecompositionTolerance)
        throw DomainError("initial state norm violates the decomposition tolerance");
    return InitialDecomposition(frame0.vectors.adjoint() * psi0.amplitudes());
}

StateVector reconstruct(const InitialDecomposition& decomposition, const SpectralFrame& frame) {
    if (decomposition.levels() != frame.levels())
        throw DomainError("decomposition level count does not match the frame");
    return StateVector(frame.vectors * decomposition.coefficients());
}

InitialDecomposition transform_coefficients(const InitialDecomposition& decomposition, const GaugeFunction& alpha) {
    if (alpha.levels() != static_cast<std::size_t>(decomposition.levels()))
        throw DomainError("gauge level count does not match the decomposition");
    CVector transformed = decomposition.coefficients();
    for (Eigen::Index j = 0; j < transformed.size(); ++j)
        transformed(j) *= std::polar(1.0, -alpha.value(static_cast<std::size_t>(j), 0));
    return InitialDecomposition(std::move(transformed));
}

StateVector adiabatic_state(const InitialDecomposition& decomposition, const SpectralTrajectory& trajectory,
                            const PhaseLedger& ledger, std::size_t sample) {
    if (!(ledger.grid == trajectory.grid))
        throw DomainError("ledger and trajectory are on different grids");
    if (decomposition.levels() != trajectory.levels() ||
        ledger.levels() != static_cast<std::size_t>(trajectory.levels()))
        throw DomainError("decomposition, ledger and trajectory disagree on the level count");
    if (sample >= trajectory.frames.size())
        throw DomainError("sample index out of range");
    const auto& frame = trajectory.frames[sample];
    CVector psi = CVector::Zero(frame.vectors.rows());
    for (Eigen::Index j = 0; j < decomposition.levels(); ++j) {
        const auto level = static_cast<std::size_t>(j);
        const double phase = ledger.geometric[level][sample] + ledger.dynamical_argument[level][sample];
        psi += decomposition[j] * std::polar(1.0, phase) * frame.vectors.col(j);
    }
    return StateVector(std::move(psi));
}

std::vector<StateVector> adiabatic_series(const InitialDecomposition& decomposition,
                                          const SpectralTrajectory& trajectory, const PhaseLedger& ledger) {
    std::vector<StateVector> series;
    series.reserve(trajectory.frames.size());
    for (std::size_t k = 0; k < trajectory.frames.size(); ++k)
        series.push_back(adiabatic_state(decomposition, trajectory, ledger, k));
    return series;
}

CMatrix unitary_step(const HermitianOperator& h, double step) {
    const Eigensystem system = eigensystem(h);
    CVector phases(system.values.size());
    for (Eigen::Index j = 0; j < phases.size(); ++j)
        phases(j) = std::polar(1.0, -step * system.values(j));
    return system.vectors * phases.asDiagonal() * system.vectors.adjoint();
}

namespace {

using ExtendedComplex = std::complex<long double>;
using ExtendedMatrix = Eigen::Matrix<ExtendedComplex, Eigen::Dynamic, Eigen::Dynamic>;
using ExtendedVector = Eigen::Matrix<ExtendedComplex, Eigen::Dynamic, 1>;

// Eigenvectors promoted to extended precision and re-orthonormalized there.
// In double precision the per-step unitarity error (~1 ulp) is correlated
// across the slowly varying steps and the norm drifts linearly.
ExtendedMatrix orthonormalized(const CMatrix& vectors) {
    ExtendedMatrix basis = vectors.cast<ExtendedComplex>();
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < basis.cols(); ++j) {
            for (Eigen::Index i = 0; i < j; ++i)
                basis.col(j) -= basis.col(i).dot(basis.col(j)) * basis.col(i);
            basis.col(j) /= basis.col(j).norm();
        }
    }
    return basis;
}

} // namespace

std::vector<StateVector> exact_propagate(const HamiltonianFamily& family, const StateVector& psi0,
                                         const TimeGrid& grid) {
    if (psi0.dimension() != family.dimension())
        throw DomainError("initial state dimension does not match the Hamiltonian");
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * family.duration();
    if (grid.duration() > family.duration() + slack)
        throw DomainError("time grid extends past the Hamiltonian family duration");

    std::vector<StateVector> states;
    states.reserve(grid.size());
    states.push_back(psi0);
    ExtendedVector psi = psi0.amplitudes().cast<ExtendedComplex>();
    for (std::size_t k = 0; k < grid.steps(); ++k) {
        const double h = grid.time(k + 1) - grid.time(k);
        const double midpoint = grid.time(k) + 0.5 * h;
        const Eigensystem system = eigensystem(family.at(midpoint));
        const ExtendedMatrix basis = orthonormalized(system.vectors);
        ExtendedVector coefficients = basis.adjoint() * psi;
        for (Eigen::Index j = 0; j < coefficients.size(); ++j)
            coefficients(j) *= std::polar(1.0L, -static_cast<long double>(h) *
                                                    static_cast<long double>(system.values(j)));
        psi = basis * coefficients;
        states.emplace_back(psi.cast<Complex>());
    }
    return states;
}

double state_distance(const StateVector& a, const StateVector& b) {
    if (a.dimension() != b.dimension())
        throw DomainError("state distance between vectors of different dimension");
    const Complex overlap = b.amplitudes().dot(a.amplitudes());
    const double magnitude = std::abs(overlap);
    const Complex phase = magnitude > 0.0 ? overlap / magnitude : Complex(1.0, 0.0);
    return (a.amplitudes() - phase * b.amplitudes()).norm();
}

std::vector<double> adiabatic_deviation(const std::vector<StateVector>& exact,
                                        const std::vector<StateVector>& adiabatic) {
    if (exact.size() != adiabatic.size())
        throw DomainError("deviation needs state series of equal length");
    std::vector<double> deviation(exact.size());
    for (std::size_t k = 0; k < exact.size(); ++k)
        deviation[k] = state_distance(exact[k], adiabatic[k]);
    return deviation;
}

double max_norm_drift(const std::vector<StateVector>& series) {
    double drift = 0.0;
    for (const auto& state : series)
        drift = std::max(drift, state.norm_defect());
    return drift;
}

} // namespace adiaphase
