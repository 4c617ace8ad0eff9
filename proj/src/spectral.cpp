#include "adiaphase/spectral.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "adiaphase/errors.hpp"

namespace adiaphase {

namespace {

std::string gap_message(double t, double gap, double tolerance) {
    std::ostringstream os;
    os << std::setprecision(17) << "spectrum degenerate at t = " << t << " (gap " << gap << " < " << tolerance
       << ")";
    return os.str();
}

} // namespace

Eigensystem eigensystem(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("Hermitian eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double degeneracy_tolerance(const RVector& energies) {
    const double radius = energies.size() > 0 ? energies.cwiseAbs().maxCoeff() : 0.0;
    return 1e-8 * std::max(1.0, radius);
}

SpectralFrame make_frame(double time, Eigensystem system) {
    SpectralFrame frame;
    frame.time = time;
    frame.energies = std::move(system.values);
    frame.vectors = std::move(system.vectors);
    frame.min_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j + 1 < frame.energies.size(); ++j)
        frame.min_gap = std::min(frame.min_gap, frame.energies(j + 1) - frame.energies(j));
    return frame;
}

SpectralFrame reference_gauge(SpectralFrame frame) {
    for (Eigen::Index j = 0; j < frame.vectors.cols(); ++j) {
        auto column = frame.vectors.col(j);
        Eigen::Index pivot = 0;
        double largest = -1.0;
        for (Eigen::Index i = 0; i < column.size(); ++i) {
            const double magnitude = std::abs(column(i));
            if (magnitude > largest) {
                largest = magnitude;
                pivot = i;
            }
        }
        column *= std::conj(column(pivot)) / largest;
        column(pivot) = Complex(largest, 0.0);
    }
    return frame;
}

SpectralFrame continue_gauge(const SpectralFrame& prev, SpectralFrame raw) {
    if (prev.vectors.rows() != raw.vectors.rows() || prev.vectors.cols() != raw.vectors.cols())
        throw DomainError("gauge continuation between frames of different dimension");
    for (Eigen::Index j = 0; j < raw.vectors.cols(); ++j) {
        const Complex overlap = prev.vectors.col(j).dot(raw.vectors.col(j));
        const double magnitude = std::abs(overlap);
        if (magnitude < kMinContinuationOverlap)
            throw GaugeContinuationError("eigenvector overlap " + std::to_string(magnitude) + " for level " +
                                             std::to_string(j + 1) + " between t = " +
                                             std::to_string(prev.time) + " and t = " +
                                             std::to_string(raw.time) +
                                             "; refine the grid or check for a level crossing",
                                         raw.time);
        raw.vectors.col(j) *= std::conj(overlap) / magnitude;
    }
    return raw;
}

SpectralTrajectory spectral_trajectory(const HamiltonianFamily& family, const TimeGrid& grid) {
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * family.duration();
    if (grid.duration() > family.duration() + slack)
        throw DomainError("time grid extends past the Hamiltonian family duration");

    SpectralTrajectory trajectory{grid, {}};
    trajectory.frames.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.time(k);
        SpectralFrame raw = make_frame(t, eigensystem(family.at(t)));
        const double tolerance = degeneracy_tolerance(raw.energies);
        if (raw.min_gap < tolerance)
            throw NonDegenerateViolation(gap_message(t, raw.min_gap, tolerance), t);
        if (k == 0)
            trajectory.frames.push_back(reference_gauge(std::move(raw)));
        else
            trajectory.frames.push_back(continue_gauge(trajectory.frames.back(), std::move(raw)));
    }
    return trajectory;
}

} // namespace adiaphase
