#include "adiaphase/phases.hpp"

#include <cmath>
#include <string>

#include "adiaphase/errors.hpp"

namespace adiaphase {

namespace {

double link_phase(const CVector& from, const CVector& to) {
    const double phase = std::arg(from.dot(to));
    return phase <= -M_PI ? M_PI : phase;
}

void require_level(const SpectralTrajectory& trajectory, std::size_t level) {
    if (level >= static_cast<std::size_t>(trajectory.levels()))
        throw DomainError("level index " + std::to_string(level + 1) + " out of range");
}

} // namespace

double wrap_phase(double angle) {
    double wrapped = std::remainder(angle, 2.0 * M_PI);
    if (wrapped <= -M_PI)
        wrapped += 2.0 * M_PI;
    return wrapped;
}

PhaseSeries geometric_phase(const SpectralTrajectory& trajectory) {
    const auto levels = static_cast<std::size_t>(trajectory.levels());
    const auto samples = trajectory.frames.size();
    PhaseSeries gamma(levels, std::vector<double>(samples, 0.0));
    for (std::size_t j = 0; j < levels; ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        for (std::size_t k = 0; k + 1 < samples; ++k)
            gamma[j][k + 1] = gamma[j][k] - link_phase(trajectory.frames[k].vectors.col(col),
                                                       trajectory.frames[k + 1].vectors.col(col));
    }
    return gamma;
}

std::vector<double> average_energy_series(const SpectralTrajectory& trajectory, std::size_t level) {
    require_level(trajectory, level);
    const auto col = static_cast<Eigen::Index>(level);
    const auto& frames = trajectory.frames;
    std::vector<double> average(frames.size());
    average[0] = frames[0].energies(col);
    double integral = 0.0;
    for (std::size_t k = 1; k < frames.size(); ++k) {
        const double dt = frames[k].time - frames[k - 1].time;
        integral += 0.5 * dt * (frames[k - 1].energies(col) + frames[k].energies(col));
        average[k] = integral / frames[k].time;
    }
    return average;
}

double average_energy(const SpectralTrajectory& trajectory, std::size_t level, std::size_t sample) {
    require_level(trajectory, level);
    if (sample >= trajectory.frames.size())
        throw DomainError("sample index out of range");
    const auto col = static_cast<Eigen::Index>(level);
    const auto& frames = trajectory.frames;
    if (sample == 0)
        return frames[0].energies(col);
    double integral = 0.0;
    for (std::size_t k = 1; k <= sample; ++k)
        integral += 0.5 * (frames[k].time - frames[k - 1].time) *
                    (frames[k - 1].energies(col) + frames[k].energies(col));
    return integral / frames[sample].time;
}

PhaseLedger build_ledger(const SpectralTrajectory& trajectory) {
    PhaseLedger ledger{trajectory.grid, geometric_phase(trajectory), {}, {}};
    for (std::size_t j = 0; j < ledger.geometric.size(); ++j) {
        auto average = average_energy_series(trajectory, j);
        std::vector<double> argument(average.size());
        for (std::size_t k = 0; k < average.size(); ++k)
            argument[k] = -trajectory.frames[k].time * average[k];
        ledger.average_energy.push_back(std::move(average));
        ledger.dynamical_argument.push_back(std::move(argument));
    }
    return ledger;
}

Complex dynamical_phase_factor(const PhaseLedger& ledger, std::size_t level, std::size_t sample) {
    return std::polar(1.0, ledger.dynamical_argument.at(level).at(sample));
}

double closed_loop_phase(const SpectralTrajectory& trajectory, std::size_t level) {
    require_level(trajectory, level);
    const auto col = static_cast<Eigen::Index>(level);
    const double open = geometric_phase(trajectory)[level].back();
    return open - link_phase(trajectory.frames.back().vectors.col(col), trajectory.frames.front().vectors.col(col));
}

SpectralTrajectory apply_gauge(const SpectralTrajectory& trajectory, const GaugeFunction& alpha) {
    if (!(alpha.grid() == trajectory.grid))
        throw DomainError("gauge function is sampled on a different grid than the trajectory");
    if (alpha.levels() != static_cast<std::size_t>(trajectory.levels()))
        throw DomainError("gauge function level count does not match the trajectory");
    SpectralTrajectory result = trajectory;
    for (std::size_t k = 0; k < result.frames.size(); ++k)
        for (std::size_t n = 0; n < alpha.levels(); ++n)
            result.frames[k].vectors.col(static_cast<Eigen::Index>(n)) *= std::polar(1.0, alpha.value(n, k));
    return result;
}

double gauge_transformed_phase(double gamma, double alpha_initial, double alpha_final) {
    return gamma - (alpha_final - alpha_initial);
}

double phase_difference(const PhaseLedger& ledger, std::size_t level_a, std::size_t level_b, std::size_t sample) {
    if (level_a == level_b)
        throw DomainError("phase difference needs two distinct levels");
    return ledger.geometric.at(level_a).at(sample) - ledger.geometric.at(level_b).at(sample);
}

GaugeFunction relative_gauge(const SpectralTrajectory& reference, const SpectralTrajectory& target) {
    if (!(reference.grid == target.grid) || reference.levels() != target.levels() ||
        reference.dimension() != target.dimension())
        throw DomainError("relative gauge needs trajectories on the same grid and dimension");
    const auto levels = static_cast<std::size_t>(reference.levels());
    std::vector<std::vector<double>> values(levels, std::vector<double>(reference.frames.size()));
    for (std::size_t n = 0; n < levels; ++n) {
        const auto col = static_cast<Eigen::Index>(n);
        double previous_raw = 0.0;
        for (std::size_t k = 0; k < reference.frames.size(); ++k) {
            const Complex overlap = reference.frames[k].vectors.col(col).dot(target.frames[k].vectors.col(col));
            if (std::abs(overlap) < kMinContinuationOverlap)
                throw DomainError("relative gauge: level " + std::to_string(n + 1) +
                                  " vectors are not parallel at sample " + std::to_string(k));
            const double raw = std::arg(overlap);
            values[n][k] = k == 0 ? wrap_phase(raw) : values[n][k - 1] + wrap_phase(raw - previous_raw);
            previous_raw = raw;
        }
    }
    return GaugeFunction(reference.grid, std::move(values));
}

PhaseSeries transport_phases(const PhaseSeries& target_phases, const GaugeFunction& alpha) {
    if (target_phases.size() != alpha.levels())
        throw DomainError("phase series and gauge have different level counts");
    PhaseSeries result = target_phases;
    for (std::size_t n = 0; n < result.size(); ++n) {
        if (result[n].size() != alpha.grid().size())
            throw DomainError("phase series and gauge have different sample counts");
        for (std::size_t k = 0; k < result[n].size(); ++k)
            result[n][k] += alpha.value(n, k) - alpha.value(n, 0);
    }
    return result;
}

} // namespace adiaphase
