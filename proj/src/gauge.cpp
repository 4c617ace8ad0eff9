#include "adiaphase/gauge.hpp"

#include <cmath>
#include <string>

#include "adiaphase/errors.hpp"

namespace adiaphase {

ScalarFunction constant_function(double value) {
    return [value](double) { return value; };
}

ScalarFunction linear_function(double offset, double slope) {
    return [offset, slope](double t) { return offset + slope * t; };
}

ScalarFunction sinusoidal_function(double amplitude, double frequency, double phase, double offset) {
    return [=](double t) { return offset + amplitude * std::sin(frequency * t + phase); };
}

ScalarFunction random_fourier_function(std::mt19937_64& rng, double duration, const FourierGaugeOptions& options) {
    if (!(duration > 0.0))
        throw DomainError("Fourier gauge needs a positive duration");
    std::uniform_real_distribution<double> offset_dist(-M_PI, M_PI);
    std::uniform_real_distribution<double> coeff_dist(-options.amplitude, options.amplitude);
    const double offset = offset_dist(rng);
    std::vector<double> cosines(options.modes);
    std::vector<double> sines(options.modes);
    for (std::size_t m = 0; m < options.modes; ++m) {
        cosines[m] = coeff_dist(rng);
        sines[m] = coeff_dist(rng);
    }
    const double base = M_PI / duration;
    return [offset, cosines = std::move(cosines), sines = std::move(sines), base](double t) {
        double value = offset;
        for (std::size_t m = 0; m < cosines.size(); ++m) {
            const double order = static_cast<double>(m + 1);
            value += (cosines[m] * std::cos(order * base * t) + sines[m] * std::sin(order * base * t)) / order;
        }
        return value;
    };
}

GaugeFunction::GaugeFunction(TimeGrid grid, std::vector<std::vector<double>> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.empty())
        throw DomainError("gauge function needs at least one level");
    for (std::size_t n = 0; n < values_.size(); ++n) {
        if (values_[n].size() != grid_.size())
            throw DomainError("gauge function level " + std::to_string(n + 1) + " has " +
                              std::to_string(values_[n].size()) + " samples, grid has " +
                              std::to_string(grid_.size()));
        for (double v : values_[n])
            if (!std::isfinite(v))
                throw DomainError("gauge function level " + std::to_string(n + 1) + " is not finite");
    }
}

GaugeFunction GaugeFunction::zero(const TimeGrid& grid, std::size_t levels) {
    return GaugeFunction(grid, std::vector<std::vector<double>>(levels, std::vector<double>(grid.size(), 0.0)));
}

GaugeFunction sample_gauge(const std::vector<ScalarFunction>& per_level, const TimeGrid& grid) {
    std::vector<std::vector<double>> values;
    values.reserve(per_level.size());
    for (const auto& fn : per_level) {
        std::vector<double> series(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k)
            series[k] = fn(grid.time(k));
        values.push_back(std::move(series));
    }
    return GaugeFunction(grid, std::move(values));
}

GaugeFunction random_fourier_gauge(std::mt19937_64& rng, std::size_t levels, const TimeGrid& grid,
                                   const FourierGaugeOptions& options) {
    std::vector<ScalarFunction> fns;
    for (std::size_t n = 0; n < levels; ++n)
        fns.push_back(random_fourier_function(rng, grid.duration(), options));
    return sample_gauge(fns, grid);
}

} // namespace adiaphase
