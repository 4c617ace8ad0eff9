#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "adiaphase/field_path.hpp"

namespace adiaphase {

// Real scalar function of time; used for gauge angles alpha_n(t) and f(t), g(t).
using ScalarFunction = std::function<double(double)>;

ScalarFunction constant_function(double value);
ScalarFunction linear_function(double offset, double slope);
// offset + amplitude * sin(frequency * t + phase)
ScalarFunction sinusoidal_function(double amplitude, double frequency, double phase, double offset = 0.0);

struct FourierGaugeOptions {
    std::size_t modes = 4;
    double amplitude = 1.0;
};

// c0 + sum_m (a_m cos(pi m t / T) + b_m sin(pi m t / T)) / m with c0 uniform in
// [-pi, pi) and a_m, b_m uniform in [-amplitude, amplitude). The base period is
// 2T, so alpha(T) != alpha(0) in general.
ScalarFunction random_fourier_function(std::mt19937_64& rng, double duration,
                                       const FourierGaugeOptions& options = {});

// Per-level gauge angles alpha_n(t_k) sampled on a grid.
class GaugeFunction {
public:
    GaugeFunction(TimeGrid grid, std::vector<std::vector<double>> values);

    static GaugeFunction zero(const TimeGrid& grid, std::size_t levels);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t levels() const noexcept { return values_.size(); }
    double value(std::size_t level, std::size_t sample) const { return values_.at(level).at(sample); }
    const std::vector<double>& series(std::size_t level) const { return values_.at(level); }

private:
    TimeGrid grid_;
    std::vector<std::vector<double>> values_;
};

GaugeFunction sample_gauge(const std::vector<ScalarFunction>& per_level, const TimeGrid& grid);

GaugeFunction random_fourier_gauge(std::mt19937_64& rng, std::size_t levels, const TimeGrid& grid,
                                   const FourierGaugeOptions& options = {});

} // namespace adiaphase
