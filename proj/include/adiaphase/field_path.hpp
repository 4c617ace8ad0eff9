#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "adiaphase/types.hpp"

namespace adiaphase {

// Uniform grid t_k = k T / N, k = 0..N.
class TimeGrid {
public:
    TimeGrid(double duration, std::size_t steps);

    double duration() const noexcept { return duration_; }
    std::size_t steps() const noexcept { return steps_; }
    std::size_t size() const noexcept { return steps_ + 1; }
    double step() const noexcept { return duration_ / static_cast<double>(steps_); }
    // The last sample is exactly `duration()`.
    double time(std::size_t k) const noexcept;

    bool operator==(const TimeGrid&) const = default;

private:
    double duration_;
    std::size_t steps_;
};

struct PrecessingFieldParams {
    double modulus = 1.0;           // B > 0
    double polar_angle = 0.0;       // theta in [0, pi]
    double angular_frequency = 0.0; // omega >= 0
};

// (B sin(theta) cos(omega t), B sin(theta) sin(omega t), B cos(theta))
Vec3 precessing_field(const PrecessingFieldParams& params, double t);

// Classical parameter trajectory R(t) on [0, duration]. Immutable.
class FieldPath {
public:
    using Sampler = std::function<RVector(double)>;

    FieldPath(std::size_t dimension, double duration, Sampler sampler);

    std::size_t dimension() const noexcept { return dimension_; }
    double duration() const noexcept { return duration_; }

    // Throws DomainError for t outside [0, duration] or a non-finite sample.
    RVector operator()(double t) const;

private:
    std::size_t dimension_;
    double duration_;
    Sampler sampler_;
};

FieldPath precessing_path(const PrecessingFieldParams& params, double duration);

struct Knot {
    double time;
    RVector value;
};

// Linear interpolation between knots; needs >= 2 knots, the first at t = 0.
FieldPath piecewise_linear_path(std::vector<Knot> knots);

} // namespace adiaphase
