#include "adiaphase/field_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "adiaphase/errors.hpp"

namespace adiaphase {

TimeGrid::TimeGrid(double duration, std::size_t steps) : duration_(duration), steps_(steps) {
    if (!(duration > 0.0) || !std::isfinite(duration))
        throw DomainError("time grid duration must be positive and finite");
    if (steps < 1)
        throw DomainError("time grid needs at least one step");
}

double TimeGrid::time(std::size_t k) const noexcept {
    if (k >= steps_)
        return duration_;
    return duration_ * static_cast<double>(k) / static_cast<double>(steps_);
}

Vec3 precessing_field(const PrecessingFieldParams& p, double t) {
    const double phase = p.angular_frequency * t;
    const double transverse = p.modulus * std::sin(p.polar_angle);
    return {transverse * std::cos(phase), transverse * std::sin(phase),
            p.modulus * std::cos(p.polar_angle)};
}

FieldPath::FieldPath(std::size_t dimension, double duration, Sampler sampler)
    : dimension_(dimension), duration_(duration), sampler_(std::move(sampler)) {
    if (dimension_ < 1)
        throw DomainError("field path dimension must be >= 1");
    if (!(duration_ > 0.0) || !std::isfinite(duration_))
        throw DomainError("field path duration must be positive and finite");
    if (!sampler_)
        throw DomainError("field path sampler is empty");
}

RVector FieldPath::operator()(double t) const {
    // Grid arithmetic may overshoot the endpoint by an ulp or two.
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * duration_;
    if (!(t >= -slack && t <= duration_ + slack))
        throw DomainError("time " + std::to_string(t) + " outside field path domain [0, " +
                          std::to_string(duration_) + "]");
    RVector value = sampler_(std::clamp(t, 0.0, duration_));
    if (static_cast<std::size_t>(value.size()) != dimension_)
        throw DomainError("field sampler returned wrong dimension");
    if (!value.allFinite())
        throw DomainError("field sampler returned a non-finite value at t = " + std::to_string(t));
    return value;
}

FieldPath precessing_path(const PrecessingFieldParams& params, double duration) {
    if (!(params.modulus > 0.0))
        throw DomainError("precessing field modulus must be positive");
    if (params.polar_angle < 0.0 || params.polar_angle > M_PI)
        throw DomainError("precessing field polar angle must lie in [0, pi]");
    if (params.angular_frequency < 0.0)
        throw DomainError("precessing field angular frequency must be >= 0");
    return FieldPath(3, duration, [params](double t) -> RVector { return precessing_field(params, t); });
}

FieldPath piecewise_linear_path(std::vector<Knot> knots) {
    if (knots.size() < 2)
        throw DomainError("piecewise path needs at least two knots");
    if (knots.front().time != 0.0)
        throw DomainError("piecewise path must start at t = 0");
    const auto dim = knots.front().value.size();
    if (dim < 1)
        throw DomainError("piecewise path knots must be non-empty vectors");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (knots[i].value.size() != dim)
            throw DomainError("piecewise path knot " + std::to_string(i) + " has mismatched dimension");
        if (!knots[i].value.allFinite() || !std::isfinite(knots[i].time))
            throw DomainError("piecewise path knot " + std::to_string(i) + " is not finite");
        if (i > 0 && !(knots[i].time > knots[i - 1].time))
            throw DomainError("piecewise path knot times must be strictly increasing");
    }
    const double duration = knots.back().time;
    auto shared = std::make_shared<const std::vector<Knot>>(std::move(knots));
    return FieldPath(static_cast<std::size_t>(dim), duration, [shared](double t) -> RVector {
        const auto& ks = *shared;
        auto upper = std::upper_bound(ks.begin(), ks.end(), t,
                                      [](double v, const Knot& k) { return v < k.time; });
        if (upper == ks.begin())
            return ks.front().value;
        if (upper == ks.end())
            return ks.back().value;
        const Knot& a = *(upper - 1);
        const Knot& b = *upper;
        if (t == a.time)
            return a.value;
        const double s = (t - a.time) / (b.time - a.time);
        return (1.0 - s) * a.value + s * b.value;
    });
}

} // namespace adiaphase
