#include "freebend/free_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace freebend {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) { return std::to_string(v); }

}  // namespace

double neutral_angle() {
    static const double value = std::atan(std::sqrt(2.0));
    return value;
}

FreeGeometry::FreeGeometry(double relaxed_length, double relaxed_radius, double fiber_angle)
    : relaxed_length_(relaxed_length),
      relaxed_radius_(relaxed_radius),
      fiber_angle_(fiber_angle) {
    if (!(relaxed_length > 0.0)) {
        throw ValidationError("relaxed_length must be > 0, got " + fmt(relaxed_length));
    }
    if (!(relaxed_radius > 0.0)) {
        throw ValidationError("relaxed_radius must be > 0, got " + fmt(relaxed_radius));
    }
    if (!(fiber_angle > neutral_angle()) || !(fiber_angle < std::numbers::pi / 2.0)) {
        throw ValidationError(
            "fiber_angle must lie in (neutral_angle, pi/2) for an extending-type FREE, got " +
            fmt(fiber_angle) + " rad");
    }
    fiber_length_ = relaxed_length_ / std::cos(fiber_angle_);
    turn_count_ = relaxed_length_ / (kTwoPi * relaxed_radius_) * std::tan(fiber_angle_);
}

double radius_at_length(const FreeGeometry& geom, double length) {
    const double lo = geom.relaxed_length();
    const double hi = geom.fiber_length();
    if (length < lo) {
        throw ValidationError("length " + fmt(length) + " is below the relaxed length " +
                              fmt(lo));
    }
    if (length >= hi) {
        throw ValidationError("length " + fmt(length) + " is at or beyond the fiber length " +
                              fmt(hi));
    }
    const double b = geom.fiber_length();
    return std::sqrt(b * b - length * length) / (kTwoPi * geom.turn_count());
}

double max_length(const FreeGeometry& geom) {
    return geom.relaxed_length() * std::cos(neutral_angle()) / std::cos(geom.fiber_angle());
}

double curvature_at_length(const FreeGeometry& geom, double length) {
    const double lo = geom.relaxed_length();
    const double hi = max_length(geom);
    if (length < lo) {
        throw ValidationError("length " + fmt(length) + " is below the relaxed length " +
                              fmt(lo));
    }
    if (length > hi) {
        throw ValidationError("length " + fmt(length) + " is beyond the maximum length " +
                              fmt(hi));
    }
    const double b = geom.fiber_length();
    return kTwoPi * geom.turn_count() * (1.0 - lo / length) /
           std::sqrt(b * b - length * length);
}

double max_curvature(double relaxed_radius, double fiber_angle) {
    if (!(relaxed_radius > 0.0)) {
        throw ValidationError("relaxed_radius must be > 0, got " + fmt(relaxed_radius));
    }
    if (fiber_angle < neutral_angle() || !(fiber_angle < std::numbers::pi / 2.0)) {
        throw ValidationError("fiber_angle must lie in [neutral_angle, pi/2), got " +
                              fmt(fiber_angle) + " rad");
    }
    const double na = neutral_angle();
    return (1.0 / relaxed_radius) * (std::sin(fiber_angle) / std::sin(na)) *
           (1.0 - std::cos(fiber_angle) / std::cos(na));
}

double max_curvature(const FreeGeometry& geom) {
    return max_curvature(geom.relaxed_radius(), geom.fiber_angle());
}

double solve_fiber_angle(double target_curvature, double relaxed_radius,
                         ZeroTargetPolicy policy) {
    if (!(relaxed_radius > 0.0)) {
        throw ValidationError("relaxed_radius must be > 0, got " + fmt(relaxed_radius));
    }
    if (target_curvature < 0.0) {
        throw ValidationError("target curvature must be >= 0, got " + fmt(target_curvature));
    }
    if (target_curvature == 0.0) {
        if (policy == ZeroTargetPolicy::NeutralAngle) {
            return neutral_angle();
        }
        throw InfeasibleError(
            "target curvature 0 is reached only at the neutral angle, which is excluded for "
            "extending-type FREEs",
            0.0);
    }

    constexpr double kMargin = 1e-9;
    constexpr double kTolerance = 1e-10;
    constexpr int kMaxIterations = 200;

    double lo = neutral_angle() + kMargin;
    double hi = std::numbers::pi / 2.0 - kMargin;
    const double attainable = max_curvature(relaxed_radius, hi);
    if (target_curvature > attainable) {
        throw InfeasibleError("target curvature " + fmt(target_curvature) +
                                  " 1/m exceeds the attainable supremum " + fmt(attainable) +
                                  " 1/m at this radius",
                              attainable);
    }
    // The map is smooth at the neutral angle, so for targets below the value
    // at the bracket interior, extend the bracket down to the boundary where
    // the curvature is exactly zero.
    if (max_curvature(relaxed_radius, lo) > target_curvature) {
        lo = neutral_angle();
    }

    for (int i = 0; i < kMaxIterations && hi - lo > kTolerance; ++i) {
        const double midpoint = 0.5 * (lo + hi);
        if (max_curvature(relaxed_radius, midpoint) < target_curvature) {
            lo = midpoint;
        } else {
            hi = midpoint;
        }
    }
    return 0.5 * (lo + hi);
}

BendState bend_state_at(const FreeGeometry& geom, double length) {
    const double curvature = curvature_at_length(geom, length);
    BendState state;
    state.central_arc_length = length;
    state.curvature = curvature;
    if (curvature == 0.0) {
        state.bend_radius = std::numeric_limits<double>::infinity();
        state.bend_angle = 0.0;
    } else {
        state.bend_radius = 1.0 / curvature;
        state.bend_angle = length * curvature;
    }
    return state;
}

}  // namespace freebend
