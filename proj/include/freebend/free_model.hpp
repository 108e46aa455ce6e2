#pragma once

#include "freebend/errors.hpp"

namespace freebend {

// Fiber angle at which a pressurized FREE neither extends nor contracts,
// arctan(sqrt 2). Extending-type FREEs have relaxed fiber angles above it.
double neutral_angle();

// Relaxed parameters of an ideal cylindrical extending-type FREE. Lengths in
// meters, angles in radians. Derived quantities: fiber_length is the length
// of one reinforcement fiber, turn_count the number of revolutions it makes
// around the tube.
class FreeGeometry {
public:
    FreeGeometry(double relaxed_length, double relaxed_radius, double fiber_angle);

    double relaxed_length() const { return relaxed_length_; }
    double relaxed_radius() const { return relaxed_radius_; }
    double fiber_angle() const { return fiber_angle_; }
    double fiber_length() const { return fiber_length_; }
    double turn_count() const { return turn_count_; }

private:
    double relaxed_length_;
    double relaxed_radius_;
    double fiber_angle_;
    double fiber_length_;
    double turn_count_;
};

// Inflated configuration of one bending segment. bend_radius is +infinity and
// bend_angle and curvature are 0 in the straight (relaxed-length) state.
struct BendState {
    double central_arc_length;  // meters
    double bend_radius;         // meters
    double bend_angle;          // radians
    double curvature;           // 1/meters
};

// Tube radius once the central axis has extended to `length`. Valid for
// relaxed_length <= length < fiber_length.
double radius_at_length(const FreeGeometry& geom, double length);

// Central-axis length at which the fibers reach the neutral angle; no further
// extension is possible beyond it.
double max_length(const FreeGeometry& geom);

// Bending curvature of a strain-limited segment whose central axis has
// extended to `length`. Zero at relaxed_length, increasing up to max_length.
double curvature_at_length(const FreeGeometry& geom, double length);

// Curvature at full extension, as a function of the relaxed radius and fiber
// angle alone. Accepts the closed boundary fiber_angle == neutral_angle()
// (where it is exactly zero), unlike FreeGeometry construction.
double max_curvature(double relaxed_radius, double fiber_angle);
double max_curvature(const FreeGeometry& geom);

enum class ZeroTargetPolicy {
    Reject,        // target must be strictly positive
    NeutralAngle,  // target of exactly zero returns the neutral angle
};

// Fiber angle whose max_curvature equals target_curvature at the given
// relaxed radius, found by bisection on the monotone angle-curvature map.
// Throws InfeasibleError (with the attainable supremum) for unreachable
// targets.
double solve_fiber_angle(double target_curvature, double relaxed_radius,
                         ZeroTargetPolicy policy = ZeroTargetPolicy::Reject);

// Full bend state (arc length, bend radius, bend angle, curvature) at the
// given central-axis length.
BendState bend_state_at(const FreeGeometry& geom, double length);

}  // namespace freebend
