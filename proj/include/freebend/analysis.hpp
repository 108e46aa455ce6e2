#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "freebend/geometry.hpp"

namespace freebend {

// 3x3 projective map, row-major, normalized so m[8] == 1.
struct Homography {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    // Maps a single point; throws ValidationError when the homogeneous w
    // component vanishes.
    Vec2 apply(Vec2 p) const;
    Homography inverse() const;
};

// Least-squares projective map from >= 4 point correspondences (normalized
// direct linear transform). Exact for 4 correspondences in general position;
// throws ValidationError on rank-deficient (degenerate) configurations.
Homography estimate_homography(const std::vector<Vec2>& src, const std::vector<Vec2>& dst);

// Maps every point of the line; an error names the index of any point that
// lands on the line at infinity.
Centerline apply_homography(const Homography& h, const Centerline& line);

// n points at uniform arc-length spacing along the polyline. First and last
// input points are preserved exactly.
Centerline resample_uniform(const Centerline& line, int n = 500);

// Centered moving-average smoothing of the coordinates. An even span is
// rounded up to odd; windows shrink symmetrically toward the ends, so the
// endpoints pass through unchanged. Requires at least 3 points.
Centerline smooth_moving_average(const Centerline& line, int span = 30);

// Curvature versus arc-length fraction for one trial. Values are the
// reciprocal of the circumradius normalized by total centerline length
// (dimensionless); the first and last `offset` grid points carry no value.
struct CurvatureProfile {
    std::vector<double> arc_fraction;  // i / (n - 1)
    std::vector<double> curvature;     // >= 0; 0 where masked
    std::vector<bool> valid;

    std::size_t size() const { return arc_fraction.size(); }
};

// Circumscribed-circle curvature estimate: for each interior point, the
// circle through it and its offset-th neighbors to either side. Collinear
// triples yield curvature 0; duplicate vertices in a triple are an error
// naming the center index.
CurvatureProfile curvature_profile(const Centerline& line, int offset = 10);

}  // namespace freebend
