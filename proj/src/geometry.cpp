#include "freebend/geometry.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "freebend/errors.hpp"

namespace freebend {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

Centerline::Centerline(std::vector<Vec2> points, Unit unit)
    : points_(std::move(points)), unit_(unit) {
    if (points_.size() < 2) {
        throw ValidationError("centerline needs at least 2 points, got " +
                              std::to_string(points_.size()));
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (points_[i] == points_[i - 1]) {
            throw ValidationError("centerline has consecutive duplicate points at index " +
                                  std::to_string(i));
        }
    }
}

double Centerline::total_length() const {
    double total = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        total += dist(points_[i - 1], points_[i]);
    }
    return total;
}

std::vector<double> cumulative_lengths(const std::vector<Vec2>& pts) {
    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        cum[i] = cum[i - 1] + dist(pts[i - 1], pts[i]);
    }
    return cum;
}

}  // namespace freebend
