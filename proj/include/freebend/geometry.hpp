#pragma once

#include <cstddef>
#include <vector>

namespace freebend {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Vec2 a, Vec2 b) { return !(a == b); }

double norm(Vec2 v);
double dist(Vec2 a, Vec2 b);
// z-component of the 3D cross product of (a, 0) and (b, 0).
double cross(Vec2 a, Vec2 b);

enum class Unit { Meters, Pixels };

// Ordered planar point sequence, head first. Consecutive duplicate points are
// rejected at construction, so every chord has positive length.
class Centerline {
public:
    Centerline(std::vector<Vec2> points, Unit unit);

    const std::vector<Vec2>& points() const { return points_; }
    Unit unit() const { return unit_; }
    std::size_t size() const { return points_.size(); }

    // Cumulative chord length of the polyline.
    double total_length() const;

private:
    std::vector<Vec2> points_;
    Unit unit_;
};

// cum[0] = 0, cum[i] = length of the polyline up to point i.
std::vector<double> cumulative_lengths(const std::vector<Vec2>& pts);

}  // namespace freebend
