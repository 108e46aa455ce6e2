#include "freebend/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "freebend/errors.hpp"

namespace freebend {

namespace {

constexpr double kVanishingW = 1e-12;

Vec2 map_point(const std::array<double, 9>& m, Vec2 p, std::size_t index) {
    const double w = m[6] * p.x + m[7] * p.y + m[8];
    if (std::fabs(w) <= kVanishingW) {
        throw ValidationError("point at index " + std::to_string(index) +
                              " maps to the line at infinity (w = " + std::to_string(w) + ")");
    }
    return {(m[0] * p.x + m[1] * p.y + m[2]) / w, (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

// Hartley conditioning: centroid to the origin, mean distance sqrt(2).
Eigen::Matrix3d normalizing_transform(const std::vector<Vec2>& pts) {
    double cx = 0.0, cy = 0.0;
    for (const Vec2& p : pts) {
        cx += p.x;
        cy += p.y;
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    double mean_dist = 0.0;
    for (const Vec2& p : pts) {
        mean_dist += std::hypot(p.x - cx, p.y - cy);
    }
    mean_dist /= static_cast<double>(pts.size());
    if (!(mean_dist > 0.0)) {
        throw ValidationError("degenerate correspondence set: all points coincide");
    }
    const double scale = std::sqrt(2.0) / mean_dist;
    Eigen::Matrix3d t;
    t << scale, 0.0, -scale * cx, 0.0, scale, -scale * cy, 0.0, 0.0, 1.0;
    return t;
}

}  // namespace

Vec2 Homography::apply(Vec2 p) const { return map_point(m, p, 0); }

Homography Homography::inverse() const {
    Eigen::Matrix3d h;
    h << m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8];
    const double det = h.determinant();
    if (std::fabs(det) <= 1e-12) {
        throw NumericError("homography is numerically singular (det = " + std::to_string(det) +
                           ")");
    }
    Eigen::Matrix3d inv = h.inverse();
    if (std::fabs(inv(2, 2)) <= kVanishingW) {
        throw NumericError("inverse homography cannot be normalized");
    }
    inv /= inv(2, 2);
    Homography out;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out.m[static_cast<std::size_t>(3 * r + c)] = inv(r, c);
        }
    }
    return out;
}

Homography estimate_homography(const std::vector<Vec2>& src, const std::vector<Vec2>& dst) {
    if (src.size() < 4) {
        throw ValidationError("homography estimation needs at least 4 correspondences, got " +
                              std::to_string(src.size()));
    }
    if (src.size() != dst.size()) {
        throw ValidationError("src and dst correspondence counts differ");
    }

    const Eigen::Matrix3d t_src = normalizing_transform(src);
    const Eigen::Matrix3d t_dst = normalizing_transform(dst);

    const auto n = static_cast<Eigen::Index>(src.size());
    Eigen::MatrixXd a(2 * n, 9);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& s = src[static_cast<std::size_t>(i)];
        const auto& d = dst[static_cast<std::size_t>(i)];
        const double x = t_src(0, 0) * s.x + t_src(0, 2);
        const double y = t_src(1, 1) * s.y + t_src(1, 2);
        const double u = t_dst(0, 0) * d.x + t_dst(0, 2);
        const double v = t_dst(1, 1) * d.y + t_dst(1, 2);
        a.row(2 * i) << -x, -y, -1.0, 0.0, 0.0, 0.0, u * x, u * y, u;
        a.row(2 * i + 1) << 0.0, 0.0, 0.0, -x, -y, -1.0, v * x, v * y, v;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // A homography has 8 degrees of freedom; a second vanishing singular
    // value means the correspondences do not pin one down.
    if (sv(7) <= 1e-9 * sv(0)) {
        throw ValidationError(
            "degenerate correspondence configuration (rank-deficient system); "
            "check for collinear points");
    }
    const Eigen::VectorXd h = svd.matrixV().col(8);
    Eigen::Matrix3d hn;
    hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);

    Eigen::Matrix3d full = t_dst.inverse() * hn * t_src;
    if (std::fabs(full(2, 2)) <= kVanishingW * full.cwiseAbs().maxCoeff()) {
        throw ValidationError("estimated homography cannot be normalized (h33 ~ 0)");
    }
    full /= full(2, 2);
    if (std::fabs(full.determinant()) <= 1e-12) {
        throw ValidationError("estimated homography is singular");
    }

    Homography out;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out.m[static_cast<std::size_t>(3 * r + c)] = full(r, c);
        }
    }
    return out;
}

Centerline apply_homography(const Homography& h, const Centerline& line) {
    std::vector<Vec2> mapped;
    mapped.reserve(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
        mapped.push_back(map_point(h.m, line.points()[i], i));
    }
    return Centerline(std::move(mapped), line.unit());
}

Centerline resample_uniform(const Centerline& line, int n) {
    if (n < 2) {
        throw ValidationError("resampling needs n >= 2, got " + std::to_string(n));
    }
    const std::vector<Vec2>& pts = line.points();
    const std::vector<double> cum = cumulative_lengths(pts);
    const double total = cum.back();
    if (!(total > 0.0)) {
        throw ValidationError("cannot resample a zero-length centerline");
    }

    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n));
    out.push_back(pts.front());
    std::size_t seg = 0;
    for (int i = 1; i + 1 < n; ++i) {
        const double target = total * static_cast<double>(i) / static_cast<double>(n - 1);
        while (seg + 2 < pts.size() && cum[seg + 1] < target) {
            ++seg;
        }
        const double seg_len = cum[seg + 1] - cum[seg];
        const double t = std::clamp((target - cum[seg]) / seg_len, 0.0, 1.0);
        out.push_back(pts[seg] + t * (pts[seg + 1] - pts[seg]));
    }
    out.push_back(pts.back());
    return Centerline(std::move(out), line.unit());
}

Centerline smooth_moving_average(const Centerline& line, int span) {
    if (span < 1) {
        throw ValidationError("smoothing span must be >= 1, got " + std::to_string(span));
    }
    const std::vector<Vec2>& pts = line.points();
    const int n = static_cast<int>(pts.size());
    if (n < 3) {
        throw ValidationError("smoothing needs at least 3 points, got " + std::to_string(n));
    }
    const int odd_span = (span % 2 == 0) ? span + 1 : span;
    const int half = odd_span / 2;

    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (int i = 0; i < n; ++i) {
        const int radius = std::min({half, i, n - 1 - i});
        if (radius == 0) {
            out.push_back(pts[static_cast<std::size_t>(i)]);
            continue;
        }
        double sx = 0.0, sy = 0.0;
        for (int j = i - radius; j <= i + radius; ++j) {
            sx += pts[static_cast<std::size_t>(j)].x;
            sy += pts[static_cast<std::size_t>(j)].y;
        }
        const double count = static_cast<double>(2 * radius + 1);
        out.push_back({sx / count, sy / count});
    }
    return Centerline(std::move(out), line.unit());
}

namespace {

// Chord lengths summed in sorted order, so a reversed point sequence yields
// the bit-identical total.
double canonical_total_length(const std::vector<Vec2>& pts) {
    std::vector<double> lengths;
    lengths.reserve(pts.size() - 1);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        lengths.push_back(dist(pts[i - 1], pts[i]));
    }
    std::sort(lengths.begin(), lengths.end());
    return std::accumulate(lengths.begin(), lengths.end(), 0.0);
}

// Circumradius through three distinct points, evaluated after sorting the
// vertices so any permutation of the same triple computes identically.
// Returns +infinity for collinear triples.
double circumradius(Vec2 a, Vec2 b, Vec2 c) {
    std::array<Vec2, 3> v{a, b, c};
    std::sort(v.begin(), v.end(),
              [](Vec2 p, Vec2 q) { return p.x < q.x || (p.x == q.x && p.y < q.y); });
    const double area2 = cross(v[1] - v[0], v[2] - v[0]);  // twice the signed area
    if (area2 == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double la = dist(v[0], v[1]);
    const double lb = dist(v[1], v[2]);
    const double lc = dist(v[2], v[0]);
    return la * lb * lc / (2.0 * std::fabs(area2));
}

}  // namespace

CurvatureProfile curvature_profile(const Centerline& line, int offset) {
    if (offset < 1) {
        throw ValidationError("profile offset must be >= 1, got " + std::to_string(offset));
    }
    const std::vector<Vec2>& pts = line.points();
    const int n = static_cast<int>(pts.size());
    if (n < 2 * offset + 1) {
        throw ValidationError("profile needs more than 2*offset points, got " +
                              std::to_string(n) + " with offset " + std::to_string(offset));
    }

    const double total = canonical_total_length(pts);

    CurvatureProfile profile;
    profile.arc_fraction.resize(static_cast<std::size_t>(n));
    profile.curvature.assign(static_cast<std::size_t>(n), 0.0);
    profile.valid.assign(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        profile.arc_fraction[static_cast<std::size_t>(i)] =
            static_cast<double>(i) / static_cast<double>(n - 1);
    }
    for (int i = offset; i <= n - 1 - offset; ++i) {
        const Vec2 left = pts[static_cast<std::size_t>(i - offset)];
        const Vec2 center = pts[static_cast<std::size_t>(i)];
        const Vec2 right = pts[static_cast<std::size_t>(i + offset)];
        if (left == center || center == right || left == right) {
            throw ValidationError("duplicate vertices in the curvature triple at index " +
                                  std::to_string(i));
        }
        const double radius = circumradius(left, center, right);
        profile.curvature[static_cast<std::size_t>(i)] =
            std::isinf(radius) ? 0.0 : total / radius;
        profile.valid[static_cast<std::size_t>(i)] = true;
    }
    return profile;
}

}  // namespace freebend
