#include "freebend/assembly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

#include "freebend/errors.hpp"

namespace freebend {

namespace {

// sin/cos evaluated on |a| with the odd symmetry restored by negation. libm
// itself is not bitwise symmetric under argument negation; this keeps
// mirrored renders exactly reflected.
void sincos_sym(double a, double& s, double& c) {
    const double m = std::fabs(a);
    const double sm = std::sin(m);
    s = a < 0.0 ? -sm : sm;
    c = std::cos(m);
}

}  // namespace

SegmentSpec::SegmentSpec(std::string label, FreeGeometry geom, double inflation_fraction,
                         std::vector<SubArc> pattern)
    : label_(std::move(label)),
      geom_(geom),
      inflation_fraction_(inflation_fraction),
      pattern_(std::move(pattern)) {
    if (!(inflation_fraction_ >= 0.0) || !(inflation_fraction_ <= 1.0)) {
        throw ValidationError("segment '" + label_ + "': inflation fraction must be in [0, 1]");
    }
    if (pattern_.empty()) {
        throw ValidationError("segment '" + label_ + "': sign pattern must be nonempty");
    }
    double fraction_sum = 0.0;
    for (const SubArc& sub : pattern_) {
        if (sub.sign < -1 || sub.sign > 1) {
            throw ValidationError("segment '" + label_ + "': sub-arc sign must be -1, 0 or +1");
        }
        if (!(sub.fraction > 0.0)) {
            throw ValidationError("segment '" + label_ +
                                  "': sub-arc fractions must be strictly positive");
        }
        fraction_sum += sub.fraction;
    }
    if (std::fabs(fraction_sum - 1.0) > 1e-12) {
        throw ValidationError("segment '" + label_ + "': sub-arc fractions sum to " +
                              std::to_string(fraction_sum) + ", expected 1");
    }
}

double SegmentSpec::operating_length() const {
    const double lo = geom_.relaxed_length();
    const double hi = max_length(geom_);
    const double length = lo + inflation_fraction_ * (hi - lo);
    return std::clamp(length, lo, hi);
}

double SegmentSpec::operating_curvature() const {
    return curvature_at_length(geom_, operating_length());
}

Genus genus_from_string(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "atractus") return Genus::Atractus;
    if (lower == "micrurus") return Genus::Micrurus;
    if (lower == "oxyrhopus") return Genus::Oxyrhopus;
    if (lower == "custom") return Genus::Custom;
    throw ValidationError("unknown genus '" + name +
                          "'; valid tags: Atractus, Micrurus, Oxyrhopus, custom");
}

std::string to_string(Genus genus) {
    switch (genus) {
        case Genus::Atractus: return "Atractus";
        case Genus::Micrurus: return "Micrurus";
        case Genus::Oxyrhopus: return "Oxyrhopus";
        case Genus::Custom: return "custom";
    }
    return "custom";
}

double AssemblySpec::total_operating_length() const {
    double total = 0.0;
    for (const SegmentSpec& seg : segments) {
        total += seg.operating_length();
    }
    return total;
}

double inflation_for_sweep(const FreeGeometry& geom, double arc_fraction, double sweep) {
    if (!(arc_fraction > 0.0) || !(arc_fraction <= 1.0)) {
        throw ValidationError("signed arc fraction must lie in (0, 1]");
    }
    if (!(sweep > 0.0)) {
        throw ValidationError("sweep must be > 0");
    }
    const double lo = geom.relaxed_length();
    const double hi = max_length(geom);
    const auto sweep_at = [&](double length) {
        return curvature_at_length(geom, length) * arc_fraction * length;
    };
    const double attainable = sweep_at(hi);
    if (sweep > attainable) {
        throw InfeasibleError("sweep " + std::to_string(sweep) +
                                  " rad exceeds the attainable " + std::to_string(attainable) +
                                  " rad at full inflation",
                              attainable);
    }

    double a = lo;
    double b = hi;
    for (int i = 0; i < 200 && b - a > 1e-13 * hi; ++i) {
        const double mid = 0.5 * (a + b);
        if (sweep_at(mid) < sweep) {
            a = mid;
        } else {
            b = mid;
        }
    }
    const double length = 0.5 * (a + b);
    return std::clamp((length - lo) / (hi - lo), 0.0, 1.0);
}

namespace {

SegmentSpec straight_segment(const std::string& label, double relaxed_length,
                             const TemplateOptions& opt, double angle) {
    return SegmentSpec(label, FreeGeometry(relaxed_length, opt.relaxed_radius, angle), 0.0,
                       {{0, 1.0}});
}

SegmentSpec bending_segment(const std::string& label, double relaxed_length, double angle,
                            const TemplateOptions& opt, std::vector<SubArc> pattern,
                            double signed_fraction, double sweep) {
    FreeGeometry geom(relaxed_length, opt.relaxed_radius, angle);
    const double lambda = inflation_for_sweep(geom, signed_fraction, sweep);
    return SegmentSpec(label, geom, lambda, std::move(pattern));
}

SegmentSpec kinked_head(double relaxed_length, const TemplateOptions& opt) {
    const double kf = opt.kink_fraction;
    if (!(kf > 0.0) || !(kf < 1.0)) {
        throw ValidationError("kink fraction must lie in (0, 1)");
    }
    const double flank = 0.5 * (1.0 - kf);
    return bending_segment("head-kink", relaxed_length, opt.kink_angle, opt,
                           {{0, flank}, {+1, kf}, {0, flank}}, kf, opt.kink_sweep);
}

SegmentSpec s_mid(double relaxed_length, const TemplateOptions& opt) {
    const double flank = opt.mid_flank_fraction;
    if (!(flank >= 0.0) || !(flank < 0.5)) {
        throw ValidationError("mid flank fraction must lie in [0, 0.5)");
    }
    const double arc = 0.5 * (1.0 - 2.0 * flank);
    std::vector<SubArc> pattern;
    if (flank > 0.0) pattern.push_back({0, flank});
    pattern.push_back({+1, arc});
    pattern.push_back({-1, arc});
    if (flank > 0.0) pattern.push_back({0, flank});
    return bending_segment("mid-s", relaxed_length, opt.body_angle, opt, std::move(pattern),
                           arc, opt.mid_sweep);
}

SegmentSpec u_mid(double relaxed_length, const TemplateOptions& opt) {
    // Same tube as the S midsection with one long strain-limiting fiber
    // instead of two: one arc of twice the length and twice the total sweep.
    const double flank = opt.mid_flank_fraction;
    if (!(flank >= 0.0) || !(flank < 0.5)) {
        throw ValidationError("mid flank fraction must lie in [0, 0.5)");
    }
    const double arc = 1.0 - 2.0 * flank;
    std::vector<SubArc> pattern;
    if (flank > 0.0) pattern.push_back({0, flank});
    pattern.push_back({+1, arc});
    if (flank > 0.0) pattern.push_back({0, flank});
    return bending_segment("mid-u", relaxed_length, opt.body_angle, opt, std::move(pattern),
                           arc, 2.0 * opt.mid_sweep);
}

SegmentSpec coil_tail(double relaxed_length, const TemplateOptions& opt) {
    // Planar rendering caps the coil at one full turn.
    const double sweep = std::min(opt.coil_sweep, 2.0 * std::numbers::pi);
    return bending_segment("tail-coil", relaxed_length, opt.kink_angle, opt, {{+1, 1.0}}, 1.0,
                           sweep);
}

}  // namespace

AssemblySpec genus_template(Genus genus, const TemplateOptions& opt) {
    if (!(opt.total_relaxed_length > 0.0)) {
        throw ValidationError("total relaxed length must be > 0");
    }
    const double head_len = 0.25 * opt.total_relaxed_length;
    const double mid_len = 0.50 * opt.total_relaxed_length;
    const double tail_len = 0.25 * opt.total_relaxed_length;

    AssemblySpec spec;
    spec.genus = genus;
    switch (genus) {
        case Genus::Atractus:
            spec.segments.push_back(straight_segment("head-straight", head_len, opt,
                                                     opt.body_angle));
            spec.segments.push_back(opt.atractus_mid == MidsectionStyle::UCurve
                                        ? u_mid(mid_len, opt)
                                        : s_mid(mid_len, opt));
            spec.segments.push_back(coil_tail(tail_len, opt));
            break;
        case Genus::Micrurus:
            spec.segments.push_back(kinked_head(head_len, opt));
            spec.segments.push_back(s_mid(mid_len, opt));
            spec.segments.push_back(coil_tail(tail_len, opt));
            break;
        case Genus::Oxyrhopus:
            spec.segments.push_back(kinked_head(head_len, opt));
            spec.segments.push_back(s_mid(mid_len, opt));
            spec.segments.push_back(straight_segment("tail-straight", tail_len, opt,
                                                     opt.kink_angle));
            break;
        case Genus::Custom:
            throw ValidationError(
                "no built-in template for 'custom'; valid genera: Atractus, Micrurus, "
                "Oxyrhopus");
    }
    return spec;
}

double PlacedArc::end_heading() const { return start_heading + curvature * length; }

Vec2 PlacedArc::point_at(double s) const {
    double sh, ch;
    sincos_sym(start_heading, sh, ch);
    // Negligible total turn renders as straight; the arc form would divide
    // a fully cancelled sine difference by the tiny curvature.
    if (curvature == 0.0 || std::fabs(curvature) * length < 1e-8) {
        return {start.x + s * ch, start.y + s * sh};
    }
    const double turn = curvature * s;
    const double stm = std::sin(std::fabs(turn));
    const double st = turn < 0.0 ? -stm : stm;
    const double sh2 = std::sin(std::fabs(0.5 * turn));
    // Local frame: x along the start tangent, y toward the turn side.
    const double u = st / curvature;
    const double v = 2.0 * sh2 * sh2 / curvature;  // (1 - cos(turn)) / curvature, stable
    return {start.x + u * ch - v * sh, start.y + u * sh + v * ch};
}

Vec2 PlacedArc::end_point() const { return point_at(length); }

std::vector<PlacedArc> plan_arcs(const AssemblySpec& spec) {
    if (spec.segments.empty()) {
        throw ValidationError("assembly needs at least one segment");
    }
    std::vector<PlacedArc> arcs;
    Vec2 position{0.0, 0.0};
    double heading = 0.0;
    for (std::size_t i = 0; i < spec.segments.size(); ++i) {
        const SegmentSpec& seg = spec.segments[i];
        const double op_len = seg.operating_length();
        const double curvature = seg.operating_curvature();
        for (const SubArc& sub : seg.pattern()) {
            PlacedArc arc;
            arc.start = position;
            arc.start_heading = heading;
            arc.curvature = static_cast<double>(sub.sign) * curvature;
            arc.length = sub.fraction * op_len;
            arc.segment_index = i;
            position = arc.end_point();
            heading = arc.end_heading();
            arcs.push_back(arc);
        }
    }
    return arcs;
}

Centerline render_centerline(const AssemblySpec& spec, int samples_per_segment) {
    if (samples_per_segment < 2) {
        throw ValidationError("samples_per_segment must be >= 2");
    }
    const std::vector<PlacedArc> arcs = plan_arcs(spec);

    std::vector<Vec2> points;
    points.push_back(arcs.front().start);
    std::size_t begin = 0;
    while (begin < arcs.size()) {
        std::size_t end = begin;
        while (end < arcs.size() && arcs[end].segment_index == arcs[begin].segment_index) {
            ++end;
        }
        // Proportional interval allocation by cumulative rounding, at least
        // one interval per sub-arc.
        const int total_intervals = samples_per_segment - 1;
        double seg_length = 0.0;
        for (std::size_t j = begin; j < end; ++j) seg_length += arcs[j].length;
        double cum = 0.0;
        int assigned = 0;
        for (std::size_t j = begin; j < end; ++j) {
            cum += arcs[j].length;
            int upto = (j + 1 == end) ? total_intervals
                                      : static_cast<int>(std::llround(cum / seg_length *
                                                                      total_intervals));
            int intervals = std::max(1, upto - assigned);
            assigned += intervals;
            const PlacedArc& arc = arcs[j];
            for (int k = 1; k <= intervals; ++k) {
                points.push_back(arc.point_at(static_cast<double>(k) * arc.length /
                                              static_cast<double>(intervals)));
            }
        }
        begin = end;
    }
    return Centerline(std::move(points), Unit::Meters);
}

}  // namespace freebend
