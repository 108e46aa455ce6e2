#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "freebend/free_model.hpp"
#include "freebend/geometry.hpp"

namespace freebend {

// One constant-sign piece of a segment's strain-limiting fiber layout.
// sign +1/-1 selects the bending side, 0 means no strain-limiting fiber
// (the piece stays straight). fraction is the share of the segment's arc
// length, > 0; fractions of a pattern sum to 1.
struct SubArc {
    int sign = 0;
    double fraction = 1.0;
};

// One bending segment: its relaxed geometry, how far it is inflated toward
// max_length, and the sub-arc sign pattern along its length.
class SegmentSpec {
public:
    SegmentSpec(std::string label, FreeGeometry geom, double inflation_fraction,
                std::vector<SubArc> pattern);

    const std::string& label() const { return label_; }
    const FreeGeometry& geom() const { return geom_; }
    double inflation_fraction() const { return inflation_fraction_; }
    const std::vector<SubArc>& pattern() const { return pattern_; }

    // L0 + lambda * (Lmax - L0)
    double operating_length() const;
    // Unsigned curvature of the signed sub-arcs at the operating length.
    double operating_curvature() const;

private:
    std::string label_;
    FreeGeometry geom_;
    double inflation_fraction_;
    std::vector<SubArc> pattern_;
};

enum class Genus { Atractus, Micrurus, Oxyrhopus, Custom };

// Throws ValidationError listing the valid tags for unknown names.
Genus genus_from_string(const std::string& name);
std::string to_string(Genus genus);

// Ordered head-to-tail list of segments realizing one robot.
struct AssemblySpec {
    Genus genus = Genus::Custom;
    std::vector<SegmentSpec> segments;

    double total_operating_length() const;
};

enum class MidsectionStyle { UCurve, SCurve };

// Knobs of the built-in genus templates. Relaxed segment lengths split the
// total 25:50:25 head:mid:tail. Sweep angles are the turn of one signed
// sub-arc; the inflation fraction of each bending segment is solved so that
// its signed sub-arcs turn by exactly that much.
struct TemplateOptions {
    double total_relaxed_length = 0.4;  // meters
    double relaxed_radius = 0.00475;    // meters
    // 67.5 deg for straight heads and body curves, 89 deg for kinks and tails
    double body_angle = 67.5 * std::numbers::pi / 180.0;
    double kink_angle = 89.0 * std::numbers::pi / 180.0;
    double kink_fraction = 0.3;  // share of the head occupied by the kink arc
    double kink_sweep = std::numbers::pi / 2.0;
    double mid_sweep = std::numbers::pi / 2.0;  // per signed midsection arc
    // Straight lead-in/lead-out at each end of the midsection, keeping its
    // curves clear of the segment joints.
    double mid_flank_fraction = 0.1;
    double coil_sweep = 2.0 * std::numbers::pi;  // clamped to at most 2*pi
    MidsectionStyle atractus_mid = MidsectionStyle::UCurve;
};

// Head/midsection/tail shape combination for one genus:
//   Atractus  = straight head, U- or S-curve midsection, coiled tail
//   Micrurus  = kinked head,   S-curve midsection,       coiled tail
//   Oxyrhopus = kinked head,   S-curve midsection,       straight tail
AssemblySpec genus_template(Genus genus, const TemplateOptions& opt = {});

// Inflation fraction at which a signed sub-arc covering `arc_fraction` of the
// segment turns by `sweep` radians. Throws InfeasibleError (with the
// attainable sweep) when the target exceeds what full inflation reaches.
double inflation_for_sweep(const FreeGeometry& geom, double arc_fraction, double sweep);

// Constant-curvature piece placed in the plane. Consecutive arcs of a plan
// share poses: each arc starts exactly where the previous one ends, with the
// same tangent heading.
struct PlacedArc {
    Vec2 start;
    double start_heading;  // radians, tangent direction at start
    double curvature;      // signed, 0 = straight
    double length;         // arc length, > 0
    std::size_t segment_index;

    double end_heading() const;
    Vec2 end_point() const;
    // Point after arc length s in [0, length], measured from start.
    Vec2 point_at(double s) const;
};

// Piecewise-constant-curvature plan of the assembly, head at the origin
// heading +x. One PlacedArc per sub-arc of every segment.
std::vector<PlacedArc> plan_arcs(const AssemblySpec& spec);

// Sample the planned arcs into a polyline. samples_per_segment >= 2 points
// per segment; joints are shared, not duplicated.
Centerline render_centerline(const AssemblySpec& spec, int samples_per_segment);

}  // namespace freebend
