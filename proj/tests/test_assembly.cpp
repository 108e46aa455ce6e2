#include <doctest.h>

#include <cmath>
#include <numbers>

#include "freebend/assembly.hpp"

using namespace freebend;

namespace {

constexpr double kPi = std::numbers::pi;

double deg(double d) { return d * kPi / 180.0; }

bool all_zero_signs(const SegmentSpec& seg) {
    for (const SubArc& sub : seg.pattern()) {
        if (sub.sign != 0) return false;
    }
    return true;
}

bool has_signed_arc(const SegmentSpec& seg) {
    for (const SubArc& sub : seg.pattern()) {
        if (sub.sign != 0) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("segment spec validation") {
    FreeGeometry geom(0.1, 0.00475, deg(67.5));
    CHECK_THROWS_AS(SegmentSpec("bad", geom, -0.1, {{0, 1.0}}), ValidationError);
    CHECK_THROWS_AS(SegmentSpec("bad", geom, 1.1, {{0, 1.0}}), ValidationError);
    CHECK_THROWS_AS(SegmentSpec("bad", geom, 0.5, {}), ValidationError);
    CHECK_THROWS_AS(SegmentSpec("bad", geom, 0.5, {{2, 1.0}}), ValidationError);
    CHECK_THROWS_AS(SegmentSpec("bad", geom, 0.5, {{0, 0.5}, {1, 0.4}}), ValidationError);
    CHECK_THROWS_AS(SegmentSpec("bad", geom, 0.5, {{0, 0.5}, {1, 0.0}}), ValidationError);
    CHECK_NOTHROW(SegmentSpec("ok", geom, 0.5, {{0, 0.25}, {1, 0.5}, {-1, 0.25}}));
}

TEST_CASE("operating length interpolates between relaxed and maximum") {
    FreeGeometry geom(0.1, 0.00475, deg(67.5));
    SegmentSpec relaxed("a", geom, 0.0, {{0, 1.0}});
    SegmentSpec full("b", geom, 1.0, {{1, 1.0}});
    SegmentSpec half("c", geom, 0.5, {{1, 1.0}});
    CHECK(relaxed.operating_length() == 0.1);
    CHECK(full.operating_length() == doctest::Approx(max_length(geom)).epsilon(1e-15));
    CHECK(half.operating_length() ==
          doctest::Approx(0.5 * (0.1 + max_length(geom))).epsilon(1e-15));
    CHECK(relaxed.operating_curvature() == 0.0);
    CHECK(full.operating_curvature() == doctest::Approx(max_curvature(geom)).epsilon(1e-12));
}

TEST_CASE("genus tags") {
    CHECK(genus_from_string("Micrurus") == Genus::Micrurus);
    CHECK(genus_from_string("atractus") == Genus::Atractus);
    CHECK(genus_from_string("OXYRHOPUS") == Genus::Oxyrhopus);
    CHECK(genus_from_string("custom") == Genus::Custom);
    CHECK_THROWS_WITH_AS(genus_from_string("Python"),
                         doctest::Contains("Atractus, Micrurus, Oxyrhopus"), ValidationError);
}

TEST_CASE("genus templates follow the head/mid/tail shape table") {
    const AssemblySpec atractus = genus_template(Genus::Atractus);
    const AssemblySpec micrurus = genus_template(Genus::Micrurus);
    const AssemblySpec oxyrhopus = genus_template(Genus::Oxyrhopus);

    REQUIRE(atractus.segments.size() == 3);
    REQUIRE(micrurus.segments.size() == 3);
    REQUIRE(oxyrhopus.segments.size() == 3);

    SUBCASE("Atractus: straight head, curved mid, coiled tail") {
        CHECK(all_zero_signs(atractus.segments[0]));
        CHECK(has_signed_arc(atractus.segments[1]));
        CHECK(has_signed_arc(atractus.segments[2]));
    }
    SUBCASE("Micrurus: kinked head, S mid, coiled tail") {
        CHECK(has_signed_arc(micrurus.segments[0]));
        CHECK(has_signed_arc(micrurus.segments[2]));
    }
    SUBCASE("Oxyrhopus: kinked head, S mid, straight tail") {
        CHECK(has_signed_arc(oxyrhopus.segments[0]));
        CHECK(all_zero_signs(oxyrhopus.segments[2]));
    }
    SUBCASE("angle rules: 67.5 deg body, 89 deg kinks and tails") {
        CHECK(atractus.segments[0].geom().fiber_angle() == doctest::Approx(deg(67.5)));
        CHECK(micrurus.segments[0].geom().fiber_angle() == doctest::Approx(deg(89.0)));
        CHECK(micrurus.segments[1].geom().fiber_angle() == doctest::Approx(deg(67.5)));
        CHECK(micrurus.segments[2].geom().fiber_angle() == doctest::Approx(deg(89.0)));
        CHECK(oxyrhopus.segments[2].geom().fiber_angle() == doctest::Approx(deg(89.0)));
    }
    SUBCASE("relaxed lengths split 25:50:25") {
        for (const auto* spec : {&atractus, &micrurus, &oxyrhopus}) {
            CHECK(spec->segments[0].geom().relaxed_length() == doctest::Approx(0.1));
            CHECK(spec->segments[1].geom().relaxed_length() == doctest::Approx(0.2));
            CHECK(spec->segments[2].geom().relaxed_length() == doctest::Approx(0.1));
        }
    }
    SUBCASE("Atractus midsection style is configurable") {
        TemplateOptions opt;
        opt.atractus_mid = MidsectionStyle::SCurve;
        const AssemblySpec s_variant = genus_template(Genus::Atractus, opt);
        CHECK(s_variant.segments[1].pattern().size() == 4);
        CHECK(atractus.segments[1].pattern().size() == 3);
    }
    SUBCASE("no template for custom") {
        CHECK_THROWS_AS(genus_template(Genus::Custom), ValidationError);
    }
}

TEST_CASE("inflation_for_sweep") {
    FreeGeometry geom(0.1, 0.00475, deg(89.0));

    SUBCASE("round-trips the requested sweep") {
        for (double sweep : {0.1, 0.5, kPi / 2.0, 2.0 * kPi}) {
            const double lambda = inflation_for_sweep(geom, 0.3, sweep);
            SegmentSpec seg("s", geom, lambda, {{0, 0.35}, {1, 0.3}, {0, 0.35}});
            const double achieved =
                seg.operating_curvature() * 0.3 * seg.operating_length();
            CHECK(achieved == doctest::Approx(sweep).epsilon(1e-9));
        }
    }
    SUBCASE("unreachable sweep reports the attainable bound") {
        const double attainable = max_curvature(geom) * 0.3 * max_length(geom);
        try {
            inflation_for_sweep(geom, 0.3, attainable * 1.01);
            FAIL("expected InfeasibleError");
        } catch (const InfeasibleError& e) {
            CHECK(e.attainable_bound == doctest::Approx(attainable).epsilon(1e-12));
        }
    }
}

TEST_CASE("plan_arcs shares poses at every junction") {
    const AssemblySpec spec = genus_template(Genus::Micrurus);
    const auto arcs = plan_arcs(spec);
    REQUIRE(arcs.size() == 8);  // 3 + 4 + 1 sub-arcs
    for (std::size_t i = 1; i < arcs.size(); ++i) {
        const Vec2 end = arcs[i - 1].end_point();
        CHECK(arcs[i].start.x == end.x);
        CHECK(arcs[i].start.y == end.y);
        // Tangent continuity at the joint.
        CHECK(std::fabs(arcs[i].start_heading - arcs[i - 1].end_heading()) <= 1e-9);
    }
    double total = 0.0;
    for (const auto& arc : arcs) total += arc.length;
    CHECK(total == doctest::Approx(spec.total_operating_length()).epsilon(1e-12));
}

TEST_CASE("render_centerline") {
    FreeGeometry geom(0.05, 0.00475, deg(67.5));

    SUBCASE("relaxed single segment renders a straight line of length L0") {
        AssemblySpec spec;
        spec.segments.push_back(SegmentSpec("straight", geom, 0.0, {{0, 1.0}}));
        const Centerline line = render_centerline(spec, 100);
        CHECK(line.size() == 100);
        for (const Vec2& p : line.points()) {
            CHECK(p.y == 0.0);
        }
        CHECK(line.points().back().x == doctest::Approx(0.05).epsilon(1e-12));
        CHECK(line.total_length() == doctest::Approx(0.05).epsilon(1e-12));
    }

    SUBCASE("fully inflated signed segment lies on the analytic circle") {
        AssemblySpec spec;
        spec.segments.push_back(SegmentSpec("arc", geom, 1.0, {{1, 1.0}}));
        const double curvature = max_curvature(geom);
        const double radius = 1.0 / curvature;
        const Centerline line = render_centerline(spec, 2000);
        for (const Vec2& p : line.points()) {
            const double r = std::hypot(p.x, p.y - radius);
            CHECK(std::fabs(r - radius) <= 1e-9 * radius);
        }
    }

    SUBCASE("equal and opposite halves cancel the final tangent") {
        AssemblySpec spec;
        spec.segments.push_back(SegmentSpec("s", geom, 1.0, {{1, 0.5}, {-1, 0.5}}));
        const auto arcs = plan_arcs(spec);
        CHECK(std::fabs(arcs.back().end_heading()) <= 1e-12);
    }

    SUBCASE("chord length converges to the operating length") {
        const AssemblySpec spec = genus_template(Genus::Micrurus);
        const double target = spec.total_operating_length();
        const Centerline dense = render_centerline(spec, 10000);
        CHECK(std::fabs(dense.total_length() - target) / target <= 1e-6);
        const Centerline coarse = render_centerline(spec, 500);
        const double coarse_err = std::fabs(coarse.total_length() - target) / target;
        const double dense_err = std::fabs(dense.total_length() - target) / target;
        CHECK(dense_err < coarse_err);
    }

    SUBCASE("chord direction jumps at joints stay within the discretization bound") {
        const AssemblySpec spec = genus_template(Genus::Micrurus);
        const int samples = 400;
        const Centerline line = render_centerline(spec, samples);
        const auto& pts = line.points();
        double max_curv = 0.0;
        double max_len = 0.0;
        for (const auto& seg : spec.segments) {
            max_curv = std::max(max_curv, seg.operating_curvature());
            max_len = std::max(max_len, seg.operating_length());
        }
        const double step_bound = 2.0 * max_curv * max_len / (samples - 1);
        for (std::size_t i = 2; i < pts.size(); ++i) {
            const Vec2 a = pts[i - 1] - pts[i - 2];
            const Vec2 b = pts[i] - pts[i - 1];
            const double angle =
                std::fabs(std::atan2(cross(a, b), a.x * b.x + a.y * b.y));
            CHECK(angle <= step_bound);
        }
    }

    SUBCASE("mirroring every sign reflects the centerline exactly") {
        const AssemblySpec spec = genus_template(Genus::Micrurus);
        AssemblySpec mirrored;
        mirrored.genus = spec.genus;
        for (const SegmentSpec& seg : spec.segments) {
            std::vector<SubArc> flipped;
            for (const SubArc& sub : seg.pattern()) {
                flipped.push_back({-sub.sign, sub.fraction});
            }
            mirrored.segments.push_back(SegmentSpec(seg.label(), seg.geom(),
                                                    seg.inflation_fraction(), flipped));
        }
        const Centerline a = render_centerline(spec, 777);
        const Centerline b = render_centerline(mirrored, 777);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a.points()[i].x == b.points()[i].x);
            CHECK(a.points()[i].y == -b.points()[i].y);
        }
    }

    SUBCASE("sample count validation") {
        AssemblySpec spec;
        spec.segments.push_back(SegmentSpec("s", geom, 0.0, {{0, 1.0}}));
        CHECK_THROWS_AS(render_centerline(spec, 1), ValidationError);
        CHECK_THROWS_AS(plan_arcs(AssemblySpec{}), ValidationError);
    }
}
