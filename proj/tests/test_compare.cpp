#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "freebend/compare.hpp"
#include "freebend/errors.hpp"

using namespace freebend;

namespace {

CurvatureProfile flat_profile(int n, int offset, double value) {
    CurvatureProfile p;
    for (int i = 0; i < n; ++i) {
        p.arc_fraction.push_back(static_cast<double>(i) / (n - 1));
        const bool valid = i >= offset && i <= n - 1 - offset;
        p.valid.push_back(valid);
        p.curvature.push_back(valid ? value : 0.0);
    }
    return p;
}

ProfileStats stats_of(std::vector<double> means, std::vector<double> stds) {
    ProfileStats s;
    const int n = static_cast<int>(means.size());
    for (int i = 0; i < n; ++i) {
        s.arc_fraction.push_back(static_cast<double>(i) / (n - 1));
        s.valid.push_back(true);
    }
    s.mean = std::move(means);
    s.stddev = std::move(stds);
    s.trial_count = 1;
    return s;
}

}  // namespace

TEST_CASE("aggregate") {
    SUBCASE("a single profile is its own mean with zero spread") {
        const CurvatureProfile p = flat_profile(500, 10, 3.25);
        const ProfileStats s = aggregate({p});
        CHECK(s.trial_count == 1);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s.mean[i] == p.curvature[i]);
            CHECK(s.stddev[i] == 0.0);
            CHECK(s.valid[i] == p.valid[i]);
        }
    }
    SUBCASE("identical trials have zero spread") {
        const CurvatureProfile p = flat_profile(100, 10, 1.5);
        const ProfileStats s = aggregate({p, p});
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.valid[i]) CHECK(s.stddev[i] == 0.0);
        }
    }
    SUBCASE("two-trial arithmetic under the population convention") {
        const double a = 2.0, b = 5.0;
        const ProfileStats s =
            aggregate({flat_profile(50, 5, a), flat_profile(50, 5, b)});
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!s.valid[i]) continue;
            CHECK(s.mean[i] == doctest::Approx((a + b) / 2.0).epsilon(1e-15));
            CHECK(s.stddev[i] == doctest::Approx(std::fabs(a - b) / 2.0).epsilon(1e-15));
        }
    }
    SUBCASE("sample convention divides by n - 1") {
        const ProfileStats s = aggregate(
            {flat_profile(50, 5, 2.0), flat_profile(50, 5, 5.0)}, StdConvention::Sample);
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!s.valid[i]) continue;
            CHECK(s.stddev[i] ==
                  doctest::Approx(std::fabs(2.0 - 5.0) / std::sqrt(2.0)).epsilon(1e-15));
        }
    }
    SUBCASE("permutation of the trial list changes nothing") {
        std::mt19937 rng(59);
        std::uniform_real_distribution<double> u(0.0, 10.0);
        std::vector<CurvatureProfile> trials;
        for (int t = 0; t < 7; ++t) {
            CurvatureProfile p = flat_profile(80, 10, 0.0);
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (p.valid[i]) p.curvature[i] = u(rng);
            }
            trials.push_back(std::move(p));
        }
        const ProfileStats ref = aggregate(trials);
        std::vector<CurvatureProfile> shuffled = trials;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const ProfileStats perm = aggregate(shuffled);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(ref.mean[i] == perm.mean[i]);
            CHECK(ref.stddev[i] == perm.stddev[i]);
        }
    }
    SUBCASE("mismatched grids or masks are rejected") {
        CHECK_THROWS_AS(aggregate({flat_profile(100, 10, 1.0), flat_profile(99, 10, 1.0)}),
                        ValidationError);
        CHECK_THROWS_AS(aggregate({flat_profile(100, 10, 1.0), flat_profile(100, 9, 1.0)}),
                        ValidationError);
        CHECK_THROWS_AS(aggregate({}), ValidationError);
    }
}

TEST_CASE("region_indices") {
    SUBCASE("default 500-point grid with offset 10") {
        const RegionIndices r = region_indices(RegionSplit{}, 500, 10);
        CHECK(r.head.begin == 10);
        CHECK(r.head.end == 125);  // indices 10..124
        CHECK(r.mid.begin == 125);
        CHECK(r.mid.end == 375);  // indices 125..374
        CHECK(r.tail.begin == 375);
        CHECK(r.tail.end == 490);  // indices 375..489
    }
    SUBCASE("ranges partition the valid index set") {
        for (int n : {500, 100, 41, 23}) {
            const RegionIndices r = region_indices(RegionSplit{}, n, 10);
            CHECK(r.head.begin == 10);
            CHECK(r.head.end == r.mid.begin);
            CHECK(r.mid.end == r.tail.begin);
            CHECK(r.tail.end == n - 10);
        }
    }
    SUBCASE("n = 40 leaves no head indices once the ends are masked") {
        // Valid indices are 10..29 but arc fractions below 0.25 end at
        // index 9, so the head region is empty and surfaces downstream.
        const RegionIndices r = region_indices(RegionSplit{}, 40, 10);
        CHECK(r.head.empty());
        CHECK(!r.mid.empty());
    }
    SUBCASE("n must exceed twice the offset") {
        CHECK_THROWS_AS(region_indices(RegionSplit{}, 20, 10), ValidationError);
        CHECK_NOTHROW(region_indices(RegionSplit{}, 21, 10));
    }
}

TEST_CASE("envelope_coverage") {
    SUBCASE("a group always covers itself") {
        std::mt19937 rng(61);
        std::uniform_real_distribution<double> u(0.0, 4.0);
        std::vector<double> means(500), stds(500);
        for (int i = 0; i < 500; ++i) {
            means[i] = u(rng);
            stds[i] = (i % 3 == 0) ? 0.0 : u(rng);
        }
        const ProfileStats s = stats_of(means, stds);
        CHECK(envelope_coverage(s, s, Region::Head) == 1.0);
        CHECK(envelope_coverage(s, s, Region::Mid) == 1.0);
        CHECK(envelope_coverage(s, s, Region::Tail) == 1.0);
    }
    SUBCASE("zero reference spread and different means cover nothing") {
        const ProfileStats subject = stats_of(std::vector<double>(500, 2.0),
                                              std::vector<double>(500, 0.0));
        const ProfileStats reference = stats_of(std::vector<double>(500, 1.0),
                                                std::vector<double>(500, 0.0));
        CHECK(envelope_coverage(subject, reference, Region::Mid) == 0.0);
    }
    SUBCASE("five-point toy case verified by enumeration") {
        const ProfileStats subject =
            stats_of({1.0, 2.0, 3.0, 4.0, 5.0}, {0, 0, 0, 0, 0});
        const ProfileStats reference =
            stats_of({1.5, 2.0, 2.1, 3.0, 4.0}, {1.0, 0.1, 0.5, 2.0, 0.5});
        // fractions: 0, .25, .5, .75, 1  ->  head {0}, mid {1, 2}, tail {3, 4}
        // head: |1-1.5| <= 1           -> 1/1
        // mid:  |2-2| <= .1 yes; |3-2.1| <= .5 no -> 1/2
        // tail: |4-3| <= 2 yes; |5-4| <= .5 no    -> 1/2
        CHECK(envelope_coverage(subject, reference, Region::Head) == 1.0);
        CHECK(envelope_coverage(subject, reference, Region::Mid) == 0.5);
        CHECK(envelope_coverage(subject, reference, Region::Tail) == 0.5);
    }
    SUBCASE("adding a constant to both means changes nothing") {
        const ProfileStats subject =
            stats_of({1.0, 2.0, 3.0, 4.0, 5.0}, {0, 0, 0, 0, 0});
        const ProfileStats reference =
            stats_of({1.5, 2.0, 2.1, 3.0, 4.0}, {1.0, 0.1, 0.5, 2.0, 0.5});
        ProfileStats subject_shift = subject;
        ProfileStats reference_shift = reference;
        for (int i = 0; i < 5; ++i) {
            subject_shift.mean[i] += 0.5;
            reference_shift.mean[i] += 0.5;
        }
        for (Region region : {Region::Head, Region::Mid, Region::Tail}) {
            CHECK(envelope_coverage(subject, reference, region) ==
                  envelope_coverage(subject_shift, reference_shift, region));
        }
    }
    SUBCASE("empty region after masking is an error") {
        CurvatureProfile p = flat_profile(21, 10, 1.0);
        const ProfileStats s = aggregate({p});
        // Only index 10 (fraction 0.5) is valid: head and tail are empty.
        CHECK_THROWS_WITH_AS(envelope_coverage(s, s, Region::Head),
                             doctest::Contains("empty"), ValidationError);
        CHECK(envelope_coverage(s, s, Region::Mid) == 1.0);
    }
    SUBCASE("mismatched grids are rejected") {
        const ProfileStats a = stats_of({1, 2, 3, 4, 5}, {0, 0, 0, 0, 0});
        const ProfileStats b = stats_of({1, 2, 3, 4}, {0, 0, 0, 0});
        CHECK_THROWS_AS(envelope_coverage(a, b, Region::Mid), ValidationError);
    }
}

TEST_CASE("duration_stats") {
    SUBCASE("single record") {
        const DurationSummary s = duration_stats({{"t1", 12, 60.0}});
        CHECK(s.mean_s == 0.2);
        CHECK(s.std_s == 0.0);
        CHECK(s.min_s == 0.2);
        CHECK(s.max_s == 0.2);
        CHECK(s.count == 1);
    }
    SUBCASE("fps normalization: 12@60 equals 24@120") {
        const DurationSummary s = duration_stats({{"a", 12, 60.0}, {"b", 24, 120.0}});
        CHECK(s.mean_s == 0.2);
        CHECK(s.std_s == 0.0);
    }
    SUBCASE("ten synthetic records verified by hand summation") {
        // Durations: 0.25, 0.5, 0.125, 0.25, 1.0, 0.75, 0.5, 0.125, 0.375, 0.125
        const std::vector<DurationRecord> records{
            {"r0", 15, 60.0},  {"r1", 30, 60.0},  {"r2", 15, 120.0}, {"r3", 30, 120.0},
            {"r4", 60, 60.0},  {"r5", 45, 60.0},  {"r6", 60, 120.0}, {"r7", 15, 120.0},
            {"r8", 45, 120.0}, {"r9", 15, 120.0},
        };
        const double sum =
            0.25 + 0.5 + 0.125 + 0.25 + 1.0 + 0.75 + 0.5 + 0.125 + 0.375 + 0.125;
        const double mean = sum / 10.0;
        double ss = 0.0;
        for (double v : {0.25, 0.5, 0.125, 0.25, 1.0, 0.75, 0.5, 0.125, 0.375, 0.125}) {
            ss += (v - mean) * (v - mean);
        }
        const DurationSummary s = duration_stats(records);
        CHECK(s.mean_s == mean);
        CHECK(s.std_s == std::sqrt(ss / 10.0));
        CHECK(s.min_s == 0.125);
        CHECK(s.max_s == 1.0);
    }
    SUBCASE("splitting and recombining the list preserves the mean") {
        std::mt19937 rng(67);
        std::uniform_int_distribution<long> frames(1, 200);
        std::vector<DurationRecord> records;
        for (int i = 0; i < 40; ++i) {
            records.push_back({"t", frames(rng), (i % 2 == 0) ? 60.0 : 120.0});
        }
        const double whole = duration_stats(records).mean_s;
        const std::vector<DurationRecord> first(records.begin(), records.begin() + 17);
        const std::vector<DurationRecord> second(records.begin() + 17, records.end());
        const double recombined = (duration_stats(first).mean_s * 17.0 +
                                   duration_stats(second).mean_s * 23.0) /
                                  40.0;
        CHECK(std::fabs(whole - recombined) / whole <= 1e-15);
    }
    SUBCASE("invalid records are rejected") {
        CHECK_THROWS_AS(duration_stats({}), ValidationError);
        CHECK_THROWS_AS(duration_stats({{"t", 0, 60.0}}), ValidationError);
        CHECK_THROWS_AS(duration_stats({{"t", 10, 0.0}}), ValidationError);
    }
}
