#include "freebend/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "freebend/errors.hpp"

namespace freebend {

namespace {

double spread(const std::vector<double>& values, double mean, StdConvention convention) {
    const std::size_t n = values.size();
    if (n == 1) {
        return 0.0;
    }
    double sum_sq = 0.0;
    for (double v : values) {
        const double d = v - mean;
        sum_sq += d * d;
    }
    const double divisor =
        convention == StdConvention::Population ? static_cast<double>(n)
                                                : static_cast<double>(n - 1);
    return std::sqrt(sum_sq / divisor);
}

}  // namespace

ProfileStats aggregate(const std::vector<CurvatureProfile>& profiles, StdConvention convention) {
    if (profiles.empty()) {
        throw ValidationError("aggregate needs at least one profile");
    }
    const CurvatureProfile& first = profiles.front();
    for (std::size_t t = 1; t < profiles.size(); ++t) {
        const CurvatureProfile& p = profiles[t];
        if (p.size() != first.size() || p.arc_fraction != first.arc_fraction) {
            throw ValidationError("profiles have mismatched grids (trial " + std::to_string(t) +
                                  ")");
        }
        if (p.valid != first.valid) {
            throw ValidationError("profiles have mismatched validity masks (trial " +
                                  std::to_string(t) + ")");
        }
    }

    ProfileStats stats;
    stats.arc_fraction = first.arc_fraction;
    stats.valid = first.valid;
    stats.trial_count = static_cast<int>(profiles.size());
    stats.mean.assign(first.size(), 0.0);
    stats.stddev.assign(first.size(), 0.0);

    std::vector<double> values(profiles.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (!first.valid[i]) {
            continue;
        }
        for (std::size_t t = 0; t < profiles.size(); ++t) {
            values[t] = profiles[t].curvature[i];
        }
        // Summed in sorted order so the result does not depend on the order
        // the trials were supplied in.
        std::sort(values.begin(), values.end());
        double sum = 0.0;
        for (double v : values) sum += v;
        const double mean = sum / static_cast<double>(values.size());
        stats.mean[i] = mean;
        stats.stddev[i] = spread(values, mean, convention);
    }
    return stats;
}

std::string to_string(Region region) {
    switch (region) {
        case Region::Head: return "head";
        case Region::Mid: return "mid";
        case Region::Tail: return "tail";
    }
    return "head";
}

const IndexRange& RegionIndices::of(Region region) const {
    switch (region) {
        case Region::Head: return head;
        case Region::Mid: return mid;
        case Region::Tail: return tail;
    }
    return head;
}

RegionIndices region_indices(const RegionSplit& split, int n, int offset) {
    if (!(split.head_end > 0.0) || !(split.head_end < split.mid_end) || !(split.mid_end < 1.0)) {
        throw ValidationError("region split boundaries must satisfy 0 < head_end < mid_end < 1");
    }
    if (offset < 0) {
        throw ValidationError("offset must be >= 0");
    }
    if (n <= 2 * offset) {
        throw ValidationError("region split needs n > 2*offset, got n = " + std::to_string(n) +
                              ", offset = " + std::to_string(offset));
    }
    const int lo = offset;
    const int hi = n - 1 - offset;  // inclusive valid range
    const auto fraction = [n](int i) {
        return static_cast<double>(i) / static_cast<double>(n - 1);
    };
    int first_mid = lo;
    while (first_mid <= hi && fraction(first_mid) < split.head_end) ++first_mid;
    int first_tail = first_mid;
    while (first_tail <= hi && fraction(first_tail) < split.mid_end) ++first_tail;

    RegionIndices regions;
    regions.head = {lo, first_mid};
    regions.mid = {first_mid, first_tail};
    regions.tail = {first_tail, hi + 1};
    return regions;
}

double envelope_coverage(const ProfileStats& subject, const ProfileStats& reference,
                         Region region, const RegionSplit& split) {
    if (subject.size() != reference.size() || subject.arc_fraction != reference.arc_fraction) {
        throw ValidationError("subject and reference stats have mismatched grids");
    }
    const int n = static_cast<int>(subject.size());
    // Region boundaries over the full grid; masked points drop out below.
    const IndexRange range = region_indices(split, n, 0).of(region);

    int considered = 0;
    int inside = 0;
    for (int i = range.begin; i < range.end; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (!subject.valid[idx] || !reference.valid[idx]) {
            continue;
        }
        ++considered;
        if (std::fabs(subject.mean[idx] - reference.mean[idx]) <= reference.stddev[idx]) {
            ++inside;
        }
    }
    if (considered == 0) {
        throw ValidationError("region '" + to_string(region) + "' is empty after masking");
    }
    return static_cast<double>(inside) / static_cast<double>(considered);
}

DurationSummary duration_stats(const std::vector<DurationRecord>& records,
                               StdConvention convention) {
    if (records.empty()) {
        throw ValidationError("duration statistics need at least one record");
    }
    std::vector<double> seconds;
    seconds.reserve(records.size());
    for (const DurationRecord& r : records) {
        if (r.frame_count < 1) {
            throw ValidationError("trial '" + r.trial_id + "': frame_count must be >= 1");
        }
        if (!(r.fps > 0.0)) {
            throw ValidationError("trial '" + r.trial_id + "': fps must be > 0");
        }
        seconds.push_back(r.seconds());
    }

    DurationSummary out;
    out.count = static_cast<int>(seconds.size());
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double s : seconds) {
        sum += s;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    out.mean_s = sum / static_cast<double>(seconds.size());
    out.std_s = spread(seconds, out.mean_s, convention);
    out.min_s = lo;
    out.max_s = hi;
    return out;
}

CurvatureProfile regrid_profile(const CurvatureProfile& profile, int n) {
    if (n < 2) {
        throw ValidationError("regrid needs n >= 2");
    }
    if (profile.size() < 2) {
        throw ValidationError("regrid needs a profile with at least 2 points");
    }
    const auto m = profile.size();
    CurvatureProfile out;
    out.arc_fraction.resize(static_cast<std::size_t>(n));
    out.curvature.assign(static_cast<std::size_t>(n), 0.0);
    out.valid.assign(static_cast<std::size_t>(n), false);
    std::size_t seg = 0;
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n - 1);
        out.arc_fraction[static_cast<std::size_t>(i)] = f;
        while (seg + 2 < m && profile.arc_fraction[seg + 1] < f) {
            ++seg;
        }
        const double lo = profile.arc_fraction[seg];
        const double hi = profile.arc_fraction[seg + 1];
        if (f < lo || f > hi || !(hi > lo)) {
            continue;
        }
        if (!profile.valid[seg] || !profile.valid[seg + 1]) {
            continue;
        }
        const double t = (f - lo) / (hi - lo);
        out.curvature[static_cast<std::size_t>(i)] =
            profile.curvature[seg] + t * (profile.curvature[seg + 1] - profile.curvature[seg]);
        out.valid[static_cast<std::size_t>(i)] = true;
    }
    return out;
}

}  // namespace freebend
