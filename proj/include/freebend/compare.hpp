#pragma once

#include <string>
#include <vector>

#include "freebend/analysis.hpp"

namespace freebend {

enum class StdConvention {
    Population,  // divide by n
    Sample,      // divide by n - 1 (zero for a single trial)
};

// Pointwise mean/std envelope over a set of trials sharing one grid and mask.
struct ProfileStats {
    std::vector<double> arc_fraction;
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<bool> valid;
    int trial_count = 0;

    std::size_t size() const { return arc_fraction.size(); }
};

// Requires at least one profile, all with identical grids and masks.
ProfileStats aggregate(const std::vector<CurvatureProfile>& profiles,
                       StdConvention convention = StdConvention::Population);

// Body regions by arc fraction: head [0, head_end), mid [head_end, mid_end),
// tail [mid_end, 1].
struct RegionSplit {
    double head_end = 0.25;
    double mid_end = 0.75;
};

enum class Region { Head, Mid, Tail };

std::string to_string(Region region);

struct IndexRange {
    int begin = 0;  // half-open [begin, end)
    int end = 0;

    int count() const { return end - begin; }
    bool empty() const { return end <= begin; }
};

struct RegionIndices {
    IndexRange head, mid, tail;

    const IndexRange& of(Region region) const;
};

// Partition of the valid (unmasked) index range of an n-point profile into
// head/mid/tail. Requires n > 2 * offset; a region may come out empty on
// degenerate grids, which downstream consumers surface as errors.
RegionIndices region_indices(const RegionSplit& split, int n = 500, int offset = 10);

// Fraction of valid grid points in the selected region where the subject mean
// lies within one reference standard deviation of the reference mean.
double envelope_coverage(const ProfileStats& subject, const ProfileStats& reference,
                         Region region, const RegionSplit& split = {});

// One observed thrash: duration = frame_count / fps seconds.
struct DurationRecord {
    std::string trial_id;
    long frame_count = 0;  // >= 1
    double fps = 0.0;      // > 0

    double seconds() const { return static_cast<double>(frame_count) / fps; }
};

struct DurationSummary {
    double mean_s = 0.0;
    double std_s = 0.0;
    double min_s = 0.0;
    double max_s = 0.0;
    int count = 0;
};

// Durations are summed in record order, so splitting a list and recombining
// the partial means agrees only up to rounding (~1e-15 relative).
DurationSummary duration_stats(const std::vector<DurationRecord>& records,
                               StdConvention convention = StdConvention::Population);

// Linear interpolation of a profile onto an n-point uniform grid, for data
// arriving at a resolution other than the standard one. A target point is
// valid only when both bracketing source points are valid.
CurvatureProfile regrid_profile(const CurvatureProfile& profile, int n);

}  // namespace freebend
