#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "freebend/compare.hpp"
#include "freebend/geometry.hpp"

namespace freebend {

// Locale-independent formatting with 9 significant digits, so identical
// inputs produce byte-identical output files.
std::string format_double(double value);

// One traced trial: points ordered head to tail.
struct Trace {
    std::string trial_id;
    std::vector<Vec2> points;
};

// Trace CSV: header `trial_id,point_index,x,y`, points of a trial ordered by
// point_index ascending. Trials keep their order of first appearance.
std::vector<Trace> read_trace_csv(std::istream& in, const std::string& source_name);
std::vector<Trace> read_trace_csv_file(const std::string& path);
void write_trace_csv(std::ostream& out, const std::vector<Trace>& traces);

// Rectification CSV: header `trial_id,src_x,src_y,dst_x,dst_y`, at least 4
// correspondences per trial.
struct RectifyPoints {
    std::vector<Vec2> src;
    std::vector<Vec2> dst;
};
std::map<std::string, RectifyPoints> read_rectify_csv(std::istream& in,
                                                      const std::string& source_name);
std::map<std::string, RectifyPoints> read_rectify_csv_file(const std::string& path);

// Profile CSV: header `trial_id,arc_fraction,curvature,valid`, one row per
// grid point per trial; `valid` is 0 or 1, masked rows carry curvature 0.
struct TrialProfile {
    std::string trial_id;
    CurvatureProfile profile;
};
std::vector<TrialProfile> read_profile_csv(std::istream& in, const std::string& source_name);
std::vector<TrialProfile> read_profile_csv_file(const std::string& path);
void write_profile_csv(std::ostream& out, const std::vector<TrialProfile>& trials);

// Stats CSV: header `group,arc_fraction,mean,std,n,valid`.
void write_stats_csv(std::ostream& out,
                     const std::vector<std::pair<std::string, ProfileStats>>& groups);

// Duration CSV: header `trial_id,frame_count,fps`.
std::vector<DurationRecord> read_duration_csv(std::istream& in, const std::string& source_name);
std::vector<DurationRecord> read_duration_csv_file(const std::string& path);

// Duration summary CSV: header `group,mean_s,std_s,min_s,max_s,n`.
void write_duration_summary_csv(
    std::ostream& out, const std::vector<std::pair<std::string, DurationSummary>>& groups);

// Coverage CSV: header `subject,reference,region,coverage,points`.
struct CoverageRow {
    std::string subject;
    std::string reference;
    Region region = Region::Head;
    double coverage = 0.0;
    int points = 0;
};
void write_coverage_csv(std::ostream& out, const std::vector<CoverageRow>& rows);

}  // namespace freebend
