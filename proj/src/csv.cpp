#include "freebend/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "freebend/errors.hpp"

namespace freebend {

std::string format_double(double value) {
    // to_chars is locale-independent; %g-style with 9 significant digits.
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 9);
    if (ec != std::errc()) {
        throw NumericError("failed to format floating-point value");
    }
    return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

double parse_double(const std::string& field, const std::string& source, std::size_t line,
                    const std::string& what) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(source, line, "invalid " + what + " '" + field + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(source, line, what + " must be finite, got '" + field + "'");
    }
    return value;
}

long parse_long(const std::string& field, const std::string& source, std::size_t line,
                const std::string& what) {
    long value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(source, line, "invalid " + what + " '" + field + "'");
    }
    return value;
}

// Reads rows, stripping one trailing '\r' per line; skips blank lines.
// Calls row(fields, line_number) for every data row.
template <typename RowFn>
void read_csv(std::istream& in, const std::string& source, const std::string& expected_header,
              RowFn row) {
    std::string line;
    std::size_t line_number = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (!saw_header) {
            if (line != expected_header) {
                throw ParseError(source, line_number,
                                 "expected header '" + expected_header + "', got '" + line +
                                     "'");
            }
            saw_header = true;
            continue;
        }
        row(split_fields(line), line_number);
    }
    if (!saw_header) {
        throw ParseError(source, 0, "file is empty; expected header '" + expected_header + "'");
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }
    return in;
}

}  // namespace

std::vector<Trace> read_trace_csv(std::istream& in, const std::string& source_name) {
    std::vector<Trace> traces;
    std::size_t current = 0;
    bool have_current = false;
    long last_index = 0;
    read_csv(in, source_name, "trial_id,point_index,x,y",
             [&](const std::vector<std::string>& f, std::size_t line) {
                 if (f.size() != 4) {
                     throw ParseError(source_name, line,
                                      "expected 4 fields, got " + std::to_string(f.size()));
                 }
                 const std::string& id = f[0];
                 if (id.empty()) {
                     throw ParseError(source_name, line, "empty trial_id");
                 }
                 const long index = parse_long(f[1], source_name, line, "point_index");
                 const double x = parse_double(f[2], source_name, line, "x");
                 const double y = parse_double(f[3], source_name, line, "y");
                 if (!have_current || traces[current].trial_id != id) {
                     for (const Trace& t : traces) {
                         if (t.trial_id == id) {
                             throw ParseError(source_name, line,
                                              "trial '" + id + "' appears in two blocks");
                         }
                     }
                     traces.push_back({id, {}});
                     current = traces.size() - 1;
                     have_current = true;
                     last_index = index - 1;
                 }
                 if (index <= last_index) {
                     throw ParseError(source_name, line,
                                      "point_index must be strictly ascending within a trial");
                 }
                 last_index = index;
                 traces[current].points.push_back({x, y});
             });
    return traces;
}

std::vector<Trace> read_trace_csv_file(const std::string& path) {
    auto in = open_input(path);
    return read_trace_csv(in, path);
}

void write_trace_csv(std::ostream& out, const std::vector<Trace>& traces) {
    out << "trial_id,point_index,x,y\n";
    for (const Trace& t : traces) {
        for (std::size_t i = 0; i < t.points.size(); ++i) {
            out << t.trial_id << ',' << i << ',' << format_double(t.points[i].x) << ','
                << format_double(t.points[i].y) << '\n';
        }
    }
}

std::map<std::string, RectifyPoints> read_rectify_csv(std::istream& in,
                                                      const std::string& source_name) {
    std::map<std::string, RectifyPoints> table;
    read_csv(in, source_name, "trial_id,src_x,src_y,dst_x,dst_y",
             [&](const std::vector<std::string>& f, std::size_t line) {
                 if (f.size() != 5) {
                     throw ParseError(source_name, line,
                                      "expected 5 fields, got " + std::to_string(f.size()));
                 }
                 if (f[0].empty()) {
                     throw ParseError(source_name, line, "empty trial_id");
                 }
                 RectifyPoints& entry = table[f[0]];
                 entry.src.push_back({parse_double(f[1], source_name, line, "src_x"),
                                      parse_double(f[2], source_name, line, "src_y")});
                 entry.dst.push_back({parse_double(f[3], source_name, line, "dst_x"),
                                      parse_double(f[4], source_name, line, "dst_y")});
             });
    for (const auto& [id, entry] : table) {
        if (entry.src.size() < 4) {
            throw ParseError(source_name, 0,
                             "trial '" + id + "' has only " + std::to_string(entry.src.size()) +
                                 " correspondences; at least 4 required");
        }
    }
    return table;
}

std::map<std::string, RectifyPoints> read_rectify_csv_file(const std::string& path) {
    auto in = open_input(path);
    return read_rectify_csv(in, path);
}

std::vector<TrialProfile> read_profile_csv(std::istream& in, const std::string& source_name) {
    std::vector<TrialProfile> trials;
    std::size_t current = 0;
    bool have_current = false;
    read_csv(in, source_name, "trial_id,arc_fraction,curvature,valid",
             [&](const std::vector<std::string>& f, std::size_t line) {
                 if (f.size() != 4) {
                     throw ParseError(source_name, line,
                                      "expected 4 fields, got " + std::to_string(f.size()));
                 }
                 const std::string& id = f[0];
                 if (id.empty()) {
                     throw ParseError(source_name, line, "empty trial_id");
                 }
                 const double fraction = parse_double(f[1], source_name, line, "arc_fraction");
                 const double curvature = parse_double(f[2], source_name, line, "curvature");
                 const long valid = parse_long(f[3], source_name, line, "valid");
                 if (valid != 0 && valid != 1) {
                     throw ParseError(source_name, line, "valid must be 0 or 1");
                 }
                 if (curvature < 0.0) {
                     throw ParseError(source_name, line, "curvature must be >= 0");
                 }
                 if (!have_current || trials[current].trial_id != id) {
                     for (const TrialProfile& t : trials) {
                         if (t.trial_id == id) {
                             throw ParseError(source_name, line,
                                              "trial '" + id + "' appears in two blocks");
                         }
                     }
                     trials.push_back({id, {}});
                     current = trials.size() - 1;
                     have_current = true;
                 }
                 CurvatureProfile& p = trials[current].profile;
                 p.arc_fraction.push_back(fraction);
                 p.curvature.push_back(curvature);
                 p.valid.push_back(valid == 1);
             });
    for (const TrialProfile& t : trials) {
        if (t.profile.size() < 2) {
            throw ParseError(source_name, 0,
                             "trial '" + t.trial_id + "' has fewer than 2 grid points");
        }
    }
    return trials;
}

std::vector<TrialProfile> read_profile_csv_file(const std::string& path) {
    auto in = open_input(path);
    return read_profile_csv(in, path);
}

void write_profile_csv(std::ostream& out, const std::vector<TrialProfile>& trials) {
    out << "trial_id,arc_fraction,curvature,valid\n";
    for (const TrialProfile& t : trials) {
        const CurvatureProfile& p = t.profile;
        for (std::size_t i = 0; i < p.size(); ++i) {
            out << t.trial_id << ',' << format_double(p.arc_fraction[i]) << ','
                << format_double(p.curvature[i]) << ',' << (p.valid[i] ? '1' : '0') << '\n';
        }
    }
}

void write_stats_csv(std::ostream& out,
                     const std::vector<std::pair<std::string, ProfileStats>>& groups) {
    out << "group,arc_fraction,mean,std,n,valid\n";
    for (const auto& [name, stats] : groups) {
        for (std::size_t i = 0; i < stats.size(); ++i) {
            out << name << ',' << format_double(stats.arc_fraction[i]) << ','
                << format_double(stats.mean[i]) << ',' << format_double(stats.stddev[i]) << ','
                << stats.trial_count << ',' << (stats.valid[i] ? '1' : '0') << '\n';
        }
    }
}

std::vector<DurationRecord> read_duration_csv(std::istream& in,
                                              const std::string& source_name) {
    std::vector<DurationRecord> records;
    read_csv(in, source_name, "trial_id,frame_count,fps",
             [&](const std::vector<std::string>& f, std::size_t line) {
                 if (f.size() != 3) {
                     throw ParseError(source_name, line,
                                      "expected 3 fields, got " + std::to_string(f.size()));
                 }
                 if (f[0].empty()) {
                     throw ParseError(source_name, line, "empty trial_id");
                 }
                 DurationRecord rec;
                 rec.trial_id = f[0];
                 rec.frame_count = parse_long(f[1], source_name, line, "frame_count");
                 rec.fps = parse_double(f[2], source_name, line, "fps");
                 if (rec.frame_count < 1) {
                     throw ParseError(source_name, line, "frame_count must be >= 1");
                 }
                 if (!(rec.fps > 0.0)) {
                     throw ParseError(source_name, line, "fps must be > 0");
                 }
                 records.push_back(std::move(rec));
             });
    return records;
}

std::vector<DurationRecord> read_duration_csv_file(const std::string& path) {
    auto in = open_input(path);
    return read_duration_csv(in, path);
}

void write_duration_summary_csv(
    std::ostream& out, const std::vector<std::pair<std::string, DurationSummary>>& groups) {
    out << "group,mean_s,std_s,min_s,max_s,n\n";
    for (const auto& [name, s] : groups) {
        out << name << ',' << format_double(s.mean_s) << ',' << format_double(s.std_s) << ','
            << format_double(s.min_s) << ',' << format_double(s.max_s) << ',' << s.count
            << '\n';
    }
}

void write_coverage_csv(std::ostream& out, const std::vector<CoverageRow>& rows) {
    out << "subject,reference,region,coverage,points\n";
    for (const CoverageRow& r : rows) {
        out << r.subject << ',' << r.reference << ',' << to_string(r.region) << ','
            << format_double(r.coverage) << ',' << r.points << '\n';
    }
}

}  // namespace freebend
