#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "freebend/analysis.hpp"
#include "freebend/assembly.hpp"
#include "freebend/compare.hpp"
#include "freebend/csv.hpp"
#include "freebend/errors.hpp"
#include "freebend/free_model.hpp"
#include "freebend/spec_json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace freebend;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumeric = 4;

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

struct GlobalOptions {
    std::string out_dir = ".";
    double pressure_kpa = 310.0;  // recorded in run metadata only
};

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open output file '" + path.string() + "'");
    }
    return out;
}

void write_metadata(const GlobalOptions& global, const std::string& command, json parameters,
                    json extra = json::object()) {
    parameters["out"] = global.out_dir;
    parameters["pressure_kpa"] = global.pressure_kpa;
    json doc;
    doc["command"] = command;
    doc["parameters"] = std::move(parameters);
    for (auto& [key, value] : extra.items()) {
        doc[key] = value;
    }
    auto out = open_output(fs::path(global.out_dir) / "run_metadata.json");
    out << doc.dump(2) << '\n';
}

// label=path command-line pairs; a bare path takes its stem as the label.
std::pair<std::string, std::string> split_labeled(const std::string& arg) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos) {
        return {fs::path(arg).stem().string(), arg};
    }
    if (eq == 0 || eq + 1 == arg.size()) {
        throw ValidationError("expected label=path, got '" + arg + "'");
    }
    return {arg.substr(0, eq), arg.substr(eq + 1)};
}

// ---------------------------------------------------------------------------
// design

int run_design(const GlobalOptions& global, const std::string& targets_path, double r0,
               double total_length) {
    std::ifstream in(targets_path);
    if (!in) {
        throw ParseError(targets_path, 0, "cannot open file");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(targets_path, 0, e.what());
    }

    const char* roles[3] = {"head", "mid", "tail"};
    const double lengths[3] = {0.25 * total_length, 0.50 * total_length,
                               0.25 * total_length};
    AssemblySpec spec;
    spec.genus = Genus::Custom;
    for (int i = 0; i < 3; ++i) {
        if (!doc.contains(roles[i]) || !doc[roles[i]].is_number()) {
            throw ParseError(targets_path + "/" + roles[i], 0,
                             "expected a numeric curvature target (1/m)");
        }
        const double target = doc[roles[i]].get<double>();
        if (target < 0.0) {
            throw ValidationError(std::string(roles[i]) + ": target curvature must be >= 0");
        }
        if (target == 0.0) {
            // Straight role: no strain-limiting fiber, so the angle is free;
            // use the straight-head winding angle.
            spec.segments.push_back(SegmentSpec(
                std::string(roles[i]) + "-straight",
                FreeGeometry(lengths[i], r0, 67.5 / kDegPerRad), 0.0, {{0, 1.0}}));
            std::cout << roles[i] << ": straight (target 0), alpha0_deg=67.5\n";
            continue;
        }
        const double alpha = solve_fiber_angle(target, r0);
        spec.segments.push_back(SegmentSpec(std::string(roles[i]) + "-bend",
                                            FreeGeometry(lengths[i], r0, alpha), 1.0,
                                            {{+1, 1.0}}));
        const double k_max = max_curvature(r0, alpha);
        std::cout << roles[i] << ": alpha0_deg=" << format_double(alpha * kDegPerRad)
                  << ", K_max=" << format_double(k_max) << " 1/m\n";
    }

    auto out = open_output(fs::path(global.out_dir) / "design_spec.json");
    write_assembly_spec(out, spec);

    json params{{"targets", targets_path}, {"R0_m", r0}, {"total_length_m", total_length}};
    write_metadata(global, "design", std::move(params));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate(const GlobalOptions& global, const std::string& spec_path,
                 const std::string& genus_name, int samples) {
    if (spec_path.empty() == genus_name.empty()) {
        throw ValidationError("simulate needs exactly one of --spec or --genus");
    }
    if (samples < 2) {
        throw ValidationError("--samples must be >= 2");
    }

    AssemblySpec spec;
    if (!spec_path.empty()) {
        spec = read_assembly_spec_file(spec_path);
    } else {
        spec = genus_template(genus_from_string(genus_name));
        // Echo the generated spec so template runs are reproducible and
        // editable.
        auto out = open_output(fs::path(global.out_dir) / "template_spec.json");
        write_assembly_spec(out, spec);
    }

    const auto segment_count = spec.segments.size();
    const int per_segment = std::max<int>(
        2, static_cast<int>((static_cast<std::size_t>(samples) + segment_count - 1) /
                            segment_count));
    const Centerline line = render_centerline(spec, per_segment);

    std::string trial_id = to_string(spec.genus);
    std::transform(trial_id.begin(), trial_id.end(), trial_id.begin(),
                   [](unsigned char c) { return std::tolower(c); });

    auto out = open_output(fs::path(global.out_dir) / "trace.csv");
    write_trace_csv(out, {{trial_id, line.points()}});

    json params{{"spec", spec_path.empty() ? json(nullptr) : json(spec_path)},
                {"genus", genus_name.empty() ? json(nullptr) : json(genus_name)},
                {"samples", samples},
                {"trial_id", trial_id}};
    write_metadata(global, "simulate", std::move(params));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze

int run_analyze(const GlobalOptions& global, const std::string& traces_path,
                const std::string& rectify_path, int n, int span, int offset,
                const std::string& units) {
    const Unit unit = units == "px" ? Unit::Pixels : Unit::Meters;
    const std::vector<Trace> traces = read_trace_csv_file(traces_path);

    std::map<std::string, RectifyPoints> rectify;
    if (!rectify_path.empty()) {
        rectify = read_rectify_csv_file(rectify_path);
    }

    std::vector<TrialProfile> results;
    std::vector<std::string> skipped;
    for (const Trace& trace : traces) {
        if (trace.points.size() < 2) {
            std::cerr << "warning: trial '" << trace.trial_id << "' has "
                      << trace.points.size() << " point(s); skipped\n";
            skipped.push_back(trace.trial_id);
            continue;
        }
        try {
            Centerline line(trace.points, unit);
            if (!rectify_path.empty()) {
                const auto it = rectify.find(trace.trial_id);
                if (it == rectify.end()) {
                    throw ValidationError("no rectification correspondences");
                }
                line = apply_homography(estimate_homography(it->second.src, it->second.dst),
                                        line);
            }
            line = resample_uniform(line, n);
            line = smooth_moving_average(line, span);
            results.push_back({trace.trial_id, curvature_profile(line, offset)});
        } catch (const ValidationError& e) {
            throw ValidationError("trial '" + trace.trial_id + "': " + e.what());
        }
    }

    auto out = open_output(fs::path(global.out_dir) / "profiles.csv");
    write_profile_csv(out, results);

    json params{{"traces", traces_path},
                {"rectify", rectify_path.empty() ? json(nullptr) : json(rectify_path)},
                {"n", n},
                {"span", span},
                {"offset", offset},
                {"units", units}};
    json extra;
    extra["skipped_trials"] = skipped;
    write_metadata(global, "analyze", std::move(params), std::move(extra));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

int run_compare(const GlobalOptions& global, const std::vector<std::string>& group_args,
                const std::vector<std::string>& duration_args,
                const std::string& std_convention) {
    const StdConvention convention = std_convention == "sample" ? StdConvention::Sample
                                                                : StdConvention::Population;
    constexpr int kStandardGrid = 500;

    std::vector<std::pair<std::string, std::vector<CurvatureProfile>>> groups;
    std::vector<std::string> regridded;
    for (const std::string& arg : group_args) {
        const auto [label, path] = split_labeled(arg);
        for (const auto& [existing, profiles] : groups) {
            if (existing == label) {
                throw ValidationError("duplicate group label '" + label + "'");
            }
        }
        std::vector<CurvatureProfile> profiles;
        for (TrialProfile& trial : read_profile_csv_file(path)) {
            if (trial.profile.size() != kStandardGrid) {
                std::cerr << "note: trial '" << trial.trial_id << "' in group '" << label
                          << "' has " << trial.profile.size()
                          << " grid points; interpolating onto the " << kStandardGrid
                          << "-point grid\n";
                trial.profile = regrid_profile(trial.profile, kStandardGrid);
                regridded.push_back(label + "/" + trial.trial_id);
            }
            profiles.push_back(std::move(trial.profile));
        }
        if (profiles.empty()) {
            throw ValidationError("group '" + label + "' has no trials");
        }
        groups.emplace_back(label, std::move(profiles));
    }

    std::vector<std::pair<std::string, ProfileStats>> stats;
    for (const auto& [label, profiles] : groups) {
        stats.emplace_back(label, aggregate(profiles, convention));
    }

    {
        auto out = open_output(fs::path(global.out_dir) / "stats.csv");
        write_stats_csv(out, stats);
    }

    if (stats.size() > 1) {
        std::vector<CoverageRow> rows;
        for (const auto& [subject_label, subject] : stats) {
            for (const auto& [reference_label, reference] : stats) {
                if (subject_label == reference_label) continue;
                for (Region region : {Region::Head, Region::Mid, Region::Tail}) {
                    CoverageRow row;
                    row.subject = subject_label;
                    row.reference = reference_label;
                    row.region = region;
                    row.coverage = envelope_coverage(subject, reference, region);
                    row.points = region_indices(RegionSplit{},
                                                static_cast<int>(subject.size()), 0)
                                     .of(region)
                                     .count();
                    rows.push_back(row);
                }
            }
        }
        auto out = open_output(fs::path(global.out_dir) / "coverage.csv");
        write_coverage_csv(out, rows);
    }

    if (!duration_args.empty()) {
        std::vector<std::pair<std::string, DurationSummary>> summaries;
        for (const std::string& arg : duration_args) {
            const auto [label, path] = split_labeled(arg);
            summaries.emplace_back(label,
                                   duration_stats(read_duration_csv_file(path), convention));
        }
        auto out = open_output(fs::path(global.out_dir) / "duration_summary.csv");
        write_duration_summary_csv(out, summaries);
    }

    json params{{"groups", group_args},
                {"durations", duration_args},
                {"std_convention", std_convention}};
    json extra;
    extra["regridded_trials"] = regridded;
    write_metadata(global, "compare", std::move(params), std::move(extra));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FREE snake-robot design, simulation, and curvature analysis"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--out", global.out_dir, "Output directory")->capture_default_str();
    app.add_option("--pressure-kpa", global.pressure_kpa,
                   "Operating pressure annotation, recorded in run metadata")
        ->capture_default_str();

    auto* design = app.add_subcommand("design", "Solve fiber angles for target curvatures");
    std::string targets_path;
    double r0 = 0.00475;
    double total_length = 0.4;
    design->add_option("--targets", targets_path,
                       "JSON file with head/mid/tail curvature targets (1/m)")
        ->required();
    design->add_option("--R0", r0, "Relaxed tube radius in meters")->required();
    design->add_option("--total-length", total_length, "Total relaxed length in meters")
        ->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Render an assembly spec to a trace CSV");
    std::string spec_path, genus_name;
    int samples = 2000;
    auto* spec_opt = simulate->add_option("--spec", spec_path, "Assembly spec JSON");
    simulate
        ->add_option("--genus", genus_name,
                     "Built-in genus template (Atractus, Micrurus, Oxyrhopus)")
        ->excludes(spec_opt);
    simulate->add_option("--samples", samples, "Raw points in the rendered trace")
        ->capture_default_str();

    auto* analyze = app.add_subcommand("analyze", "Curvature profiles from traced centerlines");
    std::string traces_path, rectify_path, units;
    int n = 500, span = 30, offset = 10;
    analyze->add_option("--traces", traces_path, "Trace CSV (trial_id,point_index,x,y)")
        ->required();
    analyze->add_option("--rectify", rectify_path,
                        "Rectification CSV (trial_id,src_x,src_y,dst_x,dst_y)");
    analyze->add_option("--n", n, "Resample count")->capture_default_str();
    analyze->add_option("--span", span, "Moving-average span")->capture_default_str();
    analyze->add_option("--offset", offset, "Circumcircle neighbor offset")
        ->capture_default_str();
    analyze->add_option("--units", units, "Input units")
        ->required()
        ->check(CLI::IsMember({"px", "m"}));

    auto* compare = app.add_subcommand("compare", "Group statistics and envelope coverage");
    std::vector<std::string> group_args, duration_args;
    std::string std_convention = "population";
    compare->add_option("--groups", group_args, "label=profiles.csv (repeatable)")
        ->required()
        ->take_all();
    compare->add_option("--durations", duration_args, "label=durations.csv (repeatable)")
        ->take_all();
    compare->add_option("--std-convention", std_convention, "population or sample")
        ->capture_default_str()
        ->check(CLI::IsMember({"population", "sample"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        fs::create_directories(global.out_dir);
        if (design->parsed()) {
            return run_design(global, targets_path, r0, total_length);
        }
        if (simulate->parsed()) {
            return run_simulate(global, spec_path, genus_name, samples);
        }
        if (analyze->parsed()) {
            return run_analyze(global, traces_path, rectify_path, n, span, offset, units);
        }
        if (compare->parsed()) {
            return run_compare(global, group_args, duration_args, std_convention);
        }
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "attainable bound: " << format_double(e.attainable_bound) << "\n";
        return kExitInfeasible;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
