#include "freebend/spec_json.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "freebend/errors.hpp"

namespace freebend {

namespace {

using nlohmann::json;

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) {
        throw ParseError(path, 0, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(path + "/" + key, 0, "missing required field");
    }
    return *it;
}

double require_number(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) {
        throw ParseError(path + "/" + key, 0, "expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw ParseError(path + "/" + key, 0, "number must be finite");
    }
    return d;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) {
        throw ParseError(path + "/" + key, 0, "expected a string");
    }
    return v.get<std::string>();
}

SegmentSpec parse_segment(const json& seg, const std::string& path) {
    const std::string label = require_string(seg, "label", path);
    const double l0 = require_number(seg, "L0_m", path);
    const double r0 = require_number(seg, "R0_m", path);
    const double alpha_deg = require_number(seg, "alpha0_deg", path);
    const double lambda = require_number(seg, "lambda", path);

    const json& pattern_json = require(seg, "sign_pattern", path);
    if (!pattern_json.is_array() || pattern_json.empty()) {
        throw ParseError(path + "/sign_pattern", 0, "expected a nonempty array");
    }
    std::vector<SubArc> pattern;
    for (std::size_t i = 0; i < pattern_json.size(); ++i) {
        const std::string sub_path = path + "/sign_pattern/" + std::to_string(i);
        const json& sub = pattern_json[i];
        const double sign = require_number(sub, "sign", sub_path);
        if (sign != -1.0 && sign != 0.0 && sign != 1.0) {
            throw ParseError(sub_path + "/sign", 0, "sign must be -1, 0 or 1");
        }
        pattern.push_back({static_cast<int>(sign), require_number(sub, "fraction", sub_path)});
    }

    try {
        return SegmentSpec(label, FreeGeometry(l0, r0, alpha_deg / kDegPerRad), lambda,
                           std::move(pattern));
    } catch (const ValidationError& e) {
        throw ParseError(path, 0, e.what());
    }
}

}  // namespace

AssemblySpec read_assembly_spec(std::istream& in, const std::string& source_name) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(source_name, 0, e.what());
    }

    AssemblySpec spec;
    try {
        spec.genus = genus_from_string(require_string(doc, "genus", source_name));
    } catch (const ValidationError& e) {
        throw ParseError(source_name + "/genus", 0, e.what());
    }

    const json& segments = require(doc, "segments", source_name);
    if (!segments.is_array() || segments.empty()) {
        throw ParseError(source_name + "/segments", 0, "expected a nonempty array");
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        spec.segments.push_back(
            parse_segment(segments[i], source_name + "/segments/" + std::to_string(i)));
    }
    return spec;
}

AssemblySpec read_assembly_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }
    return read_assembly_spec(in, path);
}

void write_assembly_spec(std::ostream& out, const AssemblySpec& spec) {
    json doc;
    doc["genus"] = to_string(spec.genus);
    doc["segments"] = json::array();
    for (const SegmentSpec& seg : spec.segments) {
        json s;
        s["label"] = seg.label();
        s["L0_m"] = seg.geom().relaxed_length();
        s["R0_m"] = seg.geom().relaxed_radius();
        s["alpha0_deg"] = seg.geom().fiber_angle() * kDegPerRad;
        s["lambda"] = seg.inflation_fraction();
        s["sign_pattern"] = json::array();
        for (const SubArc& sub : seg.pattern()) {
            s["sign_pattern"].push_back({{"sign", sub.sign}, {"fraction", sub.fraction}});
        }
        doc["segments"].push_back(std::move(s));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace freebend
