#pragma once

#include <stdexcept>
#include <string>

namespace freebend {

// Out-of-domain arguments or violated type invariants.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A design target outside the attainable range. Carries the attainable bound
// so callers can report how close the target could get.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& msg, double attainable)
        : std::runtime_error(msg), attainable_bound(attainable) {}

    double attainable_bound;
};

// Malformed input file. line is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& msg)
        : std::runtime_error(source + (line ? ":" + std::to_string(line) : "") + ": " + msg),
          source_name(source),
          line_number(line) {}

    std::string source_name;
    std::size_t line_number;
};

// A numerical routine failed to converge or produced a non-finite result.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace freebend
