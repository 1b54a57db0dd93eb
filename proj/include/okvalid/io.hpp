#pragma once

// JSON solution and certificate files. Every floating value is written as a
// decimal string in shortest round-trip form so reloading is bit-exact.

#include <string>

#include "okvalid/cift.hpp"
#include "okvalid/operator.hpp"

namespace okvalid {

inline constexpr int kFormatVersion = 1;

struct SolutionFile {
    ModelParams params;
    PointSeries u;
    std::string created;
    std::string toolVersion = kToolVersion;
    double residualFloat = 0;
};

std::string format_double(double x);
double parse_double(const std::string& s);

std::string solution_to_json(const SolutionFile& s);
SolutionFile solution_from_json(const std::string& text);
void write_solution(const std::string& path, const SolutionFile& s);
SolutionFile read_solution(const std::string& path);

// SHA-256 (hex) of the canonical content {dim, extent, params, coeffs}.
std::string solution_hash(const SolutionFile& s);

std::string certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const std::string& text);
void write_certificate(const std::string& path, const Certificate& c);
Certificate read_certificate(const std::string& path);

// Current UTC time, ISO 8601.
std::string utc_timestamp();

}  // namespace okvalid
