#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace ghlab {

// Tolerances used across the library. Metric axioms are checked up to
// kMetricTol; ball membership and other per-point comparisons use kPointTol.
// Discretization error (the resolution h of a graph mesh) dominates both.
inline constexpr double kMetricTol = 1e-9;
inline constexpr double kPointTol = 1e-12;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Malformed input: bad tables, out-of-range parameters, unusable files.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation could not be carried out (caps exceeded, resolution too
// coarse, required structure missing). Distinct from a failed verdict,
// which is a regular result.
struct computation_error : std::runtime_error {
  explicit computation_error(const std::string& what)
      : std::runtime_error(what) {}
};

inline const char* kToolName = "ghlab";
inline const char* kToolVersion = "0.1.0";
inline const char* kReportSchemaVersion = "1";

}  // namespace ghlab
