#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "triad/checks.hpp"

namespace triad {

inline constexpr int kSchemaVersion = 1;

/// Invalid run configuration (exit code 2 at the command line).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { json, csv };
OutputFormat parse_format(const std::string& text);

struct RunConfig {
  std::string example = "r3-standard";
  std::vector<double> c_values = {-1.0, 0.0, 1.0};
  int points = 20;
  std::uint64_t seed = 42;
  DiffMode mode = DiffMode::forward;
  double fd_step = 1e-4;
  bool negative_controls = false;
  /// Worker threads for per-point evaluation; the report does not depend on it.
  int threads = 1;
};

/// Throws ConfigError.
void validate(const RunConfig& config);

struct CheckSummary {
  int count = 0;
  int passed = 0;
  int errors = 0;
  double max_residual = 0.0;  // NaN once any record has no residual
  double tolerance = 0.0;
  bool control = false;
  bool detected = false;  // controls: max_residual >= kDetectionThreshold
};

struct Report {
  RunConfig config;
  int dim = 0;
  std::vector<Point> points;
  /// Sorted by (name, c, point_index); absent c sorts first.
  std::vector<CheckResult> results;
  std::map<std::string, CheckSummary> by_check;

  int failed_checks() const;       // non-control records with pass == false
  int undetected_controls() const; // control names never reaching the threshold
  int exit_code() const { return failed_checks() == 0 && undetected_controls() == 0 ? 0 : 1; }
};

/// Samples the points and runs the whole battery. Evaluation failures are
/// recorded on the affected results and never abort the run.
Report run_suite(const RunConfig& config);

/// Canonical JSON (sorted keys, "%.12e" reals, NaN as null) or CSV, one row per result.
std::string emit_report(const Report& report, OutputFormat format);

/// Label of nabla^{lambda;c} used in reports.
std::string connection_label(double c);

}  // namespace triad
