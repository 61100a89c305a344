#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "confgeo/scenario.hpp"

namespace confgeo {

// One per-point record for the flattened CSV output.
struct PointRecord {
  double s = 0.0, u = 0.0, v = 0.0;
  std::string name;
  double value = 0.0;
};

// Result of one check (x curve / geodesic where applicable).
// verdict == "pass" iff worst_residual < tolerance; "skipped" carries a
// machine-readable kebab-case reason.
struct ReportEntry {
  std::string scenario;
  std::string check;
  std::string curve;  // empty for grid checks; "geodesic-<k>" for traces
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::string verdict = "pass";
  std::string skip_reason;
  int samples = 0;
  int skipped_samples = 0;
  std::map<std::string, double> details;
  std::map<std::string, std::string> labels;
  double wall_ms = 0.0;
  std::vector<PointRecord> points;  // filled only when collect_points is set
};

struct ScenarioResult {
  std::string name;
  std::vector<ReportEntry> entries;
  std::set<std::string> ops;  // operation names dispatched by the checks
};

struct RunOptions {
  int workers = 0;  // 0: hardware count capped by env CONFGEO_WORKERS
  bool collect_points = false;
};

// Executes every (check x curve) unit, concurrently but order-stable.
// Errors inside a unit become skipped entries, never exceptions.
ScenarioResult run_scenario(const Scenario& sc, const RunOptions& opt = {});

}  // namespace confgeo
