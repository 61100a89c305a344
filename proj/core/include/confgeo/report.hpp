#pragma once

#include <string>
#include <vector>

#include "confgeo/runner.hpp"

namespace confgeo {

struct Report {
  std::vector<ScenarioResult> scenarios;
};

// Canonical machine format: stable key order, wall time excluded so repeated
// runs are byte-identical. include_timings adds a non-canonical block.
std::string report_json(const Report& report, bool include_timings = false);

// Flattened per-point rows: scenario,check,curve,s,u,v,name,value.
std::string report_csv(const Report& report);

// Aligned human-readable summary.
std::string report_human(const Report& report, bool include_timings = false);

// Re-render a saved canonical json document as the human format.
std::string render_saved_report(const std::string& json_text,
                                bool include_timings = false);

// 0: no failures; 1: at least one fail entry.
int exit_code(const Report& report);
int exit_code_of_saved(const std::string& json_text);

// Writes content to path; throws unwritable-output on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace confgeo
