#include "confgeo/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace confgeo {
namespace {

using nlohmann::json;

json entry_to_json(const ReportEntry& e) {
  json j;
  j["check"] = e.check;
  j["curve"] = e.curve;
  j["worst_residual"] = e.worst_residual;
  j["tolerance"] = e.tolerance;
  j["verdict"] = e.verdict;
  j["skip_reason"] = e.skip_reason;
  j["samples"] = e.samples;
  j["skipped_samples"] = e.skipped_samples;
  j["details"] = json::object();
  for (const auto& [k, v] : e.details) j["details"][k] = v;
  j["labels"] = json::object();
  for (const auto& [k, v] : e.labels) j["labels"][k] = v;
  return j;
}

ReportEntry entry_from_json(const std::string& scenario, const json& j) {
  ReportEntry e;
  e.scenario = scenario;
  e.check = j.value("check", "");
  e.curve = j.value("curve", "");
  e.worst_residual = j.value("worst_residual", 0.0);
  e.tolerance = j.value("tolerance", 0.0);
  e.verdict = j.value("verdict", "");
  e.skip_reason = j.value("skip_reason", "");
  e.samples = j.value("samples", 0);
  e.skipped_samples = j.value("skipped_samples", 0);
  if (j.contains("details"))
    for (const auto& item : j.at("details").items())
      e.details[item.key()] = item.value().get<double>();
  if (j.contains("labels"))
    for (const auto& item : j.at("labels").items())
      e.labels[item.key()] = item.value().get<std::string>();
  return e;
}

void tally(const Report& report, int& pass, int& fail, int& skipped) {
  pass = fail = skipped = 0;
  for (const auto& sc : report.scenarios)
    for (const auto& e : sc.entries) {
      if (e.verdict == "pass")
        ++pass;
      else if (e.verdict == "fail")
        ++fail;
      else
        ++skipped;
    }
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

const char* to_string(errc code) {
  switch (code) {
    case errc::point_outside_domain:
      return "point-outside-domain";
    case errc::degenerate_patch:
      return "degenerate-patch";
    case errc::degenerate_metric:
      return "degenerate-metric";
    case errc::vanishing_curvature:
      return "vanishing-curvature";
    case errc::stationary_point:
      return "stationary-point";
    case errc::non_conformal_at_point:
      return "non-conformal-at-point";
    case errc::wrong_map_class:
      return "wrong-map-class";
    case errc::out_of_range_s:
      return "out-of-range-s";
    case errc::domain_exit:
      return "domain-exit";
    case errc::nonunit_initial_speed:
      return "nonunit-initial-speed";
    case errc::parse_error:
      return "parse-error";
    case errc::unknown_surface_id:
      return "unknown-surface-id";
    case errc::unknown_check:
      return "unknown-check";
    case errc::unknown_curve_id:
      return "unknown-curve-id";
    case errc::unknown_correspondence_id:
      return "unknown-correspondence-id";
    case errc::domain_mismatch:
      return "domain-mismatch";
    case errc::unwritable_output:
      return "unwritable-output";
  }
  return "unknown-error";
}

std::string report_json(const Report& report, bool include_timings) {
  json root;
  root["report_version"] = 1;
  root["scenarios"] = json::array();
  std::set<std::string> all_ops;
  for (const auto& sc : report.scenarios) {
    json sj;
    sj["name"] = sc.name;
    sj["entries"] = json::array();
    for (const auto& e : sc.entries) sj["entries"].push_back(entry_to_json(e));
    root["scenarios"].push_back(sj);
    all_ops.insert(sc.ops.begin(), sc.ops.end());
  }
  root["ops_dispatched"] = json::array();
  for (const auto& op : all_ops) root["ops_dispatched"].push_back(op);
  int pass = 0, fail = 0, skipped = 0;
  tally(report, pass, fail, skipped);
  root["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
  if (include_timings) {
    json tj = json::object();
    for (const auto& sc : report.scenarios)
      for (const auto& e : sc.entries)
        tj[sc.name + "/" + e.check + (e.curve.empty() ? "" : "/" + e.curve)] =
            e.wall_ms;
    root["timings_ms"] = tj;
  }
  return root.dump(2) + "\n";
}

std::string report_csv(const Report& report) {
  std::ostringstream out;
  out << "scenario,check,curve,s,u,v,name,value\n";
  char buf[64];
  for (const auto& sc : report.scenarios)
    for (const auto& e : sc.entries)
      for (const auto& p : e.points) {
        out << sc.name << ',' << e.check << ',' << e.curve << ',';
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", p.s, p.u, p.v);
        out << buf << ',' << p.name << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", p.value);
        out << buf << '\n';
      }
  return out.str();
}

std::string report_human(const Report& report, bool include_timings) {
  std::ostringstream out;
  out << pad("scenario", 22) << pad("check", 32) << pad("curve", 22)
      << pad("verdict", 26) << pad("worst", 12) << pad("tolerance", 12)
      << "samples";
  if (include_timings) out << "  wall_ms";
  out << '\n';
  for (const auto& sc : report.scenarios)
    for (const auto& e : sc.entries) {
      std::string verdict = e.verdict;
      if (e.verdict == "skipped" && !e.skip_reason.empty())
        verdict += "(" + e.skip_reason + ")";
      out << pad(sc.name, 22) << pad(e.check, 32)
          << pad(e.curve.empty() ? "-" : e.curve, 22) << pad(verdict, 26)
          << pad(format_number(e.worst_residual), 12)
          << pad(format_number(e.tolerance), 12) << e.samples;
      if (include_timings) out << "  " << format_number(e.wall_ms);
      out << '\n';
    }
  int pass = 0, fail = 0, skipped = 0;
  tally(report, pass, fail, skipped);
  out << "summary: " << pass << " pass, " << fail << " fail, " << skipped
      << " skipped\n";
  return out.str();
}

std::string render_saved_report(const std::string& json_text,
                                bool include_timings) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw geometry_error(errc::parse_error,
                         std::string("report parse error: ") + e.what());
  }
  Report report;
  try {
    for (const auto& sj : root.at("scenarios")) {
      ScenarioResult sc;
      sc.name = sj.value("name", "");
      for (const auto& ej : sj.at("entries"))
        sc.entries.push_back(entry_from_json(sc.name, ej));
      report.scenarios.push_back(std::move(sc));
    }
  } catch (const json::exception& e) {
    throw geometry_error(errc::parse_error,
                         std::string("report structure error: ") + e.what());
  }
  return report_human(report, include_timings);
}

int exit_code(const Report& report) {
  int pass = 0, fail = 0, skipped = 0;
  tally(report, pass, fail, skipped);
  return fail > 0 ? 1 : 0;
}

int exit_code_of_saved(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
    return root.at("summary").at("fail").get<int>() > 0 ? 1 : 0;
  } catch (const json::exception& e) {
    throw geometry_error(errc::parse_error,
                         std::string("report structure error: ") + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw geometry_error(errc::unwritable_output,
                         "cannot open \"" + path + "\" for writing");
  out << content;
  out.flush();
  if (!out)
    throw geometry_error(errc::unwritable_output,
                         "failed writing \"" + path + "\"");
}

}  // namespace confgeo
