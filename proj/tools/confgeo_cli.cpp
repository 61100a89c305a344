// Command-line front end: catalog listing, scenario verification, single
// geodesic traces, and re-rendering of saved reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "confgeo/catalog.hpp"
#include "confgeo/geodesic.hpp"
#include "confgeo/report.hpp"
#include "confgeo/runner.hpp"
#include "confgeo/scenario.hpp"

namespace {

using namespace confgeo;

int run_catalog() {
  std::cout << "surfaces:\n";
  for (const auto& id : surface_ids()) std::cout << "  " << id << '\n';
  std::cout << "curves:\n";
  for (const auto& id : curve_ids()) std::cout << "  " << id << '\n';
  std::cout << "correspondences:\n";
  for (const auto& id : correspondence_ids()) std::cout << "  " << id << '\n';
  return 0;
}

int run_verify(const std::vector<std::string>& files,
               const std::string& format, const std::string& out_path,
               const std::string& csv_path, int workers, bool timings) {
  RunOptions opt;
  opt.workers = workers;
  opt.collect_points = !csv_path.empty() || format == "csv";

  Report report;
  for (const auto& file : files) {
    const Scenario sc = load_scenario_file(file);
    report.scenarios.push_back(run_scenario(sc, opt));
  }

  std::string rendered;
  if (format == "json")
    rendered = report_json(report, timings);
  else if (format == "csv")
    rendered = report_csv(report);
  else
    rendered = report_human(report, timings);

  if (!out_path.empty())
    write_text_file(out_path, rendered);
  else
    std::cout << rendered;
  if (!csv_path.empty()) write_text_file(csv_path, report_csv(report));
  return exit_code(report);
}

int run_geodesic(const std::string& surface, std::vector<double> params,
                 const std::string& expression, std::vector<double> domain,
                 const std::string& mode, std::vector<double> start,
                 std::vector<double> direction, double length, double step,
                 const std::string& out_path) {
  PatchSpec spec;
  spec.id = surface;
  spec.params = std::move(params);
  spec.expression = expression;
  if (!domain.empty()) {
    if (domain.size() != 4)
      throw geometry_error(errc::parse_error,
                           "--domain needs four numbers u0,u1,v0,v1");
    spec.domain = Domain{domain[0], domain[1], domain[2], domain[3]};
  }
  if (mode == "finite-difference")
    spec.mode = DiffMode::finite_difference;
  else if (mode != "analytic")
    throw geometry_error(errc::parse_error,
                         "--mode must be analytic or finite-difference");
  auto patch = make_surface(spec);

  GeodesicState init{start[0], start[1], direction[0], direction[1]};
  init = normalize_direction(*patch, init);
  IntegratorConfig config;
  config.step = step;
  const GeodesicPath path = integrate_geodesic(*patch, init, length, config);

  std::ostringstream out;
  out << "s,u,v,du,dv,r1,r2\n";
  char buf[160];
  for (std::size_t k = 0; k < path.samples.size(); ++k) {
    double r1 = 0.0, r2 = 0.0;
    if (k > 0 && k + 1 < path.samples.size()) {
      const auto& prev = path.samples[k - 1];
      const auto& mid = path.samples[k];
      const auto& next = path.samples[k + 1];
      const double h1 = mid.s - prev.s, h2 = next.s - mid.s;
      auto d1 = [&](double fm, double f0, double fp) {
        return (h1 * h1 * fp + (h2 * h2 - h1 * h1) * f0 - h2 * h2 * fm) /
               (h1 * h2 * (h1 + h2));
      };
      const double u2 = d1(prev.state.du, mid.state.du, next.state.du);
      const double v2 = d1(prev.state.dv, mid.state.dv, next.state.dv);
      const ChristoffelSymbols g =
          christoffel(metric_jet(*patch, mid.state.u, mid.state.v));
      const auto [a1, a2] = geodesic_rhs(g, mid.state);
      r1 = u2 - a1;
      r2 = v2 - a2;
    }
    const auto& smp = path.samples[k];
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", smp.s,
                  smp.state.u, smp.state.v, smp.state.du, smp.state.dv, r1,
                  r2);
    out << buf;
  }
  std::cerr << "termination: " << to_string(path.reason) << ", length "
            << path.length << "\n";
  if (!out_path.empty())
    write_text_file(out_path, out.str());
  else
    std::cout << out.str();
  return 0;
}

int run_report(const std::string& file, bool timings) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw geometry_error(errc::parse_error,
                         "cannot read report file \"" + file + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::cout << render_saved_report(buf.str(), timings);
  return exit_code_of_saved(buf.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical checks for curve and map invariants on parametric "
               "surfaces"};
  app.require_subcommand(1);

  auto* cat = app.add_subcommand("catalog", "list built-in ids");

  auto* ver = app.add_subcommand("verify", "run scenario files");
  std::vector<std::string> files;
  std::string format = "human", out_path, csv_path;
  int workers = 0;
  bool timings = false;
  ver->add_option("files", files, "scenario json files")
      ->required()
      ->check(CLI::ExistingFile);
  ver->add_option("--format", format, "human, json or csv")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  ver->add_option("--out", out_path, "write the report to a file");
  ver->add_option("--csv", csv_path, "also write per-point samples csv");
  ver->add_option("--workers", workers, "worker threads (default: auto)");
  ver->add_flag("--timings", timings, "include wall times (non-canonical)");

  auto* geo = app.add_subcommand("geodesic", "trace one geodesic to csv");
  std::string surface, expression, mode = "analytic", geo_out;
  std::vector<double> params, domain, start, direction;
  double length = 1.0, step = 1e-3;
  geo->add_option("--surface", surface, "catalog surface id")->required();
  geo->add_option("--params", params, "surface parameters");
  geo->add_option("--expression", expression, "height expression for monge");
  geo->add_option("--domain", domain, "u0 u1 v0 v1 override");
  geo->add_option("--mode", mode, "analytic or finite-difference");
  geo->add_option("--start", start, "initial u v")->required()->expected(2);
  geo->add_option("--direction", direction, "initial du dv")
      ->required()
      ->expected(2);
  geo->add_option("--length", length, "arc length to integrate")->required();
  geo->add_option("--step", step, "integrator step");
  geo->add_option("--out", geo_out, "write csv to a file");

  auto* rep = app.add_subcommand("report", "re-render a saved json report");
  std::string report_file;
  bool rep_timings = false;
  rep->add_option("file", report_file, "report json file")
      ->required()
      ->check(CLI::ExistingFile);
  rep->add_flag("--timings", rep_timings, "include wall times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cat->parsed()) return run_catalog();
    if (ver->parsed())
      return run_verify(files, format, out_path, csv_path, workers, timings);
    if (geo->parsed())
      return run_geodesic(surface, params, expression, domain, mode, start,
                          direction, length, step, geo_out);
    if (rep->parsed()) return run_report(report_file, rep_timings);
  } catch (const confgeo::geometry_error& e) {
    std::cerr << "error (" << confgeo::to_string(e.code()) << "): " << e.what()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
