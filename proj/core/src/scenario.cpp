#include "confgeo/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace confgeo {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw geometry_error(errc::parse_error, msg);
}

void position_of(const std::string& text, std::size_t byte, std::size_t& line,
                 std::size_t& col) {
  line = 1;
  col = 1;
  for (std::size_t i = 0; i + 1 <= byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string nearest_check(const std::string& name) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& c : check_names()) {
    const std::size_t d = edit_distance(name, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok)
      fail("unknown key \"" + item.key() + "\" in " + where);
  }
}

std::vector<double> number_list(const json& j, const char* where) {
  if (!j.is_array()) fail(std::string(where) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) fail(std::string(where) + " must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

PatchSpec parse_patch(const json& j, const char* where) {
  if (!j.is_object()) fail(std::string(where) + " must be an object");
  require_keys(j, where, {"id", "params", "expression", "domain", "mode"});
  PatchSpec p;
  if (!j.contains("id") || !j.at("id").is_string())
    fail(std::string(where) + " needs a string \"id\"");
  p.id = j.at("id").get<std::string>();
  if (j.contains("params")) p.params = number_list(j.at("params"), "params");
  if (j.contains("expression")) {
    if (!j.at("expression").is_string()) fail("expression must be a string");
    p.expression = j.at("expression").get<std::string>();
  }
  if (j.contains("domain")) {
    const auto d = number_list(j.at("domain"), "domain");
    if (d.size() != 4)
      fail("domain must be [u_min, u_max, v_min, v_max]");
    if (!(d[0] < d[1]) || !(d[2] < d[3])) fail("domain bounds must increase");
    p.domain = Domain{d[0], d[1], d[2], d[3]};
  }
  if (j.contains("mode")) {
    const std::string m = j.at("mode").is_string()
                              ? j.at("mode").get<std::string>()
                              : std::string();
    if (m == "analytic")
      p.mode = DiffMode::analytic;
    else if (m == "finite-difference")
      p.mode = DiffMode::finite_difference;
    else
      fail("mode must be \"analytic\" or \"finite-difference\"");
  }
  return p;
}

json patch_to_json(const PatchSpec& p) {
  json j;
  j["id"] = p.id;
  j["params"] = p.params;
  if (!p.expression.empty()) j["expression"] = p.expression;
  if (p.domain)
    j["domain"] = {p.domain->u_min, p.domain->u_max, p.domain->v_min,
                   p.domain->v_max};
  j["mode"] = p.mode == DiffMode::analytic ? "analytic" : "finite-difference";
  return j;
}

Scenario parse_scenario(const json& root) {
  if (!root.is_object()) fail("scenario document must be a json object");
  require_keys(root, "scenario",
               {"name", "correspondence", "curves", "checks", "grid",
                "tolerances", "geodesics"});
  Scenario sc;

  if (!root.contains("name") || !root.at("name").is_string())
    fail("scenario needs a string \"name\"");
  sc.name = root.at("name").get<std::string>();

  if (!root.contains("correspondence"))
    fail("scenario needs a \"correspondence\" object");
  const json& cj = root.at("correspondence");
  if (!cj.is_object()) fail("correspondence must be an object");
  require_keys(cj, "correspondence",
               {"id", "c", "theta", "base", "source", "target"});
  if (!cj.contains("id") || !cj.at("id").is_string())
    fail("correspondence needs a string \"id\"");
  sc.correspondence.id = cj.at("id").get<std::string>();
  if (cj.contains("c")) sc.correspondence.c = cj.at("c").get<double>();
  if (cj.contains("theta"))
    sc.correspondence.theta = cj.at("theta").get<double>();
  if (cj.contains("base")) {
    if (!cj.at("base").is_string()) fail("base must be a surface id string");
    sc.correspondence.base = cj.at("base").get<std::string>();
  }
  if (cj.contains("source"))
    sc.correspondence.source = parse_patch(cj.at("source"), "source patch");
  if (cj.contains("target"))
    sc.correspondence.target = parse_patch(cj.at("target"), "target patch");

  if (root.contains("curves")) {
    if (!root.at("curves").is_array()) fail("curves must be an array");
    for (const json& kj : root.at("curves")) {
      if (!kj.is_object()) fail("each curve must be an object");
      require_keys(kj, "curve", {"id", "params", "coeffs_u", "coeffs_v",
                                 "range"});
      CurveSpec k;
      if (!kj.contains("id") || !kj.at("id").is_string())
        fail("curve needs a string \"id\"");
      k.id = kj.at("id").get<std::string>();
      if (kj.contains("params"))
        k.params = number_list(kj.at("params"), "curve params");
      if (kj.contains("coeffs_u"))
        k.coeffs_u = number_list(kj.at("coeffs_u"), "coeffs_u");
      if (kj.contains("coeffs_v"))
        k.coeffs_v = number_list(kj.at("coeffs_v"), "coeffs_v");
      if (kj.contains("range")) {
        const auto r = number_list(kj.at("range"), "range");
        if (r.size() != 2 || !(r[0] < r[1]))
          fail("range must be [s0, s1] with s0 < s1");
        k.range = std::make_pair(r[0], r[1]);
      }
      sc.curves.push_back(std::move(k));
    }
  }

  if (!root.contains("checks") || !root.at("checks").is_array() ||
      root.at("checks").empty())
    fail("scenario needs a non-empty \"checks\" array");
  for (const json& c : root.at("checks")) {
    if (!c.is_string()) fail("checks must be strings");
    const std::string name = c.get<std::string>();
    const auto& known = check_names();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw geometry_error(errc::unknown_check,
                           "unknown check \"" + name + "\"; did you mean \"" +
                               nearest_check(name) + "\"?");
    if (std::find(sc.checks.begin(), sc.checks.end(), name) ==
        sc.checks.end())
      sc.checks.push_back(name);
  }

  if (root.contains("grid")) {
    const json& gj = root.at("grid");
    if (!gj.is_object()) fail("grid must be an object");
    require_keys(gj, "grid", {"nu", "nv", "samples"});
    if (gj.contains("nu")) sc.grid.nu = gj.at("nu").get<int>();
    if (gj.contains("nv")) sc.grid.nv = gj.at("nv").get<int>();
    if (gj.contains("samples")) sc.grid.samples = gj.at("samples").get<int>();
    if (sc.grid.nu < 1 || sc.grid.nv < 1 || sc.grid.samples < 2)
      fail("grid needs nu >= 1, nv >= 1, samples >= 2");
  }

  if (root.contains("tolerances")) {
    const json& tj = root.at("tolerances");
    if (!tj.is_object()) fail("tolerances must be an object");
    for (const auto& item : tj.items()) {
      const auto& known = check_names();
      if (std::find(known.begin(), known.end(), item.key()) == known.end())
        throw geometry_error(errc::unknown_check,
                             "unknown check \"" + item.key() +
                                 "\" in tolerances; did you mean \"" +
                                 nearest_check(item.key()) + "\"?");
      const double t = item.value().get<double>();
      if (!(t > 0.0)) fail("tolerance for " + item.key() + " must be > 0");
      sc.tolerances[item.key()] = t;
    }
  }

  if (root.contains("geodesics")) {
    if (!root.at("geodesics").is_array()) fail("geodesics must be an array");
    for (const json& gj : root.at("geodesics")) {
      if (!gj.is_object()) fail("each geodesic must be an object");
      require_keys(gj, "geodesic", {"start", "direction", "length", "step"});
      GeodesicSpec g;
      if (!gj.contains("start") || !gj.contains("direction") ||
          !gj.contains("length"))
        fail("geodesic needs start, direction and length");
      const auto st = number_list(gj.at("start"), "start");
      const auto di = number_list(gj.at("direction"), "direction");
      if (st.size() != 2 || di.size() != 2)
        fail("start and direction must be [u, v] pairs");
      g.u0 = st[0];
      g.v0 = st[1];
      g.du = di[0];
      g.dv = di[1];
      g.length = gj.at("length").get<double>();
      if (!(g.length > 0.0)) fail("geodesic length must be > 0");
      if (gj.contains("step")) g.step = gj.at("step").get<double>();
      if (!(g.step > 0.0)) fail("geodesic step must be > 0");
      sc.geodesics.push_back(g);
    }
  }
  return sc;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "conformality",       "christoffel",
      "metric-derivatives", "tangential",
      "normal-component",   "geodesic-curvature",
      "osculating-image",   "geodesic-invariance",
      "conformal-geodesic-equivalence"};
  return names;
}

Scenario load_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 0, col = 0;
    position_of(text, e.byte, line, col);
    fail("scenario parse error at line " + std::to_string(line) +
         ", column " + std::to_string(col) + ": " + e.what());
  }
  Scenario sc;
  try {
    sc = parse_scenario(root);
  } catch (const json::exception& e) {
    fail(std::string("scenario structure error: ") + e.what());
  }
  // Validate construction: catalog ids resolve, domains agree, curves build.
  const SurfaceCorrespondence corr = make_correspondence(sc.correspondence);
  for (const auto& k : sc.curves) make_curve(corr.source_ptr(), k);
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail("cannot read scenario file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_scenario(buf.str());
  } catch (const geometry_error& e) {
    throw geometry_error(e.code(), path + ": " + e.what());
  }
}

std::string serialize_scenario(const Scenario& sc) {
  json root;
  root["name"] = sc.name;

  json cj;
  cj["id"] = sc.correspondence.id;
  cj["base"] = sc.correspondence.base;
  cj["c"] = sc.correspondence.c;
  cj["theta"] = sc.correspondence.theta;
  if (sc.correspondence.source)
    cj["source"] = patch_to_json(*sc.correspondence.source);
  if (sc.correspondence.target)
    cj["target"] = patch_to_json(*sc.correspondence.target);
  root["correspondence"] = cj;

  root["curves"] = json::array();
  for (const auto& k : sc.curves) {
    json kj;
    kj["id"] = k.id;
    kj["params"] = k.params;
    if (!k.coeffs_u.empty()) kj["coeffs_u"] = k.coeffs_u;
    if (!k.coeffs_v.empty()) kj["coeffs_v"] = k.coeffs_v;
    if (k.range) kj["range"] = {k.range->first, k.range->second};
    root["curves"].push_back(kj);
  }

  root["checks"] = sc.checks;
  root["grid"] = {{"nu", sc.grid.nu},
                  {"nv", sc.grid.nv},
                  {"samples", sc.grid.samples}};
  root["tolerances"] = json::object();
  for (const auto& [k, v] : sc.tolerances) root["tolerances"][k] = v;

  root["geodesics"] = json::array();
  for (const auto& g : sc.geodesics) {
    json gj;
    gj["start"] = {g.u0, g.v0};
    gj["direction"] = {g.du, g.dv};
    gj["length"] = g.length;
    gj["step"] = g.step;
    root["geodesics"].push_back(gj);
  }
  return root.dump(2) + "\n";
}

}  // namespace confgeo
