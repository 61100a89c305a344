#pragma once

#include <map>
#include <string>
#include <vector>

#include "confgeo/catalog.hpp"

namespace confgeo {

// Point lattice and per-curve sample counts for scenario checks.
struct GridSpec {
  int nu = 5;
  int nv = 5;
  int samples = 101;
};

// One geodesic trace request; the direction is normalized at run time.
struct GeodesicSpec {
  double u0 = 0.0, v0 = 0.0;
  double du = 1.0, dv = 0.0;
  double length = 1.0;
  double step = 1e-3;
};

// Declarative description of one verification run. Loading validates the
// construction (catalog ids, domains, check names) but stores only specs so
// round-trip serialization is exact.
struct Scenario {
  std::string name;
  CorrespondenceSpec correspondence;
  std::vector<CurveSpec> curves;
  std::vector<std::string> checks;
  GridSpec grid;
  std::map<std::string, double> tolerances;  // check name -> override
  std::vector<GeodesicSpec> geodesics;
};

// The nine check names in canonical order.
const std::vector<std::string>& check_names();

// Parse + validate a scenario document; rejects unknown keys and unknown
// check names (suggesting the nearest valid one).
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

// Canonical serialization: sorted keys, defaults materialized; loading the
// output and serializing again is byte-identical.
std::string serialize_scenario(const Scenario& sc);

}  // namespace confgeo
