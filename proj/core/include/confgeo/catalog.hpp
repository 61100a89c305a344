#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confgeo/conformal.hpp"
#include "confgeo/curve.hpp"
#include "confgeo/surface.hpp"

namespace confgeo {

// Request for a catalog or Monge surface.
struct PatchSpec {
  std::string id;                  // catalog name, or "monge"
  std::vector<double> params;      // family parameters (e.g. scale factor)
  std::string expression;          // Monge height expression
  std::optional<Domain> domain;    // override of the catalog default
  DiffMode mode = DiffMode::analytic;
};

// Request for a catalog curve on a given patch.
struct CurveSpec {
  std::string id;
  std::vector<double> params;      // family parameters
  std::vector<double> coeffs_u;    // polynomial family only
  std::vector<double> coeffs_v;
  std::optional<std::pair<double, double>> range;  // s-interval override
};

// Request for a catalog or custom correspondence.
struct CorrespondenceSpec {
  std::string id;                  // catalog name, or "custom"
  double c = 2.0;                  // scale factor for "scale"
  double theta = 0.0;              // associate-family angle
  std::string base = "plane";      // base surface for identity/scale
  std::optional<PatchSpec> source; // custom pairs
  std::optional<PatchSpec> target;
};

std::vector<std::string> surface_ids();
std::vector<std::string> curve_ids();
std::vector<std::string> correspondence_ids();

// Throws unknown-surface-id / parse-error (Monge expression).
std::shared_ptr<const SurfacePatch> make_surface(const PatchSpec& spec);

// Throws unknown-curve-id; unit-speed flag is set when five probe samples
// have |sigma'| within 1e-9 of 1.
SurfaceCurve make_curve(std::shared_ptr<const SurfacePatch> patch,
                        const CurveSpec& spec);

// Throws unknown-correspondence-id / domain-mismatch.
SurfaceCorrespondence make_correspondence(const CorrespondenceSpec& spec);

}  // namespace confgeo
