#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "confgeo/types.hpp"

namespace confgeo {

// Position and partial derivatives of a patch at one parameter point.
// Third-order partials are present only when has_third is set (analytic mode).
struct SurfaceJet {
  double u = 0.0;
  double v = 0.0;
  Vec3 p = Vec3::Zero();
  Vec3 pu = Vec3::Zero();
  Vec3 pv = Vec3::Zero();
  Vec3 puu = Vec3::Zero();
  Vec3 puv = Vec3::Zero();
  Vec3 pvv = Vec3::Zero();
  bool has_third = false;
  Vec3 puuu = Vec3::Zero();
  Vec3 puuv = Vec3::Zero();
  Vec3 puvv = Vec3::Zero();
  Vec3 pvvv = Vec3::Zero();
};

enum class DiffMode { analytic, finite_difference };

// First and second fundamental form coefficients. W = sqrt(EG - F^2).
// Nc is the (2,2) second-form coefficient; N alone names the unit normal.
struct FundamentalForms {
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;
  double W = 0.0;
  double L = 0.0;
  double M = 0.0;
  double Nc = 0.0;
};

// Metric coefficients with their first parameter derivatives.
struct MetricJet {
  double E = 0.0, F = 0.0, G = 0.0;
  double E_u = 0.0, E_v = 0.0;
  double F_u = 0.0, F_v = 0.0;
  double G_u = 0.0, G_v = 0.0;
  double W2() const { return E * G - F * F; }
};

// Christoffel symbols of the second kind; g<k>_<ij> is the k-th component
// of the covariant derivative of phi_i along phi_j.
struct ChristoffelSymbols {
  double g1_11 = 0.0, g2_11 = 0.0;
  double g1_12 = 0.0, g2_12 = 0.0;
  double g1_22 = 0.0, g2_22 = 0.0;
};

// Moving frame (phi_u, phi_v, unit normal) at a parameter point.
struct SurfaceFrame {
  Vec3 phi_u = Vec3::Zero();
  Vec3 phi_v = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
};

// A parametric patch over a rectangular domain. Derivatives come either from
// an analytic jet callback or from central finite differences of positions.
class SurfacePatch {
 public:
  using PositionFn = std::function<Vec3(double, double)>;
  using JetFn = std::function<SurfaceJet(double, double)>;

  SurfacePatch(Domain domain, PositionFn position, JetFn analytic_jet,
               std::string id = {}, std::vector<double> params = {});
  SurfacePatch(Domain domain, PositionFn position, std::string id = {},
               std::vector<double> params = {});

  const Domain& domain() const { return domain_; }
  DiffMode mode() const { return mode_; }
  const std::string& id() const { return id_; }
  const std::vector<double>& params() const { return params_; }

  // Interior clearance required before derivatives can be formed.
  double boundary_margin() const;

  Vec3 position(double u, double v) const;
  SurfaceJet jet(double u, double v) const;

 private:
  void require_inside(double u, double v) const;

  Domain domain_;
  PositionFn position_;
  JetFn analytic_jet_;
  DiffMode mode_;
  std::string id_;
  std::vector<double> params_;
};

// Full derivative jet at (u,v); throws point-outside-domain or
// degenerate-patch.
SurfaceJet eval_jet(const SurfacePatch& patch, double u, double v);

// E, F, G, W from a jet; throws degenerate-metric when EG - F^2 collapses.
FundamentalForms first_form(const SurfaceJet& jet);

// Unit normal phi_u x phi_v / |phi_u x phi_v|; throws degenerate-patch.
Vec3 surface_normal(const SurfaceJet& jet);

// Adds L, M, Nc to the first-form coefficients.
FundamentalForms second_form(const SurfaceJet& jet);

// Frame (phi_u, phi_v, N) at the jet's base point.
SurfaceFrame surface_frame(const SurfaceJet& jet);

// Metric coefficients and their u/v derivatives at (u,v). In analytic mode
// the derivatives come from second-order partials of the position; in
// finite-difference mode the coefficients themselves are central-differenced.
MetricJet metric_jet(const SurfacePatch& patch, double u, double v);

// Christoffel symbols from a metric jet; throws degenerate-metric.
ChristoffelSymbols christoffel(const MetricJet& mj);

// Residuals of the six relations tying second partials of the position to
// metric derivatives, e.g. |phi_uu . phi_u - E_u/2|. Order:
// uu.u, uu.v, uv.u, uv.v, vv.v, vv.u.
std::array<double, 6> dot_product_identities(const SurfaceJet& jet,
                                             const MetricJet& mj);

}  // namespace confgeo
