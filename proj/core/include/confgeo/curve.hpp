#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confgeo/surface.hpp"

namespace confgeo {

// Parameter-plane jet of a curve s -> (u(s), v(s)), derivatives to order 3.
struct ParamJet {
  double s = 0.0;
  double u = 0.0, v = 0.0;
  double u1 = 0.0, v1 = 0.0;
  double u2 = 0.0, v2 = 0.0;
  bool has3 = true;  // u3, v3 valid
  double u3 = 0.0, v3 = 0.0;
};

// Ambient jet of a surface curve at one parameter value. d3 is valid only
// when has_third is set (requires third-order patch partials).
struct CurveJet {
  double s = 0.0;
  double u = 0.0, v = 0.0;
  double u1 = 0.0, v1 = 0.0;
  double u2 = 0.0, v2 = 0.0;
  double u3 = 0.0, v3 = 0.0;
  Vec3 sigma = Vec3::Zero();
  Vec3 d1 = Vec3::Zero();
  Vec3 d2 = Vec3::Zero();
  bool has_third = false;
  Vec3 d3 = Vec3::Zero();
};

// Frenet apparatus at a point. Torsion is absent when no third-order data
// exists (finite-difference patches).
struct FrenetFrame {
  Vec3 t = Vec3::Zero();
  Vec3 n = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  double kappa = 0.0;
  std::optional<double> tau;
};

// Coefficients of sigma = xi t + mu n + beta b.
struct OsculatingDecomposition {
  double xi = 0.0;
  double mu = 0.0;
  double beta = 0.0;
};

struct CurvatureSample {
  double kn = 0.0;
  double kg = 0.0;
};

// A curve s -> (u(s), v(s)) inside a patch domain.
class SurfaceCurve {
 public:
  using ParamFn = std::function<ParamJet(double)>;

  SurfaceCurve(std::shared_ptr<const SurfacePatch> patch, ParamFn param,
               double s0, double s1, std::string id = {},
               std::vector<double> params = {});

  const SurfacePatch& patch() const { return *patch_; }
  const std::shared_ptr<const SurfacePatch>& patch_ptr() const {
    return patch_;
  }
  double s0() const { return s0_; }
  double s1() const { return s1_; }
  const std::string& id() const { return id_; }
  const std::vector<double>& params() const { return params_; }

  bool unit_speed() const { return unit_speed_; }
  void set_unit_speed(bool flag) { unit_speed_ = flag; }

  // Parameter-plane jet; throws out-of-range-s.
  ParamJet param(double s) const;

  // Ambient jet on the curve's own patch.
  CurveJet jet(double s) const;

  // Ambient jet of the same parameter curve traced on another patch
  // sharing the domain (the image curve of a correspondence).
  CurveJet jet_on(const SurfacePatch& other, double s) const;

 private:
  std::shared_ptr<const SurfacePatch> patch_;
  ParamFn param_;
  double s0_, s1_;
  bool unit_speed_ = false;
  std::string id_;
  std::vector<double> params_;
};

// Chain-rule assembly of the ambient jet; throws out-of-range-s/domain-exit.
CurveJet curve_jet(const SurfaceCurve& curve, double s);

// Returns a unit-speed reparameterization over [0, total length].
// Speed is integrated by composite Simpson over n_samples subintervals and
// inverted through the monotone cubic Hermite interpolant of the length.
SurfaceCurve arclength_reparam(const SurfaceCurve& curve, int n_samples = 512);

// Frenet frame of a unit-speed jet; throws vanishing-curvature.
FrenetFrame frenet(const CurveJet& jet);

// Frenet data for an arbitrary-speed jet (used on image curves, which are
// unit-speed only up to the dilation factor).
FrenetFrame frenet_general(const CurveJet& jet);

// Norm of (expanded cross-product formula) - sigma' x sigma''. The expansion
// uses the unnormalized phi_u x phi_v in its leading term; that is the form
// that holds exactly.
double binormal_expansion_check(const CurveJet& jet,
                                const SurfaceJet& patch_jet);

OsculatingDecomposition osculating_decompose(const CurveJet& jet,
                                             const FrenetFrame& frame);

struct OsculatingVerdict {
  bool osculating = false;
  double max_beta = 0.0;
  int samples = 0;
  int skipped = 0;  // vanishing-curvature samples
};

// True iff |beta| < tolerance * (1 + |sigma|) at every sampled s.
OsculatingVerdict is_osculating(const SurfaceCurve& curve, double tolerance,
                                int n_samples = 101);

// Second-form quadratic in (u', v'); unit-speed jet.
double normal_curvature(const CurveJet& jet, const FundamentalForms& forms);

// True iff max |kappa_n| < tolerance across samples.
bool is_asymptotic(const SurfaceCurve& curve, double tolerance,
                   int n_samples = 101);

// Triple product sigma'' . (N x sigma'); unit-speed jet.
double geodesic_curvature_def(const CurveJet& jet, const Vec3& normal);

// Intrinsic expression: [G2_11 u'^3 + (2 G2_12 - G1_11) u'^2 v'
//   + (G2_22 - 2 G1_12) u' v'^2 - G1_22 v'^3 + u'v'' - u''v'] * W.
double geodesic_curvature_intrinsic(const CurveJet& jet, const MetricJet& mj,
                                    const ChristoffelSymbols& gamma);

}  // namespace confgeo
