#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "confgeo/curve.hpp"
#include "confgeo/surface.hpp"

namespace confgeo {

enum class MapTag { isometry, homothety, conformal, non_conformal };

struct MapClass {
  MapTag tag = MapTag::non_conformal;
  double c = 0.0;  // constant dilation when isometry/homothety
};

const char* to_string(MapTag tag);

// Two patches over one identical parameter domain; the map between the
// surfaces is implicit in the shared coordinates.
class SurfaceCorrespondence {
 public:
  SurfaceCorrespondence(std::shared_ptr<const SurfacePatch> source,
                        std::shared_ptr<const SurfacePatch> target,
                        std::string id = {},
                        std::optional<MapTag> declared = std::nullopt);

  const SurfacePatch& source() const { return *source_; }
  const SurfacePatch& target() const { return *target_; }
  const std::shared_ptr<const SurfacePatch>& source_ptr() const {
    return source_;
  }
  const std::shared_ptr<const SurfacePatch>& target_ptr() const {
    return target_;
  }
  const std::string& id() const { return id_; }
  std::optional<MapTag> declared_class() const { return declared_; }

 private:
  std::shared_ptr<const SurfacePatch> source_;
  std::shared_ptr<const SurfacePatch> target_;
  std::string id_;
  std::optional<MapTag> declared_;
};

// delta = +sqrt(E~/E) with partials; residual records how far F, G are from
// scaling by the same factor (relative to the metric magnitude).
struct DilationField {
  double delta = 1.0;
  double delta_u = 0.0;
  double delta_v = 0.0;
  double residual = 0.0;
};

// The six correction terms added to the source Christoffel symbols by a
// conformal change of metric; same index layout as ChristoffelSymbols.
struct ChristoffelCorrection {
  double t1_11 = 0.0, t2_11 = 0.0;
  double t1_12 = 0.0, t2_12 = 0.0;
  double t1_22 = 0.0, t2_22 = 0.0;
};

// Basis map phi_u -> phi~_u/delta, phi_v -> phi~_v/delta, N -> N~ at a point.
struct TangentExtension {
  SurfaceFrame src;
  Vec3 img_u_over_delta = Vec3::Zero();
  Vec3 img_v_over_delta = Vec3::Zero();
  Vec3 img_normal = Vec3::Zero();

  // Decompose x in {phi_u, phi_v, N}, map the basis, recompose.
  Vec3 apply(const Vec3& x) const;
};

// Throws non-conformal-at-point when the residual exceeds conformal_tol.
DilationField dilation_field(const SurfaceCorrespondence& corr, double u,
                             double v,
                             double conformal_tol = tol::conformal_default);

// Classification over an nu x nv interior grid.
MapClass classify_map(const SurfaceCorrespondence& corr, int nu = 5,
                      int nv = 5, double class_tol = tol::map_class,
                      double conformal_tol = tol::conformal_default);

// Residuals of the six relations E~_u = 2 delta delta_u E + delta^2 E_u etc.
// Order: E_u, E_v, F_u, F_v, G_u, G_v.
std::array<double, 6> metric_derivative_relations(
    const SurfaceCorrespondence& corr, double u, double v);

ChristoffelCorrection christoffel_correction(const MetricJet& mj,
                                             const DilationField& dil);

// max over the six symbols of |Gamma~ (target metric) - (Gamma + correction)|.
double conformal_christoffel_check(const SurfaceCorrespondence& corr, double u,
                                   double v);

TangentExtension tangent_extension(const SurfaceCorrespondence& corr, double u,
                                   double v);

// Extension map applied to an arbitrary ambient vector at (u,v).
Vec3 pushforward_extend(const SurfaceCorrespondence& corr, double u, double v,
                        const Vec3& x);

struct OsculatingImageResult {
  double residual = 0.0;      // |lhs - rhs| of the image-osculating condition
  double beta_image = 0.0;    // sigma~ . b~ (direct verdict)
  double beta_source = 0.0;   // sigma . b
  double delta = 1.0;
  bool image_frame_defined = true;  // false when image curvature vanishes
};

// Condition: sigma~ - delta X(sigma) = (mu/kappa) [u'^2 (phi~_uu - delta
// X(phi_uu)) + 2u'v' (phi~_uv - delta X(phi_uv)) + v'^2 (phi~_vv - delta
// X(phi_vv))], with X the tangent-extension map.
OsculatingImageResult osculating_image_condition(
    const SurfaceCorrespondence& corr, const SurfaceCurve& curve, double s);

struct NormalComponentResult {
  double lhs = 0.0;        // sigma~ . N~ - delta^2 (sigma . N)
  double rhs = 0.0;        // mu (kn~ - delta^2 kn) / kappa
  double residual = 0.0;
  double kn_source = 0.0;
  double kn_image = 0.0;       // second-form quadratic in source derivatives
  double kn_image_true = 0.0;  // same, rescaled to image arc length
  double mu = 0.0;
  bool cond_position_tangent = false;  // mu = 0
  bool cond_asymptotic = false;        // kn = 0 (and image kn = 0)
  bool cond_kn_invariant = false;      // kn~ = delta^2 kn
  double cond_tol = 0.0;
};

NormalComponentResult normal_component_relation(
    const SurfaceCorrespondence& corr, const SurfaceCurve& curve, double s,
    double cond_tol = 1e-6);

struct TangentialComponentResult {
  double lhs = 0.0;  // sigma~_conv . T~ - delta^2 (sigma . T)
  double rhs = 0.0;  // equals h
  double h = 0.0;
  double residual = 0.0;
};

// T = a phi_u + b phi_v; the image-side position uses the convention
// xi~ = xi, mu~/kappa~ = mu/kappa, i.e. sigma~_conv = xi sigma~' +
// (mu/kappa) sigma~''.
TangentialComponentResult tangential_component_relation(
    const SurfaceCorrespondence& corr, const SurfaceCurve& curve, double s,
    double a, double b);

struct GeodesicCurvatureRelation {
  double kg_source = 0.0;
  double kg_image_formal = 0.0;  // intrinsic formula, target metric, source
                                 // parameter derivatives
  double kg_image_true = 0.0;    // image curve at image arc length
  double C = 0.0;                // correction cubic in (u', v')
  double wc = 0.0;               // W * C, the unscaled correction term
  double residual_scaled = 0.0;  // |formal - delta^2 kg - delta^2 W C|
  double residual_raw = 0.0;     // |formal - delta^2 kg - W C|
  double delta = 1.0;
};

GeodesicCurvatureRelation geodesic_curvature_relation(
    const SurfaceCorrespondence& corr, const SurfaceCurve& curve, double s);

}  // namespace confgeo
