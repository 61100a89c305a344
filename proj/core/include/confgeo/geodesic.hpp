#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "confgeo/conformal.hpp"
#include "confgeo/curve.hpp"
#include "confgeo/surface.hpp"

namespace confgeo {

struct GeodesicState {
  double u = 0.0, v = 0.0;
  double du = 0.0, dv = 0.0;
};

enum class Termination { length_reached, domain_exit, step_failure };

const char* to_string(Termination reason);

struct GeodesicPath {
  struct Sample {
    double s = 0.0;
    GeodesicState state;
  };
  std::vector<Sample> samples;
  double length = 0.0;
  double step = 0.0;
  Termination reason = Termination::length_reached;
};

struct IntegratorConfig {
  double step = 1e-3;
  long max_steps = 10000000;
};

struct ConformalGeodesicTerms {
  double f1 = 0.0;
  double f2 = 0.0;
};

// A field a(s) phi_u + b(s) phi_v along a curve, with derivatives a', b'.
struct VectorFieldAlongCurve {
  // s -> (a, b, a', b')
  std::function<std::array<double, 4>(double)> coeffs;
};

// Riemannian norm of the covariant derivative of the field along the curve.
double covariant_derivative_defect(const SurfacePatch& patch,
                                   const SurfaceCurve& curve,
                                   const VectorFieldAlongCurve& field,
                                   double s);

// (u'', v'') of the geodesic system: u'' = -(G1_11 u'^2 + 2 G1_12 u'v' +
// G1_22 v'^2), v'' analogous with upper index 2.
std::pair<double, double> geodesic_rhs(const ChristoffelSymbols& gamma,
                                       const GeodesicState& state);

// Rescale (du, dv) so E du^2 + 2F du dv + G dv^2 = 1.
GeodesicState normalize_direction(const SurfacePatch& patch,
                                  const GeodesicState& state);

// Metric speed sqrt(E u'^2 + 2F u'v' + G v'^2) of a state.
double metric_speed(const MetricJet& mj, const GeodesicState& state);

// Fixed-step classical RK4; terminates at length, domain boundary, or step
// failure. Throws nonunit-initial-speed when the start violates the
// arc-length precondition.
GeodesicPath integrate_geodesic(const SurfacePatch& patch,
                                const GeodesicState& initial, double length,
                                const IntegratorConfig& config = {});

// Left-hand sides of the geodesic system on the curve's jet.
std::pair<double, double> geodesic_residual(const SurfacePatch& patch,
                                            const SurfaceCurve& curve,
                                            double s);

ConformalGeodesicTerms conformal_geodesic_terms(const MetricJet& mj,
                                                const DilationField& dil,
                                                const GeodesicState& state);

// Source geodesic system plus (f1, f2); equal to the target-metric
// residuals by the Christoffel correction identity.
std::pair<double, double> conformal_geodesic_residual(
    const SurfaceCorrespondence& corr, const SurfaceCurve& curve, double s);

// Integrates a source geodesic and returns the max target-side residual of
// the shared-parameter image. Throws wrong-map-class unless the
// correspondence is an isometry or homothety.
double homothety_invariance_check(const SurfaceCorrespondence& corr,
                                  const GeodesicState& initial, double length,
                                  const IntegratorConfig& config = {});

// Max |geodesic_residual| over a stored path, via central differences of the
// stored parameter velocities (self-consistency oracle).
std::pair<double, double> path_residual_max(const SurfacePatch& patch,
                                            const GeodesicPath& path);

}  // namespace confgeo
