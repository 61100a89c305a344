#include "confgeo/geodesic.hpp"

#include <cmath>

namespace confgeo {
namespace {

struct Deriv {
  double du, dv, ddu, ddv;
};

Deriv system_rhs(const SurfacePatch& patch, const GeodesicState& y) {
  const ChristoffelSymbols g = christoffel(metric_jet(patch, y.u, y.v));
  const auto [a1, a2] = geodesic_rhs(g, y);
  return {y.du, y.dv, a1, a2};
}

GeodesicState advance(const GeodesicState& y, const Deriv& d, double h) {
  return {y.u + h * d.du, y.v + h * d.dv, y.du + h * d.ddu, y.dv + h * d.ddv};
}

bool finite(const GeodesicState& y) {
  return std::isfinite(y.u) && std::isfinite(y.v) && std::isfinite(y.du) &&
         std::isfinite(y.dv);
}

// Classical RK4 step; throws whatever the patch evaluation throws.
GeodesicState rk4_step(const SurfacePatch& patch, const GeodesicState& y,
                       double h) {
  const Deriv k1 = system_rhs(patch, y);
  const Deriv k2 = system_rhs(patch, advance(y, k1, 0.5 * h));
  const Deriv k3 = system_rhs(patch, advance(y, k2, 0.5 * h));
  const Deriv k4 = system_rhs(patch, advance(y, k3, h));
  return {y.u + h / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du),
          y.v + h / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv),
          y.du + h / 6.0 * (k1.ddu + 2.0 * k2.ddu + 2.0 * k3.ddu + k4.ddu),
          y.dv + h / 6.0 * (k1.ddv + 2.0 * k2.ddv + 2.0 * k3.ddv + k4.ddv)};
}

}  // namespace

const char* to_string(Termination reason) {
  switch (reason) {
    case Termination::length_reached:
      return "length-reached";
    case Termination::domain_exit:
      return "domain-exit";
    case Termination::step_failure:
      return "step-failure";
  }
  return "unknown";
}

double covariant_derivative_defect(const SurfacePatch& patch,
                                   const SurfaceCurve& curve,
                                   const VectorFieldAlongCurve& field,
                                   double s) {
  const CurveJet cj = curve.jet_on(patch, s);
  const MetricJet mj = metric_jet(patch, cj.u, cj.v);
  const ChristoffelSymbols g = christoffel(mj);
  const auto [a, b, a1, b1] = field.coeffs(s);
  const double u1 = cj.u1, v1 = cj.v1;
  const double c1 =
      a1 + g.g1_11 * a * u1 + g.g1_12 * (a * v1 + b * u1) + g.g1_22 * b * v1;
  const double c2 =
      b1 + g.g2_11 * a * u1 + g.g2_12 * (a * v1 + b * u1) + g.g2_22 * b * v1;
  const double q = mj.E * c1 * c1 + 2.0 * mj.F * c1 * c2 + mj.G * c2 * c2;
  return std::sqrt(std::max(q, 0.0));
}

std::pair<double, double> geodesic_rhs(const ChristoffelSymbols& g,
                                       const GeodesicState& y) {
  const double uu = y.du * y.du, uv = y.du * y.dv, vv = y.dv * y.dv;
  return {-(g.g1_11 * uu + 2.0 * g.g1_12 * uv + g.g1_22 * vv),
          -(g.g2_11 * uu + 2.0 * g.g2_12 * uv + g.g2_22 * vv)};
}

GeodesicState normalize_direction(const SurfacePatch& patch,
                                  const GeodesicState& state) {
  const MetricJet mj = metric_jet(patch, state.u, state.v);
  const double speed = metric_speed(mj, state);
  if (speed < 1e-10)
    throw geometry_error(errc::stationary_point,
                         "direction has vanishing metric speed");
  return {state.u, state.v, state.du / speed, state.dv / speed};
}

double metric_speed(const MetricJet& mj, const GeodesicState& y) {
  const double q = mj.E * y.du * y.du + 2.0 * mj.F * y.du * y.dv +
                   mj.G * y.dv * y.dv;
  return std::sqrt(std::max(q, 0.0));
}

GeodesicPath integrate_geodesic(const SurfacePatch& patch,
                                const GeodesicState& initial, double length,
                                const IntegratorConfig& config) {
  const double speed = metric_speed(metric_jet(patch, initial.u, initial.v),
                                    initial);
  if (std::abs(speed - 1.0) > 1e-6)
    throw geometry_error(errc::nonunit_initial_speed,
                         "initial metric speed " + std::to_string(speed) +
                             " is not 1; normalize the direction first");

  GeodesicPath path;
  path.step = config.step;
  path.samples.push_back({0.0, initial});

  GeodesicState y = initial;
  double s = 0.0;
  long steps = 0;
  while (s < length - 1e-12) {
    if (steps++ >= config.max_steps) {
      path.reason = Termination::step_failure;
      path.length = s;
      return path;
    }
    const double h = std::min(config.step, length - s);
    GeodesicState next;
    try {
      next = rk4_step(patch, y, h);
    } catch (const geometry_error& e) {
      path.reason = e.code() == errc::point_outside_domain
                        ? Termination::domain_exit
                        : Termination::step_failure;
      path.length = s;
      return path;
    }
    if (!finite(next)) {
      path.reason = Termination::step_failure;
      path.length = s;
      return path;
    }
    y = next;
    s += h;
    path.samples.push_back({s, y});
  }
  path.reason = Termination::length_reached;
  path.length = s;
  return path;
}

std::pair<double, double> geodesic_residual(const SurfacePatch& patch,
                                            const SurfaceCurve& curve,
                                            double s) {
  const CurveJet cj = curve.jet_on(patch, s);
  const ChristoffelSymbols g = christoffel(metric_jet(patch, cj.u, cj.v));
  const auto [a1, a2] = geodesic_rhs(g, {cj.u, cj.v, cj.u1, cj.v1});
  return {cj.u2 - a1, cj.v2 - a2};
}

ConformalGeodesicTerms conformal_geodesic_terms(const MetricJet& mj,
                                                const DilationField& dil,
                                                const GeodesicState& y) {
  const ChristoffelCorrection t = christoffel_correction(mj, dil);
  const double uu = y.du * y.du, uv = y.du * y.dv, vv = y.dv * y.dv;
  return {t.t1_11 * uu + 2.0 * t.t1_12 * uv + t.t1_22 * vv,
          t.t2_11 * uu + 2.0 * t.t2_12 * uv + t.t2_22 * vv};
}

std::pair<double, double> conformal_geodesic_residual(
    const SurfaceCorrespondence& corr, const SurfaceCurve& curve, double s) {
  const CurveJet cj = curve.jet_on(corr.source(), s);
  const MetricJet ms = metric_jet(corr.source(), cj.u, cj.v);
  const DilationField d = dilation_field(corr, cj.u, cj.v);
  const auto [r1, r2] = geodesic_residual(corr.source(), curve, s);
  const ConformalGeodesicTerms f =
      conformal_geodesic_terms(ms, d, {cj.u, cj.v, cj.u1, cj.v1});
  return {r1 + f.f1, r2 + f.f2};
}

std::pair<double, double> path_residual_max(const SurfacePatch& patch,
                                            const GeodesicPath& path) {
  double worst1 = 0.0, worst2 = 0.0;
  for (std::size_t k = 1; k + 1 < path.samples.size(); ++k) {
    const auto& prev = path.samples[k - 1];
    const auto& mid = path.samples[k];
    const auto& next = path.samples[k + 1];
    const double h1 = mid.s - prev.s, h2 = next.s - mid.s;
    // Three-point first derivative on a possibly nonuniform stencil.
    auto d1 = [&](double fm, double f0, double fp) {
      return (h1 * h1 * fp + (h2 * h2 - h1 * h1) * f0 - h2 * h2 * fm) /
             (h1 * h2 * (h1 + h2));
    };
    const double u2 = d1(prev.state.du, mid.state.du, next.state.du);
    const double v2 = d1(prev.state.dv, mid.state.dv, next.state.dv);
    const ChristoffelSymbols g =
        christoffel(metric_jet(patch, mid.state.u, mid.state.v));
    const auto [a1, a2] = geodesic_rhs(g, mid.state);
    worst1 = std::max(worst1, std::abs(u2 - a1));
    worst2 = std::max(worst2, std::abs(v2 - a2));
  }
  return {worst1, worst2};
}

double homothety_invariance_check(const SurfaceCorrespondence& corr,
                                  const GeodesicState& initial, double length,
                                  const IntegratorConfig& config) {
  const MapClass cls = classify_map(corr);
  if (cls.tag != MapTag::isometry && cls.tag != MapTag::homothety)
    throw geometry_error(errc::wrong_map_class,
                         std::string("map classifies as ") +
                             to_string(cls.tag) +
                             "; geodesic invariance needs an isometry or "
                             "homothety");
  const GeodesicPath path = integrate_geodesic(corr.source(), initial, length,
                                               config);
  const auto [r1, r2] = path_residual_max(corr.target(), path);
  return std::max(r1, r2);
}

}  // namespace confgeo
