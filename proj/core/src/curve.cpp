#include "confgeo/curve.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace confgeo {
namespace {

constexpr double kSpeedMin = 1e-10;  // stationary-point threshold

CurveJet assemble(const ParamJet& pj, const SurfaceJet& sj) {
  CurveJet out;
  out.s = pj.s;
  out.u = pj.u;
  out.v = pj.v;
  out.u1 = pj.u1;
  out.v1 = pj.v1;
  out.u2 = pj.u2;
  out.v2 = pj.v2;
  out.sigma = sj.p;
  out.d1 = sj.pu * pj.u1 + sj.pv * pj.v1;
  out.d2 = sj.pu * pj.u2 + sj.pv * pj.v2 + sj.puu * (pj.u1 * pj.u1) +
           sj.puv * (2.0 * pj.u1 * pj.v1) + sj.pvv * (pj.v1 * pj.v1);
  out.has_third = pj.has3 && sj.has_third;
  if (out.has_third) {
    out.u3 = pj.u3;
    out.v3 = pj.v3;
    out.d3 = sj.pu * pj.u3 + sj.pv * pj.v3 +
             sj.puu * (3.0 * pj.u1 * pj.u2) +
             sj.puv * (3.0 * (pj.u2 * pj.v1 + pj.u1 * pj.v2)) +
             sj.pvv * (3.0 * pj.v1 * pj.v2) +
             sj.puuu * (pj.u1 * pj.u1 * pj.u1) +
             sj.puuv * (3.0 * pj.u1 * pj.u1 * pj.v1) +
             sj.puvv * (3.0 * pj.u1 * pj.v1 * pj.v1) +
             sj.pvvv * (pj.v1 * pj.v1 * pj.v1);
  }
  return out;
}

}  // namespace

SurfaceCurve::SurfaceCurve(std::shared_ptr<const SurfacePatch> patch,
                           ParamFn param, double s0, double s1, std::string id,
                           std::vector<double> params)
    : patch_(std::move(patch)),
      param_(std::move(param)),
      s0_(s0),
      s1_(s1),
      id_(std::move(id)),
      params_(std::move(params)) {}

ParamJet SurfaceCurve::param(double s) const {
  const double slack = 1e-9 * (1.0 + std::abs(s1_ - s0_));
  if (s < s0_ - slack || s > s1_ + slack)
    throw geometry_error(errc::out_of_range_s,
                         "s = " + std::to_string(s) + " outside curve range [" +
                             std::to_string(s0_) + ", " + std::to_string(s1_) +
                             "]");
  return param_(s);
}

CurveJet SurfaceCurve::jet(double s) const { return jet_on(*patch_, s); }

CurveJet SurfaceCurve::jet_on(const SurfacePatch& other, double s) const {
  ParamJet pj = param(s);
  try {
    return assemble(pj, other.jet(pj.u, pj.v));
  } catch (const geometry_error& err) {
    if (err.code() == errc::point_outside_domain)
      throw geometry_error(errc::domain_exit,
                           "curve leaves the patch domain at s = " +
                               std::to_string(s) + ": " + err.what());
    throw;
  }
}

CurveJet curve_jet(const SurfaceCurve& curve, double s) {
  return curve.jet(s);
}

SurfaceCurve arclength_reparam(const SurfaceCurve& curve, int n_samples) {
  struct Table {
    std::vector<double> t;       // original parameter nodes
    std::vector<double> len;     // cumulative arc length
    std::vector<double> speed;   // |sigma'| at nodes
  };
  auto table = std::make_shared<Table>();
  int n = std::max(16, n_samples);
  if (n % 2) ++n;
  const double t0 = curve.s0(), t1 = curve.s1();
  const double h = (t1 - t0) / n;

  auto speed_at = [&curve](double t) {
    double sp = curve.jet(t).d1.norm();
    if (sp < kSpeedMin)
      throw geometry_error(errc::stationary_point,
                           "curve speed below threshold at s = " +
                               std::to_string(t));
    return sp;
  };

  table->t.resize(n + 1);
  table->len.resize(n + 1);
  table->speed.resize(n + 1);
  table->t[0] = t0;
  table->len[0] = 0.0;
  table->speed[0] = speed_at(t0);
  for (int k = 0; k < n; ++k) {
    const double a = t0 + k * h;
    const double b = a + h;
    const double mid = speed_at(a + 0.5 * h);
    table->t[k + 1] = b;
    table->speed[k + 1] = speed_at(b);
    table->len[k + 1] =
        table->len[k] + (h / 6.0) * (table->speed[k] + 4.0 * mid +
                                     table->speed[k + 1]);
  }
  const double total = table->len[n];

  // Invert the cumulative length through its monotone Hermite interpolant.
  auto invert = [table](double target) {
    const auto& T = table->t;
    const auto& L = table->len;
    const auto& F = table->speed;
    const int last = static_cast<int>(T.size()) - 1;
    if (target <= 0.0) return T[0];
    if (target >= L[last]) return T[last];
    int lo = 0, hi = last;
    while (hi - lo > 1) {
      int mid = (lo + hi) / 2;
      (L[mid] <= target ? lo : hi) = mid;
    }
    const double dt = T[lo + 1] - T[lo];
    const double l0 = L[lo], l1 = L[lo + 1];
    const double m0 = F[lo] * dt, m1 = F[lo + 1] * dt;
    // Hermite cubic in x = (t - T[lo]) / dt.
    auto value = [&](double x) {
      const double x2 = x * x, x3 = x2 * x;
      return (2 * x3 - 3 * x2 + 1) * l0 + (x3 - 2 * x2 + x) * m0 +
             (-2 * x3 + 3 * x2) * l1 + (x3 - x2) * m1;
    };
    auto slope = [&](double x) {
      const double x2 = x * x;
      return (6 * x2 - 6 * x) * l0 + (3 * x2 - 4 * x + 1) * m0 +
             (-6 * x2 + 6 * x) * l1 + (3 * x2 - 2 * x) * m1;
    };
    double a = 0.0, b = 1.0;
    double x = (target - l0) / (l1 - l0);
    for (int it = 0; it < 60; ++it) {
      const double f = value(x) - target;
      if (f > 0)
        b = x;
      else
        a = x;
      const double d = slope(x);
      double next = d > 0 ? x - f / d : 0.5 * (a + b);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      if (std::abs(next - x) < 1e-16) {
        x = next;
        break;
      }
      x = next;
    }
    return T[lo] + x * dt;
  };

  auto base = std::make_shared<SurfaceCurve>(curve);
  SurfaceCurve::ParamFn fn = [base, invert](double sbar) -> ParamJet {
    const double t = invert(sbar);
    ParamJet pj = base->param(t);
    CurveJet cj = base->jet(t);
    const double v = cj.d1.norm();
    if (v < kSpeedMin)
      throw geometry_error(errc::stationary_point,
                           "curve speed below threshold at s = " +
                               std::to_string(t));
    const double v1 = cj.d1.dot(cj.d2) / v;
    const double dt1 = 1.0 / v;
    const double dt2 = -v1 / (v * v * v);
    ParamJet out;
    out.s = sbar;
    out.u = pj.u;
    out.v = pj.v;
    out.u1 = pj.u1 * dt1;
    out.v1 = pj.v1 * dt1;
    out.u2 = pj.u2 * dt1 * dt1 + pj.u1 * dt2;
    out.v2 = pj.v2 * dt1 * dt1 + pj.v1 * dt2;
    out.has3 = pj.has3 && cj.has_third;
    if (out.has3) {
      const double v2 =
          (cj.d2.squaredNorm() + cj.d1.dot(cj.d3) - v1 * v1) / v;
      const double dt3 = (3.0 * v1 * v1 - v * v2) / std::pow(v, 5);
      out.u3 = pj.u3 * dt1 * dt1 * dt1 + 3.0 * pj.u2 * dt1 * dt2 + pj.u1 * dt3;
      out.v3 = pj.v3 * dt1 * dt1 * dt1 + 3.0 * pj.v2 * dt1 * dt2 + pj.v1 * dt3;
    }
    return out;
  };

  SurfaceCurve out(curve.patch_ptr(), std::move(fn), 0.0, total, curve.id(),
                   curve.params());
  out.set_unit_speed(true);
  return out;
}

FrenetFrame frenet(const CurveJet& jet) {
  FrenetFrame fr;
  fr.kappa = jet.d2.norm();
  if (fr.kappa < tol::kappa_min)
    throw geometry_error(errc::vanishing_curvature,
                         "curvature below threshold at s = " +
                             std::to_string(jet.s));
  fr.t = jet.d1;
  fr.n = jet.d2 / fr.kappa;
  fr.b = fr.t.cross(fr.n);
  if (jet.has_third) {
    const Vec3 cr = jet.d1.cross(jet.d2);
    fr.tau = cr.dot(jet.d3) / cr.squaredNorm();
  }
  return fr;
}

FrenetFrame frenet_general(const CurveJet& jet) {
  const double v = jet.d1.norm();
  if (v < kSpeedMin)
    throw geometry_error(errc::stationary_point,
                         "curve speed below threshold at s = " +
                             std::to_string(jet.s));
  const Vec3 cr = jet.d1.cross(jet.d2);
  FrenetFrame fr;
  fr.kappa = cr.norm() / (v * v * v);
  if (fr.kappa < tol::kappa_min)
    throw geometry_error(errc::vanishing_curvature,
                         "curvature below threshold at s = " +
                             std::to_string(jet.s));
  fr.t = jet.d1 / v;
  fr.b = cr / cr.norm();
  fr.n = fr.b.cross(fr.t);
  if (jet.has_third) fr.tau = cr.dot(jet.d3) / cr.squaredNorm();
  return fr;
}

double binormal_expansion_check(const CurveJet& jet,
                                const SurfaceJet& patch_jet) {
  const auto& pj = patch_jet;
  const double u1 = jet.u1, v1 = jet.v1, u2 = jet.u2, v2 = jet.v2;
  const Vec3 lhs = jet.d1.cross(jet.d2);
  const Vec3 rhs = (u1 * v2 - u2 * v1) * pj.pu.cross(pj.pv) +
                   (u1 * u1 * u1) * pj.pu.cross(pj.puu) +
                   (2.0 * u1 * u1 * v1) * pj.pu.cross(pj.puv) +
                   (u1 * v1 * v1) * pj.pu.cross(pj.pvv) +
                   (u1 * u1 * v1) * pj.pv.cross(pj.puu) +
                   (2.0 * u1 * v1 * v1) * pj.pv.cross(pj.puv) +
                   (v1 * v1 * v1) * pj.pv.cross(pj.pvv);
  return (lhs - rhs).norm();
}

OsculatingDecomposition osculating_decompose(const CurveJet& jet,
                                             const FrenetFrame& frame) {
  OsculatingDecomposition dec;
  dec.xi = jet.sigma.dot(frame.t);
  dec.mu = jet.sigma.dot(frame.n);
  dec.beta = jet.sigma.dot(frame.b);
  return dec;
}

OsculatingVerdict is_osculating(const SurfaceCurve& curve, double tolerance,
                                int n_samples) {
  OsculatingVerdict out;
  out.osculating = true;
  const int n = std::max(2, n_samples);
  for (int k = 0; k < n; ++k) {
    const double s =
        curve.s0() + (curve.s1() - curve.s0()) * k / double(n - 1);
    try {
      const CurveJet cj = curve.jet(s);
      const FrenetFrame fr = frenet(cj);
      const double beta = cj.sigma.dot(fr.b);
      out.max_beta = std::max(out.max_beta, std::abs(beta));
      if (std::abs(beta) >= tolerance * (1.0 + cj.sigma.norm()))
        out.osculating = false;
      ++out.samples;
    } catch (const geometry_error& err) {
      if (err.code() != errc::vanishing_curvature) throw;
      ++out.skipped;
    }
  }
  return out;
}

double normal_curvature(const CurveJet& jet, const FundamentalForms& forms) {
  return jet.u1 * jet.u1 * forms.L + 2.0 * jet.u1 * jet.v1 * forms.M +
         jet.v1 * jet.v1 * forms.Nc;
}

bool is_asymptotic(const SurfaceCurve& curve, double tolerance,
                   int n_samples) {
  const int n = std::max(2, n_samples);
  for (int k = 0; k < n; ++k) {
    const double s =
        curve.s0() + (curve.s1() - curve.s0()) * k / double(n - 1);
    const CurveJet cj = curve.jet(s);
    const SurfaceJet sj = curve.patch().jet(cj.u, cj.v);
    if (std::abs(normal_curvature(cj, second_form(sj))) >= tolerance)
      return false;
  }
  return true;
}

double geodesic_curvature_def(const CurveJet& jet, const Vec3& normal) {
  return jet.d2.dot(normal.cross(jet.d1));
}

double geodesic_curvature_intrinsic(const CurveJet& jet, const MetricJet& mj,
                                    const ChristoffelSymbols& gamma) {
  const double w2 = mj.W2();
  const double scale = mj.E + mj.G;
  if (w2 < tol::metric_rel * scale * scale)
    throw geometry_error(errc::degenerate_metric,
                         "EG - F^2 vanishes; intrinsic curvature undefined");
  const double u1 = jet.u1, v1 = jet.v1;
  const double bracket = gamma.g2_11 * u1 * u1 * u1 +
                         (2.0 * gamma.g2_12 - gamma.g1_11) * u1 * u1 * v1 +
                         (gamma.g2_22 - 2.0 * gamma.g1_12) * u1 * v1 * v1 -
                         gamma.g1_22 * v1 * v1 * v1 + jet.u1 * jet.v2 -
                         jet.u2 * jet.v1;
  return bracket * std::sqrt(w2);
}

}  // namespace confgeo
