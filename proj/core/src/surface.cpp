#include "confgeo/surface.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace confgeo {
namespace {

// Central-difference steps: first derivatives scale with the coordinate,
// second derivatives use a fixed wider step.
double step1(double x) { return std::max(1e-5, 1e-5 * std::abs(x)); }
constexpr double kStep2 = 1e-4;

void check_regular(const SurfaceJet& jet) {
  if (jet.pu.cross(jet.pv).norm() <= tol::regularity)
    throw geometry_error(
        errc::degenerate_patch,
        "patch is not regular at (u,v) = (" + std::to_string(jet.u) + ", " +
            std::to_string(jet.v) + "): |phi_u x phi_v| below threshold");
}

}  // namespace

SurfacePatch::SurfacePatch(Domain domain, PositionFn position,
                           JetFn analytic_jet, std::string id,
                           std::vector<double> params)
    : domain_(domain),
      position_(std::move(position)),
      analytic_jet_(std::move(analytic_jet)),
      mode_(analytic_jet_ ? DiffMode::analytic : DiffMode::finite_difference),
      id_(std::move(id)),
      params_(std::move(params)) {}

SurfacePatch::SurfacePatch(Domain domain, PositionFn position, std::string id,
                           std::vector<double> params)
    : SurfacePatch(domain, std::move(position), nullptr, std::move(id),
                   std::move(params)) {}

double SurfacePatch::boundary_margin() const {
  if (mode_ == DiffMode::analytic) return 0.0;
  double far_u = std::max(std::abs(domain_.u_min), std::abs(domain_.u_max));
  double far_v = std::max(std::abs(domain_.v_min), std::abs(domain_.v_max));
  return 2.0 * std::max({step1(far_u), step1(far_v), kStep2});
}

void SurfacePatch::require_inside(double u, double v) const {
  if (!domain_.contains(u, v, boundary_margin()))
    throw geometry_error(errc::point_outside_domain,
                         "(u,v) = (" + std::to_string(u) + ", " +
                             std::to_string(v) + ") is outside the patch " +
                             (id_.empty() ? "domain" : id_ + " domain") +
                             (mode_ == DiffMode::finite_difference
                                  ? " (finite-difference clearance included)"
                                  : ""));
}

Vec3 SurfacePatch::position(double u, double v) const {
  if (!domain_.contains(u, v))
    throw geometry_error(errc::point_outside_domain,
                         "(u,v) = (" + std::to_string(u) + ", " +
                             std::to_string(v) + ") is outside the domain");
  return position_(u, v);
}

SurfaceJet SurfacePatch::jet(double u, double v) const {
  require_inside(u, v);
  if (mode_ == DiffMode::analytic) {
    SurfaceJet out = analytic_jet_(u, v);
    check_regular(out);
    return out;
  }
  const double hu = step1(u);
  const double hv = step1(v);
  const double h2 = kStep2;
  const auto& P = position_;
  SurfaceJet out;
  out.u = u;
  out.v = v;
  out.p = P(u, v);
  out.pu = (P(u + hu, v) - P(u - hu, v)) / (2.0 * hu);
  out.pv = (P(u, v + hv) - P(u, v - hv)) / (2.0 * hv);
  out.puu = (P(u + h2, v) - 2.0 * out.p + P(u - h2, v)) / (h2 * h2);
  out.pvv = (P(u, v + h2) - 2.0 * out.p + P(u, v - h2)) / (h2 * h2);
  out.puv = (P(u + h2, v + h2) - P(u + h2, v - h2) - P(u - h2, v + h2) +
             P(u - h2, v - h2)) /
            (4.0 * h2 * h2);
  out.has_third = false;
  check_regular(out);
  return out;
}

SurfaceJet eval_jet(const SurfacePatch& patch, double u, double v) {
  return patch.jet(u, v);
}

FundamentalForms first_form(const SurfaceJet& jet) {
  FundamentalForms f;
  f.E = jet.pu.dot(jet.pu);
  f.F = jet.pu.dot(jet.pv);
  f.G = jet.pv.dot(jet.pv);
  double w2 = f.E * f.G - f.F * f.F;
  double scale = f.E + f.G;
  if (w2 < tol::metric_rel * scale * scale)
    throw geometry_error(errc::degenerate_metric,
                         "EG - F^2 vanishes at (u,v) = (" +
                             std::to_string(jet.u) + ", " +
                             std::to_string(jet.v) + ")");
  f.W = std::sqrt(w2);
  return f;
}

Vec3 surface_normal(const SurfaceJet& jet) {
  Vec3 cross = jet.pu.cross(jet.pv);
  double len = cross.norm();
  if (len <= tol::regularity)
    throw geometry_error(errc::degenerate_patch,
                         "normal undefined: |phi_u x phi_v| below threshold");
  return cross / len;
}

FundamentalForms second_form(const SurfaceJet& jet) {
  FundamentalForms f = first_form(jet);
  Vec3 n = surface_normal(jet);
  f.L = jet.puu.dot(n);
  f.M = jet.puv.dot(n);
  f.Nc = jet.pvv.dot(n);
  return f;
}

SurfaceFrame surface_frame(const SurfaceJet& jet) {
  SurfaceFrame fr;
  fr.phi_u = jet.pu;
  fr.phi_v = jet.pv;
  fr.normal = surface_normal(jet);
  return fr;
}

MetricJet metric_jet(const SurfacePatch& patch, double u, double v) {
  SurfaceJet jet = patch.jet(u, v);
  MetricJet mj;
  mj.E = jet.pu.dot(jet.pu);
  mj.F = jet.pu.dot(jet.pv);
  mj.G = jet.pv.dot(jet.pv);
  if (patch.mode() == DiffMode::analytic) {
    mj.E_u = 2.0 * jet.puu.dot(jet.pu);
    mj.E_v = 2.0 * jet.puv.dot(jet.pu);
    mj.F_u = jet.puu.dot(jet.pv) + jet.pu.dot(jet.puv);
    mj.F_v = jet.puv.dot(jet.pv) + jet.pu.dot(jet.pvv);
    mj.G_u = 2.0 * jet.puv.dot(jet.pv);
    mj.G_v = 2.0 * jet.pvv.dot(jet.pv);
    return mj;
  }
  // Central differences of the coefficients themselves.
  auto coeffs = [&patch](double uu, double vv) {
    SurfaceJet j = patch.jet(uu, vv);
    return std::array<double, 3>{j.pu.dot(j.pu), j.pu.dot(j.pv),
                                 j.pv.dot(j.pv)};
  };
  const double hu = std::max(1e-5, 1e-5 * std::abs(u));
  const double hv = std::max(1e-5, 1e-5 * std::abs(v));
  auto up = coeffs(u + hu, v), um = coeffs(u - hu, v);
  auto vp = coeffs(u, v + hv), vm = coeffs(u, v - hv);
  mj.E_u = (up[0] - um[0]) / (2.0 * hu);
  mj.F_u = (up[1] - um[1]) / (2.0 * hu);
  mj.G_u = (up[2] - um[2]) / (2.0 * hu);
  mj.E_v = (vp[0] - vm[0]) / (2.0 * hv);
  mj.F_v = (vp[1] - vm[1]) / (2.0 * hv);
  mj.G_v = (vp[2] - vm[2]) / (2.0 * hv);
  return mj;
}

ChristoffelSymbols christoffel(const MetricJet& mj) {
  double w2 = mj.W2();
  double scale = mj.E + mj.G;
  if (w2 < tol::metric_rel * scale * scale)
    throw geometry_error(errc::degenerate_metric,
                         "EG - F^2 vanishes; Christoffel symbols undefined");
  double d = 2.0 * w2;
  ChristoffelSymbols g;
  g.g1_11 = (mj.G * mj.E_u - 2.0 * mj.F * mj.F_u + mj.F * mj.E_v) / d;
  g.g2_11 = (2.0 * mj.E * mj.F_u - mj.E * mj.E_v - mj.F * mj.E_u) / d;
  g.g1_12 = (mj.G * mj.E_v - mj.F * mj.G_u) / d;
  g.g2_12 = (mj.E * mj.G_u - mj.F * mj.E_v) / d;
  g.g1_22 = (2.0 * mj.G * mj.F_v - mj.G * mj.G_u - mj.F * mj.G_v) / d;
  g.g2_22 = (mj.E * mj.G_v - 2.0 * mj.F * mj.F_v + mj.F * mj.G_u) / d;
  return g;
}

std::array<double, 6> dot_product_identities(const SurfaceJet& jet,
                                             const MetricJet& mj) {
  return {
      std::abs(jet.puu.dot(jet.pu) - 0.5 * mj.E_u),
      std::abs(jet.puu.dot(jet.pv) - (mj.F_u - 0.5 * mj.E_v)),
      std::abs(jet.puv.dot(jet.pu) - 0.5 * mj.E_v),
      std::abs(jet.puv.dot(jet.pv) - 0.5 * mj.G_u),
      std::abs(jet.pvv.dot(jet.pv) - 0.5 * mj.G_v),
      std::abs(jet.pvv.dot(jet.pu) - (mj.F_v - 0.5 * mj.G_u)),
  };
}

}  // namespace confgeo
