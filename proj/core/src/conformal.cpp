#include "confgeo/conformal.hpp"

#include <algorithm>
#include <cmath>

namespace confgeo {
namespace {

double fd_step(double x) { return std::max(1e-5, 1e-5 * std::abs(x)); }

// Dilation without the conformality gate; metric errors still propagate.
// Used by operations whose contracts do not list non-conformal-at-point.
DilationField compute_dilation(const SurfaceCorrespondence& corr, double u,
                               double v) {
  const SurfacePatch& src = corr.source();
  const SurfacePatch& tgt = corr.target();
  const MetricJet ms = metric_jet(src, u, v);
  const MetricJet mt = metric_jet(tgt, u, v);

  DilationField d;
  d.delta = std::sqrt(mt.E / ms.E);
  const double d2 = d.delta * d.delta;
  const double denom = 0.5 * (mt.E + mt.G);
  d.residual = std::max(std::abs(mt.F - d2 * ms.F),
                        std::abs(mt.G - d2 * ms.G)) /
               denom;

  if (src.mode() == DiffMode::analytic && tgt.mode() == DiffMode::analytic) {
    d.delta_u = (mt.E_u - d2 * ms.E_u) / (2.0 * d.delta * ms.E);
    d.delta_v = (mt.E_v - d2 * ms.E_v) / (2.0 * d.delta * ms.E);
  } else {
    auto delta_at = [&](double uu, double vv) {
      const double es = first_form(eval_jet(src, uu, vv)).E;
      const double et = first_form(eval_jet(tgt, uu, vv)).E;
      return std::sqrt(et / es);
    };
    const double hu = fd_step(u), hv = fd_step(v);
    d.delta_u = (delta_at(u + hu, v) - delta_at(u - hu, v)) / (2.0 * hu);
    d.delta_v = (delta_at(u, v + hv) - delta_at(u, v - hv)) / (2.0 * hv);
  }
  return d;
}

struct PairJets {
  CurveJet src;   // curve derivatives assembled on the source patch
  CurveJet img;   // same parameter derivatives assembled on the target patch
  SurfaceJet ps;  // source patch jet at (u,v)
  SurfaceJet pt;  // target patch jet at (u,v)
};

PairJets pair_jets(const SurfaceCorrespondence& corr, const SurfaceCurve& curve,
                   double s) {
  PairJets pj;
  pj.src = curve.jet_on(corr.source(), s);
  pj.img = curve.jet_on(corr.target(), s);
  pj.ps = eval_jet(corr.source(), pj.src.u, pj.src.v);
  pj.pt = eval_jet(corr.target(), pj.src.u, pj.src.v);
  return pj;
}

}  // namespace

const char* to_string(MapTag tag) {
  switch (tag) {
    case MapTag::isometry:
      return "isometry";
    case MapTag::homothety:
      return "homothety";
    case MapTag::conformal:
      return "conformal";
    case MapTag::non_conformal:
      return "non-conformal";
  }
  return "unknown";
}

SurfaceCorrespondence::SurfaceCorrespondence(
    std::shared_ptr<const SurfacePatch> source,
    std::shared_ptr<const SurfacePatch> target, std::string id,
    std::optional<MapTag> declared)
    : source_(std::move(source)),
      target_(std::move(target)),
      id_(std::move(id)),
      declared_(declared) {
  const Domain& a = source_->domain();
  const Domain& b = target_->domain();
  const double eps = 1e-12;
  if (std::abs(a.u_min - b.u_min) > eps || std::abs(a.u_max - b.u_max) > eps ||
      std::abs(a.v_min - b.v_min) > eps || std::abs(a.v_max - b.v_max) > eps)
    throw geometry_error(errc::domain_mismatch,
                         "correspondence patches must share one parameter "
                         "domain");
}

Vec3 TangentExtension::apply(const Vec3& x) const {
  Eigen::Matrix3d basis;
  basis.col(0) = src.phi_u;
  basis.col(1) = src.phi_v;
  basis.col(2) = src.normal;
  const Vec3 c = basis.colPivHouseholderQr().solve(x);
  return c(0) * img_u_over_delta + c(1) * img_v_over_delta + c(2) * img_normal;
}

DilationField dilation_field(const SurfaceCorrespondence& corr, double u,
                             double v, double conformal_tol) {
  DilationField d = compute_dilation(corr, u, v);
  if (!(d.residual <= conformal_tol))
    throw geometry_error(errc::non_conformal_at_point,
                         "conformality residual " + std::to_string(d.residual) +
                             " exceeds " + std::to_string(conformal_tol) +
                             " at (" + std::to_string(u) + ", " +
                             std::to_string(v) + ")");
  return d;
}

MapClass classify_map(const SurfaceCorrespondence& corr, int nu, int nv,
                      double class_tol, double conformal_tol) {
  const Domain& dom = corr.source().domain();
  std::vector<double> deltas;
  deltas.reserve(static_cast<std::size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double u = dom.u_min + (i + 1) * dom.span_u() / (nu + 1);
      const double v = dom.v_min + (j + 1) * dom.span_v() / (nv + 1);
      try {
        DilationField d = compute_dilation(corr, u, v);
        if (!(d.residual <= conformal_tol)) return {MapTag::non_conformal, 0.0};
        deltas.push_back(d.delta);
      } catch (const geometry_error&) {
        return {MapTag::non_conformal, 0.0};
      }
    }
  }
  double mean = 0.0;
  for (double d : deltas) mean += d;
  mean /= static_cast<double>(deltas.size());
  double dev_one = 0.0, dev_mean = 0.0;
  for (double d : deltas) {
    dev_one = std::max(dev_one, std::abs(d - 1.0));
    dev_mean = std::max(dev_mean, std::abs(d - mean));
  }
  if (dev_one < class_tol) return {MapTag::isometry, 1.0};
  if (dev_mean < class_tol) return {MapTag::homothety, mean};
  return {MapTag::conformal, 0.0};
}

std::array<double, 6> metric_derivative_relations(
    const SurfaceCorrespondence& corr, double u, double v) {
  const MetricJet ms = metric_jet(corr.source(), u, v);
  const MetricJet mt = metric_jet(corr.target(), u, v);
  const DilationField d = dilation_field(corr, u, v);
  const double dd = d.delta, d2 = dd * dd;
  return {std::abs(mt.E_u - (2.0 * dd * d.delta_u * ms.E + d2 * ms.E_u)),
          std::abs(mt.E_v - (2.0 * dd * d.delta_v * ms.E + d2 * ms.E_v)),
          std::abs(mt.F_u - (2.0 * dd * d.delta_u * ms.F + d2 * ms.F_u)),
          std::abs(mt.F_v - (2.0 * dd * d.delta_v * ms.F + d2 * ms.F_v)),
          std::abs(mt.G_u - (2.0 * dd * d.delta_u * ms.G + d2 * ms.G_u)),
          std::abs(mt.G_v - (2.0 * dd * d.delta_v * ms.G + d2 * ms.G_v))};
}

ChristoffelCorrection christoffel_correction(const MetricJet& mj,
                                             const DilationField& dil) {
  const double W2 = mj.W2();
  if (W2 <= tol::metric_rel * (mj.E + mj.G) * (mj.E + mj.G))
    throw geometry_error(errc::degenerate_metric,
                         "metric is degenerate in christoffel correction");
  const double E = mj.E, F = mj.F, G = mj.G;
  const double du = dil.delta_u, dv = dil.delta_v;
  const double q = dil.delta * W2;
  ChristoffelCorrection t;
  t.t1_11 = (E * G * du - 2.0 * F * F * du + F * E * dv) / q;
  t.t2_11 = (E * F * du - E * E * dv) / q;
  t.t1_12 = (E * G * dv - F * G * du) / q;
  t.t2_12 = (E * G * du - F * E * dv) / q;
  t.t1_22 = (G * F * dv - G * G * du) / q;
  t.t2_22 = (E * G * dv - 2.0 * F * F * dv + F * G * du) / q;
  return t;
}

double conformal_christoffel_check(const SurfaceCorrespondence& corr, double u,
                                   double v) {
  const MetricJet ms = metric_jet(corr.source(), u, v);
  const MetricJet mt = metric_jet(corr.target(), u, v);
  const DilationField d = dilation_field(corr, u, v);
  const ChristoffelSymbols gs = christoffel(ms);
  const ChristoffelSymbols gt = christoffel(mt);
  const ChristoffelCorrection th = christoffel_correction(ms, d);
  double worst = 0.0;
  worst = std::max(worst, std::abs(gt.g1_11 - (gs.g1_11 + th.t1_11)));
  worst = std::max(worst, std::abs(gt.g2_11 - (gs.g2_11 + th.t2_11)));
  worst = std::max(worst, std::abs(gt.g1_12 - (gs.g1_12 + th.t1_12)));
  worst = std::max(worst, std::abs(gt.g2_12 - (gs.g2_12 + th.t2_12)));
  worst = std::max(worst, std::abs(gt.g1_22 - (gs.g1_22 + th.t1_22)));
  worst = std::max(worst, std::abs(gt.g2_22 - (gs.g2_22 + th.t2_22)));
  return worst;
}

TangentExtension tangent_extension(const SurfaceCorrespondence& corr, double u,
                                   double v) {
  const SurfaceJet js = eval_jet(corr.source(), u, v);
  const SurfaceJet jt = eval_jet(corr.target(), u, v);
  const DilationField d = compute_dilation(corr, u, v);
  TangentExtension ext;
  ext.src = surface_frame(js);
  ext.img_u_over_delta = jt.pu / d.delta;
  ext.img_v_over_delta = jt.pv / d.delta;
  ext.img_normal = surface_normal(jt);
  return ext;
}

Vec3 pushforward_extend(const SurfaceCorrespondence& corr, double u, double v,
                        const Vec3& x) {
  return tangent_extension(corr, u, v).apply(x);
}

OsculatingImageResult osculating_image_condition(
    const SurfaceCorrespondence& corr, const SurfaceCurve& curve, double s) {
  const PairJets pj = pair_jets(corr, curve, s);
  const DilationField d = dilation_field(corr, pj.src.u, pj.src.v);
  const TangentExtension ext = tangent_extension(corr, pj.src.u, pj.src.v);

  const FrenetFrame frame = frenet_general(pj.src);
  const OsculatingDecomposition dec = osculating_decompose(pj.src, frame);
  const double u1 = pj.src.u1, v1 = pj.src.v1;

  const Vec3 lhs = pj.img.sigma - d.delta * ext.apply(pj.src.sigma);
  const Vec3 rhs =
      (dec.mu / frame.kappa) *
      (u1 * u1 * (pj.pt.puu - d.delta * ext.apply(pj.ps.puu)) +
       2.0 * u1 * v1 * (pj.pt.puv - d.delta * ext.apply(pj.ps.puv)) +
       v1 * v1 * (pj.pt.pvv - d.delta * ext.apply(pj.ps.pvv)));

  OsculatingImageResult out;
  out.residual = (lhs - rhs).norm();
  out.beta_source = dec.beta;
  out.delta = d.delta;
  try {
    const FrenetFrame fi = frenet_general(pj.img);
    out.beta_image = pj.img.sigma.dot(fi.b);
  } catch (const geometry_error&) {
    out.image_frame_defined = false;
    out.beta_image = 0.0;
  }
  return out;
}

NormalComponentResult normal_component_relation(
    const SurfaceCorrespondence& corr, const SurfaceCurve& curve, double s,
    double cond_tol) {
  const PairJets pj = pair_jets(corr, curve, s);
  const DilationField d = compute_dilation(corr, pj.src.u, pj.src.v);
  const double d2 = d.delta * d.delta;

  const FrenetFrame frame = frenet_general(pj.src);
  const OsculatingDecomposition dec = osculating_decompose(pj.src, frame);
  const Vec3 n_src = surface_normal(pj.ps);
  const Vec3 n_tgt = surface_normal(pj.pt);

  NormalComponentResult out;
  out.kn_source = normal_curvature(pj.src, second_form(pj.ps));
  out.kn_image = normal_curvature(pj.src, second_form(pj.pt));
  out.kn_image_true = out.kn_image / d2;
  out.mu = dec.mu;
  out.lhs = pj.img.sigma.dot(n_tgt) - d2 * pj.src.sigma.dot(n_src);
  out.rhs = dec.mu * (out.kn_image - d2 * out.kn_source) / frame.kappa;
  out.residual = std::abs(out.lhs - out.rhs);
  out.cond_tol = cond_tol;
  out.cond_position_tangent = std::abs(dec.mu) < cond_tol;
  out.cond_asymptotic = std::abs(out.kn_source) < cond_tol &&
                        std::abs(out.kn_image_true) < cond_tol;
  out.cond_kn_invariant = std::abs(out.kn_image - d2 * out.kn_source) < cond_tol;
  return out;
}

TangentialComponentResult tangential_component_relation(
    const SurfaceCorrespondence& corr, const SurfaceCurve& curve, double s,
    double a, double b) {
  const PairJets pj = pair_jets(corr, curve, s);
  const DilationField d = dilation_field(corr, pj.src.u, pj.src.v);
  const double d2 = d.delta * d.delta;

  const FrenetFrame frame = frenet_general(pj.src);
  const OsculatingDecomposition dec = osculating_decompose(pj.src, frame);
  const double xi = dec.xi, mu = dec.mu, kappa = frame.kappa;

  const FundamentalForms fs = first_form(pj.ps);
  const double u1 = pj.src.u1, v1 = pj.src.v1;
  const double E = fs.E, F = fs.F, G = fs.G;
  const double ddu = d.delta * d.delta_u, ddv = d.delta * d.delta_v;

  TangentialComponentResult out;
  out.h = (mu / (2.0 * kappa)) *
          (a * (2.0 * u1 * u1 * ddu * E + 4.0 * u1 * v1 * ddv * E +
                4.0 * v1 * v1 * ddv * F - 2.0 * v1 * v1 * ddu * G) +
           b * (4.0 * u1 * u1 * ddu * F - 2.0 * u1 * u1 * ddv * E +
                4.0 * v1 * u1 * ddu * G + 2.0 * v1 * v1 * ddv * G));

  const Vec3 t_src = a * pj.ps.pu + b * pj.ps.pv;
  const Vec3 t_img = a * pj.pt.pu + b * pj.pt.pv;
  const Vec3 sigma_conv = xi * pj.img.d1 + (mu / kappa) * pj.img.d2;
  out.lhs = sigma_conv.dot(t_img) - d2 * pj.src.sigma.dot(t_src);
  out.rhs = out.h;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

GeodesicCurvatureRelation geodesic_curvature_relation(
    const SurfaceCorrespondence& corr, const SurfaceCurve& curve, double s) {
  const PairJets pj = pair_jets(corr, curve, s);
  const DilationField d = compute_dilation(corr, pj.src.u, pj.src.v);
  const MetricJet ms = metric_jet(corr.source(), pj.src.u, pj.src.v);
  const MetricJet mt = metric_jet(corr.target(), pj.src.u, pj.src.v);
  const ChristoffelSymbols gs = christoffel(ms);
  const ChristoffelSymbols gt = christoffel(mt);
  const ChristoffelCorrection th = christoffel_correction(ms, d);

  GeodesicCurvatureRelation out;
  out.delta = d.delta;
  out.kg_source = geodesic_curvature_intrinsic(pj.src, ms, gs);
  out.kg_image_formal = geodesic_curvature_intrinsic(pj.src, mt, gt);

  const double sp = pj.img.d1.norm();
  out.kg_image_true =
      pj.img.d2.dot(surface_normal(pj.pt).cross(pj.img.d1)) / (sp * sp * sp);

  const double u1 = pj.src.u1, v1 = pj.src.v1;
  out.C = th.t2_11 * u1 * u1 * u1 +
          (2.0 * th.t2_12 - th.t1_11) * u1 * u1 * v1 +
          (th.t2_22 - 2.0 * th.t1_12) * u1 * v1 * v1 -
          th.t1_22 * v1 * v1 * v1;
  out.wc = std::sqrt(ms.W2()) * out.C;

  const double d2 = d.delta * d.delta;
  out.residual_scaled =
      std::abs(out.kg_image_formal - d2 * out.kg_source - d2 * out.wc);
  out.residual_raw =
      std::abs(out.kg_image_formal - d2 * out.kg_source - out.wc);
  return out;
}

}  // namespace confgeo
