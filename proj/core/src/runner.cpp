#include "confgeo/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "confgeo/conformal.hpp"
#include "confgeo/geodesic.hpp"

namespace confgeo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_grid_check(const std::string& c) {
  return c == "conformality" || c == "christoffel" ||
         c == "metric-derivatives";
}

bool is_curve_check(const std::string& c) {
  return c == "tangential" || c == "normal-component" ||
         c == "geodesic-curvature" || c == "osculating-image" ||
         c == "conformal-geodesic-equivalence";
}

double default_tolerance(const std::string& check, bool fd) {
  if (check == "conformality") return tol::conformal_default;
  if (check == "geodesic-invariance") return fd ? 1e-4 : 1e-5;
  return fd ? 1e-4 : 1e-6;
}

std::vector<std::pair<double, double>> grid_points(const Domain& dom, int nu,
                                                   int nv) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j)
      pts.emplace_back(dom.u_min + (i + 1) * dom.span_u() / (nu + 1),
                       dom.v_min + (j + 1) * dom.span_v() / (nv + 1));
  return pts;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    out[static_cast<std::size_t>(k)] = a + (b - a) * k / (n - 1);
  return out;
}

bool sample_skippable(const geometry_error& e) {
  return e.code() == errc::vanishing_curvature ||
         e.code() == errc::stationary_point;
}

// Normalized fold: each sub-residual is measured against its own gate so a
// single worst/tolerance pair still decides the verdict.
struct Fold {
  double worst_norm = 0.0;
  void add(double value, double gate) {
    worst_norm = std::max(worst_norm, value / gate);
  }
};

struct Context {
  const Scenario* sc = nullptr;
  const SurfaceCorrespondence* corr = nullptr;
  const std::vector<std::optional<SurfaceCurve>>* curves = nullptr;
  const std::vector<std::string>* curve_errors = nullptr;
  bool collect_points = false;
};

void finish(ReportEntry& e, const Fold& fold) {
  e.worst_residual = fold.worst_norm * e.tolerance;
  e.verdict = e.worst_residual < e.tolerance ? "pass" : "fail";
}

void skip_entry(ReportEntry& e, const std::string& reason,
                const std::string& message) {
  e.verdict = "skipped";
  e.skip_reason = reason;
  if (!message.empty()) e.labels["error"] = message;
}

void record(ReportEntry& e, bool collect, double s, double u, double v,
            const char* name, double value) {
  if (collect) e.points.push_back({s, u, v, name, value});
}

void check_conformality(const Context& ctx, ReportEntry& e,
                        std::set<std::string>& ops) {
  ops.insert({"classify_map", "dilation_field", "metric_jet", "first_form"});
  const auto pts = grid_points(ctx.corr->source().domain(), ctx.sc->grid.nu,
                               ctx.sc->grid.nv);
  double worst_conf = 0.0, dmin = kInf, dmax = -kInf;
  for (const auto& [u, v] : pts) {
    const DilationField d = dilation_field(*ctx.corr, u, v, kInf);
    worst_conf = std::max(worst_conf, d.residual);
    dmin = std::min(dmin, d.delta);
    dmax = std::max(dmax, d.delta);
    record(e, ctx.collect_points, 0.0, u, v, "conformality_residual",
           d.residual);
    record(e, ctx.collect_points, 0.0, u, v, "delta", d.delta);
  }
  const MapClass cls = classify_map(*ctx.corr, ctx.sc->grid.nu,
                                    ctx.sc->grid.nv, tol::map_class,
                                    e.tolerance);
  e.samples = static_cast<int>(pts.size());
  e.labels["classification"] = to_string(cls.tag);
  const auto declared = ctx.corr->declared_class();
  e.labels["declared"] = declared ? to_string(*declared) : "none";
  e.details["dilation_constant"] = cls.c;
  e.details["delta_min"] = dmin;
  e.details["delta_max"] = dmax;
  e.details["conformality_residual_worst"] = worst_conf;
  Fold fold;
  fold.add(worst_conf, e.tolerance);
  if (declared && *declared != cls.tag) fold.add(2.0 * e.tolerance, e.tolerance);
  finish(e, fold);
}

void check_christoffel(const Context& ctx, ReportEntry& e,
                       std::set<std::string>& ops) {
  ops.insert({"conformal_christoffel_check", "christoffel",
              "christoffel_correction", "metric_jet", "dilation_field"});
  const auto pts = grid_points(ctx.corr->source().domain(), ctx.sc->grid.nu,
                               ctx.sc->grid.nv);
  Fold fold;
  for (const auto& [u, v] : pts) {
    const double r = conformal_christoffel_check(*ctx.corr, u, v);
    fold.add(r, e.tolerance);
    record(e, ctx.collect_points, 0.0, u, v, "christoffel_residual", r);
  }
  e.samples = static_cast<int>(pts.size());
  finish(e, fold);
}

void check_metric_derivatives(const Context& ctx, ReportEntry& e,
                              std::set<std::string>& ops) {
  ops.insert({"metric_derivative_relations", "dot_product_identities",
              "metric_jet", "dilation_field"});
  const bool analytic =
      ctx.corr->source().mode() == DiffMode::analytic &&
      ctx.corr->target().mode() == DiffMode::analytic;
  const double dot_gate = analytic ? 1e-8 : e.tolerance;
  const auto pts = grid_points(ctx.corr->source().domain(), ctx.sc->grid.nu,
                               ctx.sc->grid.nv);
  Fold fold;
  double rel_worst = 0.0, dot_worst = 0.0;
  for (const auto& [u, v] : pts) {
    const auto res = metric_derivative_relations(*ctx.corr, u, v);
    double m = 0.0;
    for (double r : res) m = std::max(m, r);
    rel_worst = std::max(rel_worst, m);
    record(e, ctx.collect_points, 0.0, u, v, "metric_relation_residual", m);

    double point_dot = 0.0;
    for (const SurfacePatch* p : {&ctx.corr->source(), &ctx.corr->target()}) {
      const auto dots =
          dot_product_identities(eval_jet(*p, u, v), metric_jet(*p, u, v));
      for (double r : dots) point_dot = std::max(point_dot, r);
    }
    dot_worst = std::max(dot_worst, point_dot);
    record(e, ctx.collect_points, 0.0, u, v, "dot_identity_residual",
           point_dot);
  }
  fold.add(rel_worst, e.tolerance);
  fold.add(dot_worst, dot_gate);
  e.samples = static_cast<int>(pts.size());
  e.details["metric_relation_worst"] = rel_worst;
  e.details["dot_identity_worst"] = dot_worst;
  e.details["dot_identity_gate"] = dot_gate;
  finish(e, fold);
}

void check_tangential(const Context& ctx, const SurfaceCurve& curve,
                      ReportEntry& e, std::set<std::string>& ops) {
  ops.insert({"tangential_component_relation", "curve_jet", "frenet",
              "osculating_decompose", "first_form", "is_osculating"});
  const OsculatingVerdict ov =
      is_osculating(curve, 1e-6, ctx.sc->grid.samples);
  e.details["beta_source_worst"] = ov.max_beta;
  if (!ov.osculating) {
    skip_entry(e, "not-osculating", "");
    return;
  }
  Fold fold;
  double h_worst = 0.0;
  int usable = 0;
  for (double s : linspace(curve.s0(), curve.s1(), ctx.sc->grid.samples)) {
    ++e.samples;
    try {
      for (const auto& [a, b] :
           {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
        const TangentialComponentResult r =
            tangential_component_relation(*ctx.corr, curve, s, a, b);
        fold.add(r.residual, e.tolerance);
        h_worst = std::max(h_worst, std::abs(r.h));
        const ParamJet p = curve.param(s);
        const char* rn = a == 1.0 ? "tangential_residual_10"
                                  : "tangential_residual_01";
        const char* hn = a == 1.0 ? "h_10" : "h_01";
        record(e, ctx.collect_points, s, p.u, p.v, rn, r.residual);
        record(e, ctx.collect_points, s, p.u, p.v, hn, r.h);
      }
      ++usable;
    } catch (const geometry_error& err) {
      if (!sample_skippable(err)) throw;
      ++e.skipped_samples;
    }
  }
  e.details["h_abs_worst"] = h_worst;
  if (usable == 0) {
    skip_entry(e, "vanishing-curvature", "");
    return;
  }
  finish(e, fold);
}

void check_normal_component(const Context& ctx, const SurfaceCurve& curve,
                            ReportEntry& e, std::set<std::string>& ops) {
  ops.insert({"normal_component_relation", "curve_jet", "frenet",
              "osculating_decompose", "second_form", "normal_curvature",
              "surface_normal", "is_asymptotic", "is_osculating"});
  const OsculatingVerdict ov =
      is_osculating(curve, 1e-6, ctx.sc->grid.samples);
  e.details["beta_source_worst"] = ov.max_beta;
  if (!ov.osculating) {
    skip_entry(e, "not-osculating", "");
    return;
  }
  const bool asym = is_asymptotic(curve, 1e-6, ctx.sc->grid.samples);
  e.details["curve_asymptotic"] = asym ? 1.0 : 0.0;
  Fold fold;
  double lhs_worst = 0.0, beta_image_worst = 0.0;
  double lhs_mu0 = -1.0, lhs_asym = -1.0, lhs_inv = -1.0;
  int n_mu0 = 0, n_asym = 0, n_inv = 0, usable = 0, image_gated = 0;
  for (double s : linspace(curve.s0(), curve.s1(), ctx.sc->grid.samples)) {
    ++e.samples;
    try {
      const NormalComponentResult r =
          normal_component_relation(*ctx.corr, curve, s);
      // The relation decomposes the image position in its own Frenet frame,
      // so it applies only where the image curve is itself osculating.
      const CurveJet img = curve.jet_on(ctx.corr->target(), s);
      double beta_img = 0.0;
      try {
        beta_img = img.sigma.dot(frenet_general(img).b);
      } catch (const geometry_error& err) {
        if (err.code() != errc::vanishing_curvature) throw;
        ++image_gated;
        ++e.skipped_samples;
        continue;
      }
      beta_image_worst = std::max(beta_image_worst, std::abs(beta_img));
      if (std::abs(beta_img) > 1e-6 * (1.0 + img.sigma.norm())) {
        ++image_gated;
        ++e.skipped_samples;
        continue;
      }
      fold.add(r.residual, e.tolerance);
      lhs_worst = std::max(lhs_worst, std::abs(r.lhs));
      if (r.cond_position_tangent) {
        ++n_mu0;
        lhs_mu0 = std::max(lhs_mu0, std::abs(r.lhs));
      }
      if (r.cond_asymptotic) {
        ++n_asym;
        lhs_asym = std::max(lhs_asym, std::abs(r.lhs));
      }
      if (r.cond_kn_invariant) {
        ++n_inv;
        lhs_inv = std::max(lhs_inv, std::abs(r.lhs));
      }
      ++usable;
      const ParamJet p = curve.param(s);
      record(e, ctx.collect_points, s, p.u, p.v, "normal_lhs", r.lhs);
      record(e, ctx.collect_points, s, p.u, p.v, "normal_rhs", r.rhs);
      record(e, ctx.collect_points, s, p.u, p.v, "normal_residual",
             r.residual);
      record(e, ctx.collect_points, s, p.u, p.v, "mu", r.mu);
      record(e, ctx.collect_points, s, p.u, p.v, "kn_source", r.kn_source);
      record(e, ctx.collect_points, s, p.u, p.v, "kn_image_true",
             r.kn_image_true);
    } catch (const geometry_error& err) {
      if (!sample_skippable(err)) throw;
      ++e.skipped_samples;
    }
  }
  e.details["lhs_abs_worst"] = lhs_worst;
  e.details["beta_image_worst"] = beta_image_worst;
  e.details["lhs_when_mu_zero"] = lhs_mu0;
  e.details["lhs_when_asymptotic"] = lhs_asym;
  e.details["lhs_when_kn_invariant"] = lhs_inv;
  e.details["count_mu_zero"] = n_mu0;
  e.details["count_asymptotic"] = n_asym;
  e.details["count_kn_invariant"] = n_inv;
  if (usable == 0) {
    skip_entry(e, image_gated > 0 ? "image-not-osculating"
                                  : "vanishing-curvature",
               "");
    return;
  }
  finish(e, fold);
}

void check_geodesic_curvature(const Context& ctx, const SurfaceCurve& curve,
                              ReportEntry& e, std::set<std::string>& ops) {
  ops.insert({"geodesic_curvature_relation", "geodesic_curvature_intrinsic",
              "geodesic_curvature_def", "christoffel",
              "christoffel_correction", "metric_jet", "curve_jet",
              "surface_normal", "covariant_derivative_defect",
              "classify_map"});
  const MapClass cls = classify_map(*ctx.corr, ctx.sc->grid.nu,
                                    ctx.sc->grid.nv);
  const bool const_delta =
      cls.tag == MapTag::isometry || cls.tag == MapTag::homothety;
  e.labels["classification"] = to_string(cls.tag);

  const VectorFieldAlongCurve tangent_field{[&curve](double t) {
    const ParamJet p = curve.param(t);
    return std::array<double, 4>{p.u1, p.v1, p.u2, p.v2};
  }};

  Fold fold;
  double scaled_worst = 0.0, raw_worst = 0.0, cross_worst = 0.0,
         defect_gap_worst = 0.0;
  for (double s : linspace(curve.s0(), curve.s1(), ctx.sc->grid.samples)) {
    ++e.samples;
    const GeodesicCurvatureRelation r =
        geodesic_curvature_relation(*ctx.corr, curve, s);
    const CurveJet cj = curve.jet_on(ctx.corr->source(), s);
    const Vec3 n = surface_normal(eval_jet(ctx.corr->source(), cj.u, cj.v));
    const double kg_def = geodesic_curvature_def(cj, n);
    const double cross = std::abs(kg_def - r.kg_source);
    const double defect =
        covariant_derivative_defect(ctx.corr->source(), curve, tangent_field,
                                    s);
    const double defect_gap = std::abs(defect - std::abs(kg_def));

    fold.add(r.residual_scaled, e.tolerance);
    if (const_delta) fold.add(r.residual_raw, e.tolerance);
    fold.add(cross, e.tolerance);
    fold.add(defect_gap, e.tolerance);
    scaled_worst = std::max(scaled_worst, r.residual_scaled);
    raw_worst = std::max(raw_worst, r.residual_raw);
    cross_worst = std::max(cross_worst, cross);
    defect_gap_worst = std::max(defect_gap_worst, defect_gap);
    record(e, ctx.collect_points, s, cj.u, cj.v, "kg_source", r.kg_source);
    record(e, ctx.collect_points, s, cj.u, cj.v, "kg_image_formal",
           r.kg_image_formal);
    record(e, ctx.collect_points, s, cj.u, cj.v, "kg_image_true",
           r.kg_image_true);
    record(e, ctx.collect_points, s, cj.u, cj.v, "residual_scaled",
           r.residual_scaled);
    record(e, ctx.collect_points, s, cj.u, cj.v, "residual_raw",
           r.residual_raw);
  }
  e.details["residual_scaled_worst"] = scaled_worst;
  e.details["residual_raw_worst"] = raw_worst;
  e.details["definition_vs_intrinsic_worst"] = cross_worst;
  e.details["covariant_defect_gap_worst"] = defect_gap_worst;
  e.details["constant_delta"] = const_delta ? 1.0 : 0.0;
  finish(e, fold);
}

void check_osculating_image(const Context& ctx, const SurfaceCurve& curve,
                            ReportEntry& e, std::set<std::string>& ops) {
  ops.insert({"osculating_image_condition", "is_osculating",
              "osculating_decompose", "frenet", "curve_jet", "dilation_field",
              "binormal_expansion_check"});
  const OsculatingVerdict ov =
      is_osculating(curve, 1e-6, ctx.sc->grid.samples);
  e.details["beta_source_worst"] = ov.max_beta;
  if (!ov.osculating) {
    skip_entry(e, "not-osculating", "");
    return;
  }
  const bool analytic =
      ctx.corr->source().mode() == DiffMode::analytic &&
      ctx.corr->target().mode() == DiffMode::analytic;
  const double binormal_gate = analytic ? 1e-8 : e.tolerance;

  Fold fold;
  double cond_worst = 0.0, beta_img_worst = 0.0, viol_worst = 0.0,
         bexp_worst = 0.0;
  int usable = 0, undefined_frames = 0;
  for (double s : linspace(curve.s0(), curve.s1(), ctx.sc->grid.samples)) {
    ++e.samples;
    try {
      const OsculatingImageResult r =
          osculating_image_condition(*ctx.corr, curve, s);
      // Theorem content: condition satisfied => image is osculating.
      const double beta = r.image_frame_defined ? std::abs(r.beta_image) : 0.0;
      const double viol = r.residual < e.tolerance ? beta : 0.0;
      fold.add(viol, e.tolerance);
      viol_worst = std::max(viol_worst, viol);
      cond_worst = std::max(cond_worst, r.residual);
      beta_img_worst = std::max(beta_img_worst, beta);
      if (!r.image_frame_defined) ++undefined_frames;

      const CurveJet cj = curve.jet_on(ctx.corr->source(), s);
      const double bexp = binormal_expansion_check(
          cj, eval_jet(ctx.corr->source(), cj.u, cj.v));
      fold.add(bexp, binormal_gate);
      bexp_worst = std::max(bexp_worst, bexp);
      ++usable;
      record(e, ctx.collect_points, s, cj.u, cj.v, "condition_residual",
             r.residual);
      record(e, ctx.collect_points, s, cj.u, cj.v, "beta_image",
             r.beta_image);
    } catch (const geometry_error& err) {
      if (!sample_skippable(err)) throw;
      ++e.skipped_samples;
    }
  }
  e.details["condition_residual_worst"] = cond_worst;
  e.details["beta_image_worst"] = beta_img_worst;
  e.details["implication_violation_worst"] = viol_worst;
  e.details["binormal_expansion_worst"] = bexp_worst;
  e.details["image_frames_undefined"] = undefined_frames;
  if (usable == 0) {
    skip_entry(e, "vanishing-curvature", "");
    return;
  }
  finish(e, fold);
}

void check_equivalence(const Context& ctx, const SurfaceCurve& curve,
                       ReportEntry& e, std::set<std::string>& ops) {
  ops.insert({"conformal_geodesic_residual", "conformal_geodesic_terms",
              "geodesic_residual", "geodesic_rhs", "christoffel",
              "christoffel_correction", "curve_jet", "dilation_field",
              "metric_jet"});
  Fold fold;
  double source_max = 0.0;
  for (double s : linspace(curve.s0(), curve.s1(), ctx.sc->grid.samples)) {
    ++e.samples;
    const auto [c1, c2] = conformal_geodesic_residual(*ctx.corr, curve, s);
    const auto [t1, t2] = geodesic_residual(ctx.corr->target(), curve, s);
    const double gap = std::max(std::abs(c1 - t1), std::abs(c2 - t2));
    fold.add(gap, e.tolerance);
    source_max = std::max({source_max, std::abs(c1), std::abs(c2)});
    const ParamJet p = curve.param(s);
    record(e, ctx.collect_points, s, p.u, p.v, "conf_r1", c1);
    record(e, ctx.collect_points, s, p.u, p.v, "conf_r2", c2);
    record(e, ctx.collect_points, s, p.u, p.v, "target_r1", t1);
    record(e, ctx.collect_points, s, p.u, p.v, "target_r2", t2);
    record(e, ctx.collect_points, s, p.u, p.v, "equivalence_gap", gap);
  }
  e.details["corrected_system_residual_max"] = source_max;
  finish(e, fold);
}

void check_invariance(const Context& ctx, const GeodesicSpec& g,
                      ReportEntry& e, std::set<std::string>& ops) {
  ops.insert({"homothety_invariance_check", "classify_map",
              "integrate_geodesic", "geodesic_rhs", "christoffel",
              "metric_jet"});
  const GeodesicState init = normalize_direction(
      ctx.corr->source(), {g.u0, g.v0, g.du, g.dv});
  IntegratorConfig config;
  config.step = g.step;
  const double r =
      homothety_invariance_check(*ctx.corr, init, g.length, config);
  e.samples = static_cast<int>(std::lround(g.length / g.step)) + 1;
  e.details["length"] = g.length;
  e.details["step"] = g.step;
  Fold fold;
  fold.add(r, e.tolerance);
  finish(e, fold);
}

struct Unit {
  std::string check;
  int curve_index = -1;
  int geodesic_index = -1;
  std::string curve_label;
};

void run_unit(const Context& ctx, const Unit& unit, ReportEntry& e,
              std::set<std::string>& ops) {
  if (unit.curve_index >= 0 &&
      !(*ctx.curves)[static_cast<std::size_t>(unit.curve_index)]) {
    skip_entry(e, "curve-construction-failed",
               (*ctx.curve_errors)[static_cast<std::size_t>(
                   unit.curve_index)]);
    return;
  }
  if (is_curve_check(unit.check) && unit.curve_index < 0) {
    skip_entry(e, "no-curve", "");
    return;
  }
  if (unit.check == "geodesic-invariance" && unit.geodesic_index < 0) {
    skip_entry(e, "no-geodesic", "");
    return;
  }
  const SurfaceCurve* curve =
      unit.curve_index >= 0
          ? &(*ctx.curves)[static_cast<std::size_t>(unit.curve_index)].value()
          : nullptr;
  try {
    if (unit.check == "conformality")
      check_conformality(ctx, e, ops);
    else if (unit.check == "christoffel")
      check_christoffel(ctx, e, ops);
    else if (unit.check == "metric-derivatives")
      check_metric_derivatives(ctx, e, ops);
    else if (unit.check == "tangential")
      check_tangential(ctx, *curve, e, ops);
    else if (unit.check == "normal-component")
      check_normal_component(ctx, *curve, e, ops);
    else if (unit.check == "geodesic-curvature")
      check_geodesic_curvature(ctx, *curve, e, ops);
    else if (unit.check == "osculating-image")
      check_osculating_image(ctx, *curve, e, ops);
    else if (unit.check == "conformal-geodesic-equivalence")
      check_equivalence(ctx, *curve, e, ops);
    else if (unit.check == "geodesic-invariance")
      check_invariance(
          ctx,
          ctx.sc->geodesics[static_cast<std::size_t>(unit.geodesic_index)], e,
          ops);
  } catch (const geometry_error& err) {
    skip_entry(e, to_string(err.code()), err.what());
  } catch (const std::exception& err) {
    skip_entry(e, "internal-error", err.what());
  }
}

int worker_count(const RunOptions& opt, std::size_t tasks) {
  int w = opt.workers;
  if (w <= 0) {
    if (const char* env = std::getenv("CONFGEO_WORKERS")) {
      w = std::atoi(env);
    }
    if (w <= 0) {
      const unsigned hw = std::thread::hardware_concurrency();
      w = static_cast<int>(hw == 0 ? 1 : std::min(hw, 8u));
    }
  }
  return std::max(1, std::min<int>(w, static_cast<int>(tasks)));
}

}  // namespace

ScenarioResult run_scenario(const Scenario& sc, const RunOptions& opt) {
  ScenarioResult out;
  out.name = sc.name;

  std::optional<SurfaceCorrespondence> corr;
  std::string corr_error;
  try {
    corr = make_correspondence(sc.correspondence);
  } catch (const geometry_error& e) {
    corr_error = e.what();
  }
  if (!corr) {
    for (const auto& check : sc.checks) {
      ReportEntry e;
      e.scenario = sc.name;
      e.check = check;
      skip_entry(e, "correspondence-construction-failed", corr_error);
      out.entries.push_back(std::move(e));
    }
    return out;
  }

  // Curves live on the source patch and are forced to unit speed so the
  // arc-length identities apply.
  std::vector<std::optional<SurfaceCurve>> curves;
  std::vector<std::string> curve_errors(sc.curves.size());
  std::vector<std::string> curve_labels;
  for (std::size_t k = 0; k < sc.curves.size(); ++k) {
    try {
      SurfaceCurve c = make_curve(corr->source_ptr(), sc.curves[k]);
      if (!c.unit_speed()) c = arclength_reparam(c);
      curves.emplace_back(std::move(c));
    } catch (const geometry_error& e) {
      curves.emplace_back(std::nullopt);
      curve_errors[k] = e.what();
    }
    int dup = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (sc.curves[j].id == sc.curves[k].id) ++dup;
    curve_labels.push_back(dup == 0 ? sc.curves[k].id
                                    : sc.curves[k].id + "-" +
                                          std::to_string(dup + 1));
  }

  Context ctx;
  ctx.sc = &sc;
  ctx.corr = &*corr;
  ctx.curves = &curves;
  ctx.curve_errors = &curve_errors;
  ctx.collect_points = opt.collect_points;

  const bool fd = corr->source().mode() == DiffMode::finite_difference ||
                  corr->target().mode() == DiffMode::finite_difference;

  std::vector<Unit> units;
  for (const auto& check : sc.checks) {
    if (is_grid_check(check)) {
      units.push_back({check, -1, -1, ""});
    } else if (is_curve_check(check)) {
      if (curves.empty()) {
        units.push_back({check, -1, -1, ""});
      } else {
        for (std::size_t k = 0; k < curves.size(); ++k)
          units.push_back({check, static_cast<int>(k), -1, curve_labels[k]});
      }
    } else {  // geodesic-invariance
      if (sc.geodesics.empty()) {
        units.push_back({check, -1, -1, ""});
      } else {
        for (std::size_t k = 0; k < sc.geodesics.size(); ++k)
          units.push_back({check, -1, static_cast<int>(k),
                           "geodesic-" + std::to_string(k)});
      }
    }
  }

  out.entries.resize(units.size());
  std::vector<std::set<std::string>> unit_ops(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    ReportEntry& e = out.entries[i];
    e.scenario = sc.name;
    e.check = units[i].check;
    e.curve = units[i].curve_label;
    const auto it = sc.tolerances.find(units[i].check);
    e.tolerance = it != sc.tolerances.end()
                      ? it->second
                      : default_tolerance(units[i].check, fd);
  }

  const int workers = worker_count(opt, units.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= units.size()) return;
      const auto t0 = std::chrono::steady_clock::now();
      run_unit(ctx, units[i], out.entries[i], unit_ops[i]);
      out.entries[i].wall_ms =
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - t0)
              .count();
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& s : unit_ops) out.ops.insert(s.begin(), s.end());
  return out;
}

}  // namespace confgeo
