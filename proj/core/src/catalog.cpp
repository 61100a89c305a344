#include "confgeo/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "confgeo/builders.hpp"
#include "confgeo/expression.hpp"

namespace confgeo {
namespace {

constexpr double kPi = std::numbers::pi;

double param_or(const std::vector<double>& params, std::size_t k,
                double fallback) {
  return k < params.size() ? params[k] : fallback;
}

template <class F>
std::shared_ptr<const SurfacePatch> build(F f, Domain domain, DiffMode mode,
                                          std::string id,
                                          std::vector<double> params) {
  if (mode == DiffMode::analytic)
    return std::make_shared<SurfacePatch>(
        make_analytic_patch(f, domain, std::move(id), std::move(params)));
  auto position = [f](double u, double v) -> Vec3 {
    auto w = f(u, v);
    return Vec3(w[0], w[1], w[2]);
  };
  return std::make_shared<SurfacePatch>(domain, position, std::move(id),
                                        std::move(params));
}

// One member of the helicoid/catenoid associate family; theta = 0 is the
// helicoid, theta = pi/2 the catenoid. E = G = cosh^2 v, F = 0 for every
// theta, so any two members are isometric in shared coordinates.
template <class T>
std::array<T, 3> associate_family(double theta, T u, T v) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  const double ct = std::cos(theta), st = std::sin(theta);
  return {ct * (sinh(v) * sin(u)) + st * (cosh(v) * cos(u)),
          ct * (-sinh(v) * cos(u)) + st * (cosh(v) * sin(u)),
          ct * u + st * v};
}

Domain default_domain(const std::string& id) {
  if (id == "plane" || id == "scaled-plane") return {-3.0, 3.0, -3.0, 3.0};
  if (id == "cylinder") return {-7.0, 7.0, -7.0, 7.0};
  if (id == "sphere") return {0.05, kPi - 0.05, -7.0, 7.0};
  if (id == "sphere-stereographic" || id == "stereographic-plane")
    return {-1.5, 1.5, -1.5, 1.5};
  if (id == "exp-plane") return {-1.2, 1.2, -1.2, 1.2};
  if (id == "helicoid" || id == "catenoid" ||
      id == "helicoid-catenoid-associate")
    return {-7.0, 7.0, -1.5, 1.5};
  return {-1.5, 1.5, -1.5, 1.5};  // monge
}

std::shared_ptr<const SurfacePatch> scale_patch(
    const std::shared_ptr<const SurfacePatch>& base, double c) {
  auto position = [base, c](double u, double v) {
    return Vec3(c * base->position(u, v));
  };
  if (base->mode() != DiffMode::analytic)
    return std::make_shared<SurfacePatch>(base->domain(), position,
                                          base->id() + "-scaled",
                                          std::vector<double>{c});
  auto jet = [base, c](double u, double v) {
    SurfaceJet j = base->jet(u, v);
    j.p *= c;
    j.pu *= c;
    j.pv *= c;
    j.puu *= c;
    j.puv *= c;
    j.pvv *= c;
    j.puuu *= c;
    j.puuv *= c;
    j.puvv *= c;
    j.pvvv *= c;
    return j;
  };
  return std::make_shared<SurfacePatch>(base->domain(), position, jet,
                                        base->id() + "-scaled",
                                        std::vector<double>{c});
}

}  // namespace

std::vector<std::string> surface_ids() {
  return {"plane",     "scaled-plane",         "cylinder",
          "sphere",    "sphere-stereographic", "stereographic-plane",
          "exp-plane", "helicoid",             "catenoid",
          "monge"};
}

std::vector<std::string> curve_ids() {
  return {"parameter-line-u", "parameter-line-v", "plane-circle",
          "latitude",         "great-circle",     "helix",
          "polynomial"};
}

std::vector<std::string> correspondence_ids() {
  return {"identity", "scale", "helicoid-catenoid", "exp-plane",
          "sphere-stereographic", "custom"};
}

std::shared_ptr<const SurfacePatch> make_surface(const PatchSpec& spec) {
  const Domain dom = spec.domain.value_or(default_domain(spec.id));
  const DiffMode mode = spec.mode;
  const auto& prm = spec.params;

  if (spec.id == "plane") {
    return build([](auto u, auto v) -> std::array<decltype(u), 3> {
      return {u, v, decltype(u)(0)};
    }, dom, mode, spec.id, prm);
  }
  if (spec.id == "scaled-plane") {
    const double c = param_or(prm, 0, 2.0);
    return build([c](auto u, auto v) -> std::array<decltype(u), 3> {
      return {c * u, c * v, decltype(u)(0)};
    }, dom, mode, spec.id, {c});
  }
  if (spec.id == "cylinder") {
    const double r = param_or(prm, 0, 1.0);
    return build([r](auto u, auto v) -> std::array<decltype(u), 3> {
      using std::cos;
      using std::sin;
      return {r * cos(u), r * sin(u), v};
    }, dom, mode, spec.id, {r});
  }
  if (spec.id == "sphere") {
    const double r = param_or(prm, 0, 1.0);
    return build([r](auto u, auto v) -> std::array<decltype(u), 3> {
      using std::cos;
      using std::sin;
      return {r * sin(u) * cos(v), r * sin(u) * sin(v), r * cos(u)};
    }, dom, mode, spec.id, {r});
  }
  if (spec.id == "sphere-stereographic") {
    return build([](auto u, auto v) -> std::array<decltype(u), 3> {
      auto den = 1 + u * u + v * v;
      return {2 * u / den, 2 * v / den, (u * u + v * v - 1) / den};
    }, dom, mode, spec.id, prm);
  }
  if (spec.id == "stereographic-plane") {
    return build([](auto u, auto v) -> std::array<decltype(u), 3> {
      return {u, v, decltype(u)(0)};
    }, dom, mode, spec.id, prm);
  }
  if (spec.id == "exp-plane") {
    return build([](auto u, auto v) -> std::array<decltype(u), 3> {
      using std::cos;
      using std::exp;
      using std::sin;
      return {exp(u) * cos(v), exp(u) * sin(v), decltype(u)(0)};
    }, dom, mode, spec.id, prm);
  }
  if (spec.id == "helicoid") {
    return build([](auto u, auto v) -> std::array<decltype(u), 3> {
      return associate_family(0.0, u, v);
    }, dom, mode, spec.id, prm);
  }
  if (spec.id == "catenoid") {
    return build([](auto u, auto v) -> std::array<decltype(u), 3> {
      return associate_family(kPi / 2.0, u, v);
    }, dom, mode, spec.id, prm);
  }
  if (spec.id == "helicoid-catenoid-associate") {
    const double theta = param_or(prm, 0, 0.0);
    return build([theta](auto u, auto v) -> std::array<decltype(u), 3> {
      return associate_family(theta, u, v);
    }, dom, mode, spec.id, {theta});
  }
  if (spec.id == "monge") {
    if (spec.expression.empty())
      throw geometry_error(errc::parse_error,
                           "monge patch requires a height expression");
    const Expression f = Expression::parse(spec.expression);
    return build([f](auto u, auto v) -> std::array<decltype(u), 3> {
      return {u, v, f(u, v)};
    }, dom, mode, spec.id, prm);
  }
  std::string known;
  for (const auto& id : surface_ids()) known += " " + id;
  throw geometry_error(errc::unknown_surface_id,
                       "unknown surface \"" + spec.id + "\"; known:" + known);
}

SurfaceCurve make_curve(std::shared_ptr<const SurfacePatch> patch,
                        const CurveSpec& spec) {
  const Domain& dom = patch->domain();
  const double margin = patch->boundary_margin();
  SurfaceCurve::ParamFn fn;
  double s0 = 0.0, s1 = 1.0;

  if (spec.id == "parameter-line-u") {
    const double v0 =
        param_or(spec.params, 0, 0.5 * (dom.v_min + dom.v_max));
    fn = make_param_jet([v0](auto s) -> std::array<decltype(s), 2> {
      return {s, decltype(s)(v0)};
    });
    const double pad = 0.02 * dom.span_u() + margin;
    s0 = dom.u_min + pad;
    s1 = dom.u_max - pad;
  } else if (spec.id == "parameter-line-v") {
    const double u0 =
        param_or(spec.params, 0, 0.5 * (dom.u_min + dom.u_max));
    fn = make_param_jet([u0](auto s) -> std::array<decltype(s), 2> {
      return {decltype(s)(u0), s};
    });
    const double pad = 0.02 * dom.span_v() + margin;
    s0 = dom.v_min + pad;
    s1 = dom.v_max - pad;
  } else if (spec.id == "plane-circle") {
    const double r = param_or(spec.params, 0, 1.0);
    const double cu = param_or(spec.params, 1, 0.0);
    const double cv = param_or(spec.params, 2, 0.0);
    if (r <= 0.0)
      throw geometry_error(errc::parse_error,
                           "plane-circle radius must be positive");
    fn = make_param_jet([r, cu, cv](auto s) -> std::array<decltype(s), 2> {
      using std::cos;
      using std::sin;
      return {cu + r * cos(s / r), cv + r * sin(s / r)};
    });
    s0 = 0.0;
    s1 = 2.0 * kPi * r;
  } else if (spec.id == "latitude") {
    const double u0 = param_or(spec.params, 0, kPi / 4.0);
    const double su = std::sin(u0);
    if (std::abs(su) < 1e-12)
      throw geometry_error(errc::parse_error,
                           "latitude colatitude too close to a pole");
    fn = make_param_jet([u0, su](auto s) -> std::array<decltype(s), 2> {
      return {decltype(s)(u0), s / su};
    });
    s0 = 0.0;
    s1 = 2.0 * kPi * std::abs(su);
  } else if (spec.id == "great-circle") {
    Vec3 axis(param_or(spec.params, 0, 0.0), param_or(spec.params, 1, 0.0),
              param_or(spec.params, 2, 1.0));
    if (axis.norm() < 1e-12)
      throw geometry_error(errc::parse_error,
                           "great-circle axis must be nonzero");
    axis.normalize();
    Vec3 e1 = axis.cross(Vec3::UnitZ());
    if (e1.norm() < 1e-8) e1 = Vec3::UnitX();
    e1.normalize();
    const Vec3 e2 = axis.cross(e1);
    fn = make_param_jet([e1, e2](auto s) -> std::array<decltype(s), 2> {
      using std::acos;
      using std::atan2;
      using std::cos;
      using std::sin;
      auto px = e1.x() * cos(s) + e2.x() * sin(s);
      auto py = e1.y() * cos(s) + e2.y() * sin(s);
      auto pz = e1.z() * cos(s) + e2.z() * sin(s);
      return {acos(pz), atan2(py, px)};
    });
    s0 = 0.0;
    s1 = 2.0 * kPi;
  } else if (spec.id == "helix") {
    const double a = param_or(spec.params, 0, 1.0);
    const double c = param_or(spec.params, 1, 1.0);
    fn = make_param_jet([a, c](auto s) -> std::array<decltype(s), 2> {
      return {a * s, c * s};
    });
    s0 = 0.0;
    s1 = 2.0 * kPi / std::max(std::abs(a), 0.1);
  } else if (spec.id == "polynomial") {
    const std::vector<double> cu = spec.coeffs_u;
    const std::vector<double> cv = spec.coeffs_v;
    if (cu.empty() || cv.empty())
      throw geometry_error(errc::parse_error,
                           "polynomial curve requires coefficients for both "
                           "u(s) and v(s)");
    fn = make_param_jet([cu, cv](auto s) -> std::array<decltype(s), 2> {
      using T = decltype(s);
      auto horner = [&s](const std::vector<double>& c) {
        T acc(c.back());
        for (auto it = c.rbegin() + 1; it != c.rend(); ++it)
          acc = acc * s + T(*it);
        return acc;
      };
      return {horner(cu), horner(cv)};
    });
    s0 = 0.0;
    s1 = 1.0;
  } else {
    std::string known;
    for (const auto& id : curve_ids()) known += " " + id;
    throw geometry_error(errc::unknown_curve_id,
                         "unknown curve \"" + spec.id + "\"; known:" + known);
  }

  if (spec.range) {
    s0 = spec.range->first;
    s1 = spec.range->second;
  }
  SurfaceCurve curve(std::move(patch), std::move(fn), s0, s1, spec.id,
                     spec.params);

  bool unit = true;
  for (int k = 0; k < 5 && unit; ++k) {
    const double s = s0 + (s1 - s0) * k / 4.0;
    try {
      unit = std::abs(curve.jet(s).d1.norm() - 1.0) < 1e-9;
    } catch (const geometry_error&) {
      unit = false;
    }
  }
  curve.set_unit_speed(unit);
  return curve;
}

SurfaceCorrespondence make_correspondence(const CorrespondenceSpec& spec) {
  if (spec.id == "identity") {
    auto base = make_surface(spec.source.value_or(PatchSpec{spec.base}));
    return SurfaceCorrespondence(base, base, spec.id, MapTag::isometry);
  }
  if (spec.id == "scale") {
    auto base = make_surface(spec.source.value_or(PatchSpec{spec.base}));
    auto target = scale_patch(base, spec.c);
    return SurfaceCorrespondence(
        base, target, spec.id,
        spec.c == 1.0 ? MapTag::isometry : MapTag::homothety);
  }
  if (spec.id == "exp-plane") {
    const Domain dom = default_domain("exp-plane");
    auto src = make_surface({.id = "plane", .domain = dom});
    auto tgt = make_surface({.id = "exp-plane", .domain = dom});
    return SurfaceCorrespondence(src, tgt, spec.id, MapTag::conformal);
  }
  if (spec.id == "sphere-stereographic") {
    auto src = make_surface({.id = "sphere-stereographic"});
    auto tgt = make_surface({.id = "stereographic-plane"});
    return SurfaceCorrespondence(src, tgt, spec.id, MapTag::conformal);
  }
  if (spec.id == "helicoid-catenoid") {
    auto src = make_surface({.id = "catenoid"});
    auto tgt = make_surface(
        {.id = "helicoid-catenoid-associate", .params = {spec.theta}});
    return SurfaceCorrespondence(src, tgt, spec.id, MapTag::isometry);
  }
  if (spec.id == "custom") {
    if (!spec.source || !spec.target)
      throw geometry_error(errc::parse_error,
                           "custom correspondence requires source and target "
                           "patch specs");
    return SurfaceCorrespondence(make_surface(*spec.source),
                                 make_surface(*spec.target), spec.id);
  }
  std::string known;
  for (const auto& id : correspondence_ids()) known += " " + id;
  throw geometry_error(errc::unknown_correspondence_id,
                       "unknown correspondence \"" + spec.id +
                           "\"; known:" + known);
}

}  // namespace confgeo
