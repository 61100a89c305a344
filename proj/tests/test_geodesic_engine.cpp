#include <cmath>
#include <numbers>

#include "confgeo/catalog.hpp"
#include "confgeo/conformal.hpp"
#include "confgeo/curve.hpp"
#include "confgeo/geodesic.hpp"
#include "confgeo/surface.hpp"
#include "doctest.h"

using namespace confgeo;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("geodesic right-hand side on the sphere") {
  auto sphere = make_surface({.id = "sphere"});
  auto gamma = christoffel(metric_jet(*sphere, kPi / 4, 0.0));
  auto [ddu, ddv] = geodesic_rhs(gamma, {kPi / 4, 0.0, 0.0, std::sqrt(2.0)});
  CHECK(ddu == doctest::Approx(1.0).epsilon(1e-12));  // sin u cos u dv^2
  CHECK(std::abs(ddv) < 1e-12);
}

TEST_CASE("direction normalization against the metric") {
  auto sphere = make_surface({.id = "sphere"});
  auto st = normalize_direction(*sphere, {kPi / 4, 0.0, 0.0, 1.0});
  CHECK(st.dv == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(metric_speed(metric_jet(*sphere, st.u, st.v), st) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(normalize_direction(*sphere, {kPi / 4, 0.0, 0.0, 0.0}),
                  geometry_error);
}

TEST_CASE("plane geodesics are straight lines") {
  auto plane = make_surface({.id = "plane"});
  auto path = integrate_geodesic(*plane, {0.0, 0.0, 1.0, 0.0}, 1.0);
  CHECK(path.reason == Termination::length_reached);
  CHECK(path.length == doctest::Approx(1.0).epsilon(1e-12));
  const auto& last = path.samples.back().state;
  CHECK(std::abs(last.u - 1.0) < 1e-10);
  CHECK(std::abs(last.v) < 1e-10);
  CHECK(std::abs(last.du - 1.0) < 1e-10);
}

TEST_CASE("sphere equator closes after one revolution") {
  auto sphere = make_surface({.id = "sphere"});
  auto path = integrate_geodesic(*sphere, {kPi / 2, 0.0, 0.0, 1.0}, 2 * kPi);
  const auto& last = path.samples.back().state;
  CHECK(std::abs(last.u - kPi / 2) < 1e-6);
  CHECK(std::abs(last.v - 2 * kPi) < 1e-6);
  Vec3 p0 = sphere->position(kPi / 2, 0.0);
  Vec3 p1 = sphere->position(last.u, last.v);
  CHECK((p1 - p0).norm() < 1e-6);
}

TEST_CASE("oblique sphere geodesics stay on a great-circle plane") {
  auto sphere = make_surface({.id = "sphere"});
  auto init = normalize_direction(*sphere, {kPi / 2, 0.0, 1.0, 1.0});
  auto path = integrate_geodesic(*sphere, init, 2 * kPi);
  // Plane through the origin spanned by position and velocity at s = 0.
  Vec3 p0 = sphere->position(init.u, init.v);
  auto j0 = eval_jet(*sphere, init.u, init.v);
  Vec3 vel = init.du * j0.pu + init.dv * j0.pv;
  Vec3 nrm = p0.cross(vel).normalized();
  double worst = 0.0, drift = 0.0;
  for (const auto& s : path.samples) {
    worst = std::max(worst,
                     std::abs(nrm.dot(sphere->position(s.state.u, s.state.v))));
    drift = std::max(drift,
                     std::abs(metric_speed(metric_jet(*sphere, s.state.u,
                                                      s.state.v),
                                           s.state) -
                              1.0));
  }
  CHECK(worst < 1e-6);
  CHECK(drift < 1e-8);
}

TEST_CASE("integrator converges at fourth order") {
  auto sphere = make_surface({.id = "sphere"});
  auto init = normalize_direction(*sphere, {kPi / 2, 0.0, 1.0, 1.0});
  auto closure_error = [&](double h) {
    IntegratorConfig cfg;
    cfg.step = h;
    auto path = integrate_geodesic(*sphere, init, 2 * kPi, cfg);
    const auto& last = path.samples.back().state;
    return (sphere->position(last.u, last.v) - sphere->position(init.u, init.v))
        .norm();
  };
  const double e1 = closure_error(2 * kPi / 100);
  const double e2 = closure_error(2 * kPi / 200);
  const double factor = e1 / e2;
  CHECK(factor > 12.0);
  CHECK(factor < 20.0);
}

TEST_CASE("integration stops at the domain boundary") {
  auto plane = make_surface({.id = "plane"});
  auto path = integrate_geodesic(*plane, {0.0, 0.0, 1.0, 0.0}, 10.0);
  CHECK(path.reason == Termination::domain_exit);
  CHECK(path.length < 10.0);
  CHECK(path.samples.back().state.u <= 3.0 + 1e-9);
  CHECK(path.samples.back().state.u > 2.9);
}

TEST_CASE("initial speed must be unit") {
  auto sphere = make_surface({.id = "sphere"});
  CHECK_THROWS_AS(integrate_geodesic(*sphere, {kPi / 4, 0.0, 0.0, 1.0}, 1.0),
                  geometry_error);
  try {
    integrate_geodesic(*sphere, {kPi / 4, 0.0, 0.0, 1.0}, 1.0);
  } catch (const geometry_error& e) {
    CHECK(e.code() == errc::nonunit_initial_speed);
  }
}

TEST_CASE("geodesic residual distinguishes geodesics from latitudes") {
  auto sphere = make_surface({.id = "sphere"});
  auto lat = make_curve(sphere, {.id = "latitude", .params = {kPi / 4}});
  auto [r1, r2] = geodesic_residual(*sphere, lat, 0.5);
  CHECK(r1 == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(r2) < 1e-9);

  auto gc = make_curve(sphere, {.id = "great-circle", .params = {0.0, 0.0, 1.0}});
  auto [g1, g2] = geodesic_residual(*sphere, gc, 0.5);
  CHECK(std::abs(g1) < 1e-9);
  CHECK(std::abs(g2) < 1e-9);
}

TEST_CASE("covariant derivative defect of the tangent field") {
  auto sphere = make_surface({.id = "sphere"});
  auto lat = make_curve(sphere, {.id = "latitude", .params = {kPi / 4}});
  VectorFieldAlongCurve tangent{[&lat](double s) {
    auto p = lat.param(s);
    return std::array<double, 4>{p.u1, p.v1, p.u2, p.v2};
  }};
  // For a unit-speed curve the defect equals |kappa_g|: cot(pi/4) = 1.
  CHECK(covariant_derivative_defect(*sphere, lat, tangent, 0.7) ==
        doctest::Approx(1.0).epsilon(1e-9));

  auto gc = make_curve(sphere, {.id = "great-circle", .params = {0.0, 0.0, 1.0}});
  VectorFieldAlongCurve gct{[&gc](double s) {
    auto p = gc.param(s);
    return std::array<double, 4>{p.u1, p.v1, p.u2, p.v2};
  }};
  CHECK(covariant_derivative_defect(*sphere, gc, gct, 0.7) < 1e-9);
}

TEST_CASE("conformal correction terms on the exponential map") {
  auto corr = make_correspondence({.id = "exp-plane"});
  auto dil = dilation_field(corr, 0.0, 0.0);
  auto mj = metric_jet(corr.source(), 0.0, 0.0);
  auto t10 = conformal_geodesic_terms(mj, dil, {0.0, 0.0, 1.0, 0.0});
  CHECK(t10.f1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(t10.f2) < 1e-9);
  auto t01 = conformal_geodesic_terms(mj, dil, {0.0, 0.0, 0.0, 1.0});
  CHECK(t01.f1 == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(t01.f2) < 1e-9);
}

TEST_CASE("corrected source system equals the target system") {
  auto corr = make_correspondence({.id = "exp-plane"});
  // A straight source line is a source geodesic, so the corrected residual
  // reduces to the correction term itself.
  auto line = make_curve(corr.source_ptr(), {.id = "polynomial",
                                             .coeffs_u = {0.0, 1.0},
                                             .coeffs_v = {0.0},
                                             .range = {{-1.0, 1.0}}});
  auto [c1, c2] = conformal_geodesic_residual(corr, line, 0.0);
  CHECK(c1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(c2) < 1e-9);
  auto [t1, t2] = geodesic_residual(corr.target(), line, 0.0);
  CHECK(std::abs(c1 - t1) < 1e-12);
  CHECK(std::abs(c2 - t2) < 1e-12);

  // The equivalence holds along curved paths as well.
  auto circ = make_curve(corr.source_ptr(),
                         {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  for (int i = 0; i < 50; ++i) {
    double s = circ.s1() * i / 50.0;
    auto [a1, a2] = conformal_geodesic_residual(corr, circ, s);
    auto [b1, b2] = geodesic_residual(corr.target(), circ, s);
    CHECK(std::abs(a1 - b1) < 1e-10);
    CHECK(std::abs(a2 - b2) < 1e-10);
  }
}

TEST_CASE("geodesics are preserved by homotheties and isometries") {
  auto hom = make_correspondence({.id = "scale", .c = 2.0, .base = "sphere"});
  CHECK(homothety_invariance_check(hom, {kPi / 2, 0.0, 0.0, 1.0}, 2 * kPi) <
        1e-5);

  auto iso = make_correspondence({.id = "helicoid-catenoid"});
  auto init = normalize_direction(iso.source(), {0.2, 0.1, 0.3, 1.0});
  CHECK(homothety_invariance_check(iso, init, 2.0) < 1e-5);

  auto conf = make_correspondence({.id = "exp-plane"});
  CHECK_THROWS_AS(homothety_invariance_check(conf, {0.0, 0.0, 1.0, 0.0}, 1.0),
                  geometry_error);
  try {
    homothety_invariance_check(conf, {0.0, 0.0, 1.0, 0.0}, 1.0);
  } catch (const geometry_error& e) {
    CHECK(e.code() == errc::wrong_map_class);
  }
}

TEST_CASE("integrator respects the configured step") {
  auto sphere = make_surface({.id = "sphere"});
  IntegratorConfig cfg;
  cfg.step = 0.01;
  auto path = integrate_geodesic(*sphere, {kPi / 2, 0.0, 0.0, 1.0}, 0.1, cfg);
  CHECK(path.samples.size() == 11);  // initial state + 10 steps
  CHECK(path.step == doctest::Approx(0.01));
}
