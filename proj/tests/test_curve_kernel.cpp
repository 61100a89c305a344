#include <cmath>
#include <numbers>

#include "confgeo/catalog.hpp"
#include "confgeo/curve.hpp"
#include "confgeo/geodesic.hpp"
#include "confgeo/surface.hpp"
#include "doctest.h"

using namespace confgeo;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("origin-centered plane circle frenet and decomposition") {
  auto plane = make_surface({.id = "plane"});
  auto circle = make_curve(plane, {.id = "plane-circle", .params = {2.0, 0.0, 0.0}});
  CHECK(circle.unit_speed());
  CHECK(circle.s1() == doctest::Approx(4.0 * kPi).epsilon(1e-12));

  auto jet = curve_jet(circle, 1.7);
  CHECK(std::abs(jet.d1.norm() - 1.0) < 1e-12);
  auto fr = frenet(jet);
  CHECK(fr.kappa == doctest::Approx(0.5).epsilon(1e-12));
  CHECK((fr.b - Vec3(0, 0, 1)).norm() < 1e-12);
  REQUIRE(fr.tau.has_value());
  CHECK(std::abs(*fr.tau) < 1e-12);

  auto dec = osculating_decompose(jet, fr);
  CHECK(std::abs(dec.xi) < 1e-12);
  CHECK(dec.mu == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(dec.beta) < 1e-12);
}

TEST_CASE("osculating detection on plane circles") {
  auto plane = make_surface({.id = "plane"});
  auto circle = make_curve(plane, {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  auto v = is_osculating(circle, 1e-6);
  CHECK(v.osculating);
  CHECK(v.max_beta < 1e-12);
  CHECK(v.samples == 101);
  CHECK(v.skipped == 0);

  // The same circle lifted to z = 1 has |sigma . b| = 1 everywhere.
  auto lifted = make_surface({.id = "monge", .expression = "1"});
  auto lc = make_curve(lifted, {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  auto lv = is_osculating(lc, 1e-6);
  CHECK_FALSE(lv.osculating);
  CHECK(lv.max_beta == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("sphere latitude curvatures") {
  auto sphere = make_surface({.id = "sphere"});
  auto lat = make_curve(sphere, {.id = "latitude", .params = {kPi / 4}});
  CHECK(lat.unit_speed());
  auto jet = curve_jet(lat, 0.8);
  auto pj = eval_jet(*sphere, jet.u, jet.v);
  auto mj = metric_jet(*sphere, jet.u, jet.v);

  CHECK(normal_curvature(jet, second_form(pj)) == doctest::Approx(-1.0).epsilon(1e-12));
  const double kd = geodesic_curvature_def(jet, surface_normal(pj));
  const double ki = geodesic_curvature_intrinsic(jet, mj, christoffel(mj));
  CHECK(kd == doctest::Approx(1.0).epsilon(1e-12));  // cot(pi/4)
  CHECK(ki == doctest::Approx(kd).epsilon(1e-12));
  CHECK_FALSE(is_asymptotic(lat, 1e-6));
}

TEST_CASE("sphere normal curvature is -1 in every direction") {
  auto sphere = make_surface({.id = "sphere"});
  auto gc = make_curve(sphere, {.id = "great-circle", .params = {0.3, -0.8, 0.52}});
  for (double s : {0.4, 1.9, 3.3, 5.2}) {
    auto jet = curve_jet(gc, s);
    auto f = second_form(eval_jet(*sphere, jet.u, jet.v));
    CHECK(normal_curvature(jet, f) == doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("cylinder rulings are asymptotic, cross-sections are not") {
  auto cyl = make_surface({.id = "cylinder"});
  auto ruling = make_curve(cyl, {.id = "parameter-line-v", .params = {0.4}});
  CHECK(is_asymptotic(ruling, 1e-8));
  auto cross = make_curve(cyl, {.id = "parameter-line-u", .params = {0.0}});
  CHECK_FALSE(is_asymptotic(cross, 1e-6));
  auto jet = curve_jet(cross, 0.9);
  auto f = second_form(eval_jet(*cyl, jet.u, jet.v));
  CHECK(normal_curvature(jet, f) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("helix reparameterization recovers kappa = tau = 1/2") {
  auto cyl = make_surface({.id = "cylinder"});
  auto helix = make_curve(cyl, {.id = "helix", .params = {1.0, 1.0}});
  CHECK_FALSE(helix.unit_speed());
  auto uc = arclength_reparam(helix);
  CHECK(uc.unit_speed());
  CHECK(uc.s1() == doctest::Approx(std::sqrt(2.0) * 2.0 * kPi).epsilon(1e-9));
  for (double s : {0.5, 2.0, 4.4}) {
    auto fr = frenet(curve_jet(uc, s));
    CHECK(fr.kappa == doctest::Approx(0.5).epsilon(1e-9));
    REQUIRE(fr.tau.has_value());
    CHECK(*fr.tau == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("arclength reparameterization of a polynomial curve") {
  auto plane = make_surface({.id = "plane"});
  auto raw = make_curve(plane, {.id = "polynomial",
                                .coeffs_u = {0.0, 0.0, 1.0},
                                .coeffs_v = {0.0, 1.0},
                                .range = {{0.0, 1.0}}});
  CHECK_FALSE(raw.unit_speed());
  auto uc = arclength_reparam(raw);
  // Closed-form length of (t^2, t) over [0,1]: sqrt(5)/2 + asinh(2)/4.
  const double want = std::sqrt(5.0) / 2.0 + std::asinh(2.0) / 4.0;
  CHECK(uc.s1() == doctest::Approx(want).epsilon(1e-7));
  double drift = 0.0;
  for (int i = 0; i <= 40; ++i) {
    double s = uc.s1() * i / 40.0;
    drift = std::max(drift, std::abs(curve_jet(uc, s).d1.norm() - 1.0));
  }
  CHECK(drift < 1e-9);
  // Endpoint maps to the original t = 1 point.
  CHECK((curve_jet(uc, uc.s1()).sigma - Vec3(1, 1, 0)).norm() < 1e-7);
}

TEST_CASE("binormal expansion identity") {
  auto sphere = make_surface({.id = "sphere"});
  for (const char* cid : {"latitude", "great-circle"}) {
    CurveSpec cs;
    cs.id = cid;
    cs.params = cid == std::string("latitude")
                    ? std::vector<double>{kPi / 3}
                    : std::vector<double>{0.2, 1.0, 0.5};
    auto curve = make_curve(sphere, cs);
    for (int i = 0; i < 24; ++i) {
      double s = curve.s0() + (curve.s1() - curve.s0()) * (i + 0.5) / 24;
      auto jet = curve_jet(curve, s);
      CHECK(binormal_expansion_check(jet, eval_jet(*sphere, jet.u, jet.v)) < 1e-10);
    }
  }
  auto heli = make_surface({.id = "helicoid"});
  auto circ = make_curve(heli, {.id = "plane-circle", .params = {0.5, 0.0, 0.0}});
  for (int i = 0; i < 24; ++i) {
    double s = circ.s1() * (i + 0.5) / 24;
    auto jet = curve_jet(circ, s);
    CHECK(binormal_expansion_check(jet, eval_jet(*heli, jet.u, jet.v)) < 1e-10);
  }
}

TEST_CASE("straight lines have no frenet frame but are handled gracefully") {
  auto plane = make_surface({.id = "plane"});
  auto line = make_curve(plane, {.id = "parameter-line-u", .params = {0.5}});
  CHECK(line.unit_speed());
  auto jet = curve_jet(line, 0.3);
  CHECK_THROWS_AS(frenet(jet), geometry_error);
  try {
    frenet(jet);
  } catch (const geometry_error& e) {
    CHECK(e.code() == errc::vanishing_curvature);
  }
  auto v = is_osculating(line, 1e-6);
  CHECK(v.osculating);  // vacuously: every sample skipped
  CHECK(v.skipped == 101);
  CHECK(v.samples == 0);
}

TEST_CASE("frenet and frenet_general agree at unit speed") {
  auto sphere = make_surface({.id = "sphere"});
  auto lat = make_curve(sphere, {.id = "latitude", .params = {1.1}});
  auto jet = curve_jet(lat, 2.2);
  auto a = frenet(jet);
  auto b = frenet_general(jet);
  CHECK((a.t - b.t).norm() < 1e-12);
  CHECK((a.n - b.n).norm() < 1e-12);
  CHECK((a.b - b.b).norm() < 1e-12);
  CHECK(a.kappa == doctest::Approx(b.kappa).epsilon(1e-12));
}

TEST_CASE("jet_on traces the same parameter curve on another patch") {
  auto plane = make_surface({.id = "plane"});
  Domain dom = plane->domain();
  auto scaled = make_surface({.id = "scaled-plane", .params = {2.0}, .domain = dom});
  auto circle = make_curve(plane, {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  auto j0 = curve_jet(circle, 0.7);
  auto j1 = circle.jet_on(*scaled, 0.7);
  CHECK((j1.sigma - 2.0 * j0.sigma).norm() < 1e-12);
  CHECK((j1.d1 - 2.0 * j0.d1).norm() < 1e-12);
  CHECK((j1.d2 - 2.0 * j0.d2).norm() < 1e-12);
}

TEST_CASE("curve parameter range is enforced") {
  auto plane = make_surface({.id = "plane"});
  auto circle = make_curve(plane, {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  CHECK_THROWS_AS(curve_jet(circle, circle.s1() + 1.0), geometry_error);
  try {
    curve_jet(circle, -0.5);
  } catch (const geometry_error& e) {
    CHECK(e.code() == errc::out_of_range_s);
  }
}

TEST_CASE("curve catalog rejects bad specs") {
  auto plane = make_surface({.id = "plane"});
  CHECK_THROWS_AS(make_curve(plane, {.id = "spiral"}), geometry_error);
  try {
    make_curve(plane, {.id = "spiral"});
  } catch (const geometry_error& e) {
    CHECK(e.code() == errc::unknown_curve_id);
  }
  CHECK_THROWS_AS(make_curve(plane, {.id = "plane-circle", .params = {-1.0}}),
                  geometry_error);
  CHECK_THROWS_AS(make_curve(plane, {.id = "polynomial", .coeffs_u = {1.0}}),
                  geometry_error);
}

TEST_CASE("great circle through an oblique axis stays planar") {
  auto sphere = make_surface({.id = "sphere"});
  auto gc = make_curve(sphere, {.id = "great-circle", .params = {0.0, 1.0, 1.0}});
  CHECK(gc.unit_speed());
  Vec3 axis = Vec3(0, 1, 1).normalized();
  for (int i = 0; i <= 40; ++i) {
    double s = gc.s0() + (gc.s1() - gc.s0()) * i / 40.0;
    auto jet = curve_jet(gc, s);
    CHECK(std::abs(jet.sigma.dot(axis)) < 1e-10);
    auto pj = eval_jet(*sphere, jet.u, jet.v);
    CHECK(std::abs(geodesic_curvature_def(jet, surface_normal(pj))) < 1e-10);
  }
}
