#include <cmath>
#include <numbers>
#include <vector>

#include "confgeo/catalog.hpp"
#include "confgeo/conformal.hpp"
#include "confgeo/curve.hpp"
#include "confgeo/surface.hpp"
#include "doctest.h"

using namespace confgeo;

namespace {

constexpr double kPi = std::numbers::pi;

SurfaceCorrespondence bowl_pair() {
  // (u,v,0) -> (u,v,u^2+v^2): stretches radially, shears angularly; not
  // conformal anywhere off the origin.
  Domain dom{-1.0, 1.0, -1.0, 1.0};
  CorrespondenceSpec spec;
  spec.id = "custom";
  spec.source = PatchSpec{.id = "plane", .domain = dom};
  spec.target = PatchSpec{.id = "monge", .expression = "u^2+v^2", .domain = dom};
  return make_correspondence(spec);
}

std::vector<std::pair<double, double>> grid5(const Domain& d) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      pts.emplace_back(d.u_min + (d.u_max - d.u_min) * i / 6.0,
                       d.v_min + (d.v_max - d.v_min) * j / 6.0);
  return pts;
}

}  // namespace

TEST_CASE("dilation field of the exponential plane map") {
  auto corr = make_correspondence({.id = "exp-plane"});
  const double u = 0.3, v = -0.2;
  auto d = dilation_field(corr, u, v);
  CHECK(d.delta == doctest::Approx(std::exp(u)).epsilon(1e-12));
  CHECK(d.delta_u == doctest::Approx(std::exp(u)).epsilon(1e-9));
  CHECK(std::abs(d.delta_v) < 1e-9);
  CHECK(d.residual < 1e-12);
}

TEST_CASE("dilation field of the stereographic pair") {
  auto corr = make_correspondence({.id = "sphere-stereographic"});
  CHECK(dilation_field(corr, 0.0, 0.0).delta == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dilation_field(corr, 1.0, 0.0).delta == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("map classification across the catalog") {
  auto ident = classify_map(make_correspondence({.id = "identity", .base = "sphere"}));
  CHECK(ident.tag == MapTag::isometry);
  CHECK(ident.c == doctest::Approx(1.0).epsilon(1e-12));

  auto hom = classify_map(make_correspondence({.id = "scale", .c = 2.0, .base = "plane"}));
  CHECK(hom.tag == MapTag::homothety);
  CHECK(hom.c == doctest::Approx(2.0).epsilon(1e-12));

  CHECK(classify_map(make_correspondence({.id = "exp-plane"})).tag == MapTag::conformal);
  CHECK(classify_map(make_correspondence({.id = "sphere-stereographic"})).tag ==
        MapTag::conformal);
  CHECK(classify_map(make_correspondence({.id = "helicoid-catenoid"})).tag ==
        MapTag::isometry);
  CHECK(classify_map(bowl_pair()).tag == MapTag::non_conformal);
}

TEST_CASE("dilation field throws off-conformal while classify reports") {
  auto bowl = bowl_pair();
  CHECK_THROWS_AS(dilation_field(bowl, 0.5, 0.5), geometry_error);
  try {
    dilation_field(bowl, 0.5, 0.5);
  } catch (const geometry_error& e) {
    CHECK(e.code() == errc::non_conformal_at_point);
  }
  CHECK_NOTHROW(classify_map(bowl));
}

TEST_CASE("metric derivative relations on conformal pairs") {
  for (const char* id : {"exp-plane", "sphere-stereographic"}) {
    auto corr = make_correspondence({.id = id});
    for (auto [u, v] : grid5(corr.source().domain())) {
      for (double r : metric_derivative_relations(corr, u, v))
        CHECK(std::abs(r) < 1e-9);
    }
  }
}

TEST_CASE("christoffel correction closed forms on the exponential map") {
  auto corr = make_correspondence({.id = "exp-plane"});
  auto dil = dilation_field(corr, 0.0, 0.0);
  auto th = christoffel_correction(metric_jet(corr.source(), 0.0, 0.0), dil);
  CHECK(th.t1_11 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(th.t2_11) < 1e-9);
  CHECK(std::abs(th.t1_12) < 1e-9);
  CHECK(th.t2_12 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(th.t1_22 == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(th.t2_22) < 1e-9);
}

TEST_CASE("christoffel correction on the stereographic pair") {
  auto corr = make_correspondence({.id = "sphere-stereographic"});
  auto dil = dilation_field(corr, 1.0, 0.0);
  auto th = christoffel_correction(metric_jet(corr.source(), 1.0, 0.0), dil);
  // delta_u/delta = 2u/(1+u^2+v^2) = 1 at (1,0).
  CHECK(th.t1_11 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("corrected symbols equal target symbols") {
  for (const char* id : {"exp-plane", "sphere-stereographic"}) {
    auto corr = make_correspondence({.id = id});
    for (auto [u, v] : grid5(corr.source().domain()))
      CHECK(conformal_christoffel_check(corr, u, v) < 1e-9);
  }
}

TEST_CASE("correction vanishes for constant dilation") {
  auto hom = make_correspondence({.id = "scale", .c = 2.0, .base = "sphere"});
  for (auto [u, v] : grid5(hom.source().domain())) {
    auto dil = dilation_field(hom, u, v);
    auto th = christoffel_correction(metric_jet(hom.source(), u, v), dil);
    for (double t : {th.t1_11, th.t2_11, th.t1_12, th.t2_12, th.t1_22, th.t2_22})
      CHECK(std::abs(t) < 1e-9);
    CHECK(conformal_christoffel_check(hom, u, v) < 1e-9);
  }
  auto iso = make_correspondence({.id = "helicoid-catenoid"});
  for (auto [u, v] : grid5(iso.source().domain()))
    CHECK(conformal_christoffel_check(iso, u, v) < 1e-9);
}

TEST_CASE("tangent extension maps the frame correctly") {
  auto hom = make_correspondence({.id = "scale", .c = 2.0, .base = "plane"});
  CHECK((pushforward_extend(hom, 0.3, 0.4, Vec3(1, 0, 0)) - Vec3(1, 0, 0)).norm() <
        1e-12);
  CHECK((pushforward_extend(hom, 0.3, 0.4, Vec3(0, 0, 1)) - Vec3(0, 0, 1)).norm() <
        1e-12);

  auto corr = make_correspondence({.id = "exp-plane"});
  auto ext = tangent_extension(corr, 0.0, 0.0);
  CHECK((ext.img_u_over_delta - Vec3(1, 0, 0)).norm() < 1e-12);
  CHECK((ext.img_normal - Vec3(0, 0, 1)).norm() < 1e-12);
  // The extension is linear and fixes the frame decomposition.
  Vec3 x(0.2, -0.7, 1.4);
  Vec3 y = ext.apply(x);
  Vec3 z = 0.2 * ext.apply(Vec3(1, 0, 0)) - 0.7 * ext.apply(Vec3(0, 1, 0)) +
           1.4 * ext.apply(Vec3(0, 0, 1));
  CHECK((y - z).norm() < 1e-12);
}

TEST_CASE("osculating image condition on catalog pairs") {
  auto plane_dom = make_surface({.id = "plane"})->domain();

  // Identity: condition residual and image binormal component both vanish.
  auto ident = make_correspondence({.id = "identity", .base = "plane"});
  auto circ0 = make_curve(ident.source_ptr(),
                          {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  for (double s : {0.0, 1.3, 2.9}) {
    auto r = osculating_image_condition(ident, circ0, s);
    CHECK(r.residual < 1e-12);
    CHECK(std::abs(r.beta_image) < 1e-12);
  }

  // Homothety: image of an origin-centered circle is still origin-centered.
  auto hom = make_correspondence({.id = "scale", .c = 2.0, .base = "plane"});
  auto circ1 = make_curve(hom.source_ptr(),
                          {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  for (int i = 0; i < 21; ++i) {
    auto r = osculating_image_condition(hom, circ1, 2 * kPi * i / 21.0);
    CHECK(std::abs(r.beta_image) < 1e-10);
    CHECK(r.residual < 1e-10);
  }

  // Exponential image: the sufficient condition fails by a finite margin,
  // yet the image circle stays planar so its binormal component vanishes.
  auto corr = make_correspondence({.id = "exp-plane"});
  auto circ2 = make_curve(corr.source_ptr(),
                          {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  auto r2 = osculating_image_condition(corr, circ2, 0.7);
  CHECK(r2.residual > 0.1);
  CHECK(std::abs(r2.beta_image) < 1e-10);
  CHECK(r2.image_frame_defined);
  CHECK(std::abs(r2.beta_source) < 1e-12);

  // Plane-to-sphere: the image of an off-equator circle is a latitude; the
  // condition residual and |sigma~ . b~| are both bounded away from zero.
  Domain sd{-1.5, 1.5, -1.5, 1.5};
  CorrespondenceSpec rspec;
  rspec.id = "custom";
  rspec.source = PatchSpec{.id = "stereographic-plane", .domain = sd};
  rspec.target = PatchSpec{.id = "sphere-stereographic", .domain = sd};
  auto rev = make_correspondence(rspec);
  auto circ3 = make_curve(rev.source_ptr(),
                          {.id = "plane-circle", .params = {0.5, 0.0, 0.0}});
  for (double s : {0.2, 1.0, 2.5}) {
    auto r = osculating_image_condition(rev, circ3, s);
    CHECK(std::abs(r.beta_image) == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(r.residual > 0.1);
  }
  (void)plane_dom;
}

TEST_CASE("normal component relation under a sphere homothety") {
  auto corr = make_correspondence({.id = "scale", .c = 2.0, .base = "sphere"});
  auto gc = make_curve(corr.source_ptr(), {.id = "great-circle", .params = {0.0, 0.0, 1.0}});
  for (double s : {0.3, 0.9, 2.2, 4.0}) {
    auto r = normal_component_relation(corr, gc, s);
    CHECK(r.lhs == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(r.rhs == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(r.residual < 1e-9);
    CHECK(r.kn_source == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(r.kn_image == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(r.kn_image_true == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK_FALSE(r.cond_position_tangent);
    CHECK_FALSE(r.cond_asymptotic);
    CHECK_FALSE(r.cond_kn_invariant);
  }
}

TEST_CASE("normal component sub-verdicts") {
  // Identity: kn_image equals delta^2 kn_source, so the invariance
  // sub-condition holds and both sides vanish.
  auto ident = make_correspondence({.id = "identity", .base = "sphere"});
  auto gc = make_curve(ident.source_ptr(), {.id = "great-circle", .params = {0.0, 0.0, 1.0}});
  auto r = normal_component_relation(ident, gc, 1.0);
  CHECK(r.cond_kn_invariant);
  CHECK(std::abs(r.lhs) < 1e-12);
  CHECK(std::abs(r.rhs) < 1e-12);

  // Plane circle: asymptotic everywhere (kn = 0 on a plane).
  auto hom = make_correspondence({.id = "scale", .c = 2.0, .base = "plane"});
  auto circ = make_curve(hom.source_ptr(), {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  auto r2 = normal_component_relation(hom, circ, 0.5);
  CHECK(r2.cond_asymptotic);
  CHECK(std::abs(r2.lhs) < 1e-12);

  // Near-degenerate family: mu sweeps through zero on an off-center circle.
  auto off = make_curve(hom.source_ptr(), {.id = "plane-circle", .params = {1.0, 1.2, 0.0}});
  double min_mu = 1e9, lhs_at_min = 1e9;
  for (int i = 0; i < 201; ++i) {
    auto rr = normal_component_relation(hom, off, off.s1() * i / 201.0);
    if (std::abs(rr.mu) < min_mu) {
      min_mu = std::abs(rr.mu);
      lhs_at_min = std::abs(rr.lhs);
    }
  }
  CHECK(min_mu < 2e-2);
  CHECK(lhs_at_min < 1e-6);
}

TEST_CASE("tangential component relation") {
  // Variable dilation: both directions, many samples, exact identity.
  auto corr = make_correspondence({.id = "exp-plane"});
  auto circ = make_curve(corr.source_ptr(), {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  double max_h = 0.0;
  for (int i = 0; i < 21; ++i) {
    double s = circ.s1() * i / 21.0;
    auto r10 = tangential_component_relation(corr, circ, s, 1.0, 0.0);
    auto r01 = tangential_component_relation(corr, circ, s, 0.0, 1.0);
    CHECK(r10.residual < 1e-12);
    CHECK(r01.residual < 1e-12);
    max_h = std::max({max_h, std::abs(r10.h), std::abs(r01.h)});
  }
  CHECK(max_h > 1e-3);  // the correction term is genuinely nonzero

  // Homothety: h = 0 and the tangential component scales by c^2.
  auto hom = make_correspondence({.id = "scale", .c = 2.0, .base = "plane"});
  auto circ2 = make_curve(hom.source_ptr(), {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  auto rh = tangential_component_relation(hom, circ2, 0.8, 1.0, 0.0);
  CHECK(std::abs(rh.h) < 1e-12);
  CHECK(std::abs(rh.lhs) < 1e-12);

  // Isometry with a curved osculating curve: h = 0, lhs = 0.
  auto iso = make_correspondence({.id = "helicoid-catenoid"});
  auto waist = make_curve(iso.source_ptr(), {.id = "parameter-line-u", .params = {0.0}});
  for (double s : {0.4, 1.7, 3.0}) {
    auto r = tangential_component_relation(iso, waist, s, 1.0, 0.0);
    CHECK(std::abs(r.h) < 1e-12);
    CHECK(r.residual < 1e-12);
  }
}

TEST_CASE("geodesic curvature relation") {
  // Homothety: formal image curvature is c^2 kg, true curvature kg / c.
  auto hom = make_correspondence({.id = "scale", .c = 2.0, .base = "plane"});
  auto circ = make_curve(hom.source_ptr(), {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  auto r = geodesic_curvature_relation(hom, circ, 0.3);
  CHECK(std::abs(r.kg_source) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.kg_image_formal == doctest::Approx(4.0 * r.kg_source).epsilon(1e-12));
  CHECK(std::abs(r.kg_image_true) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r.wc) < 1e-12);
  CHECK(r.residual_scaled < 1e-12);
  CHECK(r.residual_raw < 1e-12);
  CHECK(r.delta == doctest::Approx(2.0).epsilon(1e-12));

  // Variable dilation: the scaled identity holds exactly; the unscaled
  // reading of the correction term does not.
  auto corr = make_correspondence({.id = "exp-plane"});
  auto circ2 = make_curve(corr.source_ptr(), {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  double max_raw = 0.0;
  for (int i = 0; i < 21; ++i) {
    auto rr = geodesic_curvature_relation(corr, circ2, circ2.s1() * i / 21.0);
    CHECK(rr.residual_scaled < 1e-10);
    max_raw = std::max(max_raw, rr.residual_raw);
  }
  CHECK(max_raw > 0.1);
}

TEST_CASE("correspondence construction errors") {
  CorrespondenceSpec mism;
  mism.id = "custom";
  mism.source = PatchSpec{.id = "plane", .domain = Domain{-1, 1, -1, 1}};
  mism.target = PatchSpec{.id = "plane", .domain = Domain{-2, 2, -1, 1}};
  CHECK_THROWS_AS(make_correspondence(mism), geometry_error);
  try {
    make_correspondence(mism);
  } catch (const geometry_error& e) {
    CHECK(e.code() == errc::domain_mismatch);
  }

  CorrespondenceSpec incomplete;
  incomplete.id = "custom";
  CHECK_THROWS_AS(make_correspondence(incomplete), geometry_error);

  CHECK_THROWS_AS(make_correspondence({.id = "mystery"}), geometry_error);
  try {
    make_correspondence({.id = "mystery"});
  } catch (const geometry_error& e) {
    CHECK(e.code() == errc::unknown_correspondence_id);
  }
}

TEST_CASE("dilation is multiplicative under composition") {
  Domain dom{-1.0, 1.0, -1.0, 1.0};
  auto pair = [&](double ca, double cb) {
    CorrespondenceSpec s;
    s.id = "custom";
    s.source = PatchSpec{.id = "scaled-plane", .params = {ca}, .domain = dom};
    s.target = PatchSpec{.id = "scaled-plane", .params = {cb}, .domain = dom};
    return make_correspondence(s);
  };
  auto ab = pair(1.0, 2.0);
  auto bc = pair(2.0, 6.0);
  auto ac = pair(1.0, 6.0);
  for (auto [u, v] : grid5(dom)) {
    const double dab = dilation_field(ab, u, v).delta;
    const double dbc = dilation_field(bc, u, v).delta;
    const double dac = dilation_field(ac, u, v).delta;
    CHECK(std::abs(dac - dab * dbc) < 1e-8);
  }
}
