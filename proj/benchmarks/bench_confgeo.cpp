// Microbenchmarks for the hot evaluation paths.

#include <benchmark/benchmark.h>

#include <numbers>

#include "confgeo/catalog.hpp"
#include "confgeo/conformal.hpp"
#include "confgeo/curve.hpp"
#include "confgeo/geodesic.hpp"
#include "confgeo/surface.hpp"

namespace {

using namespace confgeo;
constexpr double kPi = std::numbers::pi;

void bm_surface_jet(benchmark::State& state) {
  auto sphere = make_surface({.id = "sphere"});
  double u = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_jet(*sphere, u, 0.7));
    u = u < 2.0 ? u + 1e-9 : 0.3;  // defeat caching without branching cost
  }
}
BENCHMARK(bm_surface_jet);

void bm_surface_jet_finite_difference(benchmark::State& state) {
  auto patch = make_surface({.id = "monge",
                             .expression = "sin(u)*cos(v)",
                             .domain = Domain{-1, 1, -1, 1},
                             .mode = DiffMode::finite_difference});
  double u = -0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_jet(*patch, u, 0.2));
    u = u < 0.4 ? u + 1e-9 : -0.4;
  }
}
BENCHMARK(bm_surface_jet_finite_difference);

void bm_metric_christoffel(benchmark::State& state) {
  auto sphere = make_surface({.id = "sphere"});
  double u = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(christoffel(metric_jet(*sphere, u, 0.7)));
    u = u < 2.0 ? u + 1e-9 : 0.3;
  }
}
BENCHMARK(bm_metric_christoffel);

void bm_curve_jet_frenet(benchmark::State& state) {
  auto sphere = make_surface({.id = "sphere"});
  auto lat = make_curve(sphere, {.id = "latitude", .params = {kPi / 4}});
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(frenet(curve_jet(lat, s)));
    s = s < 4.0 ? s + 1e-9 : 0.1;
  }
}
BENCHMARK(bm_curve_jet_frenet);

void bm_geodesic_curvature(benchmark::State& state) {
  auto sphere = make_surface({.id = "sphere"});
  auto lat = make_curve(sphere, {.id = "latitude", .params = {kPi / 4}});
  double s = 0.1;
  for (auto _ : state) {
    const CurveJet j = curve_jet(lat, s);
    const MetricJet mj = metric_jet(*sphere, j.u, j.v);
    benchmark::DoNotOptimize(
        geodesic_curvature_intrinsic(j, mj, christoffel(mj)));
    s = s < 4.0 ? s + 1e-9 : 0.1;
  }
}
BENCHMARK(bm_geodesic_curvature);

void bm_dilation_field(benchmark::State& state) {
  auto corr = make_correspondence({.id = "sphere-stereographic"});
  double u = -0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dilation_field(corr, u, 0.3));
    u = u < 0.4 ? u + 1e-9 : -0.4;
  }
}
BENCHMARK(bm_dilation_field);

void bm_tangential_relation(benchmark::State& state) {
  auto corr = make_correspondence({.id = "exp-plane"});
  auto circle = make_curve(corr.source_ptr(),
                           {.id = "plane-circle", .params = {1.0, 0.0, 0.0}});
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tangential_component_relation(corr, circle, s, 1.0, 0.0));
    s = s < 6.0 ? s + 1e-9 : 0.1;
  }
}
BENCHMARK(bm_tangential_relation);

void bm_integrate_geodesic_100_steps(benchmark::State& state) {
  auto sphere = make_surface({.id = "sphere"});
  const GeodesicState init{kPi / 2, 0.0, 0.0, 1.0};
  IntegratorConfig cfg;
  cfg.step = 1e-3;
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_geodesic(*sphere, init, 0.1, cfg));
}
BENCHMARK(bm_integrate_geodesic_100_steps);

}  // namespace

BENCHMARK_MAIN();
