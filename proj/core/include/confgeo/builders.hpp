#pragma once

// Helpers that build SurfacePatch/curve parameter callbacks from generic
// lambdas via forward-mode automatic differentiation. Heavier to compile
// than the rest of the public headers; include only where patches or curve
// families are constructed.

#include <boost/math/differentiation/autodiff.hpp>

#include <array>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "confgeo/curve.hpp"
#include "confgeo/surface.hpp"

namespace confgeo {

// Scalar carrying mixed partials up to order 3 in each of u and v.
using Jet2 = boost::math::differentiation::autodiff_fvar<double, 3, 3>;
// Scalar carrying derivatives up to order 3 in one variable.
using Jet1 = boost::math::differentiation::autodiff_fvar<double, 3>;

// f: generic lambda (T u, T v) -> std::array<T, 3>.
template <class F>
SurfacePatch make_analytic_patch(F f, Domain domain, std::string id = {},
                                 std::vector<double> params = {}) {
  auto position = [f](double u, double v) -> Vec3 {
    auto w = f(u, v);
    return Vec3(w[0], w[1], w[2]);
  };
  auto jet = [f](double u, double v) -> SurfaceJet {
    auto const vars =
        boost::math::differentiation::make_ftuple<double, 3, 3>(u, v);
    Jet2 ju = std::get<0>(vars);
    Jet2 jv = std::get<1>(vars);
    std::array<Jet2, 3> w = f(ju, jv);
    SurfaceJet out;
    out.u = u;
    out.v = v;
    out.has_third = true;
    for (int k = 0; k < 3; ++k) {
      out.p[k] = w[k].derivative(0, 0);
      out.pu[k] = w[k].derivative(1, 0);
      out.pv[k] = w[k].derivative(0, 1);
      out.puu[k] = w[k].derivative(2, 0);
      out.puv[k] = w[k].derivative(1, 1);
      out.pvv[k] = w[k].derivative(0, 2);
      out.puuu[k] = w[k].derivative(3, 0);
      out.puuv[k] = w[k].derivative(2, 1);
      out.puvv[k] = w[k].derivative(1, 2);
      out.pvvv[k] = w[k].derivative(0, 3);
    }
    return out;
  };
  return SurfacePatch(domain, position, jet, std::move(id), std::move(params));
}

// g: generic lambda (T s) -> std::array<T, 2> giving (u(s), v(s)).
template <class G>
std::function<ParamJet(double)> make_param_jet(G g) {
  return [g](double s) -> ParamJet {
    Jet1 js = boost::math::differentiation::make_fvar<double, 3>(s);
    std::array<Jet1, 2> w = g(js);
    ParamJet out;
    out.s = s;
    out.u = w[0].derivative(0);
    out.v = w[1].derivative(0);
    out.u1 = w[0].derivative(1);
    out.v1 = w[1].derivative(1);
    out.u2 = w[0].derivative(2);
    out.v2 = w[1].derivative(2);
    out.u3 = w[0].derivative(3);
    out.v3 = w[1].derivative(3);
    return out;
  };
}

}  // namespace confgeo
