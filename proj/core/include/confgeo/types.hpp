#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace confgeo {

using Vec3 = Eigen::Vector3d;

// Rectangular parameter domain [u_min,u_max] x [v_min,v_max].
struct Domain {
  double u_min = 0.0;
  double u_max = 1.0;
  double v_min = 0.0;
  double v_max = 1.0;

  bool contains(double u, double v, double margin = 0.0) const {
    return u >= u_min + margin && u <= u_max - margin &&
           v >= v_min + margin && v <= v_max - margin;
  }
  double span_u() const { return u_max - u_min; }
  double span_v() const { return v_max - v_min; }
};

enum class errc {
  point_outside_domain,
  degenerate_patch,
  degenerate_metric,
  vanishing_curvature,
  stationary_point,
  non_conformal_at_point,
  wrong_map_class,
  out_of_range_s,
  domain_exit,
  nonunit_initial_speed,
  parse_error,
  unknown_surface_id,
  unknown_check,
  unknown_curve_id,
  unknown_correspondence_id,
  domain_mismatch,
  unwritable_output,
};

// Stable kebab-case identifier, used verbatim as the skip reason in reports.
const char* to_string(errc code);

class geometry_error : public std::runtime_error {
 public:
  geometry_error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Numeric thresholds shared across modules.
namespace tol {
inline constexpr double regularity = 1e-10;        // minimum |phi_u x phi_v|
inline constexpr double metric_rel = 1e-12;        // EG - F^2 vs (E+G)^2
inline constexpr double kappa_min = 1e-8;          // Frenet frame cutoff
inline constexpr double speed_min = 1e-12;         // |sigma'| cutoff
inline constexpr double conformal_default = 1e-4;  // dilation residual gate
inline constexpr double map_class = 1e-7;          // isometry/homothety gate
}  // namespace tol

}  // namespace confgeo
