/**
 * Linear-in-temperature correction to the sphere-plate force, extracted by
 * three routes that cross-validate each other:
 *
 *   delta_T_numeric   - force_sum minus force_integral (any model),
 *   delta_T_closed    - closed-form quadrature, plasma model only,
 *   delta_T_expansion - leading expansion in alpha = c/(2 a omega_p),
 *                       plasma model only.
 *
 * delta_T_general evaluates the n=0 mismatch between the two summation
 * prescriptions for any model; for the plasma model it reduces exactly to
 * delta_T_closed, for ideal mirrors it cancels to zero.
 */

#ifndef CASIMIR_CORRECTIONS_HPP
#define CASIMIR_CORRECTIONS_HPP

#include <cmath>
#include <optional>
#include <stdexcept>

#include "casimir/core.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct DeltaNumeric {
  double value = 0.0;      // N
  double abs_error = 0.0;  // N, combined error of the two force computations
  bool error_warning = false;  // combined error exceeds 5% of the difference
};

struct CorrectionReport {
  double delta_numeric = 0.0;        // N
  double delta_numeric_error = 0.0;  // N
  bool error_warning = false;
  std::optional<double> delta_closed;     // N, plasma only
  std::optional<double> delta_expansion;  // N, plasma only
  std::optional<double> alpha;            // plasma/Drude only
  double t_over_teff = 0.0;
  double relative_to_force = 0.0;  // delta_numeric / force_sum
};

/// Temperature correction as the difference between the Matsubara sum and
/// its integral replacement.  Both inner computations run at rel_tol <=
/// 1e-10 since the difference is about 1% of each operand.
inline DeltaNumeric delta_T_numeric(const Material& mat, const Geometry& geom,
                                    double temperature_K, const NumericSettings& s = {}) {
  NumericSettings tight = s;
  tight.rel_tol = std::min(s.rel_tol, 1e-10);
  tight.abs_tol = 0.0;
  const ForceResult sum = force_sum(mat, geom, temperature_K, tight);
  const ForceResult integral = force_integral(mat, geom, tight);
  DeltaNumeric out;
  out.value = sum.force - integral.force;
  out.abs_error = sum.abs_error + integral.abs_error;
  out.error_warning = out.abs_error > 0.05 * std::fabs(out.value);
  return out;
}

/// Closed-form linear correction for the plasma model:
///   delta = (kTR/8a^2) [ zeta(3) + integral_0^inf x ln(1 - G1 e^{-x}) dx ]
/// with G1 the static plasma reflection factor.
inline double delta_T_closed(const Material& mat, const Geometry& geom, double temperature_K,
                             const NumericSettings& s = {}) {
  if (mat.model != DielectricModel::Plasma)
    throw std::invalid_argument("delta_T_closed: defined for the plasma model only");
  if (!(temperature_K > 0.0))
    throw std::domain_error("delta_T_closed: temperature must be positive");
  const double alpha = skin_depth_alpha(mat, geom);
  NumericSettings quad_s = s;
  quad_s.rel_tol = std::min(s.rel_tol, 1e-12);
  quad_s.abs_tol = 1e-14;
  const QuadResult q = integrate_semi_infinite(
      [alpha](double x) {
        return x * std::log1p(-g1_static_limit(x, alpha) * std::exp(-x));
      },
      0.0, true, quad_s);
  const double a = geom.gap();
  const double pref =
      constants::k_B * temperature_K * geom.radius() / (8.0 * a * a);
  return pref * (constants::zeta3 + q.value);
}

/// Leading alpha-expansion of the plasma closed form:
///   delta = (kTR/8a^2) zeta(3) * 8 alpha (1 - 3 alpha).
/// Valid for alpha < 0.25.
inline double delta_T_expansion(const Material& mat, const Geometry& geom,
                                double temperature_K) {
  if (mat.model != DielectricModel::Plasma)
    throw std::invalid_argument("delta_T_expansion: defined for the plasma model only");
  if (!(temperature_K > 0.0))
    throw std::domain_error("delta_T_expansion: temperature must be positive");
  const double alpha = skin_depth_alpha(mat, geom);
  if (!(alpha < 0.25))
    throw std::domain_error("delta_T_expansion: valid only for alpha < 0.25");
  const double a = geom.gap();
  const double pref =
      constants::k_B * temperature_K * geom.radius() / (8.0 * a * a);
  return pref * constants::zeta3 * 8.0 * alpha * (1.0 - 3.0 * alpha);
}

/// n=0 mismatch between the two summation prescriptions:
///   delta = (kTR/4a^2) { zeta(3) + 1/2 integral_0^inf x ln[(1-G1 e^{-x})(1-G2 e^{-x})] }
/// with the zeta->0 limits G2 = 1 and model-specific G1.  Zero for ideal
/// mirrors; for Drude it captures only the n=0 mismatch, so it is a
/// diagnostic rather than the full Drude correction.
inline double delta_T_general(const Material& mat, const Geometry& geom, double temperature_K,
                              const NumericSettings& s = {}) {
  if (!(temperature_K > 0.0))
    throw std::domain_error("delta_T_general: temperature must be positive");
  NumericSettings quad_s = s;
  quad_s.rel_tol = std::min(s.rel_tol, 1e-12);
  quad_s.abs_tol = 1e-14;
  const QuadResult zero = detail::static_zero_integral(mat, geom, quad_s);
  const double a = geom.gap();
  const double pref =
      constants::k_B * temperature_K * geom.radius() / (4.0 * a * a);
  return pref * (constants::zeta3 + 0.5 * zero.value);
}

/// Assemble all available routes for one (material, geometry, temperature).
inline CorrectionReport correction_report(const Material& mat, const Geometry& geom,
                                          double temperature_K,
                                          const NumericSettings& s = {}) {
  CorrectionReport rep;
  const DeltaNumeric num = delta_T_numeric(mat, geom, temperature_K, s);
  rep.delta_numeric = num.value;
  rep.delta_numeric_error = num.abs_error;
  rep.error_warning = num.error_warning;
  rep.t_over_teff = temperature_K / effective_temperature(geom.gap());
  if (mat.model != DielectricModel::IdealMetal)
    rep.alpha = skin_depth_alpha(mat, geom);
  if (mat.model == DielectricModel::Plasma) {
    rep.delta_closed = delta_T_closed(mat, geom, temperature_K, s);
    rep.delta_expansion = delta_T_expansion(mat, geom, temperature_K);
  }
  const ForceResult sum = force_sum(mat, geom, temperature_K, s);
  rep.relative_to_force = num.value / sum.force;
  return rep;
}

}  // namespace casimir

#endif  // CASIMIR_CORRECTIONS_HPP
