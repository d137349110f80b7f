/**
 * Sphere-plate Casimir force in the Lifshitz / proximity-force formalism,
 * in four forms:
 *
 *   force_sum       - Matsubara sum with the material-independent n=0 term,
 *   force_sum_alt   - alternative summation whose n=0 term keeps the
 *                     material-dependent zero-frequency reflection,
 *   force_integral  - zero-temperature reference with the sum replaced by
 *                     an integral over imaginary frequency,
 *   ideal_force_smallT - closed-form small-temperature law for ideal mirrors.
 *
 * All forces are attractive magnitudes in newtons.
 */

#ifndef CASIMIR_LIFSHITZ_HPP
#define CASIMIR_LIFSHITZ_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

#include "casimir/core.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct ForceResult {
  double force = 0.0;        // N
  double abs_error = 0.0;    // N, estimated numerical error
  double n_zero_part = 0.0;  // N
  double series_part = 0.0;  // N
  int truncation_index = 0;  // last Matsubara index summed (0 for the integral form)
  long quadrature_evals = 0;
  bool converged = false;
};

namespace detail {

inline double pair_log_integrand(double g1, double g2, double x) {
  const double e = std::exp(-x);
  return x * (std::log1p(-g1 * e) + std::log1p(-g2 * e));
}

/// I_n = integral over [x_n, inf) of x ln[(1-G1 e^{-x})(1-G2 e^{-x})] at
/// fixed imaginary frequency zeta_n, with p = x / x_n.
inline QuadResult matsubara_term_integral(const Material& mat, double x_n, double zeta_n,
                                          const NumericSettings& inner) {
  // For small x_n the integrand varies on the scale of x_n next to the
  // lower limit; the graded mesh resolves that region directly.
  const bool graded = x_n < 1.0;
  if (mat.model == DielectricModel::IdealMetal) {
    return integrate_semi_infinite(
        [](double x) { return 2.0 * x * std::log1p(-std::exp(-x)); }, x_n, graded, inner);
  }
  const double eps_m1 = eps_imag(mat, zeta_n) - 1.0;
  return integrate_semi_infinite(
      [eps_m1, x_n](double x) {
        // x starts at x_n exactly; clamp p against round-off below 1.
        const double p = std::max(x / x_n, 1.0);
        const auto g = reflection_from_eps_minus_one(eps_m1, p);
        return pair_log_integrand(g.g1, g.g2, x);
      },
      x_n, graded, inner);
}

/// Zero-frequency term of the alternative summation: the integral from 0 of
/// x ln[(1-G1 e^{-x})(1-G2 e^{-x})] with the zeta->0 limits G2 = 1 and
/// G1 = 1 (ideal), the static plasma form, or 0 (Drude, vanishing TE mode).
inline QuadResult static_zero_integral(const Material& mat, const Geometry& geom,
                                       const NumericSettings& inner) {
  switch (mat.model) {
    case DielectricModel::IdealMetal:
      return integrate_semi_infinite(
          [](double x) { return 2.0 * x * std::log1p(-std::exp(-x)); }, 0.0, true, inner);
    case DielectricModel::Plasma: {
      const double alpha = skin_depth_alpha(mat, geom);
      return integrate_semi_infinite(
          [alpha](double x) {
            const double e = std::exp(-x);
            return x * (std::log1p(-g1_static_limit(x, alpha) * e) + std::log1p(-e));
          },
          0.0, true, inner);
    }
    case DielectricModel::Drude:
      return integrate_semi_infinite(
          [](double x) { return x * std::log1p(-std::exp(-x)); }, 0.0, true, inner);
  }
  throw std::logic_error("static_zero_integral: unreachable");
}

inline NumericSettings inner_settings(const NumericSettings& s, double rel_scale,
                                      double abs_floor) {
  NumericSettings inner = s;
  inner.rel_tol = std::max(s.rel_tol * rel_scale, 1e-15);
  inner.abs_tol = abs_floor;
  return inner;
}

struct SeriesAccumulator {
  double quad_error = 0.0;
  long evaluations = 0;
  bool all_converged = true;
  double prev_abs = std::numeric_limits<double>::infinity();
};

}  // namespace detail

/// Lifshitz integrand x ln[(1-G1 e^{-x})(1-G2 e^{-x})] at p = x / x_n.
/// The ideal metal (and the n=0 ideal branch) uses G1 = G2 = 1.
inline double integrand(const Material& mat, double x, double zeta, double x_n) {
  if (mat.model == DielectricModel::IdealMetal)
    return 2.0 * x * std::log1p(-std::exp(-x));
  if (!(x_n > 0.0)) throw std::domain_error("integrand: x_n must be positive");
  if (x < x_n) throw std::domain_error("integrand: x must be >= x_n");
  const auto g = reflection_pair(mat, std::max(x / x_n, 1.0), zeta);
  return detail::pair_log_integrand(g.g1, g.g2, x);
}

/**
 * Matsubara sum form: F = (kTR/4a^2) { zeta(3) - sum_{n>=1} I_n }.
 *
 * The n=0 term is the material-independent zeta(3); the series is truncated
 * once a geometric tail majorant built from the observed term ratio drops
 * below tolerance.  Throws on series non-convergence.
 */
inline ForceResult force_sum(const Material& mat, const Geometry& geom, double temperature_K,
                             const NumericSettings& s = {}) {
  const ThermalGrid grid(temperature_K, geom.gap());
  const double a = geom.gap();
  const double pref =
      constants::k_B * temperature_K * geom.radius() / (4.0 * a * a);

  const NumericSettings inner = detail::inner_settings(s, 1e-2, s.rel_tol * 1e-3);
  NumericSettings series_s = s;
  // The full bracket is at least zeta(3), so an absolute stop at
  // rel_tol * zeta(3) is safe even when the series itself is tiny.
  series_s.abs_tol = s.rel_tol * constants::zeta3;

  detail::SeriesAccumulator acc;
  auto term = [&](int n) {
    const QuadResult q =
        detail::matsubara_term_integral(mat, grid.x(n), grid.zeta(n), inner);
    acc.quad_error += q.abs_error;
    acc.evaluations += q.evaluations;
    acc.all_converged = acc.all_converged && q.converged;
    return q.value;
  };
  auto tail_bound = [&](int n, double t) {
    const double at = std::fabs(t);
    if (at == 0.0) return 0.0;
    if (n == 1) {
      acc.prev_abs = at;
      return std::numeric_limits<double>::infinity();
    }
    const double ratio = at / acc.prev_abs;
    acc.prev_abs = at;
    if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
    return 1.2 * at * ratio / (1.0 - ratio);
  };

  const QuadResult series = sum_series(term, tail_bound, series_s);
  if (!series.converged)
    throw std::runtime_error(
        "force_sum: Matsubara series did not converge within max_matsubara_terms");

  ForceResult out;
  out.n_zero_part = pref * constants::zeta3;
  out.series_part = -pref * series.value;
  out.force = out.n_zero_part + out.series_part;
  out.abs_error = pref * (series.abs_error + acc.quad_error) +
                  4.0 * std::numeric_limits<double>::epsilon() * std::fabs(out.force);
  out.truncation_index = static_cast<int>(series.evaluations);
  out.quadrature_evals = acc.evaluations;
  out.converged = acc.all_converged;
  return out;
}

/**
 * Alternative summation: the n=0 term carries weight 1/2, lower limit 0 and
 * the material-dependent zero-frequency G1 (static plasma form, or 0 for
 * Drude).  Coincides with force_sum for the ideal metal.
 */
inline ForceResult force_sum_alt(const Material& mat, const Geometry& geom,
                                 double temperature_K, const NumericSettings& s = {}) {
  const ThermalGrid grid(temperature_K, geom.gap());
  const double a = geom.gap();
  const double pref =
      constants::k_B * temperature_K * geom.radius() / (4.0 * a * a);

  const NumericSettings inner = detail::inner_settings(s, 1e-2, s.rel_tol * 1e-3);
  NumericSettings series_s = s;
  series_s.abs_tol = s.rel_tol * constants::zeta3;

  const QuadResult zero = detail::static_zero_integral(mat, geom, inner);

  detail::SeriesAccumulator acc;
  auto term = [&](int n) {
    const QuadResult q =
        detail::matsubara_term_integral(mat, grid.x(n), grid.zeta(n), inner);
    acc.quad_error += q.abs_error;
    acc.evaluations += q.evaluations;
    acc.all_converged = acc.all_converged && q.converged;
    return q.value;
  };
  auto tail_bound = [&](int n, double t) {
    const double at = std::fabs(t);
    if (at == 0.0) return 0.0;
    if (n == 1) {
      acc.prev_abs = at;
      return std::numeric_limits<double>::infinity();
    }
    const double ratio = at / acc.prev_abs;
    acc.prev_abs = at;
    if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
    return 1.2 * at * ratio / (1.0 - ratio);
  };

  const QuadResult series = sum_series(term, tail_bound, series_s);
  if (!series.converged)
    throw std::runtime_error(
        "force_sum_alt: Matsubara series did not converge within max_matsubara_terms");

  ForceResult out;
  out.n_zero_part = -0.5 * pref * zero.value;
  out.series_part = -pref * series.value;
  out.force = out.n_zero_part + out.series_part;
  out.abs_error = pref * (series.abs_error + acc.quad_error + 0.5 * zero.abs_error) +
                  4.0 * std::numeric_limits<double>::epsilon() * std::fabs(out.force);
  out.truncation_index = static_cast<int>(series.evaluations);
  out.quadrature_evals = acc.evaluations + zero.evaluations;
  out.converged = acc.all_converged && zero.converged;
  return out;
}

/**
 * Zero-temperature reference: the Matsubara sum replaced by the integral
 * over imaginary frequency,
 *
 *   F = hbar c R / (16 pi a^3) * integral_0^inf dt [ -I(t) ],
 *
 * with t the continuous analogue of x_n and zeta(t) = c t / (2a).  The
 * result carries no temperature dependence.
 */
inline ForceResult force_integral(const Material& mat, const Geometry& geom,
                                  const NumericSettings& s = {}) {
  const double a = geom.gap();
  const NumericSettings inner = detail::inner_settings(s, 1e-3, s.rel_tol * 1e-5);

  long inner_evals = 0;
  double max_inner_error = 0.0;
  bool inner_converged = true;
  auto outer_f = [&](double t) {
    const QuadResult q =
        detail::matsubara_term_integral(mat, t, constants::c * t / (2.0 * a), inner);
    inner_evals += q.evaluations;
    max_inner_error = std::max(max_inner_error, q.abs_error);
    inner_converged = inner_converged && q.converged;
    return -q.value;
  };

  const QuadResult outer = integrate_semi_infinite(outer_f, 0.0, true, s);

  const double scale = constants::hbar * constants::c * geom.radius() /
                       (16.0 * constants::pi * a * a * a);
  ForceResult out;
  out.force = scale * outer.value;
  out.series_part = out.force;
  out.abs_error = scale * (outer.abs_error + s.tail_cutoff_x * max_inner_error);
  out.truncation_index = 0;
  out.quadrature_evals = outer.evaluations + inner_evals;
  out.converged = outer.converged && inner_converged;
  return out;
}

/// Small-temperature closed form for ideal mirrors:
///   F_T = F_0 [ 1 + 45 zeta(3)/pi^3 (T/T_eff)^3 - (T/T_eff)^4 ].
/// Valid for T/T_eff < 0.3.
inline double ideal_force_smallT(const Geometry& geom, double temperature_K) {
  if (!(temperature_K >= 0.0))
    throw std::domain_error("ideal_force_smallT: temperature must be non-negative");
  const double tau = temperature_K / effective_temperature(geom.gap());
  if (!(tau < 0.3))
    throw std::domain_error("ideal_force_smallT: valid only for T/T_eff < 0.3");
  const double pi3 = constants::pi * constants::pi * constants::pi;
  const double bracket =
      1.0 + 45.0 * constants::zeta3 / pi3 * tau * tau * tau - tau * tau * tau * tau;
  return bare_force(geom) * bracket;
}

}  // namespace casimir

#endif  // CASIMIR_LIFSHITZ_HPP
