/**
 * Dielectric functions at imaginary frequency and the reflection factors
 * G1 (transverse electric) and G2 (transverse magnetic) entering the
 * Lifshitz integrand.
 */

#ifndef CASIMIR_DIELECTRIC_HPP
#define CASIMIR_DIELECTRIC_HPP

#include <cmath>
#include <stdexcept>

#include "casimir/core.hpp"

namespace casimir {

/// Squared reflection amplitudes for the two polarizations; both in [0, 1].
struct ReflectionPair {
  double g1 = 0.0;
  double g2 = 0.0;
};

/// eps(i*zeta) for the plasma and Drude models.  The ideal metal is handled
/// by branch in reflection_pair and is never evaluated here.
inline double eps_imag(const Material& mat, double zeta) {
  if (!(zeta > 0.0)) throw std::domain_error("eps_imag: zeta must be positive");
  switch (mat.model) {
    case DielectricModel::Plasma:
      return 1.0 + (mat.omega_p / zeta) * (mat.omega_p / zeta);
    case DielectricModel::Drude:
      return 1.0 + mat.omega_p * mat.omega_p / (zeta * (zeta + mat.omega_tau));
    case DielectricModel::IdealMetal:
      break;
  }
  throw std::invalid_argument("eps_imag: ideal metal has no finite dielectric function");
}

namespace detail {

// Reflection factors from eps - 1 and p.  Both differences are evaluated
// through their algebraic product forms,
//   p - s      = -(eps-1) / (p + s),
//   eps*p - s  = (eps-1) (p^2 (eps+1) - 1) / (eps*p + s),
// which avoid subtractive cancellation when eps-1 << p^2 or eps -> 1.
inline ReflectionPair reflection_from_eps_minus_one(double eps_m1, double p) {
  const double eps = 1.0 + eps_m1;
  const double s = std::sqrt(eps_m1 + p * p);
  const double ps = p + s;
  const double r1 = eps_m1 / (ps * ps);
  const double den2 = eps * p + s;
  const double r2 = eps_m1 * (p * p * (eps + 1.0) - 1.0) / (den2 * den2);
  return ReflectionPair{r1 * r1, r2 * r2};
}

}  // namespace detail

/// G1, G2 at momentum parameter p >= 1 and imaginary frequency zeta.
/// The ideal metal returns (1, 1) exactly (eps -> infinity limit).
inline ReflectionPair reflection_pair(const Material& mat, double p, double zeta) {
  if (!(p >= 1.0)) throw std::domain_error("reflection_pair: p must be >= 1");
  if (mat.model == DielectricModel::IdealMetal) return ReflectionPair{1.0, 1.0};
  return detail::reflection_from_eps_minus_one(eps_imag(mat, zeta) - 1.0, p);
}

/// Skin-depth-to-separation parameter alpha = c / (2 a omega_p).
inline double skin_depth_alpha(const Material& mat, const Geometry& geom) {
  if (mat.model == DielectricModel::IdealMetal)
    throw std::invalid_argument("skin_depth_alpha: undefined for the ideal metal");
  return constants::c / (2.0 * geom.gap() * mat.omega_p);
}

/// Zero-frequency limit of G1 under the plasma model in the x variable:
///   G1 = ((x - sqrt(x^2 + alpha^-2)) / (x + sqrt(x^2 + alpha^-2)))^2.
/// Evaluated via x - s = -alpha^-2 / (x + s) for stability at large x.
inline double g1_static_limit(double x, double alpha) {
  if (!(x > 0.0)) throw std::domain_error("g1_static_limit: x must be positive");
  if (!(alpha > 0.0)) throw std::domain_error("g1_static_limit: alpha must be positive");
  const double inv_a2 = 1.0 / (alpha * alpha);
  const double s = std::sqrt(x * x + inv_a2);
  const double r = inv_a2 / ((x + s) * (x + s));
  return r * r;
}

}  // namespace casimir

#endif  // CASIMIR_DIELECTRIC_HPP
