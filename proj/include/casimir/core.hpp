/**
 * Physical constants, unit conventions and the shared domain types.
 *
 * All quantities are strict SI internally (m, s, K, N, rad/s).  Forces are
 * reported as attractive magnitudes, i.e. positive numbers.
 */

#ifndef CASIMIR_CORE_HPP
#define CASIMIR_CORE_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace casimir {

namespace constants {

// CODATA values, not user-configurable.
inline constexpr double hbar = 1.054571817e-34;  // reduced Planck constant, J s
inline constexpr double c = 2.99792458e8;        // speed of light, m/s
inline constexpr double k_B = 1.380649e-23;      // Boltzmann constant, J/K

inline constexpr double pi = 3.14159265358979323846;

// Riemann zeta(3), hard-coded rather than computed.
inline constexpr double zeta3 = 1.2020569031595942854;

}  // namespace constants

enum class DielectricModel { IdealMetal, Plasma, Drude };

inline const char* to_string(DielectricModel m) {
  switch (m) {
    case DielectricModel::IdealMetal: return "ideal";
    case DielectricModel::Plasma: return "plasma";
    case DielectricModel::Drude: return "drude";
  }
  return "?";
}

/// Dielectric model selector with its parameters.  omega_tau is meaningful
/// for the Drude model only, omega_p for Plasma and Drude.
struct Material {
  DielectricModel model = DielectricModel::IdealMetal;
  double omega_p = 0.0;    // plasma frequency, rad/s
  double omega_tau = 0.0;  // relaxation frequency, rad/s (Drude only)

  static Material ideal_metal() { return Material{DielectricModel::IdealMetal, 0.0, 0.0}; }

  static Material plasma(double omega_p) {
    if (!(omega_p > 0.0))
      throw std::invalid_argument("Material::plasma: omega_p must be positive");
    return Material{DielectricModel::Plasma, omega_p, 0.0};
  }

  static Material drude(double omega_p, double omega_tau) {
    if (!(omega_p > 0.0))
      throw std::invalid_argument("Material::drude: omega_p must be positive");
    if (!(omega_tau > 0.0))
      throw std::invalid_argument("Material::drude: omega_tau must be positive");
    return Material{DielectricModel::Drude, omega_p, omega_tau};
  }
};

/// Sphere of radius R above a plate at separation a.  Valid only in the
/// proximity-force regime a < R.
class Geometry {
 public:
  Geometry(double radius_R, double gap_a) : radius_(radius_R), gap_(gap_a) {
    if (!(radius_R > 0.0))
      throw std::invalid_argument("Geometry: sphere radius must be positive");
    if (!(gap_a > 0.0))
      throw std::invalid_argument("Geometry: sphere-plate gap must be positive");
    if (!(gap_a < radius_R))
      throw std::invalid_argument("Geometry: gap must be smaller than the sphere radius");
  }

  double radius() const { return radius_; }  // m
  double gap() const { return gap_; }        // m

 private:
  double radius_;
  double gap_;
};

/// Effective temperature hbar*c/(2*a*k_B) of a gap a, in kelvin.
inline double effective_temperature(double gap_a) {
  if (!(gap_a > 0.0))
    throw std::domain_error("effective_temperature: gap must be positive");
  return constants::hbar * constants::c / (2.0 * gap_a * constants::k_B);
}

/// Dimensionless Matsubara variable x_n = 2 zeta_n a / c = 4 pi n k_B T a / (hbar c).
inline double matsubara_x(int n, double temperature_K, double gap_a) {
  if (n < 1) throw std::domain_error("matsubara_x: n must be >= 1");
  if (!(temperature_K > 0.0)) throw std::domain_error("matsubara_x: T must be positive");
  if (!(gap_a > 0.0)) throw std::domain_error("matsubara_x: gap must be positive");
  return 4.0 * constants::pi * n * constants::k_B * temperature_K * gap_a /
         (constants::hbar * constants::c);
}

/// Temperature plus the derived Matsubara frequencies of a given gap.
class ThermalGrid {
 public:
  ThermalGrid(double temperature_K, double gap_a)
      : temperature_(temperature_K), gap_(gap_a) {
    if (!(temperature_K > 0.0))
      throw std::invalid_argument("ThermalGrid: temperature must be positive");
    if (!(gap_a > 0.0))
      throw std::invalid_argument("ThermalGrid: gap must be positive");
  }

  double temperature() const { return temperature_; }
  double t_eff() const { return effective_temperature(gap_); }

  /// n-th Matsubara frequency 2 pi n k_B T / hbar, rad/s.
  double zeta(int n) const {
    if (n < 0) throw std::domain_error("ThermalGrid::zeta: n must be >= 0");
    return 2.0 * constants::pi * n * constants::k_B * temperature_ / constants::hbar;
  }

  /// Dimensionless x_n = 2 zeta_n a / c.
  double x(int n) const { return matsubara_x(n, temperature_, gap_); }

 private:
  double temperature_;
  double gap_;
};

/// Bare (zero-temperature, ideal-mirror) sphere-plate force
/// pi^3 hbar c R / (360 a^3), returned as an attractive magnitude.
inline double bare_force(const Geometry& geom) {
  const double a = geom.gap();
  const double pi3 = constants::pi * constants::pi * constants::pi;
  return pi3 * constants::hbar * constants::c * geom.radius() / (360.0 * a * a * a);
}

}  // namespace casimir

#endif  // CASIMIR_CORE_HPP
