/**
 * Self-validation suite: reproduces the headline numbers and limits of the
 * model on every run, with one pass/fail line per check.  Shared by the
 * `validate` CLI subcommand and the acceptance test binary.
 */

#ifndef CASIMIR_VALIDATION_HPP
#define CASIMIR_VALIDATION_HPP

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/casimir.hpp"

namespace casimir {

struct CheckResult {
  std::string id;
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

struct BatteryCase {
  std::string name;
  std::function<double(double)> f;
  double lower = 0.0;
  bool singular = false;
  double exact = 0.0;
};

/// Integrands with known closed forms, used to check that the quadrature
/// engine never understates its own error.
inline std::vector<BatteryCase> quadrature_battery() {
  using std::exp;
  using std::log1p;
  using std::sqrt;
  const double pi = constants::pi;
  const double zeta4 = pi * pi * pi * pi / 90.0;
  const double li3_half = 0.53721319360804020;  // Li_3(1/2)
  std::vector<BatteryCase> cases;
  auto add = [&](std::string name, std::function<double(double)> f, double lower,
                 bool singular, double exact) {
    cases.push_back(BatteryCase{std::move(name), std::move(f), lower, singular, exact});
  };
  add("x e^-x [0,inf)", [](double x) { return x * exp(-x); }, 0.0, false, 1.0);
  add("x e^-x [2,inf)", [](double x) { return x * exp(-x); }, 2.0, false, 3.0 * exp(-2.0));
  add("x e^-x [5,inf)", [](double x) { return x * exp(-x); }, 5.0, false, 6.0 * exp(-5.0));
  add("x^2 e^-x [0,inf)", [](double x) { return x * x * exp(-x); }, 0.0, false, 2.0);
  add("x^2 e^-x [1,inf)", [](double x) { return x * x * exp(-x); }, 1.0, false,
      5.0 * exp(-1.0));
  add("x^3 e^-x [0,inf)", [](double x) { return x * x * x * exp(-x); }, 0.0, false, 6.0);
  add("x^5 e^-x [0,inf)", [](double x) { return x * x * x * x * x * exp(-x); }, 0.0, false,
      120.0);
  add("e^-x [0,inf)", [](double x) { return exp(-x); }, 0.0, false, 1.0);
  add("e^-2x [0,inf)", [](double x) { return exp(-2.0 * x); }, 0.0, false, 0.5);
  add("x e^-2x [0,inf)", [](double x) { return x * exp(-2.0 * x); }, 0.0, false, 0.25);
  add("x e^-x^2 [0,inf)", [](double x) { return x * exp(-x * x); }, 0.0, false, 0.5);
  add("(1+x) e^-x [0,inf)", [](double x) { return (1.0 + x) * exp(-x); }, 0.0, false, 2.0);
  add("x ln(1-e^-x) [0,inf)", [](double x) { return x * log1p(-exp(-x)); }, 0.0, true,
      -constants::zeta3);
  add("ln(1-e^-x) [0,inf)", [](double x) { return log1p(-exp(-x)); }, 0.0, true,
      -pi * pi / 6.0);
  add("x^2 ln(1-e^-x) [0,inf)", [](double x) { return x * x * log1p(-exp(-x)); }, 0.0,
      true, -2.0 * zeta4);
  add("x ln(1-e^-x/2) [0,inf)", [](double x) { return x * log1p(-0.5 * exp(-x)); }, 0.0,
      false, -li3_half);
  add("x ln(1+e^-x) [0,inf)", [](double x) { return x * log1p(exp(-x)); }, 0.0, false,
      0.75 * constants::zeta3);
  add("x/(e^x-1) [0,inf)", [](double x) { return x / std::expm1(x); }, 0.0, false,
      pi * pi / 6.0);
  add("x^3/(e^x-1) [0,inf)", [](double x) { return x * x * x / std::expm1(x); }, 0.0,
      false, pi * pi * pi * pi / 15.0);
  add("sqrt(x) e^-x [0,inf)", [](double x) { return sqrt(x) * exp(-x); }, 0.0, true,
      sqrt(pi) / 2.0);
  return cases;
}

namespace detail {

inline double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline bool bitwise_equal(const ForceResult& a, const ForceResult& b) {
  return a.force == b.force && a.abs_error == b.abs_error && a.n_zero_part == b.n_zero_part &&
         a.series_part == b.series_part && a.truncation_index == b.truncation_index &&
         a.quadrature_evals == b.quadrature_evals;
}

}  // namespace detail

/**
 * Run every validation check.  `perturb` is a test-only hook that scales one
 * computed quantity so the suite's sensitivity can itself be tested; 1.0
 * means no perturbation.
 */
inline std::vector<CheckResult> run_validation(double perturb = 1.0) {
  std::vector<CheckResult> checks;
  const auto suite_start = std::chrono::steady_clock::now();

  auto timed = [&](std::string id, std::string name, auto&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    r.id = std::move(id);
    r.name = std::move(name);
    body(r);
    r.seconds = detail::elapsed_seconds(t0);
    checks.push_back(r);
    return checks.back();
  };

  const double pN = 1e-12;
  const Geometry geom(1e-4, 1e-7);  // R = 100 um, a = 0.1 um
  const double T = 300.0;
  const Material plasma = Material::plasma(2e16);
  const Material drude = Material::drude(2e16, 5e13);
  const Material ideal = Material::ideal_metal();
  NumericSettings s;  // defaults

  // 1. zeta(3) identity of the quadrature engine.
  timed("1", "zeta3-identity", [&](CheckResult& r) {
    NumericSettings qs;
    qs.rel_tol = 1e-12;
    qs.abs_tol = 1e-12;
    const auto t0 = std::chrono::steady_clock::now();
    const QuadResult q = integrate_semi_infinite(
        [](double x) { return x * std::log1p(-std::exp(-x)); }, 0.0, true, qs);
    const double secs = detail::elapsed_seconds(t0);
    r.expected = -1.2020569031595943;
    r.actual = q.value * perturb;
    r.tolerance = 1e-11;
    r.pass = std::fabs(r.actual - r.expected) <= r.tolerance && secs < 1.0;
  });

  // 2. Ideal-mirror cancellation of the n=0 mismatch.
  timed("2", "ideal-mirror-cancellation", [&](CheckResult& r) {
    r.expected = 0.0;
    r.actual = delta_T_general(ideal, geom, T, s);
    r.tolerance = 1e-14;
    r.pass = std::fabs(r.actual) <= r.tolerance;
  });

  // 3. Plasma closed-form correction and its numeric cross-check.
  const double closed = delta_T_closed(plasma, geom, T, s);
  const DeltaNumeric plasma_numeric = delta_T_numeric(plasma, geom, T, s);
  timed("3a", "plasma-closed-correction", [&](CheckResult& r) {
    r.expected = 2.5 * pN;
    r.actual = closed;
    r.tolerance = 0.15 * pN;
    r.pass = std::fabs(r.actual - r.expected) <= r.tolerance;
  });
  timed("3b", "plasma-numeric-vs-closed", [&](CheckResult& r) {
    r.expected = closed;
    r.actual = plasma_numeric.value;
    r.tolerance = 0.1 * pN;
    r.pass = std::fabs(r.actual - r.expected) <= r.tolerance;
  });

  // 4. alpha-expansion value and its O(alpha^2) convergence order.
  timed("4a", "plasma-expansion-value", [&](CheckResult& r) {
    r.expected = 2.893 * pN;
    r.actual = delta_T_expansion(plasma, geom, T);
    r.tolerance = 0.01 * pN;
    r.pass = std::fabs(r.actual - r.expected) <= r.tolerance;
  });
  timed("4b", "expansion-error-order", [&](CheckResult& r) {
    const double alphas[3] = {0.01, 0.05, 0.1};
    double lx[3], ly[3];
    for (int i = 0; i < 3; ++i) {
      const double omega_p = constants::c / (2.0 * geom.gap() * alphas[i]);
      const Material m = Material::plasma(omega_p);
      const double dc = delta_T_closed(m, geom, T, s);
      const double de = delta_T_expansion(m, geom, T);
      lx[i] = std::log(alphas[i]);
      ly[i] = std::log(std::fabs(dc - de) / dc);
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
    const double my = (ly[0] + ly[1] + ly[2]) / 3.0;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
      num += (lx[i] - mx) * (ly[i] - my);
      den += (lx[i] - mx) * (lx[i] - mx);
    }
    r.expected = 2.0;
    r.actual = num / den;
    r.tolerance = 0.3;
    r.pass = std::fabs(r.actual - r.expected) <= r.tolerance;
  });

  // 5. Drude numeric correction.
  const DeltaNumeric drude_numeric = delta_T_numeric(drude, geom, T, s);
  timed("5", "drude-numeric-correction", [&](CheckResult& r) {
    r.expected = 4.0 * pN;
    r.actual = drude_numeric.value;
    r.tolerance = 0.4 * pN;
    r.pass = std::fabs(r.actual - r.expected) <= r.tolerance;
  });

  // 6. Classical-limit factor 2 (Drude), a = 5 um, T = 1000 K.
  {
    const Geometry hot_geom(1e-4, 5e-6);
    const double hot_T = 1000.0;
    const double classical = constants::k_B * hot_T * hot_geom.radius() * constants::zeta3 /
                             (4.0 * hot_geom.gap() * hot_geom.gap());
    const auto t6 = std::chrono::steady_clock::now();
    const ForceResult hot_sum = force_sum(drude, hot_geom, hot_T, s);
    const ForceResult hot_alt = force_sum_alt(drude, hot_geom, hot_T, s);
    const double secs6 = detail::elapsed_seconds(t6);
    timed("6a", "classical-limit-drude-sum", [&](CheckResult& r) {
      r.expected = classical;
      r.actual = hot_sum.force;
      r.tolerance = 0.005 * classical;
      r.pass = std::fabs(r.actual - r.expected) <= r.tolerance && secs6 < 10.0;
    });
    timed("6b", "classical-limit-drude-alt-half", [&](CheckResult& r) {
      r.expected = 0.5 * classical;
      r.actual = hot_alt.force;
      r.tolerance = 0.01 * 0.5 * classical;
      r.pass = std::fabs(r.actual - r.expected) <= r.tolerance && secs6 < 10.0;
    });

    // 7. Plasma high-temperature limit against the closed form.
    timed("7", "classical-limit-plasma-alt", [&](CheckResult& r) {
      const ForceResult alt_p = force_sum_alt(plasma, hot_geom, hot_T, s);
      r.expected =
          classical * (1.0 - 2.0 * constants::c / (hot_geom.gap() * plasma.omega_p));
      r.actual = alt_p.force;
      r.tolerance = 0.01 * r.expected;
      r.pass = std::fabs(r.actual - r.expected) <= r.tolerance;
    });
  }

  // 8. Ideal small-temperature law at T/T_eff in {0.01, 0.02, 0.05}.
  {
    NumericSettings tight = s;
    tight.rel_tol = 1e-10;
    const double f0 = bare_force(geom);
    const ForceResult ideal_integral = force_integral(ideal, geom, tight);
    const double taus[3] = {0.01, 0.02, 0.05};
    const char* ids[3] = {"8a", "8b", "8c"};
    for (int i = 0; i < 3; ++i) {
      const double tau = taus[i];
      timed(ids[i], std::string("ideal-smallT-law-tau-") + std::to_string(tau).substr(0, 4),
            [&](CheckResult& r) {
              const double Ti = tau * effective_temperature(geom.gap());
              const ForceResult fs = force_sum(ideal, geom, Ti, tight);
              const double pi3 = constants::pi * constants::pi * constants::pi;
              r.expected = 45.0 * constants::zeta3 / pi3 * tau * tau * tau -
                           tau * tau * tau * tau;
              r.actual = (fs.force - ideal_integral.force) / f0;
              r.tolerance = 0.1 * r.expected;
              r.pass = std::fabs(r.actual - r.expected) <= r.tolerance;
            });
    }
  }

  // 9. Replacement-error magnitude for Drude at the paper point.
  timed("9", "drude-replacement-error-percent", [&](CheckResult& r) {
    const ForceResult fs = force_sum(drude, geom, T, s);
    r.actual = drude_numeric.value / fs.force;
    r.expected = 0.025;  // centre of the 1%..4% window
    r.tolerance = 0.015;
    r.pass = r.actual >= 0.01 && r.actual <= 0.04;
  });

  // 10. The correction disappears as omega_p -> infinity.
  timed("10a", "plasma-correction-vanishes", [&](CheckResult& r) {
    const double omega_p = constants::c / (2.0 * geom.gap() * 1e-4);  // alpha = 1e-4
    r.actual = delta_T_closed(Material::plasma(omega_p), geom, T, s);
    r.expected = 0.0;
    r.tolerance = 0.01 * pN;
    r.pass = std::fabs(r.actual) < r.tolerance;
  });
  timed("10b", "plasma-correction-monotone-in-omega-p", [&](CheckResult& r) {
    const double d17 = delta_T_closed(Material::plasma(1e17), geom, T, s);
    const double d18 = delta_T_closed(Material::plasma(1e18), geom, T, s);
    const double d19 = delta_T_closed(Material::plasma(1e19), geom, T, s);
    r.expected = 1.0;
    r.actual = (d17 > d18 && d18 > d19) ? 1.0 : 0.0;
    r.tolerance = 0.0;
    r.pass = r.actual == 1.0;
  });

  // 11. Error honesty, determinism, runtime budget.
  timed("11a", "quadrature-error-honesty", [&](CheckResult& r) {
    NumericSettings qs;
    qs.rel_tol = 1e-10;
    double worst_margin = -1.0;  // positive would mean a violated error bar
    bool all_ok = true;
    for (const auto& bc : quadrature_battery()) {
      const QuadResult q = integrate_semi_infinite(bc.f, bc.lower, bc.singular, qs);
      const double margin = std::fabs(q.value - bc.exact) - q.abs_error;
      worst_margin = std::max(worst_margin, margin);
      all_ok = all_ok && q.converged && margin <= 0.0;
    }
    r.expected = 0.0;
    r.actual = worst_margin;
    r.tolerance = 0.0;
    r.pass = all_ok;
  });
  timed("11b", "determinism", [&](CheckResult& r) {
    const ForceResult a1 = force_sum(plasma, geom, T, s);
    const ForceResult a2 = force_sum(plasma, geom, T, s);
    const ForceResult b1 = force_integral(drude, geom, s);
    const ForceResult b2 = force_integral(drude, geom, s);
    const double c1 = delta_T_closed(plasma, geom, T, s);
    const double c2 = delta_T_closed(plasma, geom, T, s);
    const bool same =
        detail::bitwise_equal(a1, a2) && detail::bitwise_equal(b1, b2) && c1 == c2;
    r.expected = 1.0;
    r.actual = same ? 1.0 : 0.0;
    r.tolerance = 0.0;
    r.pass = same;
  });
  timed("11c", "runtime-budget", [&](CheckResult& r) {
    r.expected = 0.0;
    r.actual = detail::elapsed_seconds(suite_start);
    r.tolerance = 120.0;
    r.pass = r.actual < 120.0;
  });

  return checks;
}

inline bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

inline std::string format_validation_report(const std::vector<CheckResult>& checks) {
  std::ostringstream out;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line,
                  "[%s] %-4s %-36s expected=%.10g actual=%.10g tol=%.10g (%.2fs)\n",
                  c.pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(), c.expected,
                  c.actual, c.tolerance, c.seconds);
    out << line;
  }
  out << (all_passed(checks) ? "ALL CHECKS PASSED\n" : "SOME CHECKS FAILED\n");
  return out.str();
}

}  // namespace casimir

#endif  // CASIMIR_VALIDATION_HPP
