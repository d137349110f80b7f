#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <limits>

#include "casimir/quadrature.hpp"
#include "casimir/validation.hpp"

using namespace casimir;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("zeta(3) identity with an endpoint singularity") {
  NumericSettings s;
  s.rel_tol = 1e-12;
  s.abs_tol = 1e-12;
  const auto q = integrate_semi_infinite(
      [](double x) { return x * std::log1p(-std::exp(-x)); }, 0.0, true, s);
  CHECK(q.converged);
  CHECK_THAT(q.value, WithinAbs(-constants::zeta3, 1e-12));
  CHECK(std::fabs(q.value + constants::zeta3) <= q.abs_error);
}

TEST_CASE("Gamma(2) = 1 on the plain exponential weight") {
  NumericSettings s;
  const auto q = integrate_semi_infinite(
      [](double x) { return x * std::exp(-x); }, 0.0, false, s);
  CHECK(q.converged);
  CHECK_THAT(q.value, WithinRel(1.0, 1e-9));
}

TEST_CASE("shifted lower limit") {
  NumericSettings s;
  const auto q = integrate_semi_infinite(
      [](double x) { return x * std::exp(-x); }, 2.0, false, s);
  CHECK(q.converged);
  CHECK_THAT(q.value, WithinRel(3.0 * std::exp(-2.0), 1e-9));
}

TEST_CASE("negative lower limit is rejected") {
  NumericSettings s;
  CHECK_THROWS_AS(integrate_semi_infinite([](double x) { return std::exp(-x); }, -1.0,
                                          false, s),
                  std::domain_error);
}

TEST_CASE("closed-form battery: accuracy and error honesty") {
  NumericSettings s;
  s.rel_tol = 1e-10;
  for (const auto& bc : quadrature_battery()) {
    INFO(bc.name);
    const auto q = integrate_semi_infinite(bc.f, bc.lower, bc.singular, s);
    CHECK(q.converged);
    CHECK_THAT(q.value, WithinAbs(bc.exact, 1e-9 * std::max(1.0, std::fabs(bc.exact))));
    // the reported error bar must cover the true error
    CHECK(std::fabs(q.value - bc.exact) <= q.abs_error);
  }
}

TEST_CASE("tighter tolerances do not increase the true error") {
  const auto f = [](double x) { return x * std::log1p(-std::exp(-x)); };
  const double exact = -constants::zeta3;
  double prev = 1.0;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    NumericSettings s;
    s.rel_tol = tol;
    const auto q = integrate_semi_infinite(f, 0.0, true, s);
    CHECK(q.converged);
    const double err = std::fabs(q.value - exact);
    CHECK(err <= q.abs_error);
    CHECK(err <= prev + 1e-15);  // tiny slack for already-converged plateaus
    prev = err;
    // converged implies the bar is within the requested tolerance
    CHECK(q.abs_error <= std::max(s.abs_tol, s.rel_tol * std::fabs(q.value)) +
                             100.0 * std::numeric_limits<double>::epsilon());
  }
}

TEST_CASE("evaluation count grows as the tolerance tightens") {
  const auto f = [](double x) { return x * std::log1p(-std::exp(-x)); };
  NumericSettings loose, tight;
  loose.rel_tol = 1e-4;
  tight.rel_tol = 1e-12;
  tight.abs_tol = 1e-13;
  const auto ql = integrate_semi_infinite(f, 0.0, true, loose);
  const auto qt = integrate_semi_infinite(f, 0.0, true, tight);
  CHECK(qt.evaluations >= ql.evaluations);
}

TEST_CASE("sum_series: geometric series") {
  NumericSettings s;
  s.rel_tol = 1e-12;
  const auto q = sum_series(
      [](int n) { return std::pow(0.5, n); },
      [](int /*n*/, double t) { return t; },  // exact geometric tail with r = 1/2
      s);
  CHECK(q.converged);
  CHECK_THAT(q.value, WithinRel(1.0, 1e-12));
}

TEST_CASE("sum_series: tail of zeta(3) with an integral tail bound") {
  // sum_{n >= 2} n^-3 via term(n) = (n+1)^-3, tail bound integral = 1/(2 (n+1)^2)
  NumericSettings s;
  s.rel_tol = 1e-8;  // the O(n^-2) tail bound needs ~16k terms at this level
  const auto q = sum_series(
      [](int n) { return std::pow(n + 1.0, -3.0); },
      [](int n, double /*t*/) { return 0.5 * std::pow(n + 1.0, -2.0); }, s);
  CHECK(q.converged);
  CHECK_THAT(q.value, WithinAbs(constants::zeta3 - 1.0, q.abs_error));
  CHECK_THAT(q.value, WithinRel(0.2020569031595943, 1e-8));
}

TEST_CASE("sum_series: observed-ratio majorant is honest on a Matsubara-like series") {
  // terms e^{-c n} (1 + c n) mimic the decay of the Lifshitz term integrals
  const double c = 0.165;
  const auto term = [c](int n) { return std::exp(-c * n) * (1.0 + c * n); };
  // brute-force reference
  double exact = 0.0;
  for (int n = 1000000; n >= 1; --n) exact += term(n);

  NumericSettings s;
  s.rel_tol = 1e-10;
  double prev = std::numeric_limits<double>::infinity();
  const auto q = sum_series(term,
                            [&prev](int n, double t) {
                              const double at = std::fabs(t);
                              if (n == 1) {
                                prev = at;
                                return std::numeric_limits<double>::infinity();
                              }
                              const double r = at / prev;
                              prev = at;
                              if (!(r < 1.0)) return std::numeric_limits<double>::infinity();
                              return 1.2 * at * r / (1.0 - r);
                            },
                            s);
  CHECK(q.converged);
  CHECK(std::fabs(q.value - exact) <= q.abs_error);
  CHECK_THAT(q.value, WithinRel(exact, 1e-10));
}

TEST_CASE("sum_series: reports non-convergence instead of a silent answer") {
  NumericSettings s;
  s.rel_tol = 1e-12;
  s.max_matsubara_terms = 5;
  const auto q = sum_series(
      [](int n) { return 1.0 / n; },
      [](int, double) { return std::numeric_limits<double>::infinity(); }, s);
  CHECK_FALSE(q.converged);
  CHECK(std::isinf(q.abs_error));
}

TEST_CASE("quadrature is bit-deterministic across repeated runs") {
  NumericSettings s;
  s.rel_tol = 1e-11;
  const auto f = [](double x) { return x * std::log1p(-0.8 * std::exp(-x)); };
  const auto q1 = integrate_semi_infinite(f, 0.0, true, s);
  const auto q2 = integrate_semi_infinite(f, 0.0, true, s);
  CHECK(q1.value == q2.value);
  CHECK(q1.abs_error == q2.abs_error);
  CHECK(q1.evaluations == q2.evaluations);
}
