/**
 * Shared numerical kernels: adaptive semi-infinite integration with
 * endpoint-singularity and exponential-tail handling, and series summation
 * with a certified truncation bound.
 *
 * Everything here is deterministic: fixed panel seeds, a total order on
 * refinement choices and a fixed final summation order, so identical inputs
 * give bit-identical results.
 */

#ifndef CASIMIR_QUADRATURE_HPP
#define CASIMIR_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace casimir {

struct NumericSettings {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;               // in the caller's units
  int max_matsubara_terms = 100000;
  int quad_max_depth = 50;            // max bisections of any seed panel
  double tail_cutoff_x = 60.0;        // integration span beyond the lower limit
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEval {
  double value = 0.0;   // Kronrod estimate
  double error = 0.0;   // |K15 - G7|, conservative for the Kronrod value
  double resabs = 0.0;  // integral of |f|, for a round-off term
};

template <class F>
PanelEval gk15(F&& f, double a, double b, long& evaluations) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double resk = kGK15Weights[7] * fc;
  double resg = kG7Weights[3] * fc;
  double resabs = kGK15Weights[7] * std::fabs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kGK15Nodes[j];
    const double f1 = f(mid - dx);
    const double f2 = f(mid + dx);
    resk += kGK15Weights[j] * (f1 + f2);
    resabs += kGK15Weights[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kG7Weights[j / 2] * (f1 + f2);
  }
  evaluations += 15;
  PanelEval out;
  out.value = resk * half;
  out.resabs = resabs * half;
  out.error = std::fabs((resk - resg) * half);
  return out;
}

struct Panel {
  double a = 0.0, b = 0.0;
  double value = 0.0, error = 0.0, resabs = 0.0;
  int depth = 0;
};

struct PanelWorse {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;  // deterministic tie-break: leftmost first
  }
};

}  // namespace detail

/**
 * Integrate f over [lower, infinity) assuming |f(x)| decays like x e^{-x}.
 *
 * The finite part [lower, lower + tail_cutoff_x] is split into seed panels
 * ([l, l+1] graded geometrically toward l when singular_at_lower, then
 * [l+1, l+10] and [l+10, l+cutoff]) and refined adaptively with an embedded
 * Gauss-Kronrod 7-15 pair.  The remaining tail is bounded analytically by
 * probing |f(x)| / (x e^{-x}) and folded into abs_error.
 *
 * Non-convergence is reported via converged = false, never a silent wrong
 * answer.
 */
template <class F>
QuadResult integrate_semi_infinite(F&& f, double lower, bool singular_at_lower,
                                   const NumericSettings& s) {
  if (!(lower >= 0.0))
    throw std::domain_error("integrate_semi_infinite: lower limit must be >= 0");
  QuadResult result;
  const double cutoff = lower + s.tail_cutoff_x;

  // Analytic tail majorant: 4 * sup_probe[|f|/(x e^{-x})] * (1+X) e^{-X}.
  double tail = 0.0;
  for (double probe : {cutoff, cutoff + 5.0, cutoff + 10.0, cutoff + 20.0}) {
    const double weight = probe * std::exp(-probe);
    if (weight < std::numeric_limits<double>::min()) continue;
    const double ratio = std::fabs(f(probe)) / weight;
    ++result.evaluations;
    tail = std::max(tail, ratio);
  }
  tail *= 4.0 * (1.0 + cutoff) * std::exp(-cutoff);

  // Seed panels.
  std::vector<std::pair<double, double>> seeds;
  {
    const double b1 = std::min(lower + 1.0, cutoff);
    if (singular_at_lower) {
      // Graded mesh toward the singular endpoint: ratio 1/2, 40 levels.
      double width = b1 - lower;
      double prev = lower;
      for (int k = 40; k >= 1; --k) {
        const double edge = lower + width * std::ldexp(1.0, -k);
        seeds.emplace_back(prev, edge);
        prev = edge;
      }
      seeds.emplace_back(prev, b1);
    } else {
      seeds.emplace_back(lower, b1);
    }
    const double b2 = std::min(lower + 10.0, cutoff);
    if (b2 > b1) seeds.emplace_back(b1, b2);
    if (cutoff > b2) seeds.emplace_back(b2, cutoff);
  }

  std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelWorse> heap;
  double total_value = 0.0, total_error = 0.0, total_resabs = 0.0;
  for (auto [a, b] : seeds) {
    auto ev = detail::gk15(f, a, b, result.evaluations);
    heap.push(detail::Panel{a, b, ev.value, ev.error, ev.resabs, 0});
    total_value += ev.value;
    total_error += ev.error;
    total_resabs += ev.resabs;
  }

  const auto tolerance = [&](double value_estimate) {
    return std::max(s.abs_tol, s.rel_tol * std::fabs(value_estimate));
  };

  constexpr std::size_t kMaxPanels = 100000;
  std::size_t panel_count = seeds.size();
  while (total_error + tail > tolerance(total_value) && panel_count < kMaxPanels) {
    detail::Panel worst = heap.top();
    if (worst.depth >= s.quad_max_depth) break;  // nothing left to refine
    heap.pop();
    total_value -= worst.value;
    total_error -= worst.error;
    total_resabs -= worst.resabs;
    const double mid = 0.5 * (worst.a + worst.b);
    for (auto [a, b] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
      auto ev = detail::gk15(f, a, b, result.evaluations);
      heap.push(detail::Panel{a, b, ev.value, ev.error, ev.resabs, worst.depth + 1});
      total_value += ev.value;
      total_error += ev.error;
      total_resabs += ev.resabs;
    }
    ++panel_count;
  }

  // Fixed summation order (ascending left edge) for reproducibility.
  std::vector<detail::Panel> panels;
  panels.reserve(panel_count);
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  double value = 0.0, error = 0.0;
  for (const auto& p : panels) {
    value += p.value;
    error += p.error;
  }
  const double eps = std::numeric_limits<double>::epsilon();
  result.value = value;
  result.abs_error = error + tail + 50.0 * eps * total_resabs;
  result.converged = error + tail <= tolerance(value);
  return result;
}

/**
 * Sum term(n) for n = 1, 2, ... in fixed ascending order until the caller's
 * certified tail bound drops below tolerance.  tail_bound(n, term_n) must
 * majorize |sum_{m > n} term(m)| once the terms are decreasing; return
 * +infinity while no bound is available yet.
 */
template <class Term, class Tail>
QuadResult sum_series(Term&& term, Tail&& tail_bound, const NumericSettings& s) {
  QuadResult result;
  double partial = 0.0;
  for (int n = 1; n <= s.max_matsubara_terms; ++n) {
    const double t = term(n);
    partial += t;
    ++result.evaluations;
    const double bound = tail_bound(n, t);
    if (bound <= std::max(s.abs_tol, s.rel_tol * std::fabs(partial))) {
      result.value = partial;
      result.abs_error = bound;
      result.converged = true;
      return result;
    }
  }
  result.value = partial;
  result.abs_error = std::numeric_limits<double>::infinity();
  result.converged = false;
  return result;
}

}  // namespace casimir

#endif  // CASIMIR_QUADRATURE_HPP
