#include "tauprec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace tauprec {

namespace {

constexpr long double kLongDoubleEps = 1.084202172485504434e-19L;

// Gauss-Legendre nodes and weights on [-1, 1], computed once in long double
// by Newton iteration on P_m. Runtime construction keeps the node accuracy
// at long double level; tabulated double constants would cap the agreement
// between the value rule and the estimator rule near 1e-17.
struct GaussRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

GaussRule make_gauss_rule(int m) {
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int i = 0; i < m; ++i) {
    long double x = cosl(pi * (i + 0.75L) / (m + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 200; ++iter) {
      long double p0 = 1.0L, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (fabsl(dx) <= 2.0L * kLongDoubleEps * fabsl(x) + 1e-24L) break;
    }
    {
      long double p0 = 1.0L, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0L);
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0L / ((1.0L - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& value_rule() {
  static const GaussRule* rule = new GaussRule(make_gauss_rule(25));
  return *rule;
}

const GaussRule& estimate_rule() {
  static const GaussRule* rule = new GaussRule(make_gauss_rule(12));
  return *rule;
}

struct Panel {
  long double a, b;
  long double value;
  long double resabs;  // estimate of Int |f|, for the rounding floor
  double error;
};

Panel evaluate_panel(const std::function<long double(long double)>& f, long double a,
                     long double b) {
  const long double center = 0.5L * (a + b);
  const long double half = 0.5L * (b - a);
  const GaussRule& hi = value_rule();
  const GaussRule& lo = estimate_rule();
  long double v_hi = 0.0L, resabs = 0.0L;
  for (std::size_t i = 0; i < hi.nodes.size(); ++i) {
    const long double fv = f(center + half * hi.nodes[i]);
    v_hi += hi.weights[i] * fv;
    resabs += hi.weights[i] * fabsl(fv);
  }
  long double v_lo = 0.0L;
  for (std::size_t i = 0; i < lo.nodes.size(); ++i)
    v_lo += lo.weights[i] * f(center + half * lo.nodes[i]);
  v_hi *= half;
  v_lo *= half;
  resabs *= half;
  return Panel{a, b, v_hi, resabs, static_cast<double>(fabsl(v_hi - v_lo))};
}

// Below this the error estimate is quadrature roundoff, not truncation;
// bisecting cannot improve it.
double rounding_floor(const Panel& p) {
  return static_cast<double>(32.0L * kLongDoubleEps * p.resabs);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<long double(long double)>& f,
                                    long double a, long double b, double rel_tol,
                                    double abs_tol,
                                    std::span<const long double> interior_breakpoints,
                                    std::size_t max_panels) {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::vector<long double> edges;
  edges.push_back(a);
  for (long double t : interior_breakpoints)
    if (t > a && t < b) edges.push_back(t);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());

  // Panels ordered by error estimate, worst last.
  std::multimap<double, Panel> panels;
  long double total = 0.0L;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = evaluate_panel(f, edges[i], edges[i + 1]);
    total += p.value;
    total_err += p.error;
    panels.emplace(p.error, p);
  }

  auto refresh = [&]() {
    total = 0.0L;
    total_err = 0.0;
    for (const auto& [err, p] : panels) {
      total += p.value;
      total_err += err;
    }
  };
  auto tolerance = [&]() {
    return std::max(rel_tol * static_cast<double>(fabsl(total)), abs_tol);
  };

  std::size_t since_refresh = 0;
  while (panels.size() < max_panels) {
    if (total_err <= tolerance()) {
      // The running sums drift; trust a clean recomputation before stopping.
      refresh();
      if (total_err <= tolerance()) break;
    }
    auto worst_it = std::prev(panels.end());
    Panel worst = worst_it->second;
    const long double mid = 0.5L * (worst.a + worst.b);
    if (worst.error <= rounding_floor(worst) || mid <= worst.a || mid >= worst.b)
      break;  // refinement cannot reduce the estimate any further
    panels.erase(worst_it);
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.emplace(left.error, left);
    panels.emplace(right.error, right);
    if (++since_refresh >= 256) {
      refresh();
      since_refresh = 0;
    }
  }
  refresh();

  result.value = static_cast<double>(total);
  result.error_estimate = total_err;
  result.panels = panels.size();
  result.converged = total_err <= tolerance();
  return result;
}

}  // namespace tauprec
