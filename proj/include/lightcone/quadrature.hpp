#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace lightcone::numerics {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rules are computed once per order and cached; the reference stays valid for
// the lifetime of the program.
const GaussLegendreRule& gauss_legendre_rule(int n);

template <class F>
double gauss_legendre(F&& f, double a, double b, int n) {
  const auto& rule = gauss_legendre_rule(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

namespace detail {

template <class F>
double adaptive_gl_step(F& f, double a, double b, double whole, double abs_tol, int n,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double left = gauss_legendre(f, a, m, n);
  const double right = gauss_legendre(f, m, b, n);
  // the floor keeps roundoff from driving the recursion to max depth
  const double floor = 16.0 * 2.2e-16 * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(left + right - whole) <= std::max(abs_tol, floor)) {
    return left + right;
  }
  return adaptive_gl_step(f, a, m, left, 0.5 * abs_tol, n, depth - 1) +
         adaptive_gl_step(f, m, b, right, 0.5 * abs_tol, n, depth - 1);
}

}  // namespace detail

// Panel bisection until an n-point panel agrees with its two halves.
template <class F>
double adaptive_gauss_legendre(F&& f, double a, double b, double rel_tol = 1e-15, int n = 32,
                               int max_depth = 60) {
  const double whole = gauss_legendre(f, a, b, n);
  const double abs_tol = std::max(rel_tol * std::abs(whole), 1e-300);
  return detail::adaptive_gl_step(f, a, b, whole, abs_tol, n, max_depth);
}

}  // namespace lightcone::numerics
