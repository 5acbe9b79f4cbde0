#pragma once

// Independent reference computations used by the tests. None of these share
// code with the library's special-function or quadrature kernels.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

namespace detail {
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                      (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= 15.0 * std::max(tol, floor)) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Adaptive Simpson with Richardson correction.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int max_depth = 50) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Double-exponential (tanh-sinh) quadrature on [a, b]; tolerates integrable
// endpoint singularities because the nodes never touch the endpoints.
// f receives (x, distance to a, distance to b) so callers can avoid
// cancellation next to the endpoints.
inline double tanh_sinh(const std::function<double(double, double, double)>& f, double a, double b,
                        double tol = 1e-14) {
  const double half = 0.5 * (b - a);
  const double pi2 = 0.5 * std::numbers::pi;
  double h = 1.0;
  auto term = [&](double t) {
    const double u = pi2 * std::sinh(t);
    const double ch = std::cosh(u);
    const double w = pi2 * std::cosh(t) / (ch * ch);
    // distances 1 -+ tanh(u), computed without cancellation
    const double e = std::exp(-2.0 * std::abs(u));
    const double small = 2.0 * e / (1.0 + e);
    const double big = 2.0 - small;
    const double da = half * (u < 0 ? small : big);
    const double db = half * (u < 0 ? big : small);
    if (da <= 0.0 || db <= 0.0) return 0.0;
    return w * f(a + da, da, db);
  };
  double sum = term(0.0);
  for (int k = 1;; ++k) {
    const double t = k * h;
    const double add = term(t) + term(-t);
    sum += add;
    if (std::abs(add) < 1e-300 || t > 6.5) break;
  }
  double prev = sum * h;
  for (int level = 0; level < 12; ++level) {
    h *= 0.5;
    double add_sum = 0.0;
    for (int k = 1;; k += 2) {
      const double t = k * h;
      const double add = term(t) + term(-t);
      add_sum += add;
      if (t > 6.5) break;
    }
    sum += add_sum;
    const double cur = sum * h;
    if (std::abs(cur - prev) <= tol * std::abs(cur)) return cur * half;
    prev = cur;
  }
  return prev * half;
}

inline double agm(double a, double b) {
  for (int i = 0; i < 100 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return a;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Real roots of x^3 - lambda x - mu by bracketing on the critical points.
inline std::vector<double> cubic_roots(double lambda, double mu) {
  auto p = [&](double x) { return (x * x - lambda) * x - mu; };
  const double c = std::sqrt(lambda / 3.0);
  const double bound = 2.0 * std::sqrt(lambda) + std::cbrt(std::abs(mu)) + 1.0;
  return {bisect(p, -bound, -c), bisect(p, -c, c), bisect(p, c, bound)};
}

// Central difference of order 2.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
