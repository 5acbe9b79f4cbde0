#include "lightcone/fd.hpp"

#include <algorithm>

#include "lightcone/error.hpp"

namespace lightcone::numerics {

std::vector<double> fornberg_weights(double x0, std::span<const double> x, int order) {
  const int n = static_cast<int>(x.size()) - 1;
  if (n < order) throw Error(ErrorCode::InvalidArgument, "stencil too small for derivative order");
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][order];
  return w;
}

double uniform_derivative(std::span<const double> values, std::size_t i, double h, int order) {
  constexpr std::size_t width = 7;
  const std::size_t n = values.size();
  if (n < width + 1) throw Error(ErrorCode::InvalidArgument, "need at least 8 samples");
  std::size_t start = i >= 3 ? i - 3 : 0;
  // One extra point for shifted stencils keeps 6th order for second derivatives.
  std::size_t len = (i >= 3 && i + 3 < n) ? width : width + 1;
  if (start + len > n) start = n - len;
  std::vector<double> x(len);
  for (std::size_t k = 0; k < len; ++k) x[k] = static_cast<double>(start + k) - static_cast<double>(i);
  const auto w = fornberg_weights(0.0, x, order);
  double d = 0.0;
  for (std::size_t k = 0; k < len; ++k) d += w[k] * values[start + k];
  double scale = 1.0;
  for (int k = 0; k < order; ++k) scale *= h;
  return d / scale;
}

}  // namespace lightcone::numerics
