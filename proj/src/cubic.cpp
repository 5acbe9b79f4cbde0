#include "lightcone/cubic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "lightcone/ellip.hpp"
#include "lightcone/error.hpp"

namespace lightcone {

double regime_boundary(double mu) { return 3.0 * std::cbrt(0.25 * mu * mu); }

SolitonParams solve_cubic(double lambda, double mu) {
  if (!std::isfinite(lambda) || !std::isfinite(mu)) {
    throw Error(ErrorCode::InvalidArgument, "lambda and mu must be finite");
  }
  const double disc = 4.0 * lambda * lambda * lambda - 27.0 * mu * mu;
  if (!(lambda > 0.0) || !(disc > 1e-10 * lambda * lambda * lambda)) {
    throw Error(ErrorCode::DegenerateRoots,
                fmt::format("x^3 - {:.17g} x - {:.17g} has no three distinct real roots; "
                            "need lambda > 3(|mu|/2)^(2/3) = {:.17g}",
                            lambda, mu, regime_boundary(mu)));
  }

  double arg = -(mu / 2.0) * std::pow(3.0 / lambda, 1.5);
  if (std::abs(arg) > 1.0 + 1e-14) {
    throw Error(ErrorCode::DegenerateRoots, "arccos argument outside [-1, 1]");
  }
  arg = std::clamp(arg, -1.0, 1.0);
  const double th = std::acos(arg);
  const double r = 2.0 * std::sqrt(3.0 * lambda) / 3.0;
  std::array<double, 3> x = {-r * std::cos(th / 3.0), r * std::cos((th + std::numbers::pi) / 3.0),
                             r * std::cos((th - std::numbers::pi) / 3.0)};
  for (double& xi : x) {
    for (int it = 0; it < 2; ++it) {
      const double f = (xi * xi - lambda) * xi - mu;
      const double df = 3.0 * xi * xi - lambda;
      if (df != 0.0) xi -= f / df;
    }
  }
  std::sort(x.begin(), x.end());
  if (!(x[0] < x[1] && x[1] < x[2])) {
    throw Error(ErrorCode::DegenerateRoots, "roots coincide after polishing");
  }

  SolitonParams p;
  p.lambda_ = lambda;
  p.mu_ = mu;
  p.x1_ = x[0];
  p.x2_ = x[1];
  p.x3_ = x[2];
  p.modulus_ = std::sqrt((x[1] - x[0]) / (x[2] - x[0]));
  p.period_ = 4.0 * ellip_k(p.modulus_) / std::sqrt(x[2] - x[0]);
  return p;
}

}  // namespace lightcone
