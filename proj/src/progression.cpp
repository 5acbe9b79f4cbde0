#include "lightcone/progression.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "lightcone/ellip.hpp"
#include "lightcone/error.hpp"
#include "lightcone/quadrature.hpp"
#include "lightcone/trajectory.hpp"

namespace lightcone {

namespace {

void require_positive_mu(const SolitonParams& p) {
  if (!(p.mu() > 0.0)) {
    throw Error(ErrorCode::NonPositiveMu, "progression angle is defined for mu > 0");
  }
}

}  // namespace

double progression_angle_quad(const SolitonParams& p) {
  require_positive_mu(p);
  const double x1 = p.x1(), x2 = p.x2(), x3 = p.x3();
  const double x12 = x1 * x2;
  auto integrand = [&](double v) {
    const double c = std::cos(v), s = std::sin(v);
    const double big_x = x12 / (x2 * c * c + x1 * s * s);
    return 1.0 / std::sqrt(x3 - big_x);
  };
  const double integral =
      numerics::adaptive_gauss_legendre(integrand, 0.0, 0.5 * std::numbers::pi, 1e-15, 128, 40);
  return 4.0 * std::sqrt(p.mu()) / std::sqrt(x12) * integral;
}

double progression_angle_closed(const SolitonParams& p) {
  require_positive_mu(p);
  const double x1 = p.x1(), x2 = p.x2(), x3 = p.x3();
  // alpha^2 = (x2 - x1)/(-x1), so 1 - alpha^2 = x2/x1 exactly.
  const double pi_val = ellip_pi_complete_complement(x2 / x1, p.modulus());
  return 4.0 * std::sqrt(p.mu()) / (-x1 * std::sqrt(x3 - x1)) * pi_val;
}

double progression_series_constant() {
  return 370345.0 * std::numbers::sqrt2 / 262144.0 * std::numbers::pi;
}

double progression_angle_series(double lambda, double min_lambda) {
  if (!(lambda >= min_lambda)) {
    throw Error(ErrorCode::OutsideSeriesRange,
                fmt::format("series needs lambda >= {:.17g}, got {:.17g}", min_lambda, lambda));
  }
  constexpr double pi = std::numbers::pi;
  const double x = std::pow(3.0 / lambda, 1.5);
  const double r3 = std::pow(3.0, 0.25);
  const double r27 = std::pow(27.0, 0.25);
  return progression_series_constant() - 47827845.0 * r3 / 134217728.0 * pi * std::sqrt(x) -
         715.0 * std::sqrt(6.0) / 524288.0 * pi * x +
         123361315.0 * r27 / 1811939328.0 * pi * x * std::sqrt(x);
}

ClosedSolitonSpec find_closed_lambda(int p, int q) {
  if (p <= 0 || q <= 0) throw Error(ErrorCode::InvalidArgument, "p and q must be positive");
  if (std::gcd(p, q) != 1) {
    throw Error(ErrorCode::NotCoprime, fmt::format("p={} and q={} are not coprime", p, q));
  }
  const double ratio = static_cast<double>(p) / q;
  if (!(ratio > std::sqrt(2.0 / 3.0))) {
    throw Error(ErrorCode::RatioOutOfRange, fmt::format("ratio {}/{} below sqrt(2/3)", p, q));
  }
  if (!(ratio < 1.0)) {
    throw Error(ErrorCode::RatioOutOfRange, fmt::format("ratio {}/{} not below 1", p, q));
  }
  const double target = 2.0 * std::numbers::pi * ratio;
  auto angle = [](double lambda) { return progression_angle_closed(solve_cubic(lambda, 2.0)); };

  double lo = 3.0 * (1.0 + 1e-9);
  double hi = 100.0;
  while (angle(hi) <= target) {
    hi *= 2.0;
    if (hi > 1e300) throw Error(ErrorCode::BracketFailure, "no upper bracket for the target");
  }
  if (angle(lo) >= target) throw Error(ErrorCode::BracketFailure, "target below lower bracket");

  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (angle(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  ClosedSolitonSpec spec;
  spec.p = p;
  spec.q = q;
  spec.mu = 2.0;
  spec.progression = target;
  const double r_lo = std::abs(angle(lo) - target);
  const double r_hi = std::abs(angle(hi) - target);
  spec.lambda_star = r_lo <= r_hi ? lo : hi;
  spec.residual = std::min(r_lo, r_hi);
  if (!(spec.residual <= 1e-10)) {
    throw Error(ErrorCode::BracketFailure,
                fmt::format("bisection stalled with residual {:.3g}", spec.residual));
  }
  return spec;
}

double endpoint_angle(MuCase mu_case, double lambda) {
  const double mu = mu_case == MuCase::Zero ? 0.0 : -2.0;
  SolitonParams params = [&] {
    try {
      return solve_cubic(lambda, mu);
    } catch (const Error& e) {
      throw Error(ErrorCode::RegimeViolation, e.what());
    }
  }();
  const double t = params.period();
  const auto states = integrate_polar(params, std::span<const double>(&t, 1));
  return states.back().theta;
}

}  // namespace lightcone
