#pragma once

#include "lightcone/cubic.hpp"

namespace lightcone {

// Progression angle: the advance of theta over one curvature period (mu > 0).
// All three throw Error(NonPositiveMu) when mu <= 0.

// Quadrature of -2 sqrt(mu) int_{x1}^{x2} dx / (x sqrt(x^3 - lambda x - mu)).
// After x = x1 cos^2 phi + x2 sin^2 phi and tan phi = sqrt(x1/x2) tan v the
// integrand is smooth and bounded; adaptive Gauss-Legendre panels do the rest.
double progression_angle_quad(const SolitonParams& params);

// 4 sqrt(mu) / (-x1 sqrt(x3 - x1)) * Pi(pi/2, (x2 - x1)/(-x1), k).
double progression_angle_closed(const SolitonParams& params);

// Four-term large-lambda expansion for mu = 2 in x = (3/lambda)^(3/2).
// Throws Error(OutsideSeriesRange) for lambda < min_lambda.
double progression_angle_series(double lambda, double min_lambda = 30.0);

// Limit of the series as lambda -> infinity (its constant term).
double progression_series_constant();

struct ClosedSolitonSpec {
  int p = 0;
  int q = 0;
  double lambda_star = 0.0;
  double mu = 2.0;
  double progression = 0.0;  // 2 pi p / q
  double residual = 0.0;     // |Lambda(lambda_star) - progression|
};

// Solves Lambda(lambda) = 2 pi p / q at mu = 2 by bisection on the closed form.
// Errors: NotCoprime, RatioOutOfRange (p/q outside (sqrt(2/3), 1)),
// BracketFailure.
ClosedSolitonSpec find_closed_lambda(int p, int q);

enum class MuCase { Zero, Negative };

// theta(T) for mu = 0 or mu = -2, by integrating the psi/theta system over
// exactly one period. Error(RegimeViolation) if the roots degenerate.
double endpoint_angle(MuCase mu_case, double lambda);

}  // namespace lightcone
