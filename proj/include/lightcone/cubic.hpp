#pragma once

namespace lightcone {

// One member of the soliton family: the integration constants (lambda, mu),
// the sorted real roots of x^3 - lambda x - mu and the derived modulus and
// arc-length period of the curvature profile. Immutable; build via solve_cubic.
class SolitonParams {
 public:
  double lambda() const noexcept { return lambda_; }
  double mu() const noexcept { return mu_; }
  double x1() const noexcept { return x1_; }
  double x2() const noexcept { return x2_; }
  double x3() const noexcept { return x3_; }
  // k = sqrt((x2 - x1) / (x3 - x1))
  double modulus() const noexcept { return modulus_; }
  // T = 4 K(k) / sqrt(x3 - x1)
  double period() const noexcept { return period_; }

 private:
  friend SolitonParams solve_cubic(double lambda, double mu);
  SolitonParams() = default;

  double lambda_ = 0.0, mu_ = 0.0;
  double x1_ = 0.0, x2_ = 0.0, x3_ = 0.0;
  double modulus_ = 0.0, period_ = 0.0;
};

// Three distinct real roots of x^3 - lambda x - mu by the trigonometric
// formula, Newton-polished and sorted. Throws Error(DegenerateRoots) unless
// 4 lambda^3 - 27 mu^2 > 1e-10 max(1, lambda^3).
SolitonParams solve_cubic(double lambda, double mu);

// lambda = 3 (|mu|/2)^(2/3): below or at this value the roots degenerate.
double regime_boundary(double mu);

}  // namespace lightcone
