#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "lightcone/error.hpp"

namespace lightcone::numerics {

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-12;
  double initial_step = 1e-3;
  long max_steps = 20'000'000;
};

// Dormand-Prince 5(4) with local extrapolation and a standard
// elementary step-size controller. The solution is reported exactly at the
// requested output abscissae (steps are clipped to hit them).
template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> integrate_dopri5(Rhs&& rhs, double t0,
                                                    const std::array<double, N>& y0,
                                                    std::span<const double> outputs,
                                                    const OdeOptions& opt = {}) {
  using State = std::array<double, N>;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  auto axpy = [](const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State r = y;
    for (const auto& [c, k] : terms) {
      for (std::size_t i = 0; i < N; ++i) r[i] += h * c * (*k)[i];
    }
    return r;
  };

  std::vector<State> out;
  out.reserve(outputs.size());
  double t = t0;
  State y = y0;
  State k1 = rhs(t, y);
  double h = opt.initial_step;
  long steps = 0;

  for (double target : outputs) {
    if (target < t) throw Error(ErrorCode::InvalidArgument, "output abscissae must be increasing");
    while (t < target) {
      if (++steps > opt.max_steps) {
        throw Error(ErrorCode::IntegrationFailure, "step budget exhausted at t=" + std::to_string(t));
      }
      bool clipped = false;
      double step = h;
      if (t + step >= target) {
        step = target - t;
        clipped = true;
      }
      const State k2 = rhs(t + c2 * step, axpy(y, step, {{a21, &k1}}));
      const State k3 = rhs(t + c3 * step, axpy(y, step, {{a31, &k1}, {a32, &k2}}));
      const State k4 = rhs(t + c4 * step, axpy(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const State k5 =
          rhs(t + c5 * step, axpy(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const State k6 = rhs(t + step, axpy(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3},
                                                    {a64, &k4}, {a65, &k5}}));
      const State ynew =
          axpy(y, step, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      const State k7 = rhs(t + step, ynew);

      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double e =
            step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        err = std::max(err, std::abs(e) / sc);
      }
      if (!std::isfinite(err)) {
        throw Error(ErrorCode::IntegrationFailure, "non-finite state at t=" + std::to_string(t));
      }
      const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-30), -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        t = clipped ? target : t + step;
        y = ynew;
        k1 = k7;
        if (!clipped || factor < 1.0) h = step * factor;
      } else {
        h = step * std::min(factor, 1.0);
        if (h < 1e-15 * std::max(1.0, std::abs(t))) {
          throw Error(ErrorCode::IntegrationFailure, "step size underflow at t=" + std::to_string(t));
        }
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace lightcone::numerics
