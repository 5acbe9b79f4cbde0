#pragma once

#include <span>
#include <vector>

#include "lightcone/cubic.hpp"
#include "lightcone/minkowski.hpp"
#include "lightcone/ode.hpp"

namespace lightcone {

// Causal class of the monodromy axis; fixed by the sign of mu.
enum class AxisCase { TimeLikeAxis, LightLikeAxis, SpaceLikeAxis };

const char* to_string(AxisCase c);
AxisCase axis_case_for(double mu);
CausalClass causal_class_of(AxisCase c);

// psi, psi_s and psi_ss (arc-length derivatives) with theta at arc length s.
struct PolarState {
  double s = 0.0;
  double theta = 0.0;
  double psi = 0.0;
  double psi_s = 0.0;
  double psi_ss = 0.0;
};

// Initial data of each regime:
//   mu > 0: psi = -x1/sqrt(mu), theta = 0
//   mu = 0: psi = -x1, theta = pi
//   mu < 0: psi = -x1/sqrt(-mu), theta = pi/2
// and psi_s = 0 in every case.
PolarState initial_polar_state(const SolitonParams& params);

// psi_ss = (1 + psi_s^2)/(2 psi) + kg psi.
double psi_second_derivative(double psi, double psi_s, double kg);

// Integrates (psi, psi_s, theta) with dtheta/ds = 1/psi from the regime's
// initial data, reporting the state at each (increasing) arc length in s_out.
std::vector<PolarState> integrate_polar(const SolitonParams& params, std::span<const double> s_out,
                                        const numerics::OdeOptions& opt = {});

// mu > 0 only: psi = -kg/sqrt(mu), theta(s) = int_0^s -sqrt(mu)/kg dt with a
// Gauss-Legendre rule on every interval between consecutive outputs.
std::vector<PolarState> timelike_polar(const SolitonParams& params, std::span<const double> s_out);

// The regime's relation that the trajectory must satisfy, as a residual:
//   mu > 0: psi + kg/sqrt(mu)
//   mu = 0: (1 - cos theta) psi + 2 kg
//   mu < 0: psi sin theta + kg/sqrt(-mu)
double regime_relation_residual(const SolitonParams& params, const PolarState& st, double kg);

}  // namespace lightcone
