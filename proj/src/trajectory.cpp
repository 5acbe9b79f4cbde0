#include "lightcone/trajectory.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "lightcone/error.hpp"
#include "lightcone/quadrature.hpp"
#include "lightcone/soliton.hpp"

namespace lightcone {

const char* to_string(AxisCase c) {
  switch (c) {
    case AxisCase::TimeLikeAxis: return "TimeLike";
    case AxisCase::LightLikeAxis: return "LightLike";
    case AxisCase::SpaceLikeAxis: return "SpaceLike";
  }
  return "?";
}

AxisCase axis_case_for(double mu) {
  if (mu > 0.0) return AxisCase::TimeLikeAxis;
  if (mu < 0.0) return AxisCase::SpaceLikeAxis;
  return AxisCase::LightLikeAxis;
}

CausalClass causal_class_of(AxisCase c) {
  switch (c) {
    case AxisCase::TimeLikeAxis: return CausalClass::TimeLike;
    case AxisCase::LightLikeAxis: return CausalClass::LightLike;
    case AxisCase::SpaceLikeAxis: return CausalClass::SpaceLike;
  }
  return CausalClass::TimeLike;
}

double psi_second_derivative(double psi, double psi_s, double kg) {
  return (1.0 + psi_s * psi_s) / (2.0 * psi) + kg * psi;
}

PolarState initial_polar_state(const SolitonParams& p) {
  PolarState st;
  const double mu = p.mu();
  if (mu > 0.0) {
    st.psi = -p.x1() / std::sqrt(mu);
    st.theta = 0.0;
  } else if (mu == 0.0) {
    st.psi = -p.x1();
    st.theta = std::numbers::pi;
  } else {
    st.psi = -p.x1() / std::sqrt(-mu);
    st.theta = 0.5 * std::numbers::pi;
  }
  st.psi_ss = psi_second_derivative(st.psi, 0.0, p.x1());
  return st;
}

std::vector<PolarState> integrate_polar(const SolitonParams& p, std::span<const double> s_out,
                                        const numerics::OdeOptions& opt) {
  const PolarState init = initial_polar_state(p);
  auto rhs = [&p](double s, const std::array<double, 3>& y) {
    const double kg = kg_at(p, s).kg;
    return std::array<double, 3>{y[1], psi_second_derivative(y[0], y[1], kg), 1.0 / y[0]};
  };
  const auto ys =
      numerics::integrate_dopri5<3>(rhs, 0.0, {init.psi, 0.0, init.theta}, s_out, opt);
  std::vector<PolarState> out;
  out.reserve(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const auto& y = ys[i];
    if (!(y[0] > 0.0)) throw Error(ErrorCode::IntegrationFailure, "psi left the light-cone half");
    const double kg = kg_at(p, s_out[i]).kg;
    out.push_back({s_out[i], y[2], y[0], y[1], psi_second_derivative(y[0], y[1], kg)});
  }
  return out;
}

std::vector<PolarState> timelike_polar(const SolitonParams& p, std::span<const double> s_out) {
  if (!(p.mu() > 0.0)) throw Error(ErrorCode::CaseMismatch, "time-like axis needs mu > 0");
  const double sq = std::sqrt(p.mu());
  auto dtheta = [&](double s) { return -sq / kg_at(p, s).kg; };
  std::vector<PolarState> out;
  out.reserve(s_out.size());
  double theta = 0.0;
  double prev = 0.0;
  for (double s : s_out) {
    if (s != prev) theta += numerics::adaptive_gauss_legendre(dtheta, prev, s, 1e-14, 16, 30);
    prev = s;
    const KgJet j = kg_at(p, s);
    out.push_back({s, theta, -j.kg / sq, -j.kg_s / sq, -j.kg_ss / sq});
  }
  return out;
}

double regime_relation_residual(const SolitonParams& p, const PolarState& st, double kg) {
  const double mu = p.mu();
  if (mu > 0.0) return st.psi + kg / std::sqrt(mu);
  if (mu == 0.0) return (1.0 - std::cos(st.theta)) * st.psi + 2.0 * kg;
  return st.psi * std::sin(st.theta) + kg / std::sqrt(-mu);
}

}  // namespace lightcone
