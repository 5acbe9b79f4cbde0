#include "lightcone/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "lightcone/error.hpp"
#include "lightcone/fd.hpp"
#include "lightcone/quadrature.hpp"
#include "lightcone/soliton.hpp"

namespace lightcone {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

LVec3 cone_point(double psi, double theta) {
  return {psi, psi * std::cos(theta), psi * std::sin(theta)};
}

CurveSample make_sample(const PolarState& st, double kg) {
  return {st.s, st.theta, st.psi, st.psi_s, st.psi_ss, kg, cone_point(st.psi, st.theta)};
}

// Omega of the per-period rotation from theta(T), for the canonical initial data.
double omega_from_endpoint(AxisCase c, double theta0, double theta_t) {
  switch (c) {
    case AxisCase::TimeLikeAxis: return theta_t - theta0;
    case AxisCase::LightLikeAxis: return 1.0 / std::tan(0.5 * theta_t);
    case AxisCase::SpaceLikeAxis: return std::atanh(std::cos(theta_t));
  }
  return 0.0;
}

// Indices of a width-w stencil around i clipped to [0, n).
std::size_t stencil_start(std::size_t i, std::size_t n, std::size_t w) {
  const std::size_t half = w / 2;
  if (i < half) return 0;
  if (i + half >= n) return n - w;
  return i - half;
}

Mat3 frame_matrix(const FrameSample& f) {
  Mat3 m{};
  for (int row = 0; row < 3; ++row) {
    m[row][0] = f.r[row];
    m[row][1] = f.T[row];
    m[row][2] = f.Y[row];
  }
  return m;
}

// theta is strictly increasing and moves by less than a turn between samples,
// so the lift is the first angle above the previous one. Steps within 1e-9 of
// a full turn are rounding noise around a zero step.
double unwrap_after(double angle, double previous) {
  double step = std::fmod(angle - previous, kTwoPi);
  if (step < 0.0) step += kTwoPi;
  if (step > kTwoPi - 1e-9) step -= kTwoPi;
  return previous + step;
}

// 8-point Lagrange interpolation in s of a per-sample quantity.
template <class Get>
double interp_s(const CurveTrace& tr, std::size_t near, double s, Get get) {
  constexpr std::size_t w = 8;
  const std::size_t a = stencil_start(near, tr.samples.size(), w);
  std::array<double, w> xs{};
  for (std::size_t j = 0; j < w; ++j) xs[j] = tr.samples[a + j].s;
  const auto wt = numerics::fornberg_weights(s, xs, 0);
  double v = 0.0;
  for (std::size_t j = 0; j < w; ++j) v += wt[j] * get(tr.samples[a + j]);
  return v;
}

// Extremum of psi near sample i, by golden section on the local interpolant.
double refine_psi_extremum(const CurveTrace& tr, std::size_t i, bool maximize) {
  const auto& smp = tr.samples;
  double lo = smp[i == 0 ? 0 : i - 1].s;
  double hi = smp[std::min(i + 1, smp.size() - 1)].s;
  const double sign = maximize ? -1.0 : 1.0;
  auto f = [&](double s) { return sign * interp_s(tr, i, s, [](const CurveSample& c) { return c.psi; }); };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
  double fa = f(a), fb = f(b);
  for (int it = 0; it < 80; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = f(b);
    }
  }
  return std::min({sign * smp[i].psi, fa, fb}) * sign;
}

}  // namespace

CurveTrace build_trace(const SolitonParams& params, int periods, int samples_per_period) {
  if (periods < 1 || samples_per_period < 8) {
    throw Error(ErrorCode::InvalidArgument, "need periods >= 1 and at least 8 samples per period");
  }
  CurveTrace tr;
  tr.params = params;
  tr.axis_case = axis_case_for(params.mu());
  tr.periods = periods;
  tr.samples_per_period = samples_per_period;
  tr.period = params.period();

  const std::size_t total = static_cast<std::size_t>(periods) * samples_per_period + 1;
  std::vector<double> s_out(total);
  const double h = tr.period / samples_per_period;
  for (std::size_t j = 0; j < total; ++j) s_out[j] = static_cast<double>(j) * h;

  const auto states = tr.axis_case == AxisCase::TimeLikeAxis ? timelike_polar(params, s_out)
                                                            : integrate_polar(params, s_out);
  tr.samples.reserve(total);
  for (const auto& st : states) {
    const double kg = kg_at(params, st.s).kg;
    tr.samples.push_back(make_sample(st, kg));
    tr.monitor_residual =
        std::max(tr.monitor_residual, std::abs(regime_relation_residual(params, st, kg)));
  }
  const double omega = omega_from_endpoint(tr.axis_case, tr.samples.front().theta,
                                           tr.samples[samples_per_period].theta);
  tr.monodromy = rotation(causal_class_of(tr.axis_case), omega);
  return tr;
}

CurveTrace psi_profile(const SolitonParams& params, AxisCase axis_case, int samples_per_period) {
  if (axis_case != axis_case_for(params.mu())) {
    throw Error(ErrorCode::CaseMismatch,
                fmt::format("{} axis does not match mu = {:.17g}", to_string(axis_case),
                            params.mu()));
  }
  return build_trace(params, 1, samples_per_period);
}

CurveTrace extend_periods(const CurveTrace& trace, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "period count must be positive");
  if (n == 1) return trace;
  if (trace.periods != 1 || trace.samples_per_period < 1) {
    throw Error(ErrorCode::InvalidArgument, "extend_periods needs a one-period trace");
  }
  const std::size_t per = trace.samples_per_period;
  std::vector<FrameSample> frames;
  frames.reserve(per + 1);
  for (const auto& smp : trace.samples) frames.push_back(frame_at(smp));

  CurveTrace out = trace;
  out.periods = n;
  out.samples.reserve(per * n + 1);
  const CausalClass cls = trace.monodromy.axis_class;
  for (int k = 1; k < n; ++k) {
    const LRotation mk = rotation(cls, k * trace.monodromy.omega);
    for (std::size_t j = 1; j <= per; ++j) {
      const CurveSample& base = trace.samples[j];
      const FrameSample& f = frames[j];
      const LVec3 r = mk.apply(f.r);
      const LVec3 t = mk.apply(f.T);
      const LVec3 accel = mk.apply(base.kg * f.r - f.Y);
      CurveSample smp;
      smp.s = base.s + k * trace.period;
      smp.psi = r.t();
      smp.theta = unwrap_after(std::atan2(r.z(), r.y()), out.samples.back().theta);
      smp.psi_s = t.t();
      smp.psi_ss = accel.t();
      smp.kg = base.kg;
      smp.r = r;
      out.samples.push_back(smp);
    }
  }
  return out;
}

CurveTrace plane_section_trace(const LVec3& v, int samples, double theta0) {
  if (samples < 8) throw Error(ErrorCode::InvalidArgument, "need at least 8 samples");
  CurveTrace tr;
  tr.axis_case = AxisCase::TimeLikeAxis;
  tr.periods = 1;
  tr.samples_per_period = samples;
  const double kg = 0.5 * inner_l(v, v);
  auto psi_of = [&](double th) { return plane_section_psi(v, th); };
  const double dth = kTwoPi / samples;
  double s = 0.0;
  for (int j = 0; j <= samples; ++j) {
    const double th = theta0 + j * dth;
    if (j > 0) s += numerics::gauss_legendre(psi_of, th - dth, th, 16);
    const double c = std::cos(th), sn = std::sin(th);
    const double d = -v.t() + v.y() * c + v.z() * sn;
    const double d1 = -v.y() * sn + v.z() * c;
    const double d2 = -v.y() * c - v.z() * sn;
    const double psi = 1.0 / d;
    const double psi_th = -d1 / (d * d);
    const double psi_thth = (2.0 * d1 * d1 - d2 * d) / (d * d * d);
    const double psi_s = psi_th / psi;
    const double psi_ss = (psi_thth / psi - psi_s * psi_s) / psi;
    tr.samples.push_back({s, th, psi, psi_s, psi_ss, kg, cone_point(psi, th)});
  }
  tr.period = s;
  tr.monodromy = rotation(CausalClass::TimeLike, kTwoPi);
  return tr;
}

PolarJet polar_jet(const CurveSample& smp) {
  return {smp.theta, smp.psi, smp.psi * smp.psi_s,
          smp.psi * (smp.psi_s * smp.psi_s + smp.psi * smp.psi_ss)};
}

double curvature_from_polar(const PolarJet& j) {
  const double p2 = j.psi * j.psi;
  return -(p2 + 3.0 * j.psi_theta * j.psi_theta - 2.0 * j.psi_thetatheta * j.psi) / (2.0 * p2 * p2);
}

FrameSample frame_at(const PolarJet& j) {
  const double c = std::cos(j.theta), s = std::sin(j.theta);
  const double psi = j.psi, pt = j.psi_theta;
  const double q = pt / psi;
  FrameSample f;
  f.r = cone_point(psi, j.theta);
  f.T = (1.0 / psi) * LVec3(pt, pt * c - psi * s, pt * s + psi * c);
  f.Y = (1.0 / (2.0 * psi)) *
        LVec3(-(1.0 + q * q), (1.0 - q * q) * c + 2.0 * q * s, -2.0 * q * c + (1.0 - q * q) * s);
  f.kg = curvature_from_polar(j);
  return f;
}

FrameSample frame_at(const CurveSample& smp) { return frame_at(polar_jet(smp)); }

double frame_invariant_residual(const FrameSample& f) {
  return std::max({std::abs(inner_l(f.T, f.T) - 1.0), std::abs(inner_l(f.Y, f.Y)),
                   std::abs(inner_l(f.r, f.Y) - 1.0), std::abs(inner_l(f.T, f.Y)),
                   std::abs(inner_l(f.r, f.T))});
}

Mat3 monodromy_from_frames(const CurveTrace& trace) {
  const std::size_t per = trace.samples_per_period;
  if (trace.samples.size() <= per) {
    throw Error(ErrorCode::InvalidArgument, "trace shorter than one period");
  }
  const Mat3 f0 = frame_matrix(frame_at(trace.samples[0]));
  const Mat3 f1 = frame_matrix(frame_at(trace.samples[per]));
  return f1 * inverse(f0);
}

double on_cone_residual(const CurveTrace& trace) {
  double m = 0.0;
  for (const auto& smp : trace.samples) m = std::max(m, std::abs(inner_l(smp.r, smp.r)));
  return m;
}

FrenetResiduals frenet_fd_residuals(const CurveTrace& trace) {
  const std::size_t n = trace.samples.size();
  if (n < 8 || !trace.params) {
    throw Error(ErrorCode::InvalidArgument, "Frenet check needs a uniform soliton trace");
  }
  const double h = trace.period / trace.samples_per_period;
  std::vector<FrameSample> frames;
  frames.reserve(n);
  for (const auto& smp : trace.samples) frames.push_back(frame_at(smp));
  // component series
  std::array<std::vector<double>, 9> comp;
  for (auto& c : comp) c.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int d = 0; d < 3; ++d) {
      comp[d][i] = frames[i].r[d];
      comp[3 + d][i] = frames[i].T[d];
      comp[6 + d][i] = frames[i].Y[d];
    }
  }
  FrenetResiduals res;
  for (std::size_t i = 0; i < n; ++i) {
    const double kg = trace.samples[i].kg;
    const FrameSample& f = frames[i];
    double er = 0.0, et = 0.0, ey = 0.0;
    for (int d = 0; d < 3; ++d) {
      const double r_s = numerics::uniform_derivative(comp[d], i, h, 1);
      const double t_s = numerics::uniform_derivative(comp[3 + d], i, h, 1);
      const double y_s = numerics::uniform_derivative(comp[6 + d], i, h, 1);
      er = std::hypot(er, r_s - f.T[d]);
      et = std::hypot(et, t_s - (kg * f.r[d] - f.Y[d]));
      ey = std::hypot(ey, y_s + kg * f.T[d]);
    }
    res.r_s = std::max(res.r_s, er);
    res.t_s = std::max(res.t_s, et);
    res.y_s = std::max(res.y_s, ey);
  }
  return res;
}

double curvature_consistency(const CurveTrace& trace) {
  const std::size_t n = trace.samples.size();
  constexpr std::size_t w = 7;
  if (n < w) throw Error(ErrorCode::InvalidArgument, "trace too short");
  double worst = 0.0;
  std::array<double, w> th{}, ps{};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = stencil_start(i, n, w);
    for (std::size_t j = 0; j < w; ++j) {
      th[j] = trace.samples[a + j].theta;
      ps[j] = trace.samples[a + j].psi;
    }
    const double x0 = trace.samples[i].theta;
    const auto w1 = numerics::fornberg_weights(x0, th, 1);
    const auto w2 = numerics::fornberg_weights(x0, th, 2);
    PolarJet jet{x0, trace.samples[i].psi, 0.0, 0.0};
    for (std::size_t j = 0; j < w; ++j) {
      jet.psi_theta += w1[j] * ps[j];
      jet.psi_thetatheta += w2[j] * ps[j];
    }
    worst = std::max(worst, std::abs(curvature_from_polar(jet) - trace.samples[i].kg));
  }
  return worst;
}

ClosureReport closure_report(const CurveTrace& trace) {
  ClosureReport rep;
  const auto& a = trace.samples.front();
  const auto& b = trace.samples.back();
  rep.gap = (b.r - a.r).euclidean_norm();
  rep.delta_theta = b.theta - a.theta;
  for (const auto& smp : trace.samples) rep.max_psi = std::max(rep.max_psi, smp.psi);
  return rep;
}

ClosureReport closure_check(const ClosedSolitonSpec& spec, int samples_per_period) {
  const SolitonParams params = solve_cubic(spec.lambda_star, spec.mu);
  const CurveTrace tr = build_trace(params, spec.q, samples_per_period);
  const ClosureReport rep = closure_report(tr);
  const double turn = kTwoPi * spec.p;
  if (!(rep.gap <= 1e-6 * rep.max_psi) || !(std::abs(rep.delta_theta - turn) <= 1e-6)) {
    throw Error(ErrorCode::NotClosed,
                fmt::format("(p,q)=({},{}): gap {:.3g}, delta theta - 2 pi p = {:.3g}", spec.p,
                            spec.q, rep.gap, rep.delta_theta - turn));
  }
  return rep;
}

PlaneConstants canonical_c(const SolitonParams& params) {
  const double mu = params.mu();
  if (mu > 0.0) return {std::sqrt(mu), 0.0, 0.0};
  if (mu == 0.0) return {0.5, 0.5, 0.0};
  return {0.0, 0.0, -std::sqrt(-mu)};
}

PlaneConstants fit_plane_constants(const CurveTrace& trace, std::size_t i, std::size_t j,
                                   std::size_t k) {
  const std::array<std::size_t, 3> idx = {i, j, k};
  Mat3 a{};
  std::array<double, 3> rhs{};
  for (int row = 0; row < 3; ++row) {
    const auto& smp = trace.samples.at(idx[row]);
    a[row] = {-smp.psi, smp.psi * std::cos(smp.theta), smp.psi * std::sin(smp.theta)};
    rhs[row] = smp.kg;
  }
  const Mat3 inv = inverse(a);
  PlaneConstants c{};
  for (int row = 0; row < 3; ++row) {
    c[row] = inv[row][0] * rhs[0] + inv[row][1] * rhs[1] + inv[row][2] * rhs[2];
  }
  return c;
}

ThmIdentityReport thm_ode_identity(const CurveTrace& trace, const PlaneConstants& c) {
  if (!trace.params) {
    throw Error(ErrorCode::ConstraintViolated, "trace carries no soliton parameters");
  }
  const SolitonParams& p = *trace.params;
  const double prod = p.x1() * p.x2() * p.x3();
  ThmIdentityReport rep;
  rep.constraint_error = std::abs(-c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + prod);
  if (!(rep.constraint_error <= 1e-10)) {
    throw Error(ErrorCode::ConstraintViolated,
                fmt::format("-c1^2 + c2^2 + c3^2 misses -x1 x2 x3 by {:.3g}", rep.constraint_error));
  }
  for (const auto& smp : trace.samples) {
    const double lhs =
        (-c[0] + c[1] * std::cos(smp.theta) + c[2] * std::sin(smp.theta)) * smp.psi;
    rep.residual = std::max(rep.residual, std::abs(lhs - smp.kg));
    const KgJet f = kg_at(p, smp.s);
    const double id = 2.0 * f.kg * f.kg_ss - f.kg_s * f.kg_s - 2.0 * f.kg * f.kg * f.kg;
    rep.proof_identity = std::max(rep.proof_identity, std::abs(id - prod));
  }
  return rep;
}

double u_ode_check(const CurveTrace& trace, const PlaneConstants& c) {
  const std::size_t n = trace.samples.size();
  constexpr std::size_t w = 7;
  if (n < w) throw Error(ErrorCode::InvalidArgument, "trace too short");
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = 1.0 / std::sqrt(trace.samples[i].psi);
  std::array<double, w> th{};
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = stencil_start(i, n, w);
    for (std::size_t j = 0; j < w; ++j) th[j] = trace.samples[a + j].theta;
    const double x0 = trace.samples[i].theta;
    const auto w2 = numerics::fornberg_weights(x0, th, 2);
    double u_tt = 0.0;
    for (std::size_t j = 0; j < w; ++j) u_tt += w2[j] * u[a + j];
    const double pp = -c[0] + c[1] * std::cos(x0) + c[2] * std::sin(x0);
    const double ui = u[i];
    const double u5 = ui * ui * ui * ui * ui;
    worst = std::max(worst, std::abs(u_tt + pp / (2.0 * u5) + 0.25 * ui));
  }
  return worst;
}

BoundednessReport boundedness_report(const CurveTrace& trace) {
  if (trace.periods < 2) throw Error(ErrorCode::InvalidArgument, "need at least two periods");
  BoundednessReport rep;
  const std::size_t per = trace.samples_per_period;
  // per-period extremes, refined between samples: after a few boosts the
  // minimum of psi is far narrower than the grid spacing
  for (int k = 0; k < trace.periods; ++k) {
    std::size_t imax = k * per, imin = k * per;
    for (std::size_t j = k * per; j <= (k + 1) * per; ++j) {
      if (trace.samples[j].psi > trace.samples[imax].psi) imax = j;
      if (trace.samples[j].psi < trace.samples[imin].psi) imin = j;
    }
    rep.period_max.push_back(refine_psi_extremum(trace, imax, true));
    rep.period_min.push_back(refine_psi_extremum(trace, imin, false));
  }

  if (trace.axis_case == AxisCase::SpaceLikeAxis) {
    // theta = pi + 2 pi k is where z = psi sin theta turns negative. The boost
    // leaves z alone and scales t - y by a constant, so both interpolate well
    // in s even when psi itself has a needle-sharp minimum there.
    auto z_of = [](const CurveSample& c) { return c.r.z(); };
    for (std::size_t i = 0; i + 1 < trace.samples.size(); ++i) {
      const auto& a = trace.samples[i];
      const auto& b = trace.samples[i + 1];
      if (!(a.r.z() > 0.0 && b.r.z() <= 0.0)) continue;
      double lo = a.s, hi = b.s;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * std::abs(hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (interp_s(trace, i, mid, z_of) > 0.0 ? lo : hi) = mid;
      }
      const double s = 0.5 * (lo + hi);
      rep.anchors.push_back(
          0.5 * interp_s(trace, i, s, [](const CurveSample& c) { return c.r.t() - c.r.y(); }));
    }
  } else {
    for (int k = 0; k <= trace.periods; ++k) rep.anchors.push_back(trace.samples[k * per].psi);
  }

  const double mx0 = rep.period_max.front(), mn0 = rep.period_min.front();
  rep.band_constant = true;
  rep.max_increasing = true;
  rep.min_decreasing = true;
  for (std::size_t k = 1; k < rep.period_max.size(); ++k) {
    if (std::abs(rep.period_max[k] - mx0) > 1e-9 || std::abs(rep.period_min[k] - mn0) > 1e-9) {
      rep.band_constant = false;
    }
    if (!(rep.period_max[k] > rep.period_max[k - 1])) rep.max_increasing = false;
    if (!(rep.period_min[k] < rep.period_min[k - 1])) rep.min_decreasing = false;
  }
  return rep;
}

}  // namespace lightcone
