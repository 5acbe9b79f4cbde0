#include "lightcone/flows.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <unordered_map>

#include <fftw3.h>
#include <fmt/format.h>

#include "lightcone/cubic.hpp"
#include "lightcone/error.hpp"
#include "lightcone/fd.hpp"
#include "lightcone/soliton.hpp"

namespace lightcone {

namespace {

using cplx = std::complex<double>;
constexpr double kBlowupCap = 1e8;

// FFTW's planner is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Fft {
 public:
  explicit Fft(int n) : n_(n) {
    real_ = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    spec_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
    std::lock_guard lock(planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(n, real_, spec_, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_c2r_1d(n, spec_, real_, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::vector<cplx> forward(const std::vector<double>& x) {
    std::copy(x.begin(), x.end(), real_);
    fftw_execute(fwd_);
    std::vector<cplx> out(n_ / 2 + 1);
    for (int i = 0; i <= n_ / 2; ++i) out[i] = {spec_[i][0], spec_[i][1]};
    return out;
  }

  // Normalized inverse: inverse(forward(x)) == x.
  std::vector<double> inverse(const std::vector<cplx>& c) {
    for (int i = 0; i <= n_ / 2; ++i) {
      spec_[i][0] = c[i].real();
      spec_[i][1] = c[i].imag();
    }
    fftw_execute(inv_);
    std::vector<double> out(real_, real_ + n_);
    for (double& v : out) v /= n_;
    return out;
  }

  int size() const { return n_; }

 private:
  int n_;
  double* real_;
  fftw_complex* spec_;
  fftw_plan fwd_;
  fftw_plan inv_;
};

Fft& fft_for(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<Fft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft>(n);
  return *slot;
}

std::vector<double> wavenumbers(int n, double length) {
  std::vector<double> k(n / 2 + 1);
  for (int i = 0; i <= n / 2; ++i) k[i] = 2.0 * std::numbers::pi * i / length;
  return k;
}

std::vector<double> fd_weights(int order) {
  const int half = order == 3 ? 4 : 3;
  std::vector<double> x;
  for (int i = -half; i <= half; ++i) x.push_back(i);
  return numerics::fornberg_weights(0.0, x, order);
}

void check_grid(int n) {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("grid_n must be a power of two >= 16, got {}", n));
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

FlowState make_flow_state(std::vector<double> values, double length, double time,
                          DerivativeScheme scheme) {
  const int n = static_cast<int>(values.size());
  check_grid(n);
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "period length must be positive");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite initial value");
  }
  FlowState st;
  st.grid_n = n;
  st.length = length;
  st.values = std::move(values);
  st.time = time;
  st.t0 = time;
  st.log_metric.assign(n, 0.0);
  st.scheme = scheme;
  return st;
}

std::vector<double> periodic_derivative(const std::vector<double>& values, double length,
                                        int order, DerivativeScheme scheme) {
  const int n = static_cast<int>(values.size());
  if (order < 1 || order > 3) throw Error(ErrorCode::InvalidArgument, "derivative order 1..3");
  if (scheme == DerivativeScheme::Spectral) {
    Fft& fft = fft_for(n);
    auto c = fft.forward(values);
    const auto k = wavenumbers(n, length);
    const cplx ik_unit(0.0, 1.0);
    for (int i = 0; i <= n / 2; ++i) c[i] *= std::pow(ik_unit * k[i], order);
    if (order % 2 == 1) c[n / 2] = 0.0;
    return fft.inverse(c);
  }
  const auto w = fd_weights(order);
  const int half = static_cast<int>(w.size()) / 2;
  const double scale = std::pow(length / n, -order);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = -half; j <= half; ++j) acc += w[j + half] * values[((i + j) % n + n) % n];
    out[i] = acc * scale;
  }
  return out;
}

double heat_dt_limit(const FlowState& st) { return 0.2 * st.ds() * st.ds(); }

double kdv_dt_limit(const FlowState& st) {
  const double ds = st.ds();
  if (st.scheme == DerivativeScheme::FiniteDifference6) return 0.05 * ds * ds * ds;
  const double umax = max_abs(st.values);
  return umax > 0.0 ? ds / (3.0 * std::numbers::pi * umax) : HUGE_VAL;
}

FlowState heat_step(const FlowState& st, double dt) {
  for (double v : st.values) {
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveCurvature, "heat flow needs k > 0");
  }
  if (!(dt > 0.0) || dt > heat_dt_limit(st) * (1.0 + 1e-12)) {
    throw Error(ErrorCode::StabilityViolation,
                fmt::format("dt = {:.3g} exceeds 0.2 ds^2 = {:.3g}", dt, heat_dt_limit(st)));
  }
  const int n = st.grid_n;
  auto rhs = [&](const std::vector<double>& k) {
    auto kss = periodic_derivative(k, st.length, 2, st.scheme);
    for (int i = 0; i < n; ++i) kss[i] += 2.0 * k[i] * k[i];
    return kss;
  };
  auto axpy = [n](const std::vector<double>& y, double a, const std::vector<double>& x) {
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = y[i] + a * x[i];
    return r;
  };
  const auto& k0 = st.values;
  const auto f1 = rhs(k0);
  const auto y2 = axpy(k0, 0.5 * dt, f1);
  const auto f2 = rhs(y2);
  const auto y3 = axpy(k0, 0.5 * dt, f2);
  const auto f3 = rhs(y3);
  const auto y4 = axpy(k0, dt, f3);
  const auto f4 = rhs(y4);

  FlowState out = st;
  out.time = st.time + dt;
  for (int i = 0; i < n; ++i) {
    out.values[i] = k0[i] + dt / 6.0 * (f1[i] + 2.0 * f2[i] + 2.0 * f3[i] + f4[i]);
    // (log g)_t = -k with the same stage values
    out.log_metric[i] =
        st.log_metric[i] - dt / 6.0 * (k0[i] + 2.0 * y2[i] + 2.0 * y3[i] + y4[i]);
  }
  for (double v : out.values) {
    if (!std::isfinite(v) || v > kBlowupCap) {
      throw BlowupError(out.time, fmt::format("max k exceeded {:.0e} at t = {:.17g}",
                                              kBlowupCap, out.time));
    }
  }
  return out;
}

HarnackReport harnack_report(const FlowState& st) {
  for (double v : st.values) {
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveCurvature, "Harnack needs k > 0");
  }
  HarnackReport rep;
  rep.time = st.time;
  const double tau = st.time - st.t0;
  rep.degenerate = !(tau > 0.0);
  const double clock = rep.degenerate ? HUGE_VAL : 1.0 / (2.0 * tau);
  const auto ks = periodic_derivative(st.values, st.length, 1, st.scheme);
  const auto kss = periodic_derivative(st.values, st.length, 2, st.scheme);
  rep.min_over_grid = HUGE_VAL;
  rep.q_min = HUGE_VAL;
  for (int i = 0; i < st.grid_n; ++i) {
    const double k = st.values[i];
    const double kt = kss[i] + 2.0 * k * k;
    const double h = rep.degenerate ? HUGE_VAL : kt - ks[i] * ks[i] / k - k * k + k * clock;
    const double q = kss[i] / k - ks[i] * ks[i] / (k * k) + k + clock;
    rep.min_over_grid = std::min(rep.min_over_grid, h);
    rep.q_min = std::min(rep.q_min, q);
  }
  return rep;
}

namespace {

FlowState kdv_step_fd(const FlowState& st, double dt) {
  const int n = st.grid_n;
  auto rhs = [&](const std::vector<double>& u) {
    auto u3 = periodic_derivative(u, st.length, 3, st.scheme);
    const auto u1 = periodic_derivative(u, st.length, 1, st.scheme);
    for (int i = 0; i < n; ++i) u3[i] -= 3.0 * u[i] * u1[i];
    return u3;
  };
  auto axpy = [n](const std::vector<double>& y, double a, const std::vector<double>& x) {
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = y[i] + a * x[i];
    return r;
  };
  const auto& u = st.values;
  const auto f1 = rhs(u);
  const auto f2 = rhs(axpy(u, 0.5 * dt, f1));
  const auto f3 = rhs(axpy(u, 0.5 * dt, f2));
  const auto f4 = rhs(axpy(u, dt, f3));
  FlowState out = st;
  out.time += dt;
  for (int i = 0; i < n; ++i) out.values[i] = u[i] + dt / 6.0 * (f1[i] + 2 * f2[i] + 2 * f3[i] + f4[i]);
  return out;
}

FlowState kdv_step_spectral(const FlowState& st, double dt) {
  const int n = st.grid_n;
  const int m = n / 2 + 1;
  Fft& fft = fft_for(n);
  const auto k = wavenumbers(n, st.length);
  const cplx i_unit(0.0, 1.0);
  const int cutoff = n / 3;  // 2/3 rule
  std::vector<cplx> e_full(m), e_half(m), nl_factor(m);
  for (int j = 0; j < m; ++j) {
    const double k3 = k[j] * k[j] * k[j];
    e_full[j] = std::exp(-i_unit * k3 * dt);
    e_half[j] = std::exp(-i_unit * k3 * (0.5 * dt));
    nl_factor[j] = j <= cutoff ? -1.5 * i_unit * k[j] : cplx(0.0);
  }
  // N(u_hat) = -(3/2) i k FFT(u^2), dealiased
  auto nonlinear = [&](const std::vector<cplx>& uh) {
    auto u = fft.inverse(uh);
    for (double& v : u) v *= v;
    auto w = fft.forward(u);
    for (int j = 0; j < m; ++j) w[j] *= nl_factor[j];
    return w;
  };
  const auto u0 = fft.forward(st.values);
  std::vector<cplx> tmp(m);
  const auto k1 = nonlinear(u0);
  for (int j = 0; j < m; ++j) tmp[j] = e_half[j] * (u0[j] + 0.5 * dt * k1[j]);
  const auto k2 = nonlinear(tmp);
  for (int j = 0; j < m; ++j) tmp[j] = e_half[j] * u0[j] + 0.5 * dt * k2[j];
  const auto k3 = nonlinear(tmp);
  for (int j = 0; j < m; ++j) tmp[j] = e_full[j] * u0[j] + dt * e_half[j] * k3[j];
  const auto k4 = nonlinear(tmp);
  std::vector<cplx> un(m);
  for (int j = 0; j < m; ++j) {
    un[j] = e_full[j] * u0[j] +
            dt / 6.0 * (e_full[j] * k1[j] + 2.0 * e_half[j] * (k2[j] + k3[j]) + k4[j]);
  }
  un[n / 2] = cplx(un[n / 2].real(), 0.0);
  FlowState out = st;
  out.time += dt;
  out.values = fft.inverse(un);
  return out;
}

}  // namespace

FlowState kdv_step(const FlowState& st, double dt) {
  const double limit = kdv_dt_limit(st);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw Error(ErrorCode::StabilityViolation,
                fmt::format("dt = {:.3g} exceeds the KdV gate {:.3g}", dt, limit));
  }
  FlowState out = st.scheme == DerivativeScheme::Spectral ? kdv_step_spectral(st, dt)
                                                          : kdv_step_fd(st, dt);
  for (double v : out.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::StabilityViolation, "KdV state became non-finite");
  }
  return out;
}

ConservedQuantities conserved_quantities(const FlowState& st) {
  ConservedQuantities q;
  const double ds = st.ds();
  q.length = st.length;
  for (double v : st.values) {
    q.int_kg += v;
    q.int_kg2 += v * v;
  }
  q.int_kg *= ds;
  q.int_kg2 *= ds;
  return q;
}

double l1_norm(const FlowState& st) {
  double acc = 0.0;
  for (double v : st.values) acc += std::abs(v);
  return acc * st.ds();
}

ConservedQuantities conservation_drift(const ConservedQuantities& now,
                                       const ConservedQuantities& init, double init_l1) {
  auto rel = [](double d, double scale) { return scale > 0.0 ? std::abs(d) / scale : std::abs(d); };
  return {rel(now.length - init.length, init.length),
          rel(now.int_kg - init.int_kg, std::max(std::abs(init.int_kg), init_l1)),
          rel(now.int_kg2 - init.int_kg2, std::abs(init.int_kg2))};
}

FlowState make_preset(const std::string& preset, FlowKind kind, int grid_n, std::uint64_t seed) {
  check_grid(grid_n);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> v(grid_n);
  auto grid = [&](double length, auto&& f) {
    for (int i = 0; i < grid_n; ++i) v[i] = f(length * i / grid_n);
    return make_flow_state(v, length);
  };
  if (preset.rfind("uniform:", 0) == 0) {
    const double k0 = std::stod(preset.substr(8));
    return grid(two_pi, [k0](double) { return k0; });
  }
  if (preset == "sine") {
    // 1 + 0.3 sin(2 pi s / L) with L = 2 pi
    return grid(two_pi, [](double s) { return 1.0 + 0.3 * std::sin(s); });
  }
  if (preset.rfind("soliton:", 0) == 0) {
    const auto body = preset.substr(8);
    const auto comma = body.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "soliton preset is soliton:<lambda>,<mu>");
    }
    const SolitonParams p = solve_cubic(std::stod(body.substr(0, comma)),
                                        std::stod(body.substr(comma + 1)));
    const double sign = kind == FlowKind::Heat ? -1.0 : 1.0;
    return grid(p.period(), [&](double s) { return sign * kg_at(p, s).kg; });
  }
  if (preset == "random") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::array<double, 4> a{}, b{};
    for (int j = 0; j < 4; ++j) {
      a[j] = uni(rng);
      b[j] = uni(rng);
    }
    return grid(two_pi, [&](double s) {
      double val = 1.0;
      for (int j = 0; j < 4; ++j) {
        val += 0.2 / (j + 1) * (a[j] * std::cos((j + 1) * s) + b[j] * std::sin((j + 1) * s));
      }
      return val;
    });
  }
  const std::string path = preset.rfind("file:", 0) == 0 ? preset.substr(5) : preset;
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "unknown preset or unreadable file: " + preset);
  std::vector<double> vals;
  double x;
  while (in >> x) vals.push_back(x);
  if (!in.eof()) throw Error(ErrorCode::InvalidArgument, "malformed number in " + path);
  if (static_cast<int>(vals.size()) != grid_n) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} holds {} values, grid_n is {}", path, vals.size(), grid_n));
  }
  return make_flow_state(std::move(vals), two_pi);
}

HeatRun run_heat(const FlowState& init, double dt, double t_end, int every, int snapshot_every) {
  HeatRun run;
  FlowState st = init;
  auto record = [&](const FlowState& s) {
    const auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
    const auto h = harnack_report(s);
    run.records.push_back({s.time, *mn, *mx, h.min_over_grid});
  };
  record(st);
  if (snapshot_every > 0) run.snapshots.push_back(st);
  long step = 0;
  double kmin = *std::min_element(st.values.begin(), st.values.end());
  while (st.time < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
    const double h = std::min(dt, t_end - st.time);
    try {
      st = heat_step(st, h);
    } catch (const BlowupError& e) {
      run.blowup_time = e.time();
      break;
    }
    ++step;
    const double new_min = *std::min_element(st.values.begin(), st.values.end());
    run.worst_kmin_drop = std::min(run.worst_kmin_drop, new_min - kmin);
    kmin = new_min;
    const bool last = !(st.time < t_end - 1e-14 * std::max(1.0, std::abs(t_end)));
    if (step % every == 0 || last) record(st);
    if (snapshot_every > 0 && (step % snapshot_every == 0 || last)) run.snapshots.push_back(st);
  }
  run.final_state = st;
  return run;
}

KdvRun run_kdv(const FlowState& init, double dt, double t_end, int every, int snapshot_every) {
  KdvRun run;
  FlowState st = init;
  const auto q0 = conserved_quantities(init);
  const double l1 = l1_norm(init);
  auto record = [&](const FlowState& s) {
    const auto q = conserved_quantities(s);
    const auto d = conservation_drift(q, q0, l1);
    run.records.push_back({s.time, q.length, q.int_kg, q.int_kg2, d.length, d.int_kg, d.int_kg2});
    run.max_drift = std::max({run.max_drift, d.length, d.int_kg, d.int_kg2});
  };
  record(st);
  if (snapshot_every > 0) run.snapshots.push_back(st);
  long step = 0;
  while (st.time < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
    const double h = std::min({dt, t_end - st.time, kdv_dt_limit(st)});
    st = kdv_step(st, h);
    ++step;
    const bool last = !(st.time < t_end - 1e-14 * std::max(1.0, std::abs(t_end)));
    if (step % every == 0 || last) record(st);
    if (snapshot_every > 0 && (step % snapshot_every == 0 || last)) run.snapshots.push_back(st);
  }
  run.final_state = st;
  return run;
}

}  // namespace lightcone
