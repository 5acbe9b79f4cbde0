#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lightcone {

enum class DerivativeScheme { Spectral, FiniteDifference6 };

// Periodic arc-length grid s_j = j L / grid_n of curvature values.
struct FlowState {
  int grid_n = 0;
  double length = 0.0;
  std::vector<double> values;
  double time = 0.0;
  double t0 = 0.0;  // origin of the Harnack clock
  // log g, the metric factor; evolves by (log g)_t = -k as a diagnostic only
  std::vector<double> log_metric;
  DerivativeScheme scheme = DerivativeScheme::Spectral;

  double ds() const { return length / grid_n; }
};

// Validates grid_n (power of two, >= 16), length > 0 and the value count.
FlowState make_flow_state(std::vector<double> values, double length, double time = 0.0,
                          DerivativeScheme scheme = DerivativeScheme::Spectral);

// d^order/ds^order of periodic samples (order 1..3).
std::vector<double> periodic_derivative(const std::vector<double>& values, double length,
                                        int order, DerivativeScheme scheme);

// Stability gates
double heat_dt_limit(const FlowState& state);  // 0.2 ds^2
double kdv_dt_limit(const FlowState& state);   // see kdv_step

// One RK4 step of k_t = k_ss + 2 k^2. Errors: NonPositiveCurvature (k <= 0 on
// entry), StabilityViolation (dt > heat_dt_limit), BlowupError when max k
// exceeds 1e8 or turns non-finite.
FlowState heat_step(const FlowState& state, double dt);

struct HarnackReport {
  double min_over_grid = 0.0;  // min of k_t - k_s^2/k - k^2 + k/(2(t - t0))
  double q_min = 0.0;          // min of Q + 1/(2(t - t0)), Q = k_ss/k - k_s^2/k^2 + k
  double time = 0.0;
  bool degenerate = false;     // t == t0: the clock term is +infinity
};

// k_t from the PDE right-hand side. Error(NonPositiveCurvature) unless k > 0.
HarnackReport harnack_report(const FlowState& state);

// One step of (k_g)_t = (k_g)_sss - 3 k_g (k_g)_s.
// Spectral: integrating-factor RK4 (the dispersive term is integrated exactly,
// 2/3-rule dealiasing), gate dt <= ds / (3 pi max|k_g|).
// FiniteDifference6: classical RK4, gate dt <= 0.05 ds^3.
// Error(StabilityViolation) beyond the gate.
FlowState kdv_step(const FlowState& state, double dt);

struct ConservedQuantities {
  double length = 0.0;
  double int_kg = 0.0;
  double int_kg2 = 0.0;
};

ConservedQuantities conserved_quantities(const FlowState& state);

// Relative drifts: length vs L(0), int_kg vs max(|I1(0)|, int |k0|),
// int_kg2 vs |I2(0)|.
ConservedQuantities conservation_drift(const ConservedQuantities& now,
                                       const ConservedQuantities& initial,
                                       double initial_l1_norm);

double l1_norm(const FlowState& state);

enum class FlowKind { Heat, Kdv };

// Initial data: "uniform:<k0>", "sine", "soliton:<lambda>,<mu>", "random",
// or "file:<path>" (one value per line, count == grid_n).
// Soliton data is k = -k_g for the heat flow and k_g for KdV, over L = T.
FlowState make_preset(const std::string& preset, FlowKind kind, int grid_n,
                      std::uint64_t seed = 42);

struct HeatRecord {
  double t, k_min, k_max, harnack_min;
};

struct HeatRun {
  std::vector<HeatRecord> records;
  std::vector<FlowState> snapshots;
  FlowState final_state;
  double worst_kmin_drop = 0.0;  // most negative per-step change of min k
  std::optional<double> blowup_time;
};

// Steps with dt (the last step is shortened to land on t_end). Records every
// `every` steps plus the endpoints; snapshots every `snapshot_every` steps (0 = none).
HeatRun run_heat(const FlowState& init, double dt, double t_end, int every = 1,
                 int snapshot_every = 0);

struct KdvRecord {
  double t, length, int_kg, int_kg2, drift_length, drift_kg, drift_kg2;
};

struct KdvRun {
  std::vector<KdvRecord> records;
  std::vector<FlowState> snapshots;
  FlowState final_state;
  double max_drift = 0.0;
};

// Each step is additionally capped at kdv_dt_limit of the current state.
KdvRun run_kdv(const FlowState& init, double dt, double t_end, int every = 1,
               int snapshot_every = 0);

}  // namespace lightcone
