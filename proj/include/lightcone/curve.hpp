#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lightcone/cubic.hpp"
#include "lightcone/minkowski.hpp"
#include "lightcone/progression.hpp"
#include "lightcone/trajectory.hpp"

namespace lightcone {

struct CurveSample {
  double s = 0.0;
  double theta = 0.0;
  double psi = 0.0;
  double psi_s = 0.0;
  double psi_ss = 0.0;
  double kg = 0.0;
  LVec3 r;  // (psi, psi cos theta, psi sin theta)
};

// Sampled curve on the light-cone. Soliton traces sit on the uniform grid
// s_j = j T / samples_per_period, j = 0 .. periods * samples_per_period.
struct CurveTrace {
  std::optional<SolitonParams> params;  // empty for plane sections
  AxisCase axis_case = AxisCase::TimeLikeAxis;
  std::vector<CurveSample> samples;
  int periods = 1;
  int samples_per_period = 0;
  double period = 0.0;
  LRotation monodromy;            // maps r(s) to r(s + T)
  double monitor_residual = 0.0;  // max |regime relation| over samples
};

// One period for the given case; Error(CaseMismatch) unless case matches sign(mu).
CurveTrace psi_profile(const SolitonParams& params, AxisCase axis_case,
                       int samples_per_period = 1024);

// `periods` periods by continued integration (mu <= 0) or by the cumulative
// theta integral (mu > 0).
CurveTrace build_trace(const SolitonParams& params, int periods, int samples_per_period = 1024);

// Periods 2..n by applying powers of the monodromy to the first period.
// n = 1 returns the input unchanged; the input must hold exactly one period.
CurveTrace extend_periods(const CurveTrace& trace, int n);

// Closed planar section <x, v>_L = 1 traced once in theta (v time-like so that
// the section is an ellipse). Samples are uniform in theta.
CurveTrace plane_section_trace(const LVec3& v, int samples = 1024, double theta0 = 0.0);

// theta-derivatives of psi at a sample: psi_theta = psi psi_s,
// psi_thetatheta = psi (psi_s^2 + psi psi_ss).
struct PolarJet {
  double theta = 0.0;
  double psi = 0.0;
  double psi_theta = 0.0;
  double psi_thetatheta = 0.0;
};

PolarJet polar_jet(const CurveSample& sample);

// kg = -(psi^2 + 3 psi_theta^2 - 2 psi_thetatheta psi) / (2 psi^4)
double curvature_from_polar(const PolarJet& jet);

struct FrameSample {
  LVec3 r;
  LVec3 T;  // unit space-like tangent
  LVec3 Y;  // light-like normal, <r, Y> = 1
  double kg = 0.0;
};

FrameSample frame_at(const PolarJet& jet);
FrameSample frame_at(const CurveSample& sample);

// max of |<T,T>-1|, |<Y,Y>|, |<r,Y>-1|, |<T,Y>|, |<r,T>|
double frame_invariant_residual(const FrameSample& f);

// F(s + T) F(s)^-1 with F = [r | T | Y] as columns, at s = 0.
Mat3 monodromy_from_frames(const CurveTrace& trace);

// max |<r,r>_L| over samples
double on_cone_residual(const CurveTrace& trace);

// Frenet residuals r_s - T, T_s - (kg r - Y), Y_s + kg T with 6th-order
// finite differences in s at every sample (uniform soliton traces only).
struct FrenetResiduals {
  double r_s = 0.0;
  double t_s = 0.0;
  double y_s = 0.0;
  double max() const { return std::max({r_s, t_s, y_s}); }
};
FrenetResiduals frenet_fd_residuals(const CurveTrace& trace);

// kg recomputed from the (theta, psi) samples alone, with theta-derivatives by
// 7-point Fornberg stencils; returns max |kg_fd - kg_sample|.
double curvature_consistency(const CurveTrace& trace);

struct ClosureReport {
  double gap = 0.0;  // Euclidean |r(end) - r(start)|
  double delta_theta = 0.0;
  double max_psi = 0.0;
};

ClosureReport closure_report(const CurveTrace& trace);

// Builds the mu = 2 curve at lambda_star over q periods and checks
// gap <= 1e-6 max psi and |delta_theta - 2 pi p| <= 1e-6; Error(NotClosed) otherwise.
ClosureReport closure_check(const ClosedSolitonSpec& spec, int samples_per_period = 256);

using PlaneConstants = std::array<double, 3>;

// (sqrt(mu), 0, 0), (1/2, 1/2, 0) or (0, 0, -sqrt(-mu)) for the canonical
// initial data of each regime.
PlaneConstants canonical_c(const SolitonParams& params);

// Solves (-c1 + c2 cos theta + c3 sin theta) psi = kg at three samples.
PlaneConstants fit_plane_constants(const CurveTrace& trace, std::size_t i, std::size_t j,
                                   std::size_t k);

struct ThmIdentityReport {
  double residual = 0.0;          // max |(-c1 + c2 cos + c3 sin) psi - kg|
  double constraint_error = 0.0;  // |-c1^2 + c2^2 + c3^2 + x1 x2 x3|
  double proof_identity = 0.0;    // max |2 f f_ss - f_s^2 - 2 f^3 - x1 x2 x3|
};

// Error(ConstraintViolated) when the trace has no params or the constraint
// misses by more than 1e-10.
ThmIdentityReport thm_ode_identity(const CurveTrace& trace, const PlaneConstants& c);

// Max residual of u_thetatheta + P/(2 u^5) + u/4 with u = psi^(-1/2) and
// P = -c1 + c2 cos theta + c3 sin theta; u_thetatheta by finite differences.
// A constant-psi trace gives the raw algebraic residual.
double u_ode_check(const CurveTrace& trace, const PlaneConstants& c);

struct BoundednessReport {
  std::vector<double> period_max;
  std::vector<double> period_min;
  // psi(kT) for time-like and light-like axes; psi at theta = pi + 2 pi k for
  // space-like axes.
  std::vector<double> anchors;
  bool band_constant = false;   // per-period extremes constant to 1e-9
  bool max_increasing = false;  // strictly
  bool min_decreasing = false;  // strictly
};

// Requires periods >= 2 (Error(InvalidArgument)).
BoundednessReport boundedness_report(const CurveTrace& trace);

}  // namespace lightcone
