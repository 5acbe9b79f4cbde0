#pragma once

#include <vector>

#include "lightcone/cubic.hpp"

namespace lightcone {

// Curvature and its first three arc-length derivatives at one point.
struct KgJet {
  double kg = 0.0;
  double kg_s = 0.0;
  double kg_ss = 0.0;
  double kg_sss = 0.0;
};

// kg(s) = x1 + (x2 - x1) sn^2(sqrt(x3 - x1)/2 * s, k), derivatives analytic.
KgJet kg_at(const SolitonParams& params, double s);

struct SolitonResiduals {
  double r1;  // kg_ss - 3/2 kg^2 + lambda/2
  double r2;  // kg_s^2 - kg^3 + lambda kg + mu
};

SolitonResiduals soliton_residuals(const SolitonParams& params, double s);
// Same residuals for an arbitrary jet, e.g. a constant profile.
SolitonResiduals soliton_residuals(const KgJet& jet, double lambda, double mu);

struct KillingResiduals {
  double a;  // U + W_s with U = kg_s, W = -kg
  double b;  // kg_sss - 3 kg kg_s
};

KillingResiduals killing_residual(const SolitonParams& params, double s);
KillingResiduals killing_residual(const KgJet& jet);

// Rescaling to mu = 2: kg = scale_kg * kbar(sbar), s = scale_s * sbar with
// scale_kg = (mu/2)^(1/3), scale_s = (mu/2)^(-1/6), lambda_bar = lambda / scale_kg^2.
struct Mu2Scaling {
  double lambda_bar;
  double scale_kg;
  double scale_s;
};

// Throws Error(NonPositiveMu) for mu <= 0.
Mu2Scaling normalize_mu2(double lambda, double mu);

struct ProfileSample {
  double s;
  double kg;
  double kg_s;
  double kg_ss;
};

// One period of kg on the uniform grid s_j = j T / n, j = 0..n-1.
struct CurvatureProfile {
  SolitonParams params;
  std::vector<ProfileSample> samples;
};

// n must be a power of two >= 2 (Error(InvalidArgument) otherwise).
CurvatureProfile sample_profile(const SolitonParams& params, int n = 1024);

}  // namespace lightcone
