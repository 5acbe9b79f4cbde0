#include "lightcone/soliton.hpp"

#include <cmath>

#include "lightcone/ellip.hpp"
#include "lightcone/error.hpp"

namespace lightcone {

KgJet kg_at(const SolitonParams& p, double s) {
  const double a = 0.5 * std::sqrt(p.x3() - p.x1());
  const double k = p.modulus();
  const double k2 = k * k;
  const double d21 = p.x2() - p.x1();
  const auto [sn, cn, dn] = jacobi_sn_cn_dn(a * s, k);
  const double scd = sn * cn * dn;
  KgJet j;
  j.kg = p.x1() + d21 * sn * sn;
  j.kg_s = 2.0 * a * d21 * scd;
  j.kg_ss = 2.0 * a * a * d21 * (cn * cn * dn * dn - sn * sn * dn * dn - k2 * sn * sn * cn * cn);
  j.kg_sss = 2.0 * a * a * a * d21 * (-4.0 * scd) * (dn * dn + k2 * cn * cn - k2 * sn * sn);
  return j;
}

SolitonResiduals soliton_residuals(const KgJet& j, double lambda, double mu) {
  return {j.kg_ss - 1.5 * j.kg * j.kg + 0.5 * lambda,
          j.kg_s * j.kg_s - j.kg * j.kg * j.kg + lambda * j.kg + mu};
}

SolitonResiduals soliton_residuals(const SolitonParams& p, double s) {
  return soliton_residuals(kg_at(p, s), p.lambda(), p.mu());
}

KillingResiduals killing_residual(const KgJet& j) {
  const double u = j.kg_s;
  const double w_s = -j.kg_s;
  return {u + w_s, j.kg_sss - 3.0 * j.kg * j.kg_s};
}

KillingResiduals killing_residual(const SolitonParams& p, double s) {
  return killing_residual(kg_at(p, s));
}

Mu2Scaling normalize_mu2(double lambda, double mu) {
  if (!(mu > 0.0)) throw Error(ErrorCode::NonPositiveMu, "normalization to mu = 2 needs mu > 0");
  const double c = std::cbrt(0.5 * mu);
  // kg = c kbar(sbar), s = sigma sbar: kbar'^2 / (c sigma^2) = kbar^3 - (lambda/c^2) kbar - 2,
  // so sigma = c^(-1/2).
  return {lambda / (c * c), c, 1.0 / std::sqrt(c)};
}

CurvatureProfile sample_profile(const SolitonParams& params, int n) {
  if (n < 2 || (n & (n - 1)) != 0) {
    throw Error(ErrorCode::InvalidArgument, "profile size must be a power of two");
  }
  CurvatureProfile prof{params, {}};
  prof.samples.reserve(n);
  const double h = params.period() / n;
  for (int j = 0; j < n; ++j) {
    const double s = j * h;
    const KgJet jet = kg_at(params, s);
    prof.samples.push_back({s, jet.kg, jet.kg_s, jet.kg_ss});
  }
  return prof;
}

}  // namespace lightcone
