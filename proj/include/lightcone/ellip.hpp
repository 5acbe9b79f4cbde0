#pragma once

#include <vector>

namespace lightcone {

// Carlson symmetric integrals.
double carlson_rf(double x, double y, double z);
double carlson_rc(double x, double y);
double carlson_rj(double x, double y, double z, double p);

// Incomplete elliptic integral of the first kind, F(phi, k), for any real phi.
// Requires 0 <= k < 1 - 1e-12, otherwise Error(ModulusOutOfRange).
double ellip_f(double phi, double k);

// Complete elliptic integral of the first kind, K(k) = F(pi/2, k).
double ellip_k(double k);

// Incomplete elliptic integral of the third kind
//   Pi(phi, a2, k) = int_0^phi dt / ((1 - a2 sin^2 t) sqrt(1 - k^2 sin^2 t)).
// Error(CharacteristicPole) if 1 - a2 sin^2 t vanishes on [0, phi].
double ellip_pi(double phi, double alpha2, double k);

// Pi(pi/2, 1 - n_complement, k), taking the complement 1 - alpha^2 directly so
// that characteristics close to 1 keep full relative accuracy.
double ellip_pi_complete_complement(double n_complement, double k);

struct JacobiSnCnDn {
  double sn;
  double cn;
  double dn;
};

// Jacobi elliptic functions by the descending Landen (AGM) transformation.
JacobiSnCnDn jacobi_sn_cn_dn(double u, double k);

// Jacobi amplitude: sin(am(u,k)) = sn(u,k), increasing in u.
double jacobi_am(double u, double k);

// binom(-1/2, m) by the product recurrence.
double binom_neg_half(int m);

// Coefficients c_0..c_{m_max} of Pi(pi/2, alpha^2, k) = sum_m c_m k^{2m}.
// c_0..c_3 come from their closed forms; higher orders from the three-term
// recurrence (forward, so relative errors grow roughly like alpha^(-2m);
// fine for alpha^2 near 1, poor for small alpha^2)
//   2(m+1) a2 c_{m+1} = pi/(2(2m-1)) binom(-1/2,m)^2 + (1-2m) c_{m-1}
//                       + (2m+1+2m a2) c_m.
struct PiSeriesCoeffs {
  int m_max = 0;
  std::vector<double> c;
  double alpha2 = 0.0;
};

// Requires 0 < alpha2 < 1, otherwise Error(ValidityRegionViolated).
PiSeriesCoeffs pi_series_coeffs(double alpha2, int m_max);

// Residual of the recurrence at index m (1 <= m < m_max), scaled by the
// magnitude of its largest term.
double pi_series_recurrence_residual(const PiSeriesCoeffs& coeffs, int m);

// Truncated series sum_{m<=m_max} c_m k^{2m}. Valid for k^2 < alpha2 < 1;
// Error(ValidityRegionViolated) outside.
double pi_series_complete(double alpha2, double k, int m_max);

}  // namespace lightcone
