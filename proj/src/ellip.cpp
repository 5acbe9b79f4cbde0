#include "lightcone/ellip.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "lightcone/error.hpp"

namespace lightcone {

namespace {

constexpr double kDuplicationTol = 1e-3;  // truncation error ~ tol^6
constexpr double kMaxModulus = 1.0 - 1e-12;

void check_modulus(double k) {
  if (!(k >= 0.0 && k < kMaxModulus)) {
    throw Error(ErrorCode::ModulusOutOfRange, "modulus k=" + std::to_string(k) + " not in [0, 1)");
  }
}

// phi = j*pi + r with r in [-pi/2, pi/2].
std::pair<double, double> reduce_amplitude(double phi) {
  const double j = std::round(phi / std::numbers::pi);
  return {j, phi - j * std::numbers::pi};
}

}  // namespace

double carlson_rf(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z < 0.0 || (x + y) == 0.0 || (y + z) == 0.0 || (x + z) == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "carlson_rf: invalid arguments");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double a = (x + y + z) / 3.0;
    const double dev = std::max({std::abs(a - x), std::abs(a - y), std::abs(a - z)});
    if (dev <= kDuplicationTol * a) {
      const double dx = (a - x) / a, dy = (a - y) / a;
      const double dz = -(dx + dy);
      const double e2 = dx * dy - dz * dz;
      const double e3 = dx * dy * dz;
      return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
    }
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lambda = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
  }
  throw Error(ErrorCode::IntegrationFailure, "carlson_rf did not converge");
}

double carlson_rc(double x, double y) {
  if (x < 0.0 || y <= 0.0) throw Error(ErrorCode::InvalidArgument, "carlson_rc: invalid arguments");
  for (int iter = 0; iter < 200; ++iter) {
    const double a = (x + 2.0 * y) / 3.0;
    const double s = (y - a) / a;
    if (std::abs(s) <= kDuplicationTol) {
      return (1.0 + s * s * (3.0 / 10.0 + s * (1.0 / 7.0 + s * (3.0 / 8.0 + s * 9.0 / 22.0)))) /
             std::sqrt(a);
    }
    const double lambda = 2.0 * std::sqrt(x) * std::sqrt(y) + y;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
  }
  throw Error(ErrorCode::IntegrationFailure, "carlson_rc did not converge");
}

double carlson_rj(double x, double y, double z, double p) {
  if (x < 0.0 || y < 0.0 || z < 0.0 || p <= 0.0 || (x + y) == 0.0 || (y + z) == 0.0 ||
      (x + z) == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "carlson_rj: invalid arguments");
  }
  double sum = 0.0;
  double fac = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double a = (x + y + z + 2.0 * p) / 5.0;
    const double dev =
        std::max({std::abs(a - x), std::abs(a - y), std::abs(a - z), std::abs(a - p)});
    if (dev <= kDuplicationTol * a) {
      const double dx = (a - x) / a, dy = (a - y) / a, dz = (a - z) / a;
      const double dp = -0.5 * (dx + dy + dz);
      const double ea = dx * dy + dy * dz + dz * dx;
      const double eb = dx * dy * dz;
      const double ec = dp * dp;
      const double e2 = ea - 3.0 * ec;
      const double e3 = eb + 2.0 * dp * (ea - ec);
      const double s1 = 1.0 + e2 * (-3.0 / 14.0 + 9.0 / 88.0 * e2 - 9.0 / 52.0 * e3);
      const double s2 = eb * (1.0 / 6.0 + dp * (-6.0 / 22.0 + dp * 3.0 / 26.0));
      const double s3 = dp * ((ea - ec) / 3.0 - dp * ea * 3.0 / 22.0);
      return 3.0 * sum + fac * (s1 + s2 + s3) / (a * std::sqrt(a));
    }
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lambda = sx * sy + sy * sz + sz * sx;
    const double alpha = p * (sx + sy + sz) + sx * sy * sz;
    const double beta = p * (p + lambda) * (p + lambda);
    sum += fac * carlson_rc(alpha * alpha, beta);
    fac *= 0.25;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    p = 0.25 * (p + lambda);
  }
  throw Error(ErrorCode::IntegrationFailure, "carlson_rj did not converge");
}

double ellip_k(double k) {
  check_modulus(k);
  return carlson_rf(0.0, (1.0 - k) * (1.0 + k), 1.0);
}

double ellip_f(double phi, double k) {
  check_modulus(k);
  const auto [j, r] = reduce_amplitude(phi);
  const double s = std::sin(r), c = std::cos(r);
  const double partial = s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0);
  return j == 0.0 ? partial : 2.0 * j * ellip_k(k) + partial;
}

double ellip_pi(double phi, double alpha2, double k) {
  check_modulus(k);
  auto partial = [&](double r) {
    const double s = std::sin(r), c = std::cos(r);
    const double s2 = s * s;
    const double p = 1.0 - alpha2 * s2;
    if (!(p > 0.0)) {
      throw Error(ErrorCode::CharacteristicPole,
                  "1 - alpha^2 sin^2 vanishes on the integration range (alpha^2=" +
                      std::to_string(alpha2) + ")");
    }
    const double q = 1.0 - k * k * s2;
    double value = s * carlson_rf(c * c, q, 1.0);
    if (alpha2 != 0.0) value += alpha2 / 3.0 * s * s2 * carlson_rj(c * c, q, 1.0, p);
    return value;
  };
  const auto [j, r] = reduce_amplitude(phi);
  if (j == 0.0) return partial(r);
  if (alpha2 >= 1.0) {
    throw Error(ErrorCode::CharacteristicPole, "amplitude crosses the characteristic pole");
  }
  return 2.0 * j * ellip_pi_complete_complement(1.0 - alpha2, k) + partial(r);
}

double ellip_pi_complete_complement(double n_complement, double k) {
  check_modulus(k);
  if (!(n_complement > 0.0)) {
    throw Error(ErrorCode::CharacteristicPole, "complete Pi requires alpha^2 < 1");
  }
  const double kc2 = (1.0 - k) * (1.0 + k);
  const double n = 1.0 - n_complement;
  double value = carlson_rf(0.0, kc2, 1.0);
  if (n != 0.0) value += n / 3.0 * carlson_rj(0.0, kc2, 1.0, n_complement);
  return value;
}

namespace {

struct Amplitude {
  double phi0;  // am(u, k)
};

Amplitude landen_amplitude(double u, double k) {
  check_modulus(k);
  constexpr int kMaxLevels = 16;
  std::array<double, kMaxLevels + 1> a{}, c{};
  a[0] = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > 1e-16 && n < kMaxLevels) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i >= 1; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  return {phi};
}

}  // namespace

JacobiSnCnDn jacobi_sn_cn_dn(double u, double k) {
  const double phi = landen_amplitude(u, k).phi0;
  const double sn = std::sin(phi);
  // dn > 0 on the real axis; the factored form avoids cancellation in 1 - k^2 sn^2
  return {sn, std::cos(phi), std::sqrt((1.0 - k * sn) * (1.0 + k * sn))};
}

double jacobi_am(double u, double k) { return landen_amplitude(u, k).phi0; }

double binom_neg_half(int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "binomial index must be non-negative");
  double b = 1.0;
  for (int j = 1; j <= m; ++j) b *= (-0.5 - (j - 1)) / j;
  return b;
}

PiSeriesCoeffs pi_series_coeffs(double alpha2, int m_max) {
  if (!(alpha2 > 0.0 && alpha2 < 1.0)) {
    throw Error(ErrorCode::ValidityRegionViolated, "series coefficients need 0 < alpha^2 < 1");
  }
  if (m_max < 0) throw Error(ErrorCode::InvalidArgument, "m_max must be non-negative");
  constexpr double pi = std::numbers::pi;
  const double a = alpha2;
  const double r = 1.0 / std::sqrt(1.0 - a);
  const std::array<double, 4> closed = {
      pi / (2.0 * std::sqrt(1.0 - a)),
      pi / (4.0 * a) * (r - 1.0),
      3.0 * pi / (32.0 * a * a) * (2.0 * r - 2.0 - a),
      5.0 * pi / (256.0 * a * a * a) * (8.0 * r - 8.0 - 4.0 * a - 3.0 * a * a),
  };
  PiSeriesCoeffs out;
  out.m_max = m_max;
  out.alpha2 = alpha2;
  out.c.resize(m_max + 1);
  for (int m = 0; m <= m_max; ++m) {
    if (m < 4) {
      out.c[m] = closed[m];
      continue;
    }
    const int j = m - 1;  // recurrence index producing c_{j+1}
    const double b = binom_neg_half(j);
    const double rhs = pi / (2.0 * (2.0 * j - 1.0)) * b * b + (1.0 - 2.0 * j) * out.c[j - 1] +
                       (2.0 * j + 1.0 + 2.0 * j * a) * out.c[j];
    out.c[m] = rhs / (2.0 * (j + 1.0) * a);
  }
  return out;
}

double pi_series_recurrence_residual(const PiSeriesCoeffs& coeffs, int m) {
  if (m < 1 || m + 1 > coeffs.m_max) {
    throw Error(ErrorCode::InvalidArgument, "recurrence index out of range");
  }
  constexpr double pi = std::numbers::pi;
  const double a = coeffs.alpha2;
  const double b = binom_neg_half(m);
  const double lhs = 2.0 * (m + 1.0) * a * coeffs.c[m + 1];
  const double t1 = pi / (2.0 * (2.0 * m - 1.0)) * b * b;
  const double t2 = (1.0 - 2.0 * m) * coeffs.c[m - 1];
  const double t3 = (2.0 * m + 1.0 + 2.0 * m * a) * coeffs.c[m];
  const double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), std::abs(t3)});
  return std::abs(lhs - (t1 + t2 + t3)) / scale;
}

double pi_series_complete(double alpha2, double k, int m_max) {
  const double k2 = k * k;
  if (!(k2 < 1.0 && k2 < alpha2 && alpha2 < 1.0)) {
    throw Error(ErrorCode::ValidityRegionViolated,
                "series requires k^2 < alpha^2 < 1 (alpha^2=" + std::to_string(alpha2) +
                    ", k^2=" + std::to_string(k2) + ")");
  }
  const PiSeriesCoeffs coeffs = pi_series_coeffs(alpha2, m_max);
  double sum = 0.0;
  double power = 1.0;
  for (int m = 0; m <= m_max; ++m) {
    sum += coeffs.c[m] * power;
    power *= k2;
  }
  return sum;
}

}  // namespace lightcone
