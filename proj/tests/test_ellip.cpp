#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lightcone/ellip.hpp"
#include "lightcone/error.hpp"
#include "oracles.hpp"

using namespace lightcone;
constexpr double pi = std::numbers::pi;

namespace {

double f_oracle(double phi, double k) {
  return oracle::adaptive_simpson(
      [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); }, 0.0, phi,
      1e-14);
}

double pi_oracle(double phi, double a2, double k) {
  return oracle::adaptive_simpson(
      [a2, k](double t) {
        const double s2 = std::sin(t) * std::sin(t);
        return 1.0 / ((1.0 - a2 * s2) * std::sqrt(1.0 - k * k * s2));
      },
      0.0, phi, 1e-14);
}

// Sharply peaked integrand next to the pole: split at the peak and integrate
// the peak panel in a stretched variable t = pi/2 - w^2.
double pi_oracle_loose(double phi, double a2, double k) {
  // 1 - a2 sin^2 written as (1 - a2) + a2 cos^2 to keep the peak noise-free
  auto f = [a2, k](double t) {
    const double c = std::cos(t);
    return 1.0 / (((1.0 - a2) + a2 * c * c) * std::sqrt(1.0 - k * k * (1.0 - c * c)));
  };
  const double split = phi - 0.1;
  const double head = oracle::adaptive_simpson(f, 0.0, split, 1e-13);
  const double tail = oracle::adaptive_simpson(
      [&](double w) { return 2.0 * w * f(phi - w * w); }, 0.0, std::sqrt(0.1), 1e-11);
  return head + tail;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

// Coefficient of k^(2m) from termwise integration of the defining integral.
double coeff_oracle(int m, double a2) {
  double binom = 1.0;
  for (int j = 1; j <= m; ++j) binom *= (-0.5 - (j - 1)) / j;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * binom *
         oracle::adaptive_simpson(
             [m, a2](double t) {
               const double s2 = std::sin(t) * std::sin(t);
               return std::pow(s2, m) / (1.0 - a2 * s2);
             },
             0.0, pi / 2, 1e-15);
}

}  // namespace

TEST_CASE("first kind") {
  CHECK(ellip_f(1.1, 0.0) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(ellip_f(pi / 2, 0.6) == doctest::Approx(ellip_k(0.6)).epsilon(1e-15));
  CHECK(rel_close(ellip_f(0.8, 0.5), f_oracle(0.8, 0.5), 1e-12));
  CHECK(ellip_k(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  const double k = 1.0 / std::sqrt(2.0);
  CHECK(rel_close(ellip_k(k), pi / (2.0 * oracle::agm(1.0, std::sqrt(1.0 - k * k))), 1e-14));
  CHECK(rel_close(ellip_k(0.95), f_oracle(pi / 2, 0.95), 1e-12));

  for (double kk : {0.0, 0.2, 0.5, 0.7, 0.9, 0.95, 0.99}) {
    for (double phi : {-2.0, 0.05, 0.3, 1.0, 1.5, 2.4, 3.5, 7.0}) {
      CHECK(rel_close(ellip_f(phi, kk), f_oracle(phi, kk), 1e-10));
    }
    CHECK(rel_close(ellip_k(kk), pi / (2.0 * oracle::agm(1.0, std::sqrt(1.0 - kk * kk))), 1e-13));
  }
}

TEST_CASE("modulus range") {
  for (double kk : {-0.1, 1.0, 1.0 - 1e-13, 1.5}) {
    try {
      ellip_k(kk);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ModulusOutOfRange);
    }
  }
  CHECK_THROWS_AS(jacobi_sn_cn_dn(0.3, 1.0), Error);
  CHECK_THROWS_AS(ellip_f(0.3, 1.0), Error);
}

TEST_CASE("third kind") {
  CHECK(ellip_pi(1.0, 0.0, 0.4) == doctest::Approx(ellip_f(1.0, 0.4)).epsilon(1e-15));
  CHECK(ellip_pi(pi / 2, 0.0, 0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(rel_close(ellip_pi(pi / 2, 0.3, 0.5), pi_oracle(pi / 2, 0.3, 0.5), 1e-12));

  for (double kk : {0.0, 0.3, 0.6, 0.9}) {
    for (double a2 : {-3.0, -0.5, 0.2, 0.7, 0.95}) {
      for (double phi : {0.2, 0.9, 1.4, pi / 2, 2.5, 4.0}) {
        CHECK(rel_close(ellip_pi(phi, a2, kk), pi_oracle(phi, a2, kk), 1e-10));
      }
    }
    // characteristic above one: only below the pole at sin^2 = 1/a2
    for (double a2 : {1.5, 4.0}) {
      const double pole = std::asin(1.0 / std::sqrt(a2));
      for (double frac : {0.3, 0.7, 0.95}) {
        CHECK(rel_close(ellip_pi(frac * pole, a2, kk), pi_oracle(frac * pole, a2, kk), 1e-10));
      }
    }
  }
  // complement form
  CHECK(rel_close(ellip_pi_complete_complement(0.7, 0.5), ellip_pi(pi / 2, 0.3, 0.5), 1e-14));
  CHECK(rel_close(ellip_pi_complete_complement(1e-6, 0.5), pi_oracle_loose(pi / 2, 1.0 - 1e-6, 0.5), 1e-9));

  try {
    ellip_pi(1.0, 2.0, 0.3);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CharacteristicPole);
  }
  CHECK_THROWS_AS(ellip_pi(pi, 1.0, 0.3), Error);
}

TEST_CASE("Jacobi functions") {
  const auto d0 = jacobi_sn_cn_dn(0.9, 0.0);
  CHECK(d0.sn == doctest::Approx(std::sin(0.9)).epsilon(1e-15));
  CHECK(d0.cn == doctest::Approx(std::cos(0.9)).epsilon(1e-15));
  CHECK(d0.dn == 1.0);
  const auto z = jacobi_sn_cn_dn(0.0, 0.6);
  CHECK(z.sn == 0.0);
  CHECK(z.cn == 1.0);
  CHECK(z.dn == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(jacobi_sn_cn_dn(ellip_k(0.7), 0.7).sn == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(jacobi_am(0.4, 0.0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(jacobi_am(ellip_k(0.6), 0.6) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(jacobi_am(2.0 * ellip_k(0.6), 0.6) == doctest::Approx(pi).epsilon(1e-14));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uu(-20.0, 20.0), ku(0.0, 0.999);
  for (int i = 0; i < 2000; ++i) {
    const double u = uu(rng), k = ku(rng);
    const auto j = jacobi_sn_cn_dn(u, k);
    CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) <= 1e-12);
    CHECK(std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0) <= 1e-12);
    CHECK(j.dn > 0.0);
    const double big_k = ellip_k(k);
    CHECK(std::abs(jacobi_sn_cn_dn(u + 4.0 * big_k, k).sn - j.sn) <= 1e-10);
    // am inverts F
    const double am = jacobi_am(u, k);
    CHECK(std::abs(ellip_f(am, k) - u) <= 1e-10 * std::max(1.0, std::abs(u)));
    CHECK(std::abs(std::sin(am) - j.sn) <= 1e-12);
  }
  double prev = jacobi_am(-5.0, 0.8);
  for (int i = 1; i <= 500; ++i) {
    const double cur = jacobi_am(-5.0 + 0.02 * i, 0.8);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("binomial(-1/2, m)") {
  CHECK(binom_neg_half(0) == 1.0);
  CHECK(binom_neg_half(1) == -0.5);
  CHECK(binom_neg_half(2) == 0.375);
  CHECK(binom_neg_half(3) == -0.3125);
}

TEST_CASE("Pi series coefficients") {
  CHECK(pi_series_complete(0.5, 0.0, 6) == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-15));
  const auto c = pi_series_coeffs(0.5, 12);
  CHECK(c.c[1] == doctest::Approx(pi / 2 * (std::sqrt(2.0) - 1.0)).epsilon(1e-15));

  for (double a2 : {0.1, 0.35, 0.5, 0.6, 0.9, 0.99}) {
    const double r = 1.0 / std::sqrt(1.0 - a2);
    const auto cc = pi_series_coeffs(a2, 14);
    // the printed closed forms, exactly
    CHECK(cc.c[0] == pi / (2.0 * std::sqrt(1.0 - a2)));
    CHECK(cc.c[1] == pi / (4.0 * a2) * (r - 1.0));
    CHECK(cc.c[2] == 3.0 * pi / (32.0 * a2 * a2) * (2.0 * r - 2.0 - a2));
    CHECK(cc.c[3] == 5.0 * pi / (256.0 * a2 * a2 * a2) * (8.0 * r - 8.0 - 4.0 * a2 - 3.0 * a2 * a2));
    for (int m = 1; m < 14; ++m) CHECK(pi_series_recurrence_residual(cc, m) < 1e-12);
    // every coefficient against termwise integration (pins v = alpha^2); the
    // forward recurrence amplifies rounding by ~alpha^-2 per step, so small
    // alpha^2 is checked separately below
    if (a2 < 0.3) continue;
    for (int m = 0; m <= 10; ++m) {
      CHECK(std::abs(cc.c[m] - coeff_oracle(m, a2)) <= 1e-9 * std::max(1.0, std::abs(cc.c[m])));
    }
  }
}

TEST_CASE("forward recurrence error growth at small alpha^2") {
  const double a2 = 0.1;
  const auto cc = pi_series_coeffs(a2, 10);
  for (int m = 4; m <= 10; ++m) {
    const double err = std::abs(cc.c[m] - coeff_oracle(m, a2)) / std::abs(coeff_oracle(m, a2));
    CHECK(err <= 1e-14 * std::pow(1.0 / a2, m));
  }
}

TEST_CASE("Pi series converges to the closed form") {
  const double a2 = 0.6, k = 0.3;
  const double exact = ellip_pi(pi / 2, a2, k);
  const double approx = pi_series_complete(a2, k, 8);
  const double bound = pi / (2.0 * std::sqrt(1.0 - a2)) * std::pow(k * k, 9) / (1.0 - k * k);
  CHECK(std::abs(approx - exact) <= bound);

  for (auto [aa, kk] : {std::pair{0.6, 0.3}, {0.9, 0.8}, {0.5, 0.6}, {0.95, 0.9}}) {
    const double ex = ellip_pi(pi / 2, aa, kk);
    double prev = HUGE_VAL;
    for (int m = 0; m <= 30; ++m) {
      const double err = std::abs(pi_series_complete(aa, kk, m) - ex);
      if (err < 1e-13) break;
      CHECK(err < prev);
      prev = err;
    }
  }

  for (auto [aa, kk] : {std::pair{0.3, 0.6}, {1.2, 0.3}, {-0.2, 0.1}, {0.5, std::sqrt(0.5)}}) {
    try {
      pi_series_complete(aa, kk, 5);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ValidityRegionViolated);
    }
  }
}
