#include "lightcone/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lightcone/error.hpp"

namespace lightcone {

LVec3::LVec3(double t, double y, double z) : t_(t), y_(y), z_(z) {
  if (!std::isfinite(t) || !std::isfinite(y) || !std::isfinite(z)) {
    throw Error(ErrorCode::NonFiniteComponent, "LVec3 components must be finite");
  }
}

double LVec3::euclidean_norm() const { return std::sqrt(t_ * t_ + y_ * y_ + z_ * z_); }

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::SpaceLike: return "space-like";
    case CausalClass::TimeLike: return "time-like";
    case CausalClass::LightLike: return "light-like";
  }
  return "unknown";
}

double inner_l(const LVec3& u, const LVec3& v) {
  return -u.t() * v.t() + u.y() * v.y() + u.z() * v.z();
}

LVec3 cross_l(const LVec3& u, const LVec3& v) {
  return {u.z() * v.y() - u.y() * v.z(), u.z() * v.t() - u.t() * v.z(),
          u.t() * v.y() - u.y() * v.t()};
}

CausalClass causal_class(const LVec3& v) {
  const double e2 = v.t() * v.t() + v.y() * v.y() + v.z() * v.z();
  if (e2 == 0.0) return CausalClass::SpaceLike;
  const double q = inner_l(v, v);
  if (std::abs(q) <= 1e-12 * std::max(1.0, e2)) return CausalClass::LightLike;
  return q > 0.0 ? CausalClass::SpaceLike : CausalClass::TimeLike;
}

Mat3 identity3() { return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}; }

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

LVec3 operator*(const Mat3& m, const LVec3& v) {
  return {m[0][0] * v.t() + m[0][1] * v.y() + m[0][2] * v.z(),
          m[1][0] * v.t() + m[1][1] * v.y() + m[1][2] * v.z(),
          m[2][0] * v.t() + m[2][1] * v.y() + m[2][2] * v.z()};
}

double det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse(const Mat3& m) {
  const double d = det(m);
  if (d == 0.0) throw Error(ErrorCode::InvalidArgument, "singular 3x3 matrix");
  Mat3 r{};
  r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
  r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
  r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
  r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
  r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
  r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
  r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
  r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
  r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
  return r;
}

double max_abs_diff(const Mat3& a, const Mat3& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

LRotation rotation(CausalClass axis_class, double omega) {
  LRotation r;
  r.axis_class = axis_class;
  r.omega = omega;
  switch (axis_class) {
    case CausalClass::TimeLike: {
      const double c = std::cos(omega), s = std::sin(omega);
      r.m = {{{1.0, 0.0, 0.0}, {0.0, c, -s}, {0.0, s, c}}};
      break;
    }
    case CausalClass::SpaceLike: {
      const double c = std::cosh(omega), s = std::sinh(omega);
      r.m = {{{c, s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}};
      break;
    }
    case CausalClass::LightLike: {
      const double h = 0.5 * omega * omega;
      r.m = {{{1.0 + h, -h, omega}, {h, 1.0 - h, omega}, {omega, -omega, 1.0}}};
      break;
    }
  }
  return r;
}

LRotation compose(const LRotation& a, const LRotation& b) {
  if (a.axis_class != b.axis_class) {
    throw Error(ErrorCode::InvalidArgument, "cannot compose rotations about different axes");
  }
  LRotation r;
  r.axis_class = a.axis_class;
  r.omega = a.omega + b.omega;
  r.m = a.m * b.m;
  return r;
}

double plane_section_psi(const LVec3& v, double theta) {
  const double d = -v.t() + v.y() * std::cos(theta) + v.z() * std::sin(theta);
  if (!(d > 0.0)) {
    throw Error(ErrorCode::NonPositiveDenominator,
                "plane does not meet LC* at theta=" + std::to_string(theta));
  }
  return 1.0 / d;
}

}  // namespace lightcone
