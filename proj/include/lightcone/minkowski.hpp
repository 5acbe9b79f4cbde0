#pragma once

#include <array>

namespace lightcone {

// A vector of the Minkowski space E^3_1. The first coordinate is time-like.
class LVec3 {
 public:
  constexpr LVec3() = default;
  // Throws Error(NonFiniteComponent) on NaN/Inf input.
  LVec3(double t, double y, double z);

  double t() const { return t_; }
  double y() const { return y_; }
  double z() const { return z_; }
  double operator[](int i) const { return i == 0 ? t_ : (i == 1 ? y_ : z_); }

  LVec3 operator+(const LVec3& o) const { return {t_ + o.t_, y_ + o.y_, z_ + o.z_}; }
  LVec3 operator-(const LVec3& o) const { return {t_ - o.t_, y_ - o.y_, z_ - o.z_}; }
  LVec3 operator-() const { return {-t_, -y_, -z_}; }
  LVec3 operator*(double a) const { return {a * t_, a * y_, a * z_}; }
  friend LVec3 operator*(double a, const LVec3& v) { return v * a; }

  // Plain Euclidean norm of the raw components.
  double euclidean_norm() const;

  bool operator==(const LVec3&) const = default;

 private:
  double t_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

enum class CausalClass { SpaceLike, TimeLike, LightLike };

const char* to_string(CausalClass c);

// -u1 v1 + u2 v2 + u3 v3
double inner_l(const LVec3& u, const LVec3& v);

// Pseudo vector product (u3 v2 - u2 v3, u3 v1 - u1 v3, u1 v2 - u2 v1).
LVec3 cross_l(const LVec3& u, const LVec3& v);

// The zero vector is space-like. |<v,v>| <= 1e-12 max(1, |v|^2) counts as
// light-like.
CausalClass causal_class(const LVec3& v);

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 identity3();
Mat3 operator*(const Mat3& a, const Mat3& b);
LVec3 operator*(const Mat3& m, const LVec3& v);
double det(const Mat3& m);
Mat3 inverse(const Mat3& m);
double max_abs_diff(const Mat3& a, const Mat3& b);

// One-parameter rotation groups of E^3_1 about the canonical axes:
//   TimeLike  -> x-axis (1,0,0), circular rotation of the (y,z) plane
//   SpaceLike -> z-axis (0,0,1), hyperbolic rotation of the (x,y) plane
//   LightLike -> null axis (1,1,0), parabolic rotation
// Acts on column vectors: M * v.
struct LRotation {
  Mat3 m{};
  CausalClass axis_class = CausalClass::TimeLike;
  double omega = 0.0;

  LVec3 apply(const LVec3& v) const { return m * v; }
};

LRotation rotation(CausalClass axis_class, double omega);

// Composition of two rotations from the same group: rotation(c, a+b).
LRotation compose(const LRotation& a, const LRotation& b);

// psi(theta) of the section of the light-cone by the plane <x, v>_L = 1.
// Throws Error(NonPositiveDenominator) where -v1 + v2 cos(theta) + v3 sin(theta) <= 0.
double plane_section_psi(const LVec3& v, double theta);

}  // namespace lightcone
