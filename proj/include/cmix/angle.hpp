#pragma once
// Angular arithmetic on the 2-torus [0,2pi)^2 and small fixed-size linear algebra.
#include <cmath>
#include <algorithm>
#include <array>

namespace cmix {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

// Canonical representative in [0, 2pi).
inline double wrap_2pi(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a slightly-negative value can round to 2pi exactly; fold it back.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Signed representative in (-pi, pi].
inline double wrap_pm(double t) {
  double r = t - kTwoPi * std::round(t / kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

struct TorusPoint {
  double x1 = 0.0;  // momentum coordinate
  double x2 = 0.0;  // angle coordinate
  static TorusPoint canonical(double a, double b) { return {wrap_2pi(a), wrap_2pi(b)}; }
};

struct PhasePair {
  double w1 = 0.0;
  double w2 = 0.0;
  static PhasePair canonical(double a, double b) { return {wrap_2pi(a), wrap_2pi(b)}; }
};

struct TangentVector {
  double v1 = 0.0;
  double v2 = 0.0;
  double norm() const { return std::hypot(v1, v2); }
  TangentVector normalized() const {
    const double n = norm();
    return {v1 / n, v2 / n};
  }
};

// Row-major 2x2 real matrix.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  double det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  TangentVector operator*(const TangentVector& v) const {
    return {a * v.v1 + b * v.v2, c * v.v1 + d * v.v2};
  }
  // Spectral (operator 2-) norm.
  double op_norm() const {
    const double q = a * a + b * b + c * c + d * d;
    const double det_ = det();
    const double disc = std::max(0.0, q * q - 4.0 * det_ * det_);
    return std::sqrt(0.5 * (q + std::sqrt(disc)));
  }
};

// Euclidean distance of nearest lifts: minimum over the 3x3 lift neighbourhood.
inline double torus_dist(const TorusPoint& p, const TorusPoint& q) {
  const double d1 = wrap_pm(p.x1 - q.x1);
  const double d2 = wrap_pm(p.x2 - q.x2);
  return std::hypot(d1, d2);
}

}  // namespace cmix
