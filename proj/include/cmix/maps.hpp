#pragma once
// One-step kicked-shear maps on the torus: an alternating horizontal/vertical
// shear engine with a pluggable vertical profile, plus closed-form Jacobians
// and the exact inverse of the linear-profile (standard-map) case.
#include "cmix/angle.hpp"

namespace cmix {

// Vertical displacement profiles. The horizontal half-step is always
// x1 += amp * sin(x2 - w1); the vertical half-step is x2 += profile(x1, w2).
struct LinearProfile {  // standard map: displacement x1 - w2
  static double value(double x1, double w2, double /*amp*/) { return x1 - w2; }
  static double slope(double x1, double w2, double amp);  // d/dx1
};
inline double LinearProfile::slope(double, double, double) { return 1.0; }

struct SineProfile {  // alternating-sine model: displacement amp * sin(x1 - w2)
  static double value(double x1, double w2, double amp) { return amp * std::sin(x1 - w2); }
  static double slope(double x1, double w2, double amp) { return amp * std::cos(x1 - w2); }
};

template <class Profile>
inline TorusPoint shear_horizontal(const TorusPoint& x, double w1, double amp) {
  return {wrap_2pi(x.x1 + amp * std::sin(x.x2 - w1)), x.x2};
}

template <class Profile>
inline TorusPoint shear_vertical(const TorusPoint& x, double w2, double amp) {
  return {x.x1, wrap_2pi(x.x2 + Profile::value(x.x1, w2, amp))};
}

template <class Profile>
inline TorusPoint shear_step(const TorusPoint& x, const PhasePair& w, double amp) {
  return shear_vertical<Profile>(shear_horizontal<Profile>(x, w.w1, amp), w.w2, amp);
}

// One-step Jacobian of the composed shear pair, in closed form.
//   [[1, H], [V', 1 + H*V']] with H = amp*cos(x2 - w1) evaluated at the input
// and V' the vertical-profile slope evaluated after the horizontal half-step.
template <class Profile>
inline Mat2 shear_jacobian(const TorusPoint& x, const PhasePair& w, double amp) {
  const double h = amp * std::cos(x.x2 - w.w1);
  const double x1_mid = x.x1 + amp * std::sin(x.x2 - w.w1);
  const double vp = Profile::slope(x1_mid, w.w2, amp);
  return {1.0, h, vp, 1.0 + h * vp};
}

// ---- Standard-map (linear vertical profile) interface ---------------------

inline TorusPoint horizontal_step(const TorusPoint& x, double w1, double K) {
  return shear_horizontal<LinearProfile>(x, w1, K);
}
inline TorusPoint vertical_step(const TorusPoint& x, double w2) {
  return shear_vertical<LinearProfile>(x, w2, 0.0);
}
inline TorusPoint chirikov_step(const TorusPoint& x, const PhasePair& w, double K) {
  return shear_step<LinearProfile>(x, w, K);
}
inline Mat2 chirikov_jacobian(const TorusPoint& x, const PhasePair& w, double K) {
  return shear_jacobian<LinearProfile>(x, w, K);
}

// Exact inverse: first undo the vertical shear, then the horizontal one.
inline TorusPoint chirikov_inverse(const TorusPoint& x, const PhasePair& w, double K) {
  const double x2_prev = wrap_2pi(x.x2 - x.x1 + w.w2);
  const double x1_prev = wrap_2pi(x.x1 - K * std::sin(x2_prev - w.w1));
  return {x1_prev, x2_prev};
}

// Lifted (unwrapped) variants on R^2, used where difference quotients or
// difference recursions must never cross a wrap.
struct LiftedPoint {
  double x1 = 0.0;
  double x2 = 0.0;
};

inline LiftedPoint lifted_step(const LiftedPoint& x, const PhasePair& w, double K) {
  const double x1 = x.x1 + K * std::sin(x.x2 - w.w1);
  return {x1, x.x2 + x1 - w.w2};
}
inline LiftedPoint lifted_inverse(const LiftedPoint& x, const PhasePair& w, double K) {
  const double x2 = x.x2 - x.x1 + w.w2;
  return {x.x1 - K * std::sin(x2 - w.w1), x2};
}
inline Mat2 lifted_jacobian(const LiftedPoint& x, const PhasePair& w, double K) {
  const double h = K * std::cos(x.x2 - w.w1);
  return {1.0, h, 1.0, 1.0 + h};
}

// ---- Alternating-sine (Pierrehumbert) interface ---------------------------

inline TorusPoint p_step(const TorusPoint& x, const PhasePair& w, double A) {
  return shear_step<SineProfile>(x, w, A);
}
inline Mat2 p_jacobian(const TorusPoint& x, const PhasePair& w, double A) {
  return shear_jacobian<SineProfile>(x, w, A);
}

}  // namespace cmix
