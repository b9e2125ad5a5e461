#pragma once
// Iterators for the one-point, two-point, and projective chains and the
// derivative cocycle, all driven by explicit phase sequences.
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cmix/maps.hpp"
#include "cmix/rng.hpp"

namespace cmix {

using PhaseSequence = std::vector<PhasePair>;

struct TwoPointState {
  TorusPoint x;
  TorusPoint y;
  double separation() const { return torus_dist(x, y); }
};

struct ProjectiveState {
  TorusPoint x;
  TangentVector v;  // kept unit-length
};

struct CocycleAccumulator {
  TorusPoint x;
  TangentVector v;  // unit
  double log_norm_sum = 0.0;
};

// n i.i.d. phase pairs, uniform on [0,2pi)^2; pure function of the stream spec.
inline PhaseSequence sample_phases(RngStreamSpec stream, std::size_t n) {
  PhaseStream s(stream);
  PhaseSequence out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(s.phase_pair(i));
  return out;
}

// Trajectory of length n+1; step i applies phases[i] (newest phase last).
inline std::vector<TorusPoint> iterate_one_point(const TorusPoint& x0, const PhaseSequence& phases,
                                                 double K) {
  std::vector<TorusPoint> out;
  out.reserve(phases.size() + 1);
  out.push_back(x0);
  for (const auto& w : phases) out.push_back(chirikov_step(out.back(), w, K));
  return out;
}

struct TwoPointTrajectory {
  std::vector<TwoPointState> states;
  bool separation_underflow = false;  // some iterate came numerically diagonal
};

// Both components driven by the same phases.
inline TwoPointTrajectory iterate_two_point(const TwoPointState& z0, const PhaseSequence& phases,
                                            double K) {
  TwoPointTrajectory out;
  out.states.reserve(phases.size() + 1);
  out.states.push_back(z0);
  for (const auto& w : phases) {
    const TwoPointState& z = out.states.back();
    TwoPointState next{chirikov_step(z.x, w, K), chirikov_step(z.y, w, K)};
    if (next.separation() < 1e-300) out.separation_underflow = true;
    out.states.push_back(next);
  }
  return out;
}

inline ProjectiveState projective_step(const ProjectiveState& s, const PhasePair& w, double K) {
  const Mat2 J = chirikov_jacobian(s.x, w, K);
  return {chirikov_step(s.x, w, K), (J * s.v).normalized()};
}

inline ProjectiveState iterate_projective(const ProjectiveState& s0, const PhaseSequence& phases,
                                          double K) {
  ProjectiveState s = s0;
  for (const auto& w : phases) s = projective_step(s, w, K);
  return s;
}

// Ordered Jacobian product along the trajectory. Entries grow like K^n, so
// long products are refused; use log_norm_growth for long horizons.
inline Mat2 derivative_cocycle(const TorusPoint& x0, const PhaseSequence& phases, double K) {
  if (phases.size() > 60)
    throw std::invalid_argument("derivative_cocycle: phase sequence longer than 60 steps");
  Mat2 M = Mat2::identity();
  TorusPoint x = x0;
  for (const auto& w : phases) {
    M = chirikov_jacobian(x, w, K) * M;
    x = chirikov_step(x, w, K);
  }
  return M;
}

// Renormalized cocycle: returns the final projective state and
// sum_i log ||J_i v_i||, stable for arbitrarily long sequences.
inline std::pair<ProjectiveState, double> log_norm_growth(const TorusPoint& x0,
                                                          const TangentVector& v0,
                                                          const PhaseSequence& phases, double K) {
  CocycleAccumulator acc{x0, v0.normalized(), 0.0};
  for (const auto& w : phases) {
    const Mat2 J = chirikov_jacobian(acc.x, w, K);
    const TangentVector Jv = J * acc.v;
    const double n = Jv.norm();
    acc.log_norm_sum += std::log(n);
    acc.v = {Jv.v1 / n, Jv.v2 / n};
    acc.x = chirikov_step(acc.x, w, K);
  }
  return {ProjectiveState{acc.x, acc.v}, acc.log_norm_sum};
}

}  // namespace cmix
