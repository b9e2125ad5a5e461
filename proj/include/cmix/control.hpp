#pragma once
// Constructive controllability drivers for the randomized standard map:
// exact one-step control of a single point, steering of a pair of points into
// an aligned translating family and on to an arbitrary target, and
// approximate steering of the projectivized (position, direction) chain.
//
// Each driver returns the explicit phase sequence it constructed; the reported
// final distance is obtained by replaying that sequence through the ordinary
// wrapped dynamics, so callers can reproduce it bitwise.
#include <cstddef>

#include "cmix/processes.hpp"

namespace cmix {

struct ControlResult {
  PhaseSequence phases;
  std::size_t steps = 0;  // == phases.size()
  double final_distance = 0.0;
  double target_tolerance = 0.0;
  bool success = false;
  // Diagnostics.
  std::size_t dwell_steps = 0;       // dense-rotation steps spent waiting
  double lipschitz_estimate = 1.0;   // empirical bound used for the sub-tolerance
  std::size_t budget = 0;            // step budget the driver enforced
};

// The aligned translating family: pairs (x, y) with equal first coordinates,
// x2 = 0, y2 = xbar2, where K cos(xbar2 / 2) = -2 sqrt(2) pi.  Solvable iff
// K >= 2 sqrt(2) pi; the principal branch takes xbar2 in (pi, 2pi).
struct AlignedPairTarget {
  double xbar1 = 0.0;
  double xbar2 = 0.0;
  static AlignedPairTarget resolve(double K, double xbar1 = 0.0, bool principal = true);
  // |K cos(xbar2/2) + 2 sqrt(2) pi|
  double constraint_residual(double K) const;
};

// Exact one-step control: the unique-phase recipe sin(x2 - w1) = (y1 - x1)/K,
// w2 = x2 + y1 - y2.  Throws std::domain_error when the required horizontal
// displacement exceeds K (unreachable in one step).
PhasePair one_point_exact(const TorusPoint& x, const TorusPoint& y, double K);

// Drive the pair z into the aligned family (a = 0, x2 = 0, y2 = xbar2).
// Requires K >= 4 pi and z off-diagonal.  final_distance is the largest of the
// three alignment residuals; tolerance 1e-10.
ControlResult two_point_align(const TwoPointState& z, double K);

// Full pair-to-pair steering within eps: align, dwell on the translating
// family (whose first coordinate advances by the irrational increment
// 2 sqrt(2) pi per step), then replay a backward-constructed tail that
// carries the aligned family onto the target.
ControlResult two_point_reach(const TwoPointState& z, const TwoPointState& target, double eps,
                              double K);

// Deterministic step bound floor(pi/s) + floor(12 pi/eps) + 4 with the
// caller's separation scale and tolerance substituted into the two slots.
std::size_t reachability_bound(double s, double eps);

// Approximate steering of the (position, unit tangent) chain within eps
// (max of torus distance and Euclidean distance of the direction vectors).
ControlResult projective_steer(const ProjectiveState& s, const ProjectiveState& target,
                               double eps, double K);

}  // namespace cmix
