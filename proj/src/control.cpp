#include "cmix/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmix {
namespace {

constexpr double kIncrement = 2.0 * 1.4142135623730951 * kPi;  // 2 sqrt(2) pi

double pair_distance(const TwoPointState& a, const TwoPointState& b) {
  return std::max(torus_dist(a.x, b.x), torus_dist(a.y, b.y));
}

// ---- forward pair driver ---------------------------------------------------
//
// Evolves the wrapped pair with chirikov_step (bitwise identical to
// iterate_two_point) while maintaining additive lifted shadows of the
// difference coordinates a = y1 - x1 and of both second coordinates.  The
// shadows receive exactly the increments the wrapped dynamics applies, so they
// track the wrapped trajectory with no exponential divergence, and their
// common lift frame makes the half-angle recursion
//   a' = a + 2 K c sin(b/2),  b' = b + a'   (c = cos(midpoint - w1))
// valid for control decisions.
struct PairDriver {
  double K = 0.0;
  TwoPointState z;
  double x2l = 0.0, y2l = 0.0;  // lifted shadows of x2, y2
  double al = 0.0;              // lifted shadow of y1 - x1
  PhaseSequence phases;

  void init(const TwoPointState& z0, double kick) {
    K = kick;
    z = z0;
    x2l = z0.x.x2;
    y2l = z0.y.x2;
    al = z0.y.x1 - z0.x.x1;
  }

  double b() const { return y2l - x2l; }

  void apply(PhasePair w) {
    w = {wrap_2pi(w.w1), wrap_2pi(w.w2)};
    const double dx1 = K * std::sin(z.x.x2 - w.w1);
    const double dy1 = K * std::sin(z.y.x2 - w.w1);
    const double xmid = wrap_2pi(z.x.x1 + dx1);
    const double ymid = wrap_2pi(z.y.x1 + dy1);
    x2l += xmid - w.w2;
    y2l += ymid - w.w2;
    al += dy1 - dx1;
    z = {chirikov_step(z.x, w, K), chirikov_step(z.y, w, K)};
    phases.push_back(w);
  }

  // Controlled step: w1 realizes cos(midpoint - w1) = c on the chosen branch;
  // w2 pins the next x2 to (numerically) zero.
  void control(double c, double midpoint, bool positive_branch) {
    const double theta = std::acos(std::clamp(c, -1.0, 1.0));
    const double w1 = positive_branch ? midpoint - theta : midpoint + theta;
    const double xmid = wrap_2pi(z.x.x1 + K * std::sin(z.x.x2 - wrap_2pi(w1)));
    apply({w1, z.x.x2 + xmid});
  }
};

// Drive the pair into the aligned family.  Returns false on budget
// exhaustion.  On success: a = 0 (mod 2pi), x2 = 0, y2 = xbar2 (mod 2pi),
// all within ~1e-12.
bool align_pair(PairDriver& d, double xbar2, std::size_t budget) {
  const double K = d.K;
  std::size_t guard = 0;
  // Escape phase: grow |sin(b/2)| until the direct two-step branch applies.
  while (2.0 * K * std::abs(std::sin(0.5 * d.b())) <= kTwoPi) {
    if (++guard > budget) return false;
    const double reach = 2.0 * K * std::abs(std::sin(0.5 * d.b()));
    double c = 0.0;  // pure walk: b increases by the constant a each step
    if (reach >= 0.6) {
      // Jump a toward (pi - b) so the next b lands near pi.
      const double da =
          std::clamp(wrap_pm((kPi - d.b()) - d.al), -0.95 * reach, 0.95 * reach);
      c = da / (2.0 * K * std::sin(0.5 * d.b()));
    }
    d.control(c, 0.5 * (d.x2l + d.y2l), true);
  }
  // Direct branch: two exact steps set b = xbar2 then a = 0 (mod 2pi).
  {
    const double da = wrap_pm(xbar2 - d.b() - d.al);
    const double c = da / (2.0 * K * std::sin(0.5 * d.b()));
    d.control(c, 0.5 * (d.x2l + d.y2l), true);
  }
  {
    const double da = kTwoPi * std::round(d.al / kTwoPi) - d.al;
    const double c = da / (2.0 * K * std::sin(0.5 * d.b()));
    if (std::abs(c) > 1.0) return false;
    d.control(c, 0.5 * (d.x2l + d.y2l), true);
  }
  return true;
}

double alignment_residual(const TwoPointState& z, double xbar2) {
  return std::max({std::abs(wrap_pm(z.y.x1 - z.x.x1)), std::abs(wrap_pm(z.x.x2)),
                   std::abs(wrap_pm(z.y.x2 - xbar2))});
}

// ---- backward pair steering ------------------------------------------------
//
// Steers the TARGET pair backward (inverse dynamics, lifted arithmetic) into
// the aligned family.  The stored phases, replayed forward in reverse order,
// carry the aligned family onto the target; the forward Jacobian product
// along that replay bounds its error amplification.
struct BackwardTail {
  PhaseSequence phases;  // in the order they were applied backward
  LiftedPoint x, y;      // the aligned-family preimage
  double lipschitz = 1.0;
  bool ok = false;
};

BackwardTail steer_pair_back(const TwoPointState& target, double xbar2, double K) {
  BackwardTail tail;
  LiftedPoint x{target.x.x1, target.x.x2}, y{target.y.x1, target.y.x2};

  // One inverse step; w2 pins the previous x2 to zero, w1 realizes
  // cos(midpoint - w1) = c.  Inverse recursion: b' = b - a, a' = a - 2Kc sin(b'/2).
  auto back = [&](double c) {
    const double w2 = 0.0 - x.x2 + x.x1;
    const double x2p = x.x2 - x.x1 + w2;
    const double y2p = y.x2 - y.x1 + w2;
    const double m = 0.5 * (x2p + y2p);
    const double w1 = m - std::acos(std::clamp(c, -1.0, 1.0));
    const PhasePair w{w1, w2};
    x = lifted_inverse(x, w, K);
    y = lifted_inverse(y, w, K);
    tail.phases.push_back(w);
  };

  for (int it = 0; it < 60; ++it) {
    const double a = y.x1 - x.x1;
    const double b1 = (y.x2 - x.x2) - a;  // b after the next (forced) inverse step
    const double reach = 2.0 * K * std::abs(std::sin(0.5 * b1));
    if (reach >= kPi) break;
    double c = 0.0;
    if (reach >= 0.6) {
      const double da = std::clamp(wrap_pm((b1 - kPi) - a), -0.95 * reach, 0.95 * reach);
      c = -da / (2.0 * K * std::sin(0.5 * b1));
    }
    back(c);
  }
  {
    const double a = y.x1 - x.x1;
    const double b1 = (y.x2 - x.x2) - a;
    if (2.0 * K * std::abs(std::sin(0.5 * b1)) < kPi) return tail;  // ok = false
    const double da = wrap_pm((b1 - xbar2) - a);
    back(-da / (2.0 * K * std::sin(0.5 * b1)));
  }
  {
    const double a = y.x1 - x.x1;
    const double b2 = (y.x2 - x.x2) - a;
    const double c = -wrap_pm(-a) / (2.0 * K * std::sin(0.5 * b2));
    if (std::abs(c) > 1.0) return tail;
    back(c);
  }
  // Preimage must sit on the aligned family.
  if (std::abs(wrap_pm(x.x2)) > 1e-8 || std::abs(wrap_pm(y.x2 - xbar2)) > 1e-8 ||
      std::abs(wrap_pm(y.x1 - x.x1)) > 1e-8)
    return tail;

  // Error amplification of the forward replay: Jacobian products along both
  // components of the tail trajectory.
  Mat2 Jx = Mat2::identity(), Jy = Mat2::identity();
  LiftedPoint xx = x, yy = y;
  for (auto it = tail.phases.rbegin(); it != tail.phases.rend(); ++it) {
    Jx = lifted_jacobian(xx, *it, K) * Jx;
    Jy = lifted_jacobian(yy, *it, K) * Jy;
    xx = lifted_step(xx, *it, K);
    yy = lifted_step(yy, *it, K);
  }
  tail.lipschitz = std::max({Jx.op_norm(), Jy.op_norm(), 1.0});
  tail.x = x;
  tail.y = y;
  tail.ok = true;
  return tail;
}

ControlResult finish_pair(const PairDriver& d, const TwoPointState& target, double eps,
                          bool success, std::size_t dwell, double lips, std::size_t budget) {
  ControlResult r;
  r.phases = d.phases;
  r.steps = d.phases.size();
  r.final_distance = pair_distance(d.z, target);
  r.target_tolerance = eps;
  r.dwell_steps = dwell;
  r.lipschitz_estimate = lips;
  r.budget = budget;
  r.success = success && r.final_distance < eps && r.steps <= budget;
  return r;
}

}  // namespace

AlignedPairTarget AlignedPairTarget::resolve(double K, double xbar1, bool principal) {
  if (!(K >= kIncrement))
    throw std::domain_error("AlignedPairTarget: requires K >= 2 sqrt(2) pi");
  AlignedPairTarget t;
  t.xbar1 = xbar1;
  const double half = std::acos(-kIncrement / K);  // in (pi/2, pi]
  t.xbar2 = principal ? 2.0 * half : 4.0 * kPi - 2.0 * half;
  return t;
}

double AlignedPairTarget::constraint_residual(double K) const {
  return std::abs(K * std::cos(0.5 * xbar2) + kIncrement);
}

PhasePair one_point_exact(const TorusPoint& x, const TorusPoint& y, double K) {
  const double d1 = wrap_pm(y.x1 - x.x1);
  if (std::abs(d1) > K)
    throw std::domain_error("one_point_exact: horizontal displacement exceeds K");
  const double w1 = wrap_2pi(x.x2 - std::asin(std::clamp(d1 / K, -1.0, 1.0)));
  const double w2 = wrap_2pi(x.x2 + y.x1 - y.x2);
  return {w1, w2};
}

ControlResult two_point_align(const TwoPointState& z, double K) {
  const AlignedPairTarget t = AlignedPairTarget::resolve(K);
  const double sep = z.separation();
  PairDriver d;
  d.init(z, K);
  const std::size_t budget =
      sep > 0.0 ? 4 * (static_cast<std::size_t>(kPi / sep) + 8) : 1;
  const bool ok = sep > 0.0 && align_pair(d, t.xbar2, budget);

  ControlResult r;
  r.phases = d.phases;
  r.steps = d.phases.size();
  r.final_distance = alignment_residual(d.z, t.xbar2);
  r.target_tolerance = 1e-10;
  r.budget = budget + 2;
  r.success = ok && r.final_distance < r.target_tolerance;
  return r;
}

std::size_t reachability_bound(double s, double eps) {
  if (!(s > 0.0 && eps > 0.0))
    throw std::domain_error("reachability_bound: scales must be positive");
  return static_cast<std::size_t>(kPi / s) + static_cast<std::size_t>(12.0 * kPi / eps) + 4;
}

ControlResult two_point_reach(const TwoPointState& z, const TwoPointState& target, double eps,
                              double K) {
  if (!(eps > 0.0)) throw std::domain_error("two_point_reach: eps must be positive");
  const AlignedPairTarget t = AlignedPairTarget::resolve(K);
  PairDriver d;
  d.init(z, K);

  if (pair_distance(z, target) < eps)
    return finish_pair(d, target, eps, true, 0, 1.0, 1);

  // Backward leg first: it fixes the Lipschitz bound and hence the dwell
  // sub-tolerance.
  const BackwardTail tail = steer_pair_back(target, t.xbar2, K);
  if (!tail.ok) return finish_pair(d, target, eps, false, 0, 1.0, 0);
  const double eps0 = eps / (2.0 * tail.lipschitz);
  const double target_x1 = wrap_2pi(tail.x.x1);

  const double sep = std::max(z.separation(), 1e-6);
  const std::size_t budget = 4 * reachability_bound(sep, eps0);

  if (!align_pair(d, t.xbar2, 4 * (static_cast<std::size_t>(kPi / sep) + 8)))
    return finish_pair(d, target, eps, false, 0, tail.lipschitz, budget);

  // Dwell: hold the aligned family closed-loop (a tiny corrective c each step
  // keeps b = xbar2 and a = 0 against rounding) while x1 advances by the
  // irrational increment 2 sqrt(2) pi until it is eps0-close to the preimage.
  const std::size_t dwell_budget = static_cast<std::size_t>(12.0 * kPi / eps0) + 1;
  std::size_t dwell = 0;
  while (std::abs(wrap_pm(d.z.x.x1 - target_x1)) >= eps0) {
    if (++dwell > dwell_budget)
      return finish_pair(d, target, eps, false, dwell, tail.lipschitz, budget);
    // Renormalize the lift frame of b so the cruise branch (negative acos
    // branch) yields the +2 sqrt(2) pi horizontal increment.
    const double bn = t.xbar2 + wrap_pm(d.b() - t.xbar2);
    const double c =
        wrap_pm(t.xbar2 - bn - d.al) / (2.0 * K * std::sin(0.5 * bn));
    d.control(std::clamp(c, -1.0, 1.0), d.x2l + 0.5 * bn, false);
  }

  // Forward replay of the backward tail.
  for (auto it = tail.phases.rbegin(); it != tail.phases.rend(); ++it) d.apply(*it);
  return finish_pair(d, target, eps, true, dwell, tail.lipschitz, budget);
}

// ---- projective steering ---------------------------------------------------

namespace {

struct ProjectiveTail {
  PhaseSequence phases;  // backward application order
  TorusPoint preimage;   // position whose tangent was aligned to (0, 1)
  double lipschitz = 1.0;
  bool ok = false;
};

// Backward tangent alignment.  The inverse-step tangent update depends only on
// the chosen argument: Dg = [[1+c, -c], [-1, 1]] with c = K cos(arg); the
// position is pinned to x2 = 0 throughout.
ProjectiveTail steer_projective_back(const ProjectiveState& target, double K) {
  ProjectiveTail tail;
  TorusPoint x = target.x;
  TangentVector w = target.v.normalized();

  auto back = [&](double arg) {
    const double w2 = x.x1 - x.x2;  // pins previous x2 to ~0
    const double w1 = 0.0 - arg;    // previous x2 - arg
    const PhasePair ph{w1, w2};
    x = chirikov_inverse(x, ph, K);
    const double c = K * std::cos(arg);
    w = TangentVector{(1.0 + c) * w.v1 - c * w.v2, -w.v1 + w.v2}.normalized();
    tail.phases.push_back(ph);
  };

  if (std::abs(w.v1) < 1e-14 && w.v2 < 0.0) {
    // Exactly (0,-1): a small negative-cosine kick moves w1 off zero.
    back(std::acos(-0.1 / K));
  }
  if (std::abs(w.v1) >= 1e-14) {
    int guard = 0;
    while (w.v1 > 0.0 || !(K * (w.v2 - w.v1) > 0.0 && std::abs(w.v1) <= K * (w.v2 - w.v1))) {
      if (w.v1 > 0.0 && w.v1 + K * (w.v2 - w.v1) < 0.0) {
        back(kPi);  // cos = -1 flip to w1 < 0
      } else {
        back(kPi / 2.0);  // parabolic shear
      }
      if (++guard > 400) return tail;
    }
    // Cosine solve: sends the first tangent coordinate exactly to 0.
    back(std::acos(w.v1 / (K * (w.v2 - w.v1))));
    if (!(std::abs(w.v1) < 1e-10 && w.v2 > 0.0)) return tail;
  }

  // Measured Lipschitz bound of the forward tail map in (x1, direction angle),
  // with a 4x safety factor.  A priori norm products are hopelessly loose here.
  auto replay = [&](double dx1, double dth) {
    ProjectiveState s{{wrap_2pi(x.x1 + dx1), x.x2}, {std::sin(dth), std::cos(dth)}};
    for (auto it = tail.phases.rbegin(); it != tail.phases.rend(); ++it)
      s = projective_step(s, *it, K);
    return s;
  };
  const double h = 1e-7;
  const ProjectiveState base = replay(0.0, 0.0);
  auto diff = [&](const ProjectiveState& a) {
    return std::sqrt(wrap_pm(a.x.x1 - base.x.x1) * wrap_pm(a.x.x1 - base.x.x1) +
                     wrap_pm(a.x.x2 - base.x.x2) * wrap_pm(a.x.x2 - base.x.x2) +
                     (a.v.v1 - base.v.v1) * (a.v.v1 - base.v.v1) +
                     (a.v.v2 - base.v.v2) * (a.v.v2 - base.v.v2));
  };
  tail.lipschitz = 4.0 * std::max({diff(replay(h, 0.0)) / h, diff(replay(0.0, h)) / h, 1.0});
  tail.preimage = x;
  tail.ok = true;
  return tail;
}

double projective_distance(const ProjectiveState& a, const ProjectiveState& b) {
  return std::max(torus_dist(a.x, b.x), std::hypot(a.v.v1 - b.v.v1, a.v.v2 - b.v.v2));
}

}  // namespace

ControlResult projective_steer(const ProjectiveState& s0, const ProjectiveState& target,
                               double eps, double K) {
  if (!(eps > 0.0)) throw std::domain_error("projective_steer: eps must be positive");
  ControlResult r;
  r.target_tolerance = eps;

  ProjectiveState s{s0.x, s0.v.normalized()};
  const ProjectiveState tgt{target.x, target.v.normalized()};
  if (projective_distance(s, tgt) < eps) {
    r.success = true;
    r.final_distance = projective_distance(s, tgt);
    r.budget = 1;
    return r;
  }

  const ProjectiveTail tail = steer_projective_back(tgt, K);
  if (!tail.ok) {
    r.final_distance = projective_distance(s, tgt);
    return r;
  }
  const double eps0 = eps / (2.0 * tail.lipschitz);
  const double xbar1 = tail.preimage.x1;
  const double xbar2 = tail.preimage.x2;
  r.lipschitz_estimate = tail.lipschitz;

  auto controlled = [&](double w1) {
    const double w1w = wrap_2pi(w1);
    const double xmid = wrap_2pi(s.x.x1 + K * std::sin(s.x.x2 - w1w));
    const PhasePair w{w1w, wrap_2pi(s.x.x2 + xmid - xbar2)};  // pins x2 to xbar2
    s = projective_step(s, w, K);
    r.phases.push_back(w);
  };

  // Step 1: place the position at the preimage point.
  controlled(s.x.x2 -
             std::asin(std::clamp(wrap_pm(xbar1 - s.x.x1) / K, -1.0, 1.0)));

  // Make the first tangent coordinate positive: parabolic sin = 1 shears until
  // v2 < v1 / K, then one cos = -1 step flips v1 positive.
  int guard = 0;
  while (s.v.v1 <= 0.0) {
    if (s.v.v2 < s.v.v1 / K) {
      controlled(s.x.x2 - kPi);
    } else {
      controlled(s.x.x2 - kPi / 2.0);
    }
    if (++guard > 4000) {
      r.steps = r.phases.size();
      r.final_distance = projective_distance(s, tgt);
      return r;
    }
  }

  // Dwell: sin = 1 shears contract the direction to (0,1) like 1/n while x1
  // advances by K per step; wait until both are eps0/2-close.
  const std::size_t budget =
      static_cast<std::size_t>(4.0 / eps0 + 24.0 * kPi / eps0) + 10;
  r.budget = budget + r.phases.size() + tail.phases.size();
  std::size_t dwell = 0;
  while (std::hypot(s.v.v1, s.v.v2 - 1.0) >= 0.5 * eps0 ||
         std::abs(wrap_pm(s.x.x1 - xbar1)) >= 0.5 * eps0) {
    if (++dwell > budget) {
      r.steps = r.phases.size();
      r.dwell_steps = dwell;
      r.final_distance = projective_distance(s, tgt);
      return r;
    }
    controlled(s.x.x2 - kPi / 2.0);
  }
  r.dwell_steps = dwell;

  // Replay the backward tail forward.
  for (auto it = tail.phases.rbegin(); it != tail.phases.rend(); ++it) {
    s = projective_step(s, *it, K);
    r.phases.push_back(*it);
  }
  r.steps = r.phases.size();
  r.final_distance = projective_distance(s, tgt);
  r.success = r.final_distance < eps && r.steps <= r.budget;
  return r;
}

}  // namespace cmix
