#include "cmix/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cmix/angle.hpp"

namespace cmix {
namespace {

struct RootInfo {
  std::vector<double> roots;  // locations of a + b cos t = 0 in [0, 2pi]
  int order = 1;              // 1: simple roots; 2: confluent double root (|a| == |b|)
};

RootInfo find_roots(double a, double b) {
  RootInfo info;
  const double ca = -a / b;
  if (std::abs(ca) > 1.0) return info;  // no real roots
  const double r = std::acos(std::clamp(ca, -1.0, 1.0));
  if (std::abs(std::abs(a) - std::abs(b)) < 1e-13 * std::max(std::abs(a), std::abs(b))) {
    info.order = 2;
    if (r > 0.0 && r < kTwoPi)
      info.roots = {r};
    else
      info.roots = {0.0, kTwoPi};  // double root sitting on the periodic seam
  } else {
    info.roots = {r, kTwoPi - r};
  }
  return info;
}

// Integrand at distance d from a root endpoint s (moving in direction sgn),
// evaluated cancellation-free:  a + b cos(s + sgn d) =
//   b * ( cos(s) * (cos d - 1) - sgn * sin(s) * sin d )          [exact at a root]
// with cos(s) = -a/b exactly and sin(s) = 0 exactly for a double root.
// Naive evaluation of cos(s + sgn d) loses d entirely once d < ulp(s) and the
// floating-point residue of sin(pi) biases the closest samples.
struct RootLocalIntegrand {
  double b, p, cos_r, sin_r, sgn;
  double operator()(double d) const {
    const double g = b * (cos_r * (-2.0 * std::sin(0.5 * d) * std::sin(0.5 * d)) -
                          sgn * sin_r * std::sin(d));
    return std::pow(std::abs(g), -p);
  }
};

// Midpoint rule over [0, U] of a smooth function, refined by doubling until two
// successive refinements agree to `tol` (absolute) or the sample cap is hit.
template <class F>
double midpoint_adaptive(const F& f, double U, double tol) {
  std::size_t n = 64;
  auto sum_at = [&](std::size_t m) {
    const double h = U / static_cast<double>(m);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += f((static_cast<double>(i) + 0.5) * h);
    return s * h;
  };
  double prev = sum_at(n);
  for (;;) {
    n *= 2;
    const double cur = sum_at(n);
    if (std::abs(cur - prev) <= tol || n >= (1u << 22)) return cur;
    prev = cur;
  }
}

// Half-panel [s, s + sgn*L] whose endpoint s is a root of order `order`:
// substitute d = u^{1/(1-q)}, q = order*p, which maps the power-law singularity
// to a smooth integrand in u.
double singular_half_panel(double a, double b, double p, double s, double sgn, double L,
                           int order, double tol) {
  const double q = order * p;
  const double a1 = 1.0 - q;
  const double U = std::pow(L, a1);
  const double cos_r = -a / b;
  double sin_r = 0.0;
  if (order == 1) {
    sin_r = std::sqrt(std::max(0.0, 1.0 - cos_r * cos_r));
    if (s > kPi) sin_r = -sin_r;  // the mirror root in (pi, 2pi)
  }
  const RootLocalIntegrand f{b, p, cos_r, sin_r, sgn};
  auto g = [&](double u) {
    const double d = std::pow(u, 1.0 / a1);
    return f(d) * std::pow(u, q / a1) / a1;
  };
  return midpoint_adaptive(g, U, tol);
}

double smooth_half_panel(double a, double b, double p, double s, double sgn, double L,
                         double tol) {
  auto g = [&](double d) { return std::pow(std::abs(a + b * std::cos(s + sgn * d)), -p); };
  return midpoint_adaptive(g, L, tol);
}

}  // namespace

double singular_cos_integral(double a, double b, double p) {
  if (b == 0.0) throw std::invalid_argument("singular_cos_integral: b must be nonzero");
  if (!(p > 0.0 && p < 0.5))
    throw std::invalid_argument("singular_cos_integral: p must lie in (0, 1/2)");

  const RootInfo info = find_roots(a, b);
  std::set<double> edge_set{0.0, kTwoPi};
  for (double r : info.roots) edge_set.insert(r);
  const std::vector<double> edges(edge_set.begin(), edge_set.end());

  auto is_root = [&](double s) {
    for (double r : info.roots)
      if (s == r) return true;
    return false;
  };

  constexpr double kPanelTol = 1e-10;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i], hi = edges[i + 1];
    const double mid = 0.5 * (lo + hi);
    // Each panel is integrated from both ends toward the middle so that a
    // singular endpoint always sits at the origin of its substitution.
    const double half[2][3] = {{lo, +1.0, mid - lo}, {hi, -1.0, hi - mid}};
    for (const auto& h : half) {
      if (is_root(h[0]))
        total += singular_half_panel(a, b, p, h[0], h[1], h[2], info.order, kPanelTol);
      else
        total += smooth_half_panel(a, b, p, h[0], h[1], h[2], kPanelTol);
    }
  }
  return total;
}

ClaimProbeResult claim_constant_probe(double p, const std::vector<double>& ratios) {
  ClaimProbeResult out;
  for (double r : ratios) {
    const double v = singular_cos_integral(r, 1.0, p);
    if (v > out.c_p) {
      out.c_p = v;
      out.argmax_ratio = r;
    }
  }
  return out;
}

}  // namespace cmix
