#pragma once
// Quadrature for the singular circle integral  I(a,b,p) = ∫_0^{2pi} |a + b cos t|^{-p} dt,
// 0 < p < 1/2.  The integrand has integrable power-law singularities wherever
// a + b cos t = 0; the domain is split at the roots and a power-law substitution
// removes each singularity exactly before a smooth midpoint rule is applied.
#include <vector>

namespace cmix {

// Adaptive evaluation; absolute error <= 1e-8 (each desingularized half-panel
// is refined until successive midpoint refinements agree to 1e-10).
// Throws std::invalid_argument for b == 0 or p outside (0, 1/2).
double singular_cos_integral(double a, double b, double p);

struct ClaimProbeResult {
  double c_p = 0.0;           // max over the grid of I(a,b,p) * |b|^p
  double argmax_ratio = 0.0;  // a/b ratio attaining the max
};

// Empirical bound constant for the singular integral: sweeps a/b over `ratios`
// (with b = 1) and reports the largest scale-invariant value I(r,1,p).
ClaimProbeResult claim_constant_probe(double p, const std::vector<double>& ratios);

}  // namespace cmix
