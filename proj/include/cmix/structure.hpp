#pragma once
// Finite-dimensional structural checks for the randomized standard map:
// phase-derivative determinants, submersion ranks of composed maps, the
// surjectivity condition behind Lyapunov positivity, fixed-point residuals,
// and the symbolic small-set constants on a log scale.
//
// Every matrix here is produced by differentiating the actual dynamics
// (chain rule or finite differences on the lifted maps); closed-form
// transcriptions live only in test fixtures.
#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace cmix {

struct RankReport {
  Eigen::MatrixXd matrix;
  std::vector<double> singular_values;  // descending
  std::size_t rank_at_tol = 0;          // # singular values > tol (absolute)
  double tol = 1e-8;
};

struct DetReport {
  double value = 0.0;
  double expected = 0.0;
  double rel_error = 0.0;
};

// Rank of an explicit matrix at an absolute singular-value tolerance.  The
// submersion matrices mix O(K^3) and O(1) rows, so a top-value-relative
// threshold would misclassify structurally nonzero directions at large K.
RankReport rank_report(const Eigen::MatrixXd& m, double tol = 1e-8);

// |det| of the 4x4 partial Jacobian of the four-step pair map, taken in the
// phase components (w1 of step 1, w2 of steps 2..4) at the pair ((0,0),(0,pi))
// with all phases zero; expected value 12 K^4. Chain rule through the
// closed-form step Jacobians.
DetReport det_xi_phi8(double K);
// Same Jacobian by fourth-order central differences on the composed dynamics;
// the step size shrinks with K to keep higher-derivative truncation in check.
DetReport det_xi_phi8_fd(double K);

// 2x2 derivative of one step in its two phases at x = (0,0), w = (0,0);
// full rank 2 for K bounded away from 0.
RankReport one_point_submersion(double K, double tol = 1e-8);

// 4x4 derivative of the two-step projective map (position + direction) in the
// four phase components at x = (0,0), v = (1,0), phases ((0,0),(pi/2,0));
// rank 3 = dim of the projectivized state space.
RankReport projective_submersion(double K, double tol = 1e-8);

// 4x(2n) derivative of the n-step pair map in all phase components at the
// pair ((0,0),(pi,pi)) with zero phases. Full rank 4 for n = 3; the n = 2
// case is rank-deficient.
RankReport two_point_submersion(double K, int n_steps = 3, double tol = 1e-8);

struct SurjectivityReport {
  RankReport position;        // 2x8 derivative of the 4-step position map; rank 2
  RankReport cocycle_product; // 4x6 product M*Kernel; rank 3
  Eigen::MatrixXd cocycle;    // 4x8 derivative of the flattened cocycle matrix
  Eigen::MatrixXd kernel;     // 8x6 basis of ker(position)
  double kernel_residual = 0.0;  // max |position * kernel|
};

// The two rank conditions behind Lyapunov-exponent positivity, at
// x = (pi/2, pi) with the explicit 4-step phase choice; both matrices are
// finite differences through the real dynamics.
SurjectivityReport lyapunov_surjectivity(double K, double tol = 1e-8);

struct FixedPointReport {
  double one_point_residual = 0.0;  // |f_0((0,0)) - (0,0)|
  double pair_residual = 0.0;       // pair ((0,0),(0,pi)) fixed under f_0
  double v_norm_error = 0.0;        // | ||v_*|| - 1 |
  double eigen_residual = 0.0;      // ||J v_* - lambda v_*||
  double lambda = 0.0;              // (2 + K + sqrt(K^2+4K)) / 2
  bool pass = false;                // all residuals within 1e-10
};

// Fixed-point constructions: zero-phase fixed point and fixed pair, and the
// expanding projective fixed direction v_* with its closed-form eigenvalue.
FixedPointReport fixed_point_suite(double K);

struct SmallSetTable {
  double K = 0.0;
  double log10_radius_center = 0.0;   // K^-130 ball around the special pair
  double log10_radius_mass = 0.0;     // K^-55 ball carrying the minorizing mass
  double log10_minorization = 0.0;    // K^-764 small-set constant
  double log10_mass_density = 0.0;    // K^-288 density factor
  double log10_total_mass = 0.0;      // K^-780 combined mass lower bound
  const char* convention = "unit prefactors";
};

// Log-scale values of the symbolic small-set constants (all unnamed
// prefactors set to 1). Requires K >= 1.
SmallSetTable smallset_constants(double K);

}  // namespace cmix
