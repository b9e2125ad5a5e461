#pragma once
// Closed-form reference Jacobians for the structural checks, transcribed from
// hand differentiation of the composed shear dynamics at the distinguished
// base points.  The library computes the same matrices from the dynamics
// (chain rule / finite differences); tests compare the two entrywise.
#include <Eigen/Dense>
#include <cmath>

namespace fixtures {

// Derivative in (w1, w2) of one step at x = (0,0), w = (0,0).
inline Eigen::MatrixXd one_step_phase_jacobian(double K) {
  Eigen::MatrixXd m(2, 2);
  m << -K, 0.0, -K, -1.0;
  return m;
}

// Derivative in the four phase components of the two-step projective map
// (position then renormalized direction) at x = (0,0), v = (1,0),
// phases ((0,0),(pi/2,0)).
inline Eigen::MatrixXd projective_two_step_jacobian(double K) {
  const double s = 5.0 * std::sqrt(5.0);
  Eigen::MatrixXd m(4, 4);
  m << -K, 0.0, 0.0, 0.0,                                //
      -2.0 * K, -1.0, 0.0, -1.0,                         //
      -2.0 * K * K / s, -2.0 * K / s, -2.0 * K / s, 0.0, //
      K * K / s, K / s, K / s, 0.0;
  return m;
}

// Derivative in the six phase components of the three-step pair map at
// ((0,0),(pi,pi)) with zero phases.
inline Eigen::MatrixXd pair_three_step_jacobian(double K) {
  Eigen::MatrixXd m(4, 6);
  m << -K * (K * K + 3.0 * K + 1.0), -K * (K + 2.0), -K * (K + 1.0), -K, -K, 0.0,  //
      -K * (K * K + 4.0 * K + 3.0), -(K * K + 3.0 * K + 1.0), -K * (K + 2.0), -K - 1.0, -K,
      -1.0,                                                                        //
      -K * (K * K + K - 1.0), K * K, (K - 1.0) * K, K, K, 0.0,                     //
      -K * (K * K - 3.0), K * K - K - 1.0, (K - 2.0) * K, K - 1.0, K, -1.0;
  return m;
}

// Derivative in the eight phase components of the four-step position map at
// x = (pi/2, pi) with phases (0, pi/2-1), (pi/2+1, pi/2+K), (pi/2+1, pi/2+2K),
// (pi/2+1, pi/2+3K).
inline Eigen::MatrixXd position_four_step_jacobian(double K) {
  Eigen::MatrixXd m(2, 8);
  m << K, 0, 0, 0, 0, 0, 0, 0,  //
      4.0 * K, -1.0, 0.0, -1.0, 0.0, -1.0, 0.0, -1.0;
  return m;
}

// Basis of the kernel of position_four_step_jacobian (8x6).
inline Eigen::MatrixXd position_kernel_basis() {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(8, 6);
  k(1, 1) = k(1, 3) = k(1, 5) = -1.0;
  for (int j = 0; j < 6; ++j) k(2 + j, j) = 1.0;
  return k;
}

// Derivative of the flattened 4-step derivative cocycle (row-major
// (m11, m12, m21, m22)) in the eight phase components, same base point.
inline Eigen::MatrixXd cocycle_four_step_jacobian(double K) {
  Eigen::MatrixXd m(4, 8);
  m << -14.0 * K * K, 6.0 * K, K, 5.0 * K, 2.0 * K, 3.0 * K, 3.0 * K, 0.0,  //
      2.0 * K * K * (7.0 * K - 3.0), 3.0 * K * (1.0 - 2.0 * K), K * (1.0 - K),
      K * (2.0 - 5.0 * K), K * (1.0 - 2.0 * K), K * (1.0 - 3.0 * K), K * (1.0 - 3.0 * K),
      0.0,                                                                  //
      -20.0 * K * K, 10.0 * K, 3.0 * K, 7.0 * K, 4.0 * K, 3.0 * K, 3.0 * K, 0.0,  //
      10.0 * K * K * (2.0 * K - 1.0), 2.0 * K * (3.0 - 5.0 * K), 3.0 * K * (1.0 - K),
      K * (3.0 - 7.0 * K), 2.0 * K * (1.0 - 2.0 * K), K * (1.0 - 3.0 * K),
      K * (1.0 - 3.0 * K), 0.0;
  return m;
}

// Product of the cocycle derivative with the kernel basis (4x6), rank 3.
inline Eigen::MatrixXd cocycle_kernel_product(double K) {
  Eigen::MatrixXd m(4, 6);
  m << K, -K, 2.0 * K, -3.0 * K, 3.0 * K, -6.0 * K,  //
      K * (1.0 - K), K * (K - 1.0), K * (1.0 - 2.0 * K), K * (3.0 * K - 2.0),
      K * (1.0 - 3.0 * K), 3.0 * K * (2.0 * K - 1.0),  //
      3.0 * K, -3.0 * K, 4.0 * K, -7.0 * K, 3.0 * K, -10.0 * K,  //
      3.0 * K * (1.0 - K), 3.0 * K * (K - 1.0), 2.0 * K * (1.0 - 2.0 * K),
      K * (7.0 * K - 5.0), K * (1.0 - 3.0 * K), 2.0 * K * (5.0 * K - 3.0);
  return m;
}

}  // namespace fixtures
