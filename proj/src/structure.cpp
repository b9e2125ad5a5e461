#include "cmix/structure.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "cmix/maps.hpp"

namespace cmix {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Fourth-order five-point central difference, for K-sensitive compositions.
MatrixXd fd_jacobian4(const std::function<VectorXd(const VectorXd&)>& f, const VectorXd& u0,
                      double h) {
  MatrixXd J(f(u0).size(), u0.size());
  for (Eigen::Index j = 0; j < u0.size(); ++j) {
    VectorXd u = u0;
    u[j] = u0[j] - 2.0 * h;
    const VectorXd fm2 = f(u);
    u[j] = u0[j] - h;
    const VectorXd fm1 = f(u);
    u[j] = u0[j] + h;
    const VectorXd fp1 = f(u);
    u[j] = u0[j] + 2.0 * h;
    const VectorXd fp2 = f(u);
    J.col(j) = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  }
  return J;
}

// Lifted n-step pair map driven by shared phases; state (x1,x2,y1,y2).
VectorXd pair_flow(const VectorXd& z0, const VectorXd& phases, double K) {
  LiftedPoint x{z0[0], z0[1]}, y{z0[2], z0[3]};
  for (Eigen::Index i = 0; i + 1 < phases.size(); i += 2) {
    const PhasePair w{phases[i], phases[i + 1]};
    x = lifted_step(x, w, K);
    y = lifted_step(y, w, K);
  }
  VectorXd out(4);
  out << x.x1, x.x2, y.x1, y.x2;
  return out;
}

// Stencil width for the submersion Jacobians.  The truncation error of the
// fourth-order formula on these compositions grows like K^8 h^4, so the width
// shrinks quadratically with K; roundoff stays negligible at these scales.
double fd_step(double K) { return 1e-5 * std::min(1.0, (10.0 / K) * (10.0 / K)); }

DetReport make_det_report(double value, double expected) {
  DetReport r;
  r.value = value;
  r.expected = expected;
  r.rel_error = std::abs(value - expected) / std::max(std::abs(expected), 1e-300);
  return r;
}

// The distinguished four-step phase configuration for the pair determinant:
// pair ((0,0),(0,pi)), all phases zero, differentiated in
// (w1 of step 1, w2 of step 2, w2 of step 3, w2 of step 4).
struct XiSetup {
  VectorXd z0 = [] {
    VectorXd z(4);
    z << 0.0, 0.0, 0.0, kPi;
    return z;
  }();
  // Embed xi into the full 8-phase vector.
  VectorXd phases(const VectorXd& xi) const {
    VectorXd w = VectorXd::Zero(8);
    w[0] = xi[0];  // step 1, horizontal phase
    w[3] = xi[1];  // step 2, vertical phase
    w[5] = xi[2];
    w[7] = xi[3];
    return w;
  }
};

}  // namespace

RankReport rank_report(const MatrixXd& m, double tol) {
  RankReport rep;
  rep.matrix = m;
  rep.tol = tol;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  const VectorXd sv = svd.singularValues();
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  for (double s : rep.singular_values)
    if (s > tol) ++rep.rank_at_tol;
  return rep;
}

DetReport det_xi_phi8(double K) {
  if (!(K > 0.0)) throw std::invalid_argument("det_xi_phi8: K must be positive");
  const XiSetup setup;
  // Chain rule: propagate D(state)/D(xi) through the closed-form step
  // Jacobians, injecting the direct phase sensitivity at the step where each
  // xi component acts.  d(step)/dw1 = (-Kcos(x2-w1), -Kcos(x2-w1)),
  // d(step)/dw2 = (0, -1).
  LiftedPoint x{setup.z0[0], setup.z0[1]}, y{setup.z0[2], setup.z0[3]};
  MatrixXd D = MatrixXd::Zero(4, 4);
  for (int step = 0; step < 4; ++step) {
    const PhasePair w{0.0, 0.0};
    const Mat2 Jx = lifted_jacobian(x, w, K);
    const Mat2 Jy = lifted_jacobian(y, w, K);
    MatrixXd Dn(4, 4);
    Dn.row(0) = Jx.a * D.row(0) + Jx.b * D.row(1);
    Dn.row(1) = Jx.c * D.row(0) + Jx.d * D.row(1);
    Dn.row(2) = Jy.a * D.row(2) + Jy.b * D.row(3);
    Dn.row(3) = Jy.c * D.row(2) + Jy.d * D.row(3);
    if (step == 0) {
      const double gx = -K * std::cos(x.x2 - w.w1);
      const double gy = -K * std::cos(y.x2 - w.w1);
      Dn.col(0) += (VectorXd(4) << gx, gx, gy, gy).finished();
    } else {
      Dn.col(step) += (VectorXd(4) << 0.0, -1.0, 0.0, -1.0).finished();
    }
    D = Dn;
    x = lifted_step(x, w, K);
    y = lifted_step(y, w, K);
  }
  return make_det_report(std::abs(D.determinant()), 12.0 * std::pow(K, 4));
}

DetReport det_xi_phi8_fd(double K) {
  if (!(K > 0.0)) throw std::invalid_argument("det_xi_phi8_fd: K must be positive");
  const XiSetup setup;
  auto F = [&](const VectorXd& xi) { return pair_flow(setup.z0, setup.phases(xi), K); };
  // Fifth phase-derivatives of the composition grow like a high power of K,
  // so the stencil width must shrink quadratically with K to keep the
  // truncation error of the fourth-order formula under control.
  const double h = 1e-6 * std::min(1.0, (10.0 / K) * (10.0 / K));
  const MatrixXd J = fd_jacobian4(F, VectorXd::Zero(4), h);
  return make_det_report(std::abs(J.determinant()), 12.0 * std::pow(K, 4));
}

RankReport one_point_submersion(double K, double tol) {
  auto F = [&](const VectorXd& w) {
    const LiftedPoint x = lifted_step({0.0, 0.0}, {w[0], w[1]}, K);
    return (VectorXd(2) << x.x1, x.x2).finished();
  };
  return rank_report(fd_jacobian4(F, VectorXd::Zero(2), fd_step(K)), tol);
}

RankReport projective_submersion(double K, double tol) {
  auto F = [&](const VectorXd& u) {
    LiftedPoint x{0.0, 0.0};
    TangentVector v{1.0, 0.0};
    for (int i = 0; i < 2; ++i) {
      const PhasePair w{u[2 * i], u[2 * i + 1]};
      const Mat2 J = lifted_jacobian(x, w, K);
      x = lifted_step(x, w, K);
      v = (J * v).normalized();
    }
    return (VectorXd(4) << x.x1, x.x2, v.v1, v.v2).finished();
  };
  VectorXd u0(4);
  u0 << 0.0, 0.0, kPi / 2.0, 0.0;
  return rank_report(fd_jacobian4(F, u0, fd_step(K)), tol);
}

RankReport two_point_submersion(double K, int n_steps, double tol) {
  VectorXd z0(4);
  z0 << 0.0, 0.0, kPi, kPi;
  auto F = [&](const VectorXd& w) { return pair_flow(z0, w, K); };
  return rank_report(fd_jacobian4(F, VectorXd::Zero(2 * n_steps), fd_step(K)), tol);
}

SurjectivityReport lyapunov_surjectivity(double K, double tol) {
  SurjectivityReport rep;
  const LiftedPoint x0{kPi / 2.0, kPi};
  // Explicit 4-step phase configuration at which both rank conditions hold.
  VectorXd w0(8);
  w0 << 0.0, kPi / 2.0 - 1.0,
      kPi / 2.0 + 1.0, kPi / 2.0 + K,
      kPi / 2.0 + 1.0, kPi / 2.0 + 2.0 * K,
      kPi / 2.0 + 1.0, kPi / 2.0 + 3.0 * K;

  auto position = [&](const VectorXd& w) {
    LiftedPoint x = x0;
    for (int i = 0; i < 4; ++i) x = lifted_step(x, {w[2 * i], w[2 * i + 1]}, K);
    return (VectorXd(2) << x.x1, x.x2).finished();
  };
  auto cocycle = [&](const VectorXd& w) {
    LiftedPoint x = x0;
    Mat2 M = Mat2::identity();
    for (int i = 0; i < 4; ++i) {
      const PhasePair ww{w[2 * i], w[2 * i + 1]};
      M = lifted_jacobian(x, ww, K) * M;
      x = lifted_step(x, ww, K);
    }
    return (VectorXd(4) << M.a, M.b, M.c, M.d).finished();
  };

  const MatrixXd P = fd_jacobian4(position, w0, fd_step(K));
  rep.position = rank_report(P, tol);
  rep.cocycle = fd_jacobian4(cocycle, w0, fd_step(K));

  // Kernel basis of P with phase components 3..8 as free variables: solve the
  // 2x2 system in the first two components for each free direction.
  const MatrixXd head = P.leftCols(2);
  MatrixXd kernel = MatrixXd::Zero(8, 6);
  for (int j = 0; j < 6; ++j) {
    kernel(j + 2, j) = 1.0;
    kernel.block<2, 1>(0, j) = head.colPivHouseholderQr().solve(-P.col(j + 2));
  }
  rep.kernel = kernel;
  rep.kernel_residual = (P * kernel).cwiseAbs().maxCoeff();
  rep.cocycle_product = rank_report(rep.cocycle * kernel, tol);
  return rep;
}

FixedPointReport fixed_point_suite(double K) {
  FixedPointReport rep;
  const PhasePair w0{0.0, 0.0};
  const TorusPoint fx = chirikov_step({0.0, 0.0}, w0, K);
  rep.one_point_residual = torus_dist(fx, {0.0, 0.0});
  const TorusPoint fy = chirikov_step({0.0, kPi}, w0, K);
  rep.pair_residual = std::max(rep.one_point_residual, torus_dist(fy, {0.0, kPi}));

  // Expanding fixed direction of J = [[1,K],[1,1+K]] at the fixed point.
  const double root = std::sqrt(K * K + 4.0 * K);
  rep.lambda = 0.5 * (2.0 + K + root);
  const double norm = std::sqrt(0.5 * (K * K + 2.0 * K + 2.0 - K * root));
  const TangentVector v{0.5 * (-K + root) / norm, 1.0 / norm};
  rep.v_norm_error = std::abs(v.norm() - 1.0);
  const TangentVector Jv = chirikov_jacobian({0.0, 0.0}, w0, K) * v;
  rep.eigen_residual = std::hypot(Jv.v1 - rep.lambda * v.v1, Jv.v2 - rep.lambda * v.v2);

  rep.pass = rep.one_point_residual <= 1e-10 && rep.pair_residual <= 1e-10 &&
             rep.v_norm_error <= 1e-10 && rep.eigen_residual <= 1e-10;
  return rep;
}

SmallSetTable smallset_constants(double K) {
  if (!(K >= 1.0)) throw std::invalid_argument("smallset_constants: K must be at least 1");
  SmallSetTable t;
  t.K = K;
  const double lg = std::log10(K);
  t.log10_radius_center = -130.0 * lg;
  t.log10_radius_mass = -55.0 * lg;
  t.log10_minorization = -764.0 * lg;
  t.log10_mass_density = -288.0 * lg;
  t.log10_total_mass = -780.0 * lg;
  return t;
}

}  // namespace cmix
