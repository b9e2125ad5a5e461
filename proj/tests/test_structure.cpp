#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmix/structure.hpp"
#include "fixtures.hpp"

using namespace cmix;

namespace {
constexpr double kPiL = 3.141592653589793238462643383279;

double max_rel_error(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
  return (got - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("four-step phase determinant equals 12 K^4") {
  for (double K : {10.0, 4.0 * kPiL, 100.0}) {
    const auto chain = det_xi_phi8(K);
    CHECK_MESSAGE(chain.rel_error <= 1e-6, "chain rule at K=", K);
    CHECK(chain.expected == doctest::Approx(12.0 * K * K * K * K));
    const auto fd = det_xi_phi8_fd(K);
    CHECK_MESSAGE(fd.rel_error <= 1e-5, "finite differences at K=", K);
  }
}

TEST_CASE("one-step submersion: rank 2 and closed-form entries") {
  for (double K : {10.0, 4.0 * kPiL, 100.0}) {
    const auto r = one_point_submersion(K);
    CHECK(r.rank_at_tol == 2);
    CHECK(max_rel_error(r.matrix, fixtures::one_step_phase_jacobian(K)) < 1e-6);
  }
}

TEST_CASE("projective two-step submersion: rank 3 and closed-form entries") {
  for (double K : {10.0, 4.0 * kPiL, 100.0}) {
    const auto r = projective_submersion(K);
    CHECK(r.rank_at_tol == 3);
    CHECK(max_rel_error(r.matrix, fixtures::projective_two_step_jacobian(K)) < 1e-6);
  }
}

TEST_CASE("pair submersion: full rank at three steps, deficient at two") {
  for (double K : {10.0, 4.0 * kPiL, 100.0}) {
    const auto r3 = two_point_submersion(K, 3);
    CHECK(r3.rank_at_tol == 4);
    CHECK(max_rel_error(r3.matrix, fixtures::pair_three_step_jacobian(K)) < 1e-6);
    CHECK(two_point_submersion(K, 2).rank_at_tol < 4);
  }
}

TEST_CASE("rank calls are stable across the tolerance window") {
  // Below 1e-8 the finite-difference noise floor of the structurally zero
  // directions comes into play, so the window starts at the default.
  for (double K : {10.0, 4.0 * kPiL, 100.0}) {
    for (double tol : {1e-8, 1e-7, 1e-6}) {
      CHECK(one_point_submersion(K, tol).rank_at_tol == 2);
      CHECK(projective_submersion(K, tol).rank_at_tol == 3);
      CHECK(two_point_submersion(K, 3, tol).rank_at_tol == 4);
    }
  }
}

TEST_CASE("surjectivity behind Lyapunov positivity") {
  for (double K : {10.0, 4.0 * kPiL, 100.0}) {
    const auto rep = lyapunov_surjectivity(K);
    CHECK(rep.position.rank_at_tol == 2);
    CHECK(rep.cocycle_product.rank_at_tol == 3);
    CHECK(max_rel_error(rep.position.matrix, fixtures::position_four_step_jacobian(K)) < 1e-6);
    CHECK(max_rel_error(rep.cocycle, fixtures::cocycle_four_step_jacobian(K)) < 1e-6);
    CHECK(max_rel_error(rep.cocycle_product.matrix, fixtures::cocycle_kernel_product(K)) < 1e-6);
    // The kernel basis really annihilates the position derivative.
    CHECK(rep.kernel_residual < 1e-6 * K);
    CHECK((fixtures::position_four_step_jacobian(K) * fixtures::position_kernel_basis())
              .cwiseAbs()
              .maxCoeff() == doctest::Approx(0.0));
  }
}

TEST_CASE("zero-phase fixed points and the expanding direction") {
  for (double K : {5.0, 10.0, 100.0}) {
    const auto fp = fixed_point_suite(K);
    CHECK(fp.pass);
    CHECK(fp.one_point_residual <= 1e-10);
    CHECK(fp.pair_residual <= 1e-10);
    CHECK(fp.v_norm_error <= 1e-10);
    CHECK(fp.eigen_residual <= 1e-10);
    CHECK(fp.lambda == doctest::Approx((2.0 + K + std::sqrt(K * K + 4.0 * K)) / 2.0));
    CHECK(fp.lambda > 1.0);
  }
}

TEST_CASE("small-set constants on the log scale") {
  const auto unit = smallset_constants(1.0);
  CHECK(unit.log10_minorization == 0.0);
  CHECK(unit.log10_total_mass == 0.0);
  const auto t = smallset_constants(10.0);
  CHECK(t.log10_minorization == doctest::Approx(-764.0));
  CHECK(t.log10_radius_center == doctest::Approx(-130.0));
  CHECK(t.log10_radius_mass == doctest::Approx(-55.0));
  CHECK(t.log10_mass_density == doctest::Approx(-288.0));
  CHECK(t.log10_total_mass == doctest::Approx(-780.0));
  CHECK_THROWS_AS(smallset_constants(0.5), std::invalid_argument);
}

TEST_CASE("rank_report basic behaviour") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-12;
  const auto r = rank_report(m);
  CHECK(r.rank_at_tol == 1);
  CHECK(r.singular_values.size() == 3);
  CHECK(r.singular_values[0] == doctest::Approx(1.0));
}
