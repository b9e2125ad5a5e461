#pragma once
// Monte Carlo estimators: uniform tangent contraction, pair-separation drift,
// derivative growth envelopes, and Lyapunov exponents.
//
// Every estimator is a pure function of its configuration: per-cell/per-orbit
// substreams and fixed-block accumulation make results independent of the
// worker count. OpenMP-parallel entry points have serial reference
// counterparts (identical arithmetic, no threading) used by tests and the
// benchmark tool.
#include <cstddef>
#include <vector>

#include "cmix/processes.hpp"

namespace cmix {

struct McConfig {
  std::size_t samples = 100000;
  RngStreamSpec stream;
  std::size_t grid_x = 32;  // grid over initial x2
  std::size_t grid_v = 32;  // grid over initial tangent directions
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

struct ContractionReport {
  double amplitude = 0.0;  // kick strength (or shear amplitude)
  double p = 0.0;
  int m = 2;  // number of composed steps inside the expectation
  Estimate worst_estimate;       // sup over the (x2, v) grid
  std::size_t worst_cell = 0;
  std::vector<Estimate> per_cell;  // row-major [grid_x][grid_v]
};

// Sup over an (x2, direction) grid of the m-step Monte Carlo estimate of
// E ||J_m ... J_1 v||^{-p} for the standard map (m = 2).
ContractionReport contraction_estimate(double K, double p, const McConfig& cfg);
ContractionReport contraction_estimate_serial(double K, double p, const McConfig& cfg);

// One-step (m = 1) analogue for the alternating-sine model.
ContractionReport p_contraction_estimate(double A, double p, const McConfig& cfg);
ContractionReport p_contraction_estimate_serial(double A, double p, const McConfig& cfg);

// Monte Carlo estimate of E[ dist(pair after two periods)^{-p} ] from z.
Estimate drift_check(double K, double p, const TwoPointState& z, const McConfig& cfg);
Estimate drift_check_serial(double K, double p, const TwoPointState& z, const McConfig& cfg);

struct AprioriReport {
  std::vector<double> K_values;
  // Max observed operator norms over random (pair, phases), per K.
  std::vector<double> max_first_z;   // derivative in the pair coordinates
  std::vector<double> max_first_w;   // derivative in any single phase pair
  std::vector<double> max_second;    // largest second-derivative norm (all blocks)
  // log-log least-squares growth exponents across the K sweep.
  double exponent_first_z = 0.0;
  double exponent_first_w = 0.0;
  double exponent_second = 0.0;
};

// Finite-difference envelopes for the derivative growth of the n-period pair
// map across a K sweep; exponents are expected near n (first derivatives) and
// at most 2n+1 (second derivatives).
AprioriReport apriori_bound_check(int n, const std::vector<double>& K_values, const McConfig& cfg);

struct LyapunovReport {
  Estimate lambda1;  // nats per map application
  std::size_t n_steps = 0;
  std::size_t n_orbits = 0;
};

LyapunovReport lyapunov_exponent(double K, std::size_t n_steps, std::size_t n_orbits,
                                 RngStreamSpec stream);
LyapunovReport lyapunov_exponent_serial(double K, std::size_t n_steps, std::size_t n_orbits,
                                        RngStreamSpec stream);

struct RateFit {
  double rate = 0.0;  // minus the slope of the log-linear fit
  double r_squared = 0.0;
};

// Least-squares line through (n, log value); requires >= 5 positive points.
RateFit fit_exponential_rate(const std::vector<std::pair<double, double>>& series);

}  // namespace cmix
