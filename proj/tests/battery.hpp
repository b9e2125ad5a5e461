#pragma once
// The acceptance battery: fourteen numbered end-to-end criteria covering the
// map kernels, structural checks, estimators, controllers, transport solver,
// and rate arithmetic.  Shared by the standalone acceptance runner and the
// command-line `suite` subcommand ("quick" caps sample counts and horizons).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "cmix/control.hpp"
#include "cmix/estimators.hpp"
#include "cmix/harris.hpp"
#include "cmix/quadrature.hpp"
#include "cmix/report_io.hpp"
#include "cmix/spectral.hpp"
#include "cmix/structure.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

namespace battery {

using namespace cmix;

struct Settings {
  bool quick = false;
  std::uint64_t seed = 20240824;
};

namespace detail {

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

inline double max_rel_error(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
  return (got - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff();
}

using test_oracle::desingularized_midpoint;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

}  // namespace detail

// ---- criterion 1: volume preservation & inverse round trip -----------------
inline CheckResult criterion_volume(const Settings& st) {
  using namespace detail;
  const std::size_t n = st.quick ? 100000 : 1000000;
  double worst_det = 0.0, worst_rt = 0.0;
  for (double K : {4.0 * kPi, 100.0}) {
    PhaseStream ps({st.seed, 101});
    for (std::size_t i = 0; i < n; ++i) {
      const PhasePair xw = ps.phase_pair(2 * i);
      const PhasePair w = ps.phase_pair(2 * i + 1);
      const TorusPoint x{xw.w1, xw.w2};
      worst_det = std::max(worst_det, std::abs(chirikov_jacobian(x, w, K).det() - 1.0));
      worst_rt = std::max(worst_rt, torus_dist(chirikov_inverse(chirikov_step(x, w, K), w, K), x));
    }
  }
  return {"criterion 1 (volume preservation & round trip)",
          worst_det <= 1e-12 && worst_rt <= 1e-12,
          fmt("max |det-1| = %.2e, max round-trip distance = %.2e over %zu samples",
              worst_det, worst_rt, 2 * n)};
}

// ---- criterion 2: four-step phase determinant = 12 K^4 ---------------------
inline CheckResult criterion_determinant(const Settings&) {
  using namespace detail;
  bool ok = true;
  std::string d;
  for (double K : {10.0, 4.0 * kPi, 100.0}) {
    const auto chain = det_xi_phi8(K);
    const auto fd = det_xi_phi8_fd(K);
    ok = ok && chain.rel_error <= 1e-6 && fd.rel_error <= 1e-5;
    d += fmt("K=%.4g: chain %.1e, fd %.1e; ", K, chain.rel_error, fd.rel_error);
  }
  return {"criterion 2 (determinant 12K^4)", ok, d};
}

// ---- criterion 3: submersion ranks & closed-form agreement -----------------
inline CheckResult criterion_ranks(const Settings&) {
  using namespace detail;
  bool ok = true;
  double worst_entry = 0.0;
  for (double K : {10.0, 4.0 * kPi, 100.0}) {
    ok = ok && one_point_submersion(K).rank_at_tol == 2;
    ok = ok && projective_submersion(K).rank_at_tol == 3;
    ok = ok && two_point_submersion(K, 3).rank_at_tol == 4;
    const auto surj = lyapunov_surjectivity(K);
    ok = ok && surj.position.rank_at_tol == 2 && surj.cocycle_product.rank_at_tol == 3;
    worst_entry = std::max(
        {worst_entry,
         max_rel_error(one_point_submersion(K).matrix, fixtures::one_step_phase_jacobian(K)),
         max_rel_error(projective_submersion(K).matrix,
                       fixtures::projective_two_step_jacobian(K)),
         max_rel_error(two_point_submersion(K, 3).matrix, fixtures::pair_three_step_jacobian(K)),
         max_rel_error(surj.position.matrix, fixtures::position_four_step_jacobian(K)),
         max_rel_error(surj.cocycle, fixtures::cocycle_four_step_jacobian(K)),
         max_rel_error(surj.cocycle_product.matrix, fixtures::cocycle_kernel_product(K))});
  }
  ok = ok && worst_entry <= 1e-6;
  return {"criterion 3 (submersion ranks 2/3/4 and 2&3)", ok,
          fmt("ranks as expected, worst entrywise relative error %.2e", worst_entry)};
}

// ---- criterion 4: uniform two-step contraction ------------------------------
inline CheckResult criterion_contraction(const Settings& st) {
  using namespace detail;
  McConfig cfg;
  cfg.samples = st.quick ? 100000 : 1000000;
  cfg.grid_x = cfg.grid_v = 32;
  cfg.stream = {st.seed, 104};
  const auto main = contraction_estimate(100.0, 0.25, cfg);
  const double margin = (0.5 - main.worst_estimate.mean) / main.worst_estimate.std_error;
  bool ok = main.worst_estimate.mean < 0.5 && margin >= 5.0;

  McConfig sweep_cfg;
  sweep_cfg.samples = st.quick ? 20000 : 100000;
  sweep_cfg.grid_x = sweep_cfg.grid_v = 16;
  sweep_cfg.stream = {st.seed, 105};
  std::vector<double> vals;
  for (double K : {50.0, 100.0, 200.0})
    vals.push_back(contraction_estimate(K, 0.25, sweep_cfg).worst_estimate.mean);
  const double scaling = std::pow(4.0, -0.25);
  const double ratio = vals[2] / vals[0];
  ok = ok && vals[0] > vals[1] && vals[1] > vals[2] && ratio > 0.5 * scaling &&
       ratio < 2.0 * scaling;
  return {"criterion 4 (uniform contraction, m = 2)", ok,
          fmt("worst estimate %.4f (%.1f sigma below 0.5); sweep %.3f/%.3f/%.3f, "
              "K^-p consistency ratio %.2f",
              main.worst_estimate.mean, margin, vals[0], vals[1], vals[2], ratio / scaling)};
}

// ---- criterion 5: singular claim integral -----------------------------------
inline CheckResult criterion_quadrature(const Settings& st) {
  using namespace detail;
  PhaseStream ps({st.seed, 106});
  const std::size_t oracle_points = st.quick ? 1000000 : 10000000;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PhasePair u = ps.phase_pair(static_cast<std::uint64_t>(i));
    const double a = (u.w1 / kPi - 1.0) * 2.5;
    const double sign = u.w2 > kPi ? 1.0 : -1.0;
    const double b = sign * (0.3 + 1.2 * std::fmod(u.w2, 1.0));
    const double got = singular_cos_integral(a, b, 0.25);
    worst = std::max(worst, std::abs(got - desingularized_midpoint(a, b, 0.25, oracle_points)));
  }
  std::vector<double> ratios;
  for (double r = 0.0; r <= 3.0; r += 0.01) ratios.push_back(r);
  const auto probe = claim_constant_probe(0.25, ratios);
  const bool ok = worst <= 1e-6 && std::isfinite(probe.c_p) &&
                  std::abs(std::abs(probe.argmax_ratio) - 1.0) < 0.011;
  return {"criterion 5 (claim integral vs midpoint oracle)", ok,
          fmt("worst |difference| %.2e over 100 cases; probe max %.4f at |a/b| = %.2f", worst,
              probe.c_p, probe.argmax_ratio)};
}

// ---- criterion 6: pair drift inequality -------------------------------------
inline CheckResult criterion_drift(const Settings& st) {
  using namespace detail;
  const double K = 100.0, p = 0.25;
  McConfig cfg;
  cfg.samples = st.quick ? 100000 : 1000000;
  cfg.stream = {st.seed, 107};
  bool ok = true;
  std::string d;
  for (double sep : {1e-3, 1e-2}) {
    const TwoPointState z{{0.4, 1.3}, {0.4, wrap_2pi(1.3 + sep)}};
    const auto est = drift_check(K, p, z, cfg);
    const double v0 = std::pow(sep, -p);
    const double ratio = est.mean / v0, se = est.std_error / v0;
    ok = ok && (ratio + 5.0 * se < 0.9);
    d += fmt("sep %.0e: ratio %.3f+-%.1e; ", sep, ratio, se);
  }
  // Large separation: finite, and below a measured crude expansion bound
  // (sup one-step Jacobian norm over sampled inputs, squared, to the p).
  const TwoPointState far{{0.4, 1.3}, {0.4, wrap_2pi(1.3 + kPi)}};
  const auto est = drift_check(K, p, far, cfg);
  const double ratio_far = est.mean / std::pow(kPi, -p);
  PhaseStream ps({st.seed, 108});
  double lhat = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const PhasePair xw = ps.phase_pair(2 * i);
    lhat = std::max(lhat, chirikov_jacobian({xw.w1, xw.w2}, ps.phase_pair(2 * i + 1), K).op_norm());
  }
  const double crude = std::pow(lhat * lhat, p);
  ok = ok && std::isfinite(est.mean) && ratio_far < crude;
  return {"criterion 6 (drift inequality)", ok,
          d + fmt("sep pi: ratio %.3f < crude bound %.1f", ratio_far, crude)};
}

// ---- criterion 7: controllability -------------------------------------------
inline CheckResult criterion_control(const Settings& st) {
  using namespace detail;
  const double K = 4.0 * kPi, eps = 1e-2;
  const double increment = 2.0 * std::sqrt(2.0) * kPi;
  const int trials = st.quick ? 20 : 100;
  std::mt19937_64 gen(st.seed + 109);
  std::uniform_real_distribution<double> U(0.0, kTwoPi);
  auto pair = [&] {
    TwoPointState z;
    do {
      z = {{U(gen), U(gen)}, {U(gen), U(gen)}};
    } while (z.separation() < 0.1);
    return z;
  };
  int successes = 0, replays = 0;
  double worst_increment = 0.0;
  bool cruise_seen = false;
  for (int t = 0; t < trials; ++t) {
    const TwoPointState z = pair(), target = pair();
    const auto res = two_point_reach(z, target, eps, K);
    if (!res.success || res.steps > res.budget) continue;
    ++successes;
    const auto traj = iterate_two_point(z, res.phases, K);
    const auto& zf = traj.states.back();
    if (std::max(torus_dist(zf.x, target.x), torus_dist(zf.y, target.y)) == res.final_distance)
      ++replays;
    for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
      const auto& a = traj.states[i];
      const auto& b = traj.states[i + 1];
      if (std::abs(wrap_pm(a.x.x2)) < 1e-8 && std::abs(wrap_pm(b.x.x2)) < 1e-8 &&
          std::abs(wrap_pm(a.y.x1 - a.x.x1)) < 1e-8) {
        worst_increment =
            std::max(worst_increment, std::abs(wrap_pm(b.x.x1 - a.x.x1 - increment)));
        cruise_seen = true;
      }
    }
  }
  int proj_successes = 0;
  for (int t = 0; t < trials; ++t) {
    const double a = U(gen), b = U(gen);
    const ProjectiveState s{{U(gen), U(gen)}, {std::cos(a), std::sin(a)}};
    const ProjectiveState target{{U(gen), U(gen)}, {std::cos(b), std::sin(b)}};
    if (projective_steer(s, target, eps, K).success) ++proj_successes;
  }
  const bool ok = successes == trials && replays == trials && cruise_seen &&
                  worst_increment <= 1e-10 && proj_successes >= trials - 1;
  return {"criterion 7 (controllability)", ok,
          fmt("pair %d/%d within budget, %d bitwise replays, cruise increment error %.1e; "
              "projective %d/%d",
              successes, trials, replays, worst_increment, proj_successes, trials)};
}

// ---- criterion 8: inviscid mixing decay -------------------------------------
inline CheckResult criterion_mixing(const Settings& st) {
  using namespace detail;
  DecayExperiment cfg;
  cfg.stream = {st.seed, 110};
  if (st.quick) cfg.steps = 50;
  const auto res = run_decay_experiment(cfg);
  bool ok = res.fits.size() == cfg.realizations;
  double worst_r2 = 1.0, worst_rate = 1e9;
  for (const auto& fit : res.fits) {
    worst_r2 = std::min(worst_r2, fit.r_squared);
    worst_rate = std::min(worst_rate, fit.rate);
  }
  ok = ok && worst_rate > 0.0 && worst_r2 >= 0.9;

  // Duality cross-check: the correlation series read from the pushed-forward
  // mode must match the adjoint (pullback) evaluation to 1e-9.
  GridSpec g{128, true};
  const RngStreamSpec corr_stream{st.seed, 111};
  const auto corr = correlation_decay(4.0 * kPi, 1, 0, 1, 0, 8, 2, g, corr_stream);
  double worst_dual = 0.0;
  for (std::size_t r = 0; r < 2; ++r) {
    const PhaseStream ps(corr_stream.child(r));
    for (std::size_t n = 0; n <= 8; ++n) {
      auto adj = SpectralField::single_mode(g, -1, 0);
      for (std::size_t i = n; i-- > 0;)
        adj = inverse_step_period(adj, ps.phase_pair(i), 4.0 * kPi);
      worst_dual = std::max(
          worst_dual, std::abs(corr.per_realization[r][n] - std::abs(adj.at(1, 0))));
    }
  }
  ok = ok && worst_dual <= 1e-9;
  return {"criterion 8 (mixing decay, K = 4pi)", ok,
          fmt("%zu realizations x %zu periods: worst fit rate %.3f/period, worst R^2 %.3f, "
              "resolution-limited %d, duality gap %.1e",
              cfg.realizations, cfg.steps, worst_rate, worst_r2, int(res.resolution_limited),
              worst_dual)};
}

// ---- criterion 9: enhanced dissipation --------------------------------------
inline CheckResult criterion_dissipation(const Settings& st) {
  using namespace detail;
  bool ok = true;
  std::string d;
  double prev_ratio = 0.0;
  for (double nu : {1e-4, 1e-5}) {
    GridSpec g{256, false};
    auto f = SpectralField::real_mode(g, 1, 0);
    auto l2 = [](const SpectralField& field) {
      double s = 0.0;
      for (const auto& a : field.amp) s += std::norm(a);
      return std::sqrt(s);
    };
    const double l0 = l2(f);
    PhaseStream ps({st.seed, 112});
    const double bare_half_life = std::log(2.0) / (2.0 * nu);  // time units
    std::size_t periods = 0;
    const std::size_t cap = st.quick ? 200 : 2000;
    while (l2(f) > 0.5 * l0 && periods < cap)
      f = step_period(f, ps.phase_pair(periods++), 4.0 * kPi, nu, 8);
    const double measured = 2.0 * static_cast<double>(periods);  // period length 2
    const double ratio = bare_half_life / measured;
    ok = ok && l2(f) <= 0.5 * l0 && measured <= bare_half_life / 10.0 && ratio > prev_ratio;
    prev_ratio = ratio;
    d += fmt("nu=%.0e: half-life %.0f vs bare %.0f (x%.0f); ", nu, measured, bare_half_life,
             ratio);
  }
  return {"criterion 9 (enhanced dissipation)", ok, d};
}

// ---- criterion 10: contraction-constant arithmetic --------------------------
inline CheckResult criterion_harris(const Settings& st) {
  using namespace detail;
  const auto out = harris_constants({0.5, 1.0, 1}, {0.5, 8.0, 1}, 0.25, 0.8);
  bool ok = std::abs(out.beta - 0.25) <= 1e-12 && std::abs(out.alpha_bar - 0.9) <= 1e-12;

  double worst_nested = 0.0;
  for (double K : {10.0, 100.0}) {
    const auto r = chirikov_headline_rates(K, 1.0, 0.25);
    const double lgK = std::log10(K);
    worst_nested =
        std::max(worst_nested, std::abs(r.nested_log10_p_K - (264.0 * lgK + std::log10(lgK))));
  }
  ok = ok && worst_nested <= 1e-9;

  std::mt19937_64 gen(st.seed + 113);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int sweep_ok = 0;
  const int sweep_n = 10000;
  for (int i = 0; i < sweep_n; ++i) {
    const double gamma = 0.02 + 0.96 * U(gen), C = 0.1 + 3.0 * U(gen);
    const double alpha = 0.02 + 0.96 * U(gen);
    const double R = (2.0 * C / (1.0 - gamma)) * (1.01 + 10.0 * U(gen));
    const double g0min = gamma + 2.0 * C / R;
    if (g0min >= 0.999) {
      ++sweep_ok;  // admissible gamma0 interval empty: nothing to verify
      continue;
    }
    const double gamma0 = g0min + (1.0 - g0min) * (0.001 + 0.998 * U(gen));
    const auto h = harris_constants({gamma, C, 1}, {alpha, R, 1},
                                    alpha * (0.001 + 0.998 * U(gen)), gamma0);
    if (h.alpha_bar < 1.0 && h.alpha_bar > 0.0) ++sweep_ok;
  }
  ok = ok && sweep_ok == sweep_n;
  return {"criterion 10 (contraction-constant arithmetic)", ok,
          fmt("hand example beta %.2f alpha_bar %.2f; nested-log error %.1e; sweep %d/%d",
              out.beta, out.alpha_bar, worst_nested, sweep_ok, sweep_n)};
}

// ---- criterion 11: Lyapunov exponent ----------------------------------------
inline CheckResult criterion_lyapunov(const Settings& st) {
  using namespace detail;
  const std::size_t steps = st.quick ? 100000 : 1000000;
  const auto big = lyapunov_exponent(100.0, steps, 64, {st.seed, 114});
  const double oracle = std::log(50.0);
  const auto mid = lyapunov_exponent(4.0 * kPi, steps, 64, {st.seed, 115});
  const bool ok = std::abs(big.lambda1.mean - oracle) <= 0.1 * oracle &&
                  mid.lambda1.mean > 5.0 * mid.lambda1.std_error;
  return {"criterion 11 (Lyapunov exponents)", ok,
          fmt("K=100: %.4f vs log(K/2) = %.4f; K=4pi: %.4f (%.0f sigma above 0)",
              big.lambda1.mean, oracle, mid.lambda1.mean,
              mid.lambda1.mean / mid.lambda1.std_error)};
}

// ---- criterion 12: shear-solver exactness -----------------------------------
inline CheckResult criterion_spectral(const Settings&) {
  using namespace detail;
  GridSpec g{256, false};
  double worst_bessel = 0.0;
  for (double K : {1.0, 4.0, 8.0}) {
    const auto hf = apply_horizontal_shear(SpectralField::single_mode(g, 1, 0), 0.7, K);
    for (int m = -40; m <= 40; ++m) {
      const double jm = std::cyl_bessel_j(std::abs(m), K) * ((m < 0 && (m & 1)) ? -1.0 : 1.0);
      const std::complex<double> want = jm * std::exp(std::complex<double>(0.0, m * 0.7));
      worst_bessel = std::max(worst_bessel, std::abs(hf.at(1, -m) - want));
    }
  }
  const auto v = apply_vertical_shear(SpectralField::single_mode(g, 0, 1), 0.0);
  const bool vertical_exact = std::abs(v.at(-1, 1) - 1.0) == 0.0 && std::abs(v.at(0, 1)) == 0.0;

  PhaseStream ps({3, 0});
  auto f = SpectralField::zero(g);
  for (int k = 1; k <= 12; ++k) f.at(k, -k + 3) = std::polar(1.0 / k, ps.uniform(k));
  auto l2 = [](const SpectralField& field) {
    double s = 0.0;
    for (const auto& a : field.amp) s += std::norm(a);
    return std::sqrt(s);
  };
  const double n0 = l2(f);
  const double l2_err =
      std::max(std::abs(l2(apply_horizontal_shear(f, 0.3, 4.0 * kPi)) - n0),
               std::abs(l2(apply_vertical_shear(f, 1.1)) - n0)) /
      n0;

  const auto base = SpectralField::real_mode(g, 1, 0);
  const PhasePair w{0.3, 1.9};
  const auto c = step_period(base, w, 4.0 * kPi, 1e-3, 4);
  const auto m = step_period(base, w, 4.0 * kPi, 1e-3, 8);
  const auto fine = step_period(base, w, 4.0 * kPi, 1e-3, 16);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t i = 0; i < base.amp.size(); ++i) {
    e1 += std::norm(c.amp[i] - m.amp[i]);
    e2 += std::norm(m.amp[i] - fine.amp[i]);
  }
  const double ratio = std::sqrt(e1 / e2);
  const bool ok =
      worst_bessel <= 1e-10 && vertical_exact && l2_err <= 1e-12 && ratio > 3.5 && ratio < 4.5;
  return {"criterion 12 (shear-solver exactness)", ok,
          fmt("Bessel-coefficient error %.1e; vertical relabel exact %d; L2 drift %.1e; "
              "splitting order ratio %.2f",
              worst_bessel, int(vertical_exact), l2_err, ratio)};
}

// ---- criterion 13: alternating-sine one-step contraction --------------------
inline CheckResult criterion_sine_model(const Settings& st) {
  using namespace detail;
  McConfig cfg;
  cfg.samples = st.quick ? 20000 : 100000;
  cfg.grid_x = cfg.grid_v = 32;
  cfg.stream = {st.seed, 116};
  const auto main = p_contraction_estimate(100.0, 0.25, cfg);
  const double margin = (0.5 - main.worst_estimate.mean) / main.worst_estimate.std_error;
  McConfig sweep_cfg;
  sweep_cfg.samples = st.quick ? 20000 : 100000;
  sweep_cfg.grid_x = sweep_cfg.grid_v = 16;
  sweep_cfg.stream = {st.seed, 117};
  std::vector<double> vals;
  for (double A : {50.0, 100.0, 200.0})
    vals.push_back(p_contraction_estimate(A, 0.25, sweep_cfg).worst_estimate.mean);
  const double scaling = std::pow(4.0, -0.25);
  const double ratio = vals[2] / vals[0];
  const bool ok = main.worst_estimate.mean < 0.5 && margin >= 5.0 && vals[0] > vals[1] &&
                  vals[1] > vals[2] && ratio > 0.5 * scaling && ratio < 2.0 * scaling;
  return {"criterion 13 (alternating-sine contraction)", ok,
          fmt("worst estimate %.4f (%.1f sigma below 0.5); sweep %.3f/%.3f/%.3f, "
              "A^-p consistency ratio %.2f",
              main.worst_estimate.mean, margin, vals[0], vals[1], vals[2], ratio / scaling)};
}

// ---- criterion 14: a priori derivative growth -------------------------------
inline CheckResult criterion_apriori(const Settings& st) {
  using namespace detail;
  McConfig cfg;
  cfg.samples = st.quick ? 16 : 64;
  cfg.stream = {st.seed, 118};
  bool ok = true;
  std::string d;
  for (int n : {1, 2}) {
    const auto rep = apriori_bound_check(n, {10.0, 30.0, 100.0}, cfg);
    const double first_cap = n + 0.2, second_cap = 2 * n + 1.2;
    ok = ok && rep.exponent_first_z <= first_cap && rep.exponent_first_w <= first_cap &&
         rep.exponent_second <= second_cap;
    d += fmt("n=%d: first %.2f/%.2f (cap %.1f), second %.2f (cap %.1f); ", n,
             rep.exponent_first_z, rep.exponent_first_w, first_cap, rep.exponent_second,
             second_cap);
  }
  return {"criterion 14 (a priori derivative growth)", ok, d};
}

inline std::vector<CheckResult> run_battery(const Settings& st, std::ostream* live = nullptr) {
  using Criterion = CheckResult (*)(const Settings&);
  const Criterion criteria[] = {
      criterion_volume,     criterion_determinant, criterion_ranks,      criterion_contraction,
      criterion_quadrature, criterion_drift,       criterion_control,    criterion_mixing,
      criterion_dissipation, criterion_harris,     criterion_lyapunov,   criterion_spectral,
      criterion_sine_model, criterion_apriori};
  std::vector<CheckResult> out;
  for (const auto& c : criteria) {
    detail::Timer timer;
    CheckResult r = c(st);
    r.detail += detail::fmt(" [%.1f s]", timer.seconds());
    if (live)
      (*live) << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " — " << r.detail << "\n"
              << std::flush;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace battery
