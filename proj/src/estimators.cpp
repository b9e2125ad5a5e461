#include "cmix/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace cmix {
namespace {

// ---- deterministic blocked Monte Carlo ------------------------------------
//
// Samples are partitioned into fixed blocks; block partial sums are computed
// independently (possibly in parallel) and combined in index order, so the
// result does not depend on the number of workers.
constexpr std::size_t kBlock = 4096;

template <class SampleFn>
Estimate blocked_mean(std::size_t n, bool parallel, const SampleFn& sample) {
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> sums(n_blocks, 0.0), sqs(n_blocks, 0.0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(lo + kBlock, n);
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double v = sample(i);
      s += v;
      s2 += v * v;
    }
    sums[static_cast<std::size_t>(b)] = s;
    sqs[static_cast<std::size_t>(b)] = s2;
  }
  double sum = 0.0, sq = 0.0;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    sum += sums[b];
    sq += sqs[b];
  }
  const double mean = sum / static_cast<double>(n);
  double var = 0.0;
  if (n > 1) var = std::max(0.0, (sq - static_cast<double>(n) * mean * mean) /
                                     static_cast<double>(n - 1));
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

// ---- tangent contraction ---------------------------------------------------

// E || J_m ... J_1 v ||^{-p} for one (x2, direction) cell.
template <class Jac, class Step>
Estimate contraction_cell(double x2, double theta_v, double p, int m, std::size_t samples,
                          RngStreamSpec cell_stream, const Jac& jac, const Step& step) {
  const PhaseStream ps(cell_stream);
  const TangentVector v0{std::cos(theta_v), std::sin(theta_v)};
  auto sample = [&](std::size_t i) {
    TorusPoint x{0.0, x2};
    TangentVector w = v0;
    for (int k = 0; k < m; ++k) {
      const PhasePair ww = ps.phase_pair(i * static_cast<std::size_t>(m) + static_cast<std::size_t>(k));
      w = jac(x, ww) * w;
      x = step(x, ww);
    }
    const double nsq = w.v1 * w.v1 + w.v2 * w.v2;
    return std::exp(-0.5 * p * std::log(nsq));
  };
  return blocked_mean(samples, /*parallel=*/false, sample);
}

template <class Jac, class Step>
ContractionReport contraction_impl(double amp, double p, int m, const McConfig& cfg, bool parallel,
                                   const Jac& jac, const Step& step) {
  ContractionReport rep;
  rep.amplitude = amp;
  rep.p = p;
  rep.m = m;
  const std::size_t n_cells = cfg.grid_x * cfg.grid_v;
  rep.per_cell.resize(n_cells);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_cells); ++c) {
    const std::size_t i = static_cast<std::size_t>(c) / cfg.grid_v;
    const std::size_t j = static_cast<std::size_t>(c) % cfg.grid_v;
    const double x2 = kTwoPi * static_cast<double>(i) / static_cast<double>(cfg.grid_x);
    const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(cfg.grid_v);
    rep.per_cell[static_cast<std::size_t>(c)] =
        contraction_cell(x2, th, p, m, cfg.samples, cfg.stream.child(static_cast<std::size_t>(c)),
                         jac, step);
  }
  rep.worst_estimate = rep.per_cell[0];
  for (std::size_t c = 1; c < n_cells; ++c)
    if (rep.per_cell[c].mean > rep.worst_estimate.mean) {
      rep.worst_estimate = rep.per_cell[c];
      rep.worst_cell = c;
    }
  return rep;
}

ContractionReport chirikov_contraction(double K, double p, const McConfig& cfg, bool parallel) {
  return contraction_impl(
      K, p, 2, cfg, parallel,
      [K](const TorusPoint& x, const PhasePair& w) { return chirikov_jacobian(x, w, K); },
      [K](const TorusPoint& x, const PhasePair& w) { return chirikov_step(x, w, K); });
}

ContractionReport sine_contraction(double A, double p, const McConfig& cfg, bool parallel) {
  return contraction_impl(
      A, p, 1, cfg, parallel,
      [A](const TorusPoint& x, const PhasePair& w) { return p_jacobian(x, w, A); },
      [A](const TorusPoint& x, const PhasePair& w) { return p_step(x, w, A); });
}

// ---- drift -----------------------------------------------------------------

Estimate drift_impl(double K, double p, const TwoPointState& z, const McConfig& cfg,
                    bool parallel) {
  const PhaseStream ps(cfg.stream);
  auto sample = [&](std::size_t i) {
    TwoPointState zz = z;
    for (std::size_t k = 0; k < 2; ++k) {
      const PhasePair w = ps.phase_pair(2 * i + k);
      zz = {chirikov_step(zz.x, w, K), chirikov_step(zz.y, w, K)};
    }
    return std::pow(zz.separation(), -p);
  };
  return blocked_mean(cfg.samples, parallel, sample);
}

// ---- derivative growth envelopes ------------------------------------------

// Lifted n-period pair map as a function of (z, phases) in R^{4+2n}.
std::array<double, 4> pair_map_lifted(const std::vector<double>& u, int n, double K) {
  LiftedPoint x{u[0], u[1]}, y{u[2], u[3]};
  for (int i = 0; i < n; ++i) {
    const PhasePair w{u[4 + 2 * static_cast<std::size_t>(i)], u[5 + 2 * static_cast<std::size_t>(i)]};
    x = lifted_step(x, w, K);
    y = lifted_step(y, w, K);
  }
  return {x.x1, x.x2, y.x1, y.x2};
}

double max_abs4(const std::array<double, 4>& a) {
  return std::max(std::max(std::abs(a[0]), std::abs(a[1])),
                  std::max(std::abs(a[2]), std::abs(a[3])));
}

std::array<double, 4> sub4(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

}  // namespace

ContractionReport contraction_estimate(double K, double p, const McConfig& cfg) {
  return chirikov_contraction(K, p, cfg, true);
}
ContractionReport contraction_estimate_serial(double K, double p, const McConfig& cfg) {
  return chirikov_contraction(K, p, cfg, false);
}
ContractionReport p_contraction_estimate(double A, double p, const McConfig& cfg) {
  return sine_contraction(A, p, cfg, true);
}
ContractionReport p_contraction_estimate_serial(double A, double p, const McConfig& cfg) {
  return sine_contraction(A, p, cfg, false);
}

Estimate drift_check(double K, double p, const TwoPointState& z, const McConfig& cfg) {
  return drift_impl(K, p, z, cfg, true);
}
Estimate drift_check_serial(double K, double p, const TwoPointState& z, const McConfig& cfg) {
  return drift_impl(K, p, z, cfg, false);
}

AprioriReport apriori_bound_check(int n, const std::vector<double>& K_values,
                                  const McConfig& cfg) {
  if (n < 1 || n > 4) throw std::invalid_argument("apriori_bound_check: n must be in 1..4");
  AprioriReport rep;
  rep.K_values = K_values;
  const std::size_t dim = 4 + 2 * static_cast<std::size_t>(n);

  for (double K : K_values) {
    // Step sizes shrink with K so the relative truncation error of the
    // difference quotients stays K-independent (higher derivatives grow with
    // higher powers of K).
    const double h1 = 1e-6 * std::pow(10.0 / K, 1.5);
    const double h2 = 1e-4 * std::pow(10.0 / K, 0.5 * (n + 1));
    double m1z = 0.0, m1w = 0.0, m2 = 0.0;
    const PhaseStream ps(cfg.stream);
    const std::size_t n_samples = std::max<std::size_t>(1, std::min<std::size_t>(cfg.samples, 64));
    for (std::size_t s = 0; s < n_samples; ++s) {
      std::vector<double> u(dim);
      for (std::size_t j = 0; j < dim; j += 2) {
        const PhasePair w = ps.phase_pair(s * dim + j / 2);
        u[j] = w.w1;
        u[j + 1] = w.w2;
      }
      auto F = [&](const std::vector<double>& uu) { return pair_map_lifted(uu, n, K); };
      // First derivatives, column by column.
      for (std::size_t j = 0; j < dim; ++j) {
        std::vector<double> up = u, um = u;
        up[j] += h1;
        um[j] -= h1;
        const auto d = sub4(F(up), F(um));
        const double norm = max_abs4(d) / (2.0 * h1);
        if (j < 4)
          m1z = std::max(m1z, norm);
        else
          m1w = std::max(m1w, norm);
      }
      // Second derivatives (diagonal and mixed stencils).
      const auto f0 = F(u);
      for (std::size_t j = 0; j < dim; ++j) {
        std::vector<double> up = u, um = u;
        up[j] += h2;
        um[j] -= h2;
        const auto d = sub4(sub4(F(up), f0), sub4(f0, F(um)));
        m2 = std::max(m2, max_abs4(d) / (h2 * h2));
        for (std::size_t k = j + 1; k < dim; ++k) {
          std::vector<double> pp = u, pm = u, mp = u, mm = u;
          pp[j] += h2; pp[k] += h2;
          pm[j] += h2; pm[k] -= h2;
          mp[j] -= h2; mp[k] += h2;
          mm[j] -= h2; mm[k] -= h2;
          const auto d2 = sub4(sub4(F(pp), F(pm)), sub4(F(mp), F(mm)));
          m2 = std::max(m2, max_abs4(d2) / (4.0 * h2 * h2));
        }
      }
    }
    rep.max_first_z.push_back(m1z);
    rep.max_first_w.push_back(m1w);
    rep.max_second.push_back(m2);
  }

  auto fit_exponent = [&](const std::vector<double>& vals) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::size_t m = vals.size();
    for (std::size_t i = 0; i < m; ++i) {
      const double lx = std::log(K_values[i]);
      const double ly = std::log(vals[i]);
      sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double dm = static_cast<double>(m);
    return (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  };
  rep.exponent_first_z = fit_exponent(rep.max_first_z);
  rep.exponent_first_w = fit_exponent(rep.max_first_w);
  rep.exponent_second = fit_exponent(rep.max_second);
  return rep;
}

namespace {

LyapunovReport lyapunov_impl(double K, std::size_t n_steps, std::size_t n_orbits,
                             RngStreamSpec stream, bool parallel) {
  std::vector<double> per_orbit(n_orbits, 0.0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t o = 0; o < static_cast<std::ptrdiff_t>(n_orbits); ++o) {
    const PhaseStream ps(stream.child(static_cast<std::size_t>(o)));
    const PhasePair init = ps.phase_pair(0);
    TorusPoint x{init.w1, init.w2};
    const double th = kTwoPi * ps.uniform(1);
    TangentVector v{std::cos(th), std::sin(th)};
    double log_sum = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
      const PhasePair w = ps.phase_pair(i + 2);
      const TangentVector Jv = chirikov_jacobian(x, w, K) * v;
      const double nn = Jv.norm();
      log_sum += std::log(nn);
      v = {Jv.v1 / nn, Jv.v2 / nn};
      x = chirikov_step(x, w, K);
    }
    per_orbit[static_cast<std::size_t>(o)] = log_sum / static_cast<double>(n_steps);
  }
  double sum = 0.0;
  for (double v : per_orbit) sum += v;
  const double mean = sum / static_cast<double>(n_orbits);
  double var = 0.0;
  for (double v : per_orbit) var += (v - mean) * (v - mean);
  if (n_orbits > 1) var /= static_cast<double>(n_orbits - 1);
  LyapunovReport rep;
  rep.lambda1 = {mean, std::sqrt(var / static_cast<double>(n_orbits)), n_orbits};
  rep.n_steps = n_steps;
  rep.n_orbits = n_orbits;
  return rep;
}

}  // namespace

LyapunovReport lyapunov_exponent(double K, std::size_t n_steps, std::size_t n_orbits,
                                 RngStreamSpec stream) {
  return lyapunov_impl(K, n_steps, n_orbits, stream, true);
}
LyapunovReport lyapunov_exponent_serial(double K, std::size_t n_steps, std::size_t n_orbits,
                                        RngStreamSpec stream) {
  return lyapunov_impl(K, n_steps, n_orbits, stream, false);
}

RateFit fit_exponential_rate(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 5)
    throw std::invalid_argument("fit_exponential_rate: need at least 5 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : series) {
    if (!(y > 0.0)) throw std::invalid_argument("fit_exponential_rate: values must be positive");
    const double ly = std::log(y);
    sx += x; sy += ly; sxx += x * x; sxy += x * ly; syy += ly * ly;
  }
  const double m = static_cast<double>(series.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double denom = (m * sxx - sx * sx) * (m * syy - sy * sy);
  double r2 = 1.0;
  if (denom > 0.0) {
    const double r = (m * sxy - sx * sy) / std::sqrt(denom);
    r2 = r * r;
  }
  return {-slope, r2};
}

}  // namespace cmix
