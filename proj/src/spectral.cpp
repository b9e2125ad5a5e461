#include "cmix/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "cmix/angle.hpp"

namespace cmix {
namespace {

// FFTW plan creation is not thread-safe; execution on distinct arrays is.
std::mutex g_plan_mutex;

int wavenumber(std::size_t i, std::size_t n) {
  return i <= n / 2 ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n);
}

// In-place complex FFT along one axis of an n x n row-major table.
// sign = FFTW_BACKWARD moves the axis to physical space (unscaled);
// sign = FFTW_FORWARD returns to coefficients (scaled by 1/n here).
void fft_axis(std::vector<std::complex<double>>& a, std::size_t n, int axis, int sign) {
  auto* data = reinterpret_cast<fftw_complex*>(a.data());
  const int ni = static_cast<int>(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    if (axis == 1) {  // contiguous rows
      plan = fftw_plan_many_dft(1, &ni, ni, data, nullptr, 1, ni, data, nullptr, 1, ni, sign,
                                FFTW_ESTIMATE);
    } else {  // strided columns
      plan = fftw_plan_many_dft(1, &ni, ni, data, nullptr, ni, 1, data, nullptr, ni, 1, sign,
                                FFTW_ESTIMATE);
    }
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_destroy_plan(plan);
  }
  if (sign == FFTW_FORWARD) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& v : a) v *= inv;
  }
}

void check_grid(const GridSpec& g) {
  if (g.n < 8 || (g.n & (g.n - 1)) != 0)
    throw std::invalid_argument("GridSpec: n must be a power of two, >= 8");
}

}  // namespace

SpectralField SpectralField::zero(const GridSpec& g) {
  check_grid(g);
  SpectralField f;
  f.grid = g;
  f.amp.assign(g.n * g.n, {0.0, 0.0});
  return f;
}

std::size_t SpectralField::index(int k1, int k2) const {
  const int n = static_cast<int>(grid.n);
  const int i1 = (k1 % n + n) % n;
  const int i2 = (k2 % n + n) % n;
  return static_cast<std::size_t>(i1) * grid.n + static_cast<std::size_t>(i2);
}

SpectralField SpectralField::single_mode(const GridSpec& g, int k1, int k2,
                                         std::complex<double> a) {
  SpectralField f = zero(g);
  f.at(k1, k2) = a;
  f.mean_zero = (k1 != 0 || k2 != 0);
  return f;
}

SpectralField SpectralField::real_mode(const GridSpec& g, int k1, int k2) {
  SpectralField f = zero(g);
  f.at(k1, k2) = 1.0;
  f.at(-k1, -k2) = 1.0;
  f.mean_zero = (k1 != 0 || k2 != 0);
  return f;
}

SpectralField apply_horizontal_shear(const SpectralField& f, double w1, double K, double scale) {
  SpectralField out = f;
  const std::size_t n = f.grid.n;
  fft_axis(out.amp, n, 1, FFTW_BACKWARD);  // (k1, x2)
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    const double k1 = wavenumber(i1, n);
    for (std::size_t j2 = 0; j2 < n; ++j2) {
      const double x2 = kTwoPi * static_cast<double>(j2) / static_cast<double>(n);
      const double phase = -k1 * scale * K * std::sin(x2 - w1);
      out.amp[i1 * n + j2] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  fft_axis(out.amp, n, 1, FFTW_FORWARD);
  return out;
}

namespace {

template <class Disp>
SpectralField vertical_shear_impl(const SpectralField& f, const Disp& displacement) {
  SpectralField out = f;
  const std::size_t n = f.grid.n;
  fft_axis(out.amp, n, 0, FFTW_BACKWARD);  // (x1, k2)
  for (std::size_t j1 = 0; j1 < n; ++j1) {
    const double x1 = kTwoPi * static_cast<double>(j1) / static_cast<double>(n);
    const double d = displacement(x1);
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      const double phase = -wavenumber(i2, n) * d;
      out.amp[j1 * n + i2] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  fft_axis(out.amp, n, 0, FFTW_FORWARD);
  return out;
}

}  // namespace

SpectralField apply_vertical_shear(const SpectralField& f, double w2, double scale) {
  // An integer shear interval is a pure relabeling k1 -> k1 - s k2 (mod n,
  // matching the implicit aliasing of the transform route) with the phase
  // factor e^{i s k2 w2}: apply it exactly, without transforms.
  const double rounded = std::round(scale);
  if (scale == rounded) {
    const int s = static_cast<int>(rounded);
    SpectralField out = SpectralField::zero(f.grid);
    out.mean_zero = f.mean_zero;
    const std::size_t n = f.grid.n;
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      const int k2 = wavenumber(i2, n);
      const std::complex<double> factor =
          k2 * w2 == 0.0 ? std::complex<double>(1.0, 0.0) : std::polar(1.0, s * k2 * w2);
      for (std::size_t i1 = 0; i1 < n; ++i1) {
        const int k1 = wavenumber(i1, n);
        out.at(k1 - s * k2, k2) = factor * f.amp[i1 * n + i2];
      }
    }
    return out;
  }
  return vertical_shear_impl(f, [&](double x1) { return scale * (x1 - w2); });
}

SpectralField apply_vertical_sine_shear(const SpectralField& f, double w2, double A,
                                        double scale) {
  return vertical_shear_impl(f, [&](double x1) { return scale * A * std::sin(x1 - w2); });
}

SpectralField apply_diffusion(const SpectralField& f, double nu, double t) {
  if (nu < 0.0 || t < 0.0) throw std::invalid_argument("apply_diffusion: nu, t must be >= 0");
  SpectralField out = f;
  const std::size_t n = f.grid.n;
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    const double k1 = wavenumber(i1, n);
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      const double k2 = wavenumber(i2, n);
      out.amp[i1 * n + i2] *= std::exp(-nu * (k1 * k1 + k2 * k2) * t);
    }
  }
  return out;
}

SpectralField dealias_project(const SpectralField& f) {
  SpectralField out = f;
  const std::size_t n = f.grid.n;
  const int cut = static_cast<int>(n / 3);
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      if (std::abs(wavenumber(i1, n)) > cut || std::abs(wavenumber(i2, n)) > cut)
        out.amp[i1 * n + i2] = 0.0;
  return out;
}

double high_mode_enstrophy_fraction(const SpectralField& f) {
  const std::size_t n = f.grid.n;
  const int cut = static_cast<int>(n / 3);
  double high = 0.0, total = 0.0;
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    const int k1 = wavenumber(i1, n);
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      const int k2 = wavenumber(i2, n);
      const double e = (static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2) *
                       std::norm(f.amp[i1 * n + i2]);
      total += e;
      if (std::abs(k1) > cut || std::abs(k2) > cut) high += e;
    }
  }
  return total > 0.0 ? high / total : 0.0;
}

namespace {

// One unit shear interval with Strang-split diffusion.
template <class ShearFn>
SpectralField viscous_interval(SpectralField f, double nu, std::size_t substeps,
                               const ShearFn& shear) {
  const double dt = 1.0 / static_cast<double>(substeps);
  for (std::size_t s = 0; s < substeps; ++s) {
    f = apply_diffusion(f, nu, 0.5 * dt);
    f = shear(f, dt);
    f = apply_diffusion(f, nu, 0.5 * dt);
  }
  return f;
}

template <class HFn, class VFn>
SpectralField period_impl(const SpectralField& f, double nu, std::size_t substeps,
                          const HFn& h, const VFn& v, double* high_fraction) {
  if (substeps < 1) throw std::invalid_argument("step_period: substeps must be >= 1");
  SpectralField out = f;
  if (nu == 0.0) {
    out = h(out, 1.0);
    out = v(out, 1.0);
  } else {
    out = viscous_interval(std::move(out), nu, substeps, h);
    out = viscous_interval(std::move(out), nu, substeps, v);
  }
  if (f.grid.dealias) {
    const double frac = high_mode_enstrophy_fraction(out);
    if (high_fraction) *high_fraction = frac;
    out = dealias_project(out);
  } else if (high_fraction) {
    *high_fraction = high_mode_enstrophy_fraction(out);
  }
  return out;
}

}  // namespace

SpectralField step_period(const SpectralField& f, const PhasePair& w, double K, double nu,
                          std::size_t substeps, double* high_fraction) {
  auto h = [&](const SpectralField& g, double sc) { return apply_horizontal_shear(g, w.w1, K, sc); };
  auto v = [&](const SpectralField& g, double sc) { return apply_vertical_shear(g, w.w2, sc); };
  return period_impl(f, nu, substeps, h, v, high_fraction);
}

SpectralField p_step_period(const SpectralField& f, const PhasePair& w, double A, double nu,
                            std::size_t substeps, double* high_fraction) {
  auto h = [&](const SpectralField& g, double sc) { return apply_horizontal_shear(g, w.w1, A, sc); };
  auto v = [&](const SpectralField& g, double sc) {
    return apply_vertical_sine_shear(g, w.w2, A, sc);
  };
  return period_impl(f, nu, substeps, h, v, high_fraction);
}

SpectralField inverse_step_period(const SpectralField& f, const PhasePair& w, double K) {
  // Adjoint of (project o vertical o horizontal): project first, then the
  // inverse shears in reverse order.
  SpectralField out = f.grid.dealias ? dealias_project(f) : f;
  out = apply_vertical_shear(out, w.w2, -1.0);
  out = apply_horizontal_shear(out, w.w1, K, -1.0);
  return out;
}

double sobolev_norm(const SpectralField& f, double s, bool negative) {
  const std::size_t n = f.grid.n;
  if (negative && std::abs(f.amp[0]) > 1e-13)
    throw std::invalid_argument("sobolev_norm: negative-index norm requires a mean-zero field");
  double sum = 0.0;
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    const double k1 = wavenumber(i1, n);
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      const double k2 = wavenumber(i2, n);
      const double k_sq = k1 * k1 + k2 * k2;
      if (k_sq == 0.0) continue;
      const double weight = s == 0.0 ? 1.0 : std::pow(k_sq, negative ? -s : s);
      sum += weight * std::norm(f.amp[i1 * n + i2]);
    }
  }
  return std::sqrt(sum);
}

DecayResult run_decay_experiment(const DecayExperiment& cfg) {
  if (cfg.steps < 1 || cfg.realizations < 1)
    throw std::invalid_argument("run_decay_experiment: steps and realizations must be >= 1");
  DecayResult res;
  res.norms.assign(cfg.realizations, {});
  std::vector<double> max_frac(cfg.realizations, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(cfg.realizations); ++r) {
    const PhaseStream ps(cfg.stream.child(static_cast<std::size_t>(r)));
    SpectralField f = SpectralField::real_mode(cfg.grid, cfg.mode_k1, cfg.mode_k2);
    auto& series = res.norms[static_cast<std::size_t>(r)];
    series.reserve(cfg.steps + 1);
    series.push_back(sobolev_norm(f, cfg.s, cfg.negative));
    for (std::size_t i = 0; i < cfg.steps; ++i) {
      double frac = 0.0;
      f = step_period(f, ps.phase_pair(i), cfg.K, cfg.nu, cfg.substeps, &frac);
      max_frac[static_cast<std::size_t>(r)] =
          std::max(max_frac[static_cast<std::size_t>(r)], frac);
      const double norm = sobolev_norm(f, cfg.s, cfg.negative);
      if (norm < 1e-280) break;  // truncate the series before it denormalizes
      series.push_back(norm);
    }
  }
  for (double m : max_frac) res.max_high_fraction = std::max(res.max_high_fraction, m);
  res.resolution_limited = res.max_high_fraction >= 1e-8;

  for (const auto& series : res.norms) {
    const std::size_t start = static_cast<std::size_t>(cfg.fit_drop * cfg.steps);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = start; i < series.size(); ++i)
      pts.emplace_back(static_cast<double>(i), series[i]);
    res.fits.push_back(fit_exponential_rate(pts));
  }
  return res;
}

CorrelationSeries correlation_decay(double K, int m1, int m2, int mp1, int mp2,
                                    std::size_t n_max, std::size_t realizations,
                                    const GridSpec& grid, RngStreamSpec stream) {
  if ((m1 == 0 && m2 == 0) || (mp1 == 0 && mp2 == 0))
    throw std::invalid_argument("correlation_decay: modes must be nonzero");
  CorrelationSeries out;
  out.per_realization.assign(realizations, {});
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(realizations); ++r) {
    const PhaseStream ps(stream.child(static_cast<std::size_t>(r)));
    SpectralField f = SpectralField::single_mode(grid, m1, m2);
    auto& series = out.per_realization[static_cast<std::size_t>(r)];
    series.reserve(n_max + 1);
    series.push_back(std::abs(f.at(-mp1, -mp2)));
    for (std::size_t i = 0; i < n_max; ++i) {
      f = step_period(f, ps.phase_pair(i), K, 0.0, 1);
      series.push_back(std::abs(f.at(-mp1, -mp2)));
    }
  }
  out.mean_abs.assign(n_max + 1, 0.0);
  for (const auto& series : out.per_realization)
    for (std::size_t i = 0; i < series.size(); ++i) out.mean_abs[i] += series[i];
  for (auto& v : out.mean_abs) v /= static_cast<double>(realizations);
  return out;
}

}  // namespace cmix
