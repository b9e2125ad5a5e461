#pragma once
// Spectral solver for passive-scalar advection-diffusion under the kicked
// alternating shears.  Each unit-time shear is applied exactly per Fourier
// mode in a mixed (spectral x physical) representation; diffusion is the
// exact heat multiplier; viscous runs use Strang splitting inside each shear
// interval.
//
// Convention: amplitudes are Fourier coefficients with the (2 pi)^{-2}
// forward normalization, wavenumbers k in {-n/2+1, ..., n/2} per axis.
#include <complex>
#include <cstddef>
#include <vector>

#include "cmix/estimators.hpp"
#include "cmix/rng.hpp"

namespace cmix {

struct GridSpec {
  std::size_t n = 256;    // modes per axis; power of two, >= 8
  bool dealias = false;   // project out |k| > n/3 after each period
};

struct SpectralField {
  GridSpec grid;
  std::vector<std::complex<double>> amp;  // row-major [k1-index][k2-index]
  bool mean_zero = true;

  static SpectralField zero(const GridSpec& g);
  // Single complex exponential e^{i(k1 x1 + k2 x2)} with the given amplitude.
  static SpectralField single_mode(const GridSpec& g, int k1, int k2,
                                   std::complex<double> a = 1.0);
  // Real field e^{i(k1,k2).x} + conjugate (both coefficients 1).
  static SpectralField real_mode(const GridSpec& g, int k1, int k2);

  std::size_t index(int k1, int k2) const;
  std::complex<double> at(int k1, int k2) const { return amp[index(k1, k2)]; }
  std::complex<double>& at(int k1, int k2) { return amp[index(k1, k2)]; }
};

// Unit-time pushforward under the horizontal kick x1 += scale * K sin(x2-w1):
// multiplies each (k1, x2) entry by exp(-i k1 scale K sin(x2 - w1)).
SpectralField apply_horizontal_shear(const SpectralField& f, double w1, double K,
                                     double scale = 1.0);
// Unit-time pushforward under the vertical kick x2 += scale * (x1 - w2).
SpectralField apply_vertical_shear(const SpectralField& f, double w2, double scale = 1.0);
// Vertical kick with the sine profile x2 += scale * A sin(x1 - w2).
SpectralField apply_vertical_sine_shear(const SpectralField& f, double w2, double A,
                                        double scale = 1.0);
// Heat multiplier exp(-nu |k|^2 t).
SpectralField apply_diffusion(const SpectralField& f, double nu, double t);

// Zero all modes with |k1| > n/3 or |k2| > n/3.
SpectralField dealias_project(const SpectralField& f);
// Fraction of enstrophy (|k|^2-weighted energy) carried by those modes.
double high_mode_enstrophy_fraction(const SpectralField& f);

// One time-2 period: horizontal shear interval then vertical shear interval.
// nu = 0 is exact (substeps ignored); nu > 0 uses Strang splitting with the
// given number of substeps per unit interval.  If the grid requests
// dealiasing, the pre-projection high-mode fraction is written to
// *high_fraction (when non-null) and the projection applied afterwards.
SpectralField step_period(const SpectralField& f, const PhasePair& w, double K, double nu,
                          std::size_t substeps = 8, double* high_fraction = nullptr);
// Adjoint of the inviscid step_period (pushforward under the inverse map,
// with the dealias projection applied adjointly).
SpectralField inverse_step_period(const SpectralField& f, const PhasePair& w, double K);
// Pierrehumbert analogue of step_period (both shears sinusoidal, amplitude A).
SpectralField p_step_period(const SpectralField& f, const PhasePair& w, double A, double nu,
                            std::size_t substeps = 8, double* high_fraction = nullptr);

// sqrt( sum_{k != 0} |k|^{-2s} |rho_k|^2 ) for negative regularity, |k|^{+2s}
// otherwise.  Negative-index norms require a mean-zero field.
double sobolev_norm(const SpectralField& f, double s, bool negative);

struct DecayExperiment {
  double K = 4.0 * 3.14159265358979323846;
  double nu = 0.0;
  std::size_t steps = 200;      // periods per realization
  double s = 1.0;               // Sobolev index of the recorded norm
  bool negative = true;         // record H^{-s} (false: H^{+s} / L2 for s = 0)
  std::size_t realizations = 10;
  RngStreamSpec stream;
  GridSpec grid{256, true};
  std::size_t substeps = 8;
  int mode_k1 = 1, mode_k2 = 0;  // real initial mode
  double fit_drop = 0.1;         // fraction of initial steps excluded from fits
};

struct DecayResult {
  std::vector<std::vector<double>> norms;  // [realization][period 0..steps]
  std::vector<RateFit> fits;               // per realization
  bool resolution_limited = false;         // some pre-projection fraction >= 1e-8
  double max_high_fraction = 0.0;
};

DecayResult run_decay_experiment(const DecayExperiment& cfg);

struct CorrelationSeries {
  std::vector<double> mean_abs;                     // index n = 0..n_max
  std::vector<std::vector<double>> per_realization; // [realization][n]
};

// |integral of e_m (e_{m'} o f^n)| against normalized Lebesgue measure,
// computed spectrally by pushing e_m forward and reading the coefficient at
// -m'; averaged over phase realizations.
CorrelationSeries correlation_decay(double K, int m1, int m2, int mp1, int mp2,
                                    std::size_t n_max, std::size_t realizations,
                                    const GridSpec& grid, RngStreamSpec stream);

}  // namespace cmix
