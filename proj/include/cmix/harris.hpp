#pragma once
// Pure arithmetic for the quantitative Harris-theorem pipeline: weighted-norm
// contraction constants, criterion-rate assembly, and the headline
// K-dependent rates carried in (nested) log10 scale because the underlying
// values are doubly-exponentially small.
#include <string>

namespace cmix {

struct DriftParams {
  double gamma = 0.0;  // in (0,1)
  double C = 0.0;      // >= 0
  int m = 1;           // drift period
};

struct MinorizationParams {
  double alpha = 0.0;  // in (0,1)
  double R = 0.0;      // level-set radius, must exceed 2C/(1-gamma)
  int M = 1;           // small-set period
};

struct HarrisOutput {
  double beta = 0.0;
  double alpha_bar = 0.0;  // strictly below 1
  double gamma0 = 0.0;
  double alpha0 = 0.0;
};

// beta = alpha0 / C and alpha_bar = max(1 + alpha0 - alpha,
// (2 + R beta gamma0)/(2 + R beta)).  Throws std::domain_error naming the
// violated inequality for inputs outside the admissible region
// (alpha0 in (0, alpha), gamma0 in (gamma + 2C/R, 1), R > 2C/(1-gamma)).
HarrisOutput harris_constants(const DriftParams& d, const MinorizationParams& m, double alpha0,
                              double gamma0);

struct CriterionRate {
  double gamma = 0.0;       // 2^p gamma', must stay below 1
  double l0 = 0.0;          // 4 (1 + 1/(1 - 2^{p-1}))
  double tau = 0.0;         // min(C2, 1/(m k))
  double prefactor = 0.0;   // 2^{k+1} C1^{(d-1) p}
  double per_step = 0.0;    // tau^2 / l0
};

CriterionRate criterion_rate(double m, double k, double p, double gamma_prime, double C1,
                             double C2_small, int d = 2);

struct MixingRate {
  double zeta = 0.0;
  double rate = 0.0;  // 2 zeta / (d + 4)
};

// zeta = (tau^2 / (2 l0)) * min(1/(2(1+q)), 1/(5d/2+3)).
MixingRate mixing_rate_from_tau(double tau, double q, int d, double p);

// Two conventions for gamma0: the general (3 + gamma^k)/4 and the simplified
// default 3/4 (the gamma^k -> 0 limit), both exposed.
inline double gamma0_general(double gamma_pow_k) { return (3.0 + gamma_pow_k) / 4.0; }
inline constexpr double kGamma0Default = 0.75;

struct LogRate {
  double log10_value = 0.0;
  std::string description;
};

// Headline rate table, all unnamed prefactors set to 1.  Doubly-exponential
// quantities appear as nested logs (log10 of minus log10 of the value).
struct HeadlineRates {
  double K = 0.0, q = 0.0, p = 0.0, s = 1.0;
  LogRate M;                    // uniform reachability time (log10; exact if small)
  long long M_exact = -1;       // exact integer when representable, else -1
  double nested_log10_p_K = 0.0;     // log10(-log10 p_K), p_K = K^{-K^264}
  double nested_log10_c1_pow = 0.0;  // minorization product c1^{floor(M/4)-1}
  double nested_log10_alpha = 0.0;   // assembled small-set mass
  double nested_log10_rate = 0.0;    // per-step rate magnitude e^{-K^265}/(1+q)
  double log10_moment = 0.0;         // moment bound K^p
  std::string convention = "unit prefactors";
};

HeadlineRates chirikov_headline_rates(double K, double q, double p, double s = 1.0);
// Same arithmetic evaluated in 128-bit floating point, used as the precision
// reference for the log-space pipeline.
HeadlineRates chirikov_headline_rates_ref(double K, double q, double p, double s = 1.0);

}  // namespace cmix
