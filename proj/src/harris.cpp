#include "cmix/harris.hpp"

#include <quadmath.h>

#include <cmath>
#include <stdexcept>

namespace cmix {
namespace {

[[noreturn]] void violate(const std::string& inequality) {
  throw std::domain_error("harris: violated " + inequality);
}

// Numeric shims so the log-space pipeline can run in double and, as a
// precision reference, in 128-bit floating point.
struct DoubleOps {
  using F = double;
  static F log10(F x) { return std::log10(x); }
  static F exp10(F x) { return std::pow(10.0, x); }
  static F floor(F x) { return std::floor(x); }
};
struct QuadOps {
  using F = __float128;
  static F log10(F x) { return log10q(x); }
  static F exp10(F x) { return powq(10.0Q, x); }
  static F floor(F x) { return floorq(x); }
};

// log10(10^a + 10^b) without leaving log space.
template <class Ops>
typename Ops::F log10_sum(typename Ops::F a, typename Ops::F b) {
  if (a < b) {
    const auto t = a;
    a = b;
    b = t;
  }
  return a + Ops::log10(typename Ops::F(1) + Ops::exp10(b - a));
}

template <class Ops>
HeadlineRates headline_impl(double Kd, double qd, double pd, double sd) {
  using F = typename Ops::F;
  if (!(Kd > 1.0)) throw std::domain_error("chirikov_headline_rates: requires K > 1");
  if (!(qd > 0.0)) throw std::domain_error("chirikov_headline_rates: requires q > 0");
  if (!(pd > 0.0 && pd < 0.5))
    throw std::domain_error("chirikov_headline_rates: requires p in (0, 1/2)");
  const F K = Kd, q = qd, p = pd, s = sd;
  const F lgK = Ops::log10(K);
  const F pi = 3.14159265358979323846264338327950288Q;

  HeadlineRates out;
  out.K = Kd;
  out.q = qd;
  out.p = pd;
  out.s = sd;

  // Uniform reachability time M: smallest even integer at least
  // floor(pi K^9 / s) + floor(12 pi K^132) + 8, assembled in log10 space.
  const F t1 = Ops::log10(pi / s) + F(9) * lgK;
  const F t2 = Ops::log10(F(12) * pi) + F(132) * lgK;
  F logM = log10_sum<Ops>(log10_sum<Ops>(t1, t2), Ops::log10(F(8)));
  if (logM < F(15)) {
    const F raw = Ops::floor(Ops::exp10(t1)) + Ops::floor(Ops::exp10(t2)) + F(8);
    const F even = F(2) * Ops::floor((raw + F(1)) / F(2));  // round up to even
    out.M_exact = static_cast<long long>(static_cast<double>(even));
    logM = Ops::log10(even);
  }
  out.M.log10_value = static_cast<double>(logM);
  out.M.description = "uniform reachability time";

  // p_K = K^{-K^264}:  -log10 p_K = K^264 log10 K.
  out.nested_log10_p_K = static_cast<double>(F(264) * lgK + Ops::log10(lgK));

  // c1(K)^{floor(M/4)-1} with c1 = K^{-764}.
  const F log_exponent = [&] {
    const F M = Ops::exp10(logM);
    if (M / F(4) - F(1) > F(0) && M < F(1e300))
      return Ops::log10(Ops::floor(M / F(4)) - F(1));
    return logM - Ops::log10(F(4));  // overflowed: floor/-1 are negligible
  }();
  const F log_per_factor = Ops::log10(F(764)) + Ops::log10(lgK);
  out.nested_log10_c1_pow = static_cast<double>(log_exponent + log_per_factor);

  // Assembled small-set mass: the c1 product times the K^{-780} mass bound.
  out.nested_log10_alpha = static_cast<double>(
      log10_sum<Ops>(log_exponent + log_per_factor, Ops::log10(F(780)) + Ops::log10(lgK)));

  // Per-step rate magnitude e^{-K^265} / (1 + q).
  const F log10_e = Ops::log10(F(2.71828182845904523536028747135266250Q));
  F rate = F(265) * lgK + Ops::log10(log10_e);
  const F corr = Ops::log10(F(1) + q);
  if (corr > F(0)) rate = log10_sum<Ops>(rate, Ops::log10(corr));
  out.nested_log10_rate = static_cast<double>(rate);

  out.log10_moment = static_cast<double>(p * lgK);
  return out;
}

}  // namespace

HarrisOutput harris_constants(const DriftParams& d, const MinorizationParams& m, double alpha0,
                              double gamma0) {
  if (!(d.gamma > 0.0 && d.gamma < 1.0)) violate("0 < gamma < 1");
  if (!(d.C > 0.0)) violate("C > 0");
  if (!(m.alpha > 0.0 && m.alpha < 1.0)) violate("0 < alpha < 1");
  if (!(m.R > 2.0 * d.C / (1.0 - d.gamma))) violate("R > 2C/(1-gamma)");
  if (!(alpha0 > 0.0 && alpha0 < m.alpha)) violate("alpha0 in (0, alpha)");
  if (!(gamma0 > d.gamma + 2.0 * d.C / m.R && gamma0 < 1.0))
    violate("gamma0 in (gamma + 2C/R, 1)");

  HarrisOutput out;
  out.alpha0 = alpha0;
  out.gamma0 = gamma0;
  out.beta = alpha0 / d.C;
  const double second = (2.0 + m.R * out.beta * gamma0) / (2.0 + m.R * out.beta);
  out.alpha_bar = std::max(1.0 + alpha0 - m.alpha, second);
  if (!(out.alpha_bar < 1.0)) violate("alpha_bar < 1");
  return out;
}

CriterionRate criterion_rate(double m, double k, double p, double gamma_prime, double C1,
                             double C2_small, int d) {
  if (!(m > 0.0 && k > 0.0 && C1 > 0.0 && C2_small > 0.0))
    throw std::domain_error("criterion_rate: all scales must be positive");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("criterion_rate: p must be in (0,1)");
  if (!(gamma_prime > 0.0 && gamma_prime < 0.5))
    throw std::domain_error("criterion_rate: gamma_prime must be in (0, 1/2)");
  CriterionRate out;
  out.gamma = std::pow(2.0, p) * gamma_prime;
  if (!(out.gamma < 1.0)) throw std::domain_error("criterion_rate: 2^p gamma' must be below 1");
  out.l0 = 4.0 * (1.0 + 1.0 / (1.0 - std::pow(2.0, p - 1.0)));
  out.tau = std::min(C2_small, 1.0 / (m * k));
  out.prefactor = std::pow(2.0, k + 1.0) * std::pow(C1, (d - 1) * p);
  out.per_step = out.tau * out.tau / out.l0;
  return out;
}

MixingRate mixing_rate_from_tau(double tau, double q, int d, double p) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::domain_error("mixing_rate_from_tau: tau in (0,1]");
  if (!(q > 0.0)) throw std::domain_error("mixing_rate_from_tau: q > 0");
  if (d < 2) throw std::domain_error("mixing_rate_from_tau: d >= 2");
  const double l0 = 4.0 * (1.0 + 1.0 / (1.0 - std::pow(2.0, p - 1.0)));
  MixingRate out;
  out.zeta = (tau * tau / (2.0 * l0)) *
             std::min(1.0 / (2.0 * (1.0 + q)), 1.0 / (2.5 * d + 3.0));
  out.rate = 2.0 * out.zeta / (d + 4);
  return out;
}

HeadlineRates chirikov_headline_rates(double K, double q, double p, double s) {
  return headline_impl<DoubleOps>(K, q, p, s);
}

HeadlineRates chirikov_headline_rates_ref(double K, double q, double p, double s) {
  return headline_impl<QuadOps>(K, q, p, s);
}

}  // namespace cmix
