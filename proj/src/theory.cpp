#include "sfsat/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "sfsat/sampler.hpp"

namespace sfsat {

double delta_from_beta(double beta) { return 1.0 / beta + 1.0; }

double beta_from_delta(double delta) { return 1.0 / (delta - 1.0); }

double zeta_above_one(double s) {
  if (!(s > 1.0)) throw std::domain_error("zeta_above_one: requires s > 1");
  // Same tail-corrected partial sums as on the unit interval; the series
  // region just converges outright.
  double sum = 0.0;
  long long block_end = 64;
  long long i = 1;
  double prev = 0.0;
  bool have_prev = false;
  for (;;) {
    for (; i <= block_end; ++i) sum += std::pow(static_cast<double>(i), -s);
    const double nd = static_cast<double>(block_end);
    const double est = sum + std::pow(nd, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(nd, -s);
    if (have_prev && std::abs(est - prev) < 1e-12) return est;
    prev = est;
    have_prev = true;
    if (block_end > (1ll << 24)) return est;
    block_end *= 2;
  }
}

double threshold_2sat(double beta, long long n) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::domain_error("threshold_2sat: requires 0 <= beta < 1");
  if (n < 2) throw std::domain_error("threshold_2sat: requires n >= 2");
  const double nd = static_cast<double>(n);
  if (beta < 0.5) return nd * (1.0 - 2.0 * beta) / ((1.0 - beta) * (1.0 - beta));
  if (beta == 0.5) return 4.0 * nd / std::log(nd);
  return std::pow(nd, 2.0 * (1.0 - beta)) /
         ((1.0 - beta) * (1.0 - beta) * zeta_above_one(2.0 * beta));
}

double threshold_2sat_exact(double beta, long long n) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::domain_error("threshold_2sat_exact: requires 0 <= beta < 1");
  if (n < 2) throw std::domain_error("threshold_2sat_exact: requires n >= 2");
  const double h = harmonic(n, beta);
  return h * h / harmonic(n, 2.0 * beta);
}

namespace {

double log_factorial(int k) {
  double s = 0.0;
  for (int i = 2; i <= k; ++i) s += std::log(static_cast<double>(i));
  return s;
}

}  // namespace

double small_core_clause_probability(long long n, int k, double beta) {
  if (k < 1 || k > n)
    throw std::domain_error("small_core_clause_probability: requires 1 <= k <= n");
  const double log_p = (1.0 - beta) * log_factorial(k) -
                       k * std::log(2.0 * harmonic(n, beta));
  return std::exp(log_p);
}

double small_core_emergence_probability(int k, double beta) {
  if (k < 1) throw std::domain_error("small_core_emergence_probability: requires k >= 1");
  const double rate =
      std::pow((1.0 - beta) / 2.0, k) * std::exp((1.0 - beta) * log_factorial(k));
  return -std::expm1(-rate);
}

double optimal_core_radius(int k, double beta) {
  if (k < 1) throw std::domain_error("optimal_core_radius: requires k >= 1");
  const double slack = 1.0 - (1.0 - beta) * k;
  if (!(slack > 0.0))
    throw std::domain_error("optimal_core_radius: density has no finite maximum "
                            "unless beta > 1 - 1/k");
  return std::pow(slack, -1.0 / (1.0 - beta));
}

double expected_core_density(long long n, double m, int k, double beta, long long r) {
  if (r < 1 || r > n)
    throw std::domain_error("expected_core_density: requires 1 <= r <= n");
  const double ratio = harmonic(r, beta) / harmonic(n, beta);
  return m / static_cast<double>(r) * std::pow(ratio, k);
}

double expected_core_density_approx(long long n, double m, int k, double beta, long long r) {
  if (r < 1 || r > n)
    throw std::domain_error("expected_core_density_approx: requires 1 <= r <= n");
  const double e = 1.0 - beta;
  const double ratio = (std::pow(static_cast<double>(r), e) - 1.0) /
                       (std::pow(static_cast<double>(n), e) - 1.0);
  return m / static_cast<double>(r) * std::pow(ratio, k);
}

CountingBound counting_bound(long long n, double m, int k) {
  CountingBound b;
  b.log_expected_models =
      static_cast<double>(n) * std::log(2.0) + m * std::log1p(-std::pow(2.0, -k));
  b.critical_ratio = std::pow(2.0, k) * std::log(2.0);
  return b;
}

ThresholdReport build_report(long long n, int k, double beta) {
  if (beta < 0.0) throw std::domain_error("build_report: beta must be >= 0");
  ThresholdReport rep;
  rep.num_vars = n;
  rep.clause_width = k;
  rep.beta = beta;
  if (beta < 0.5)
    rep.regime = BetaRegime::kBelowHalf;
  else if (beta == 0.5)
    rep.regime = BetaRegime::kHalf;
  else if (beta < 1.0)
    rep.regime = BetaRegime::kHalfToOne;
  else if (beta == 1.0)
    rep.regime = BetaRegime::kOne;
  else
    rep.regime = BetaRegime::kAboveOne;
  if (beta < 1.0) rep.clause_threshold = threshold_2sat(beta, n);
  if (beta < 0.5)
    rep.ratio_threshold = (1.0 - 2.0 * beta) / ((1.0 - beta) * (1.0 - beta));
  rep.core_exponent = (1.0 - beta) * k;
  rep.small_core_regime = beta > 1.0 - 1.0 / k;
  if (rep.small_core_regime && beta < 1.0) rep.core_radius = optimal_core_radius(k, beta);
  rep.counting_bound_ratio = counting_bound(n, 0.0, k).critical_ratio;
  return rep;
}

const char* regime_name(BetaRegime regime) {
  switch (regime) {
    case BetaRegime::kBelowHalf: return "beta<1/2";
    case BetaRegime::kHalf: return "beta=1/2";
    case BetaRegime::kHalfToOne: return "1/2<beta<1";
    case BetaRegime::kOne: return "beta=1";
    case BetaRegime::kAboveOne: return "beta>1";
  }
  return "unknown";
}

}  // namespace sfsat
