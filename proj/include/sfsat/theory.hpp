#pragma once

#include <optional>

namespace sfsat {

// Exponent relation between the variable-selection law i^-beta and the
// occurrence power law K^-delta. Exact inverses of each other.
double delta_from_beta(double beta);
double beta_from_delta(double delta);

// Riemann zeta for s > 1 by tail-corrected partial sums.
double zeta_above_one(double s);

// Clause count at the width-2 unsatisfiability criterion:
//   n (1-2 beta)/(1-beta)^2        for beta < 1/2,
//   4 n / log n                    for beta = 1/2,
//   n^(2(1-beta)) / ((1-beta)^2 zeta(2 beta))   for 1/2 < beta < 1.
// Throws std::domain_error for beta >= 1.
double threshold_2sat(double beta, long long n);

// The same criterion evaluated with exact harmonic sums, H(n,beta)^2 /
// H(n,2 beta). threshold_2sat is its leading term; the gap reaches ~10%
// by beta = 0.4 at n = 10^5 and vanishes as n grows.
double threshold_2sat_exact(double beta, long long n);

// Probability that one generated clause uses exactly the k most likely
// variables: (k!)^(1-beta) / (2 H(n,beta))^k.
double small_core_clause_probability(long long n, int k, double beta);

// Probability that, within n^((1-beta)k) clauses, the all-smallest-variables
// clause appears: 1 - exp(-((1-beta)/2)^k (k!)^(1-beta)).
double small_core_emergence_probability(int k, double beta);

// Radius maximizing the restricted-core density, (1-(1-beta)k)^(-1/(1-beta)).
// Only finite for beta > 1 - 1/k; throws std::domain_error otherwise.
double optimal_core_radius(int k, double beta);

// Expected density of the clause set restricted to variables {1..r}:
// (m/r) (H(r,beta)/H(n,beta))^k, exact harmonic form.
double expected_core_density(long long n, double m, int k, double beta, long long r);

// Documented variant using the leading-term ratio (r^(1-beta)-1)/(n^(1-beta)-1).
double expected_core_density_approx(long long n, double m, int k, double beta, long long r);

struct CountingBound {
  double log_expected_models = 0.0;  // ln of 2^n (1 - 2^-k)^m
  double critical_ratio = 0.0;       // 2^k ln 2: density above which it sinks below 1
};

CountingBound counting_bound(long long n, double m, int k);

enum class BetaRegime { kBelowHalf, kHalf, kHalfToOne, kOne, kAboveOne };

struct ThresholdReport {
  long long num_vars = 0;
  int clause_width = 0;
  double beta = 0.0;
  BetaRegime regime = BetaRegime::kBelowHalf;
  // Clause count at the width-2 criterion; present iff beta < 1.
  std::optional<double> clause_threshold;
  // Density m/n at the width-2 phase transition; present iff beta < 1/2.
  std::optional<double> ratio_threshold;
  double core_exponent = 0.0;      // (1-beta) k: clause-count scale of small cores
  bool small_core_regime = false;  // beta > 1 - 1/k
  std::optional<double> core_radius;  // present iff small_core_regime and beta < 1
  double counting_bound_ratio = 0.0;  // 2^k ln 2
};

// All closed-form quantities for one (n, k, beta) triple. Fields that do
// not apply to the regime stay empty rather than zero.
ThresholdReport build_report(long long n, int k, double beta);

const char* regime_name(BetaRegime regime);

}  // namespace sfsat
