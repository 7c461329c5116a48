#pragma once

#include <cstdint>
#include <vector>

namespace sfsat {

// Generalized harmonic number H(n, beta) = sum_{i=1}^{n} i^-beta.
// Exact summation up to n = 10^7; beyond that the asymptotic form
// zeta(beta) + n^(1-beta)/(1-beta) + n^-beta/2 (or gamma + log n at beta = 1).
double harmonic(long long n, double beta);

// Riemann zeta on the open unit interval, by tail-corrected partial sums:
// the limit of sum_{i<=N} i^-beta - N^(1-beta)/(1-beta) - N^-beta/2 with N
// doubled until successive estimates agree to 1e-10. Negative on (0,1).
// Throws std::domain_error outside (0,1).
double zeta_unit_interval(double beta);

enum class SamplerMode { kExactTable, kApproximateInverse };

// Variable-index distribution P(i) proportional to i^-beta on {1..n}.
// Immutable once built; safe to share across threads. Randomness enters
// only through the caller-supplied uniform value.
class PowerLawDist {
 public:
  // Exact mode: cumulative table of size n, sampled by binary search.
  static PowerLawDist make_table(int n, double beta);
  // Closed-form inverse mode, no table. Requires 0 < beta < 1.
  static PowerLawDist make_approx(int n, double beta);

  int n() const { return n_; }
  double beta() const { return beta_; }
  double normalization() const { return normalization_; }
  SamplerMode mode() const { return mode_; }
  // Empty unless mode is kExactTable. cumulative()[i-1] = P(X <= i).
  const std::vector<double>& cumulative() const { return cumulative_; }
  // (1-beta) * zeta(beta); only meaningful in approximate mode.
  double zeta_term() const { return zeta_term_; }

  // Sample with the mode the distribution was built with.
  int sample(double u) const;

 private:
  PowerLawDist() = default;

  int n_ = 0;
  double beta_ = 0.0;
  double normalization_ = 0.0;
  SamplerMode mode_ = SamplerMode::kExactTable;
  double zeta_term_ = 0.0;
  std::vector<double> cumulative_;
};

// Smallest i with cumulative[i] > u. Requires exact-table mode.
int sample_variable(const PowerLawDist& dist, double u);

// Closed-form inverse of the continuous approximation of the CDF,
// floor(((n^(1-b) + (1-b)zeta(b)) u - (1-b)zeta(b))^(1/(1-b))) + 1,
// clamped to [1, n]. Requires 0 < beta < 1.
int sample_variable_approx(const PowerLawDist& dist, double u);

// Duplicate-variable probability for one k-wide draw (surname problem).
struct RejectionEstimate {
  int k = 0;
  double coincidence_probability = 0.0;  // R_k
  std::vector<double> power_sums;        // P_j = sum_i p_i^j, j = 1..k
};

// Evaluates the non-coincidence recurrence
//   r_0 = 1,  r_k = sum_{j=1}^{k} (-1)^(j-1) (k-1)!/(k-j)! P_j r_{k-j}
// over the exact sampling weights and returns R_k = 1 - r_k.
RejectionEstimate rejection_probability(long long n, int k, double beta);

}  // namespace sfsat
