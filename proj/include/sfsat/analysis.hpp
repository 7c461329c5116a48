#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <vector>

#include "sfsat/formula.hpp"

namespace sfsat {

struct OccurrenceStats {
  int num_vars = 0;
  long long total_literals = 0;               // |F|
  std::vector<long long> positive_counts;      // k_x, index 1..n
  std::vector<long long> negative_counts;      // k_{-x}
  std::vector<long long> variable_counts;      // K_x = k_x + k_{-x}
  double mean_count = 0.0;                     // E[K] = |F| / n
  double mean_count_sq = 0.0;                  // E[K^2]
  std::map<long long, long long> degree_histogram;  // K -> #variables
  long long distinct_clause_count = 0;         // on canonical clause forms

  long long literal_count(Lit l) const {
    return l > 0 ? positive_counts[static_cast<std::size_t>(l)]
                 : negative_counts[static_cast<std::size_t>(-l)];
  }
};

OccurrenceStats occurrence_counts(const Formula& f);

// Pooled corpus statistics: variables of the inputs are treated as one
// population (counts concatenated), mirroring whole-benchmark-set profiles.
OccurrenceStats pooled_occurrence_counts(const std::vector<const Formula*>& formulas);

// E[K^2] / E[K]; > 3 is the giant-implication criterion in variable form.
// Throws std::domain_error on an empty formula.
double moment_ratio(const OccurrenceStats& stats);

// Sum over all 2n literals of k_l (k_{-l} - 1), from empirical counts.
double criterion_literals(const OccurrenceStats& stats);

// Sum over variables of K_x (K_x - 3); same sign as moment_ratio - 3 via
// the identity sum K(K-3) = n (E[K^2] - 3 E[K]).
double criterion_variables(const OccurrenceStats& stats);

struct ProfilePoint {
  double x = 0.0;    // rank fraction j/n, in (0, 1]
  double phi = 0.0;  // (n / sum K) * K_(j), counts sorted descending
};

struct NormalizedProfile {
  std::vector<ProfilePoint> points;
};

// Rank-ordered occurrence profile, normalized to unit integral; the
// scale-free law appears as phi(x) ~ (1-beta) x^-beta.
NormalizedProfile empirical_profile(const OccurrenceStats& stats);

// Synthetic profile from arbitrary nonnegative scores, for calibration.
NormalizedProfile profile_from_counts(std::vector<double> counts);

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitResult {
  double beta_hat = 0.0;   // rank-profile exponent
  double delta_hat = 0.0;  // occurrence-histogram tail exponent
  double range_lo = 0.0;   // fitted x (or K) range
  double range_hi = 0.0;
  double residual = 0.0;   // RMS residual of the log-log fit
};

// Least-squares line on (log x, log phi) for x >= x_min, aggregated into
// logarithmic x bins so every decade weighs the same; beta_hat = -slope,
// delta_hat reported via the exponent relation. Throws FitError with fewer
// than 10 usable points.
FitResult fit_beta(const NormalizedProfile& profile, double x_min);

// Log-binned tail fit of the occurrence histogram for K >= k_min;
// delta_hat = -slope of the bin densities in log-log, beta_hat reported via
// the inverse relation. Throws FitError with fewer than 5 nonempty bins.
FitResult fit_delta_tail(const OccurrenceStats& stats, long long k_min);

// Bin-edge growth factor used by fit_delta_tail.
inline constexpr double kLogBinRatio = 1.3;

// Count scale above which occurrence counts concentrate enough for their
// rank order to be stable: max(sqrt(n log n), (n^2 log n)^(beta/(2+beta))),
// constants taken as 1. Below it the occurrence power law need not hold.
double concentration_tail_cutoff(long long n, double beta);

// Default cutoff for fit_delta_tail: the concentration scale, lowered when
// needed so that at least 500 variables remain above it. A histogram fit over a
// couple dozen top variables is dominated by the count-one quantization
// floor and reads systematically shallow.
long long default_tail_cutoff(const OccurrenceStats& stats, double beta);

// CSV exports (one-line headers).
void write_histogram_csv(std::ostream& out, const OccurrenceStats& stats);  // K,count
void write_profile_csv(std::ostream& out, const NormalizedProfile& p);      // x,phi
void write_criteria_csv(std::ostream& out, long long n, long long m, int k, double beta,
                        const OccurrenceStats& stats);

}  // namespace sfsat
