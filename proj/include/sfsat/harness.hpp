#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfsat/sampler.hpp"
#include "sfsat/solver.hpp"

namespace sfsat {

enum class SolverKind { kTwoSat, kDpll, kExternal };

struct SolverSpec {
  SolverKind kind = SolverKind::kTwoSat;
  long long dpll_budget = 1'000'000;
  // External command with a {cnf} placeholder; exit 10 = SAT, 20 = UNSAT,
  // anything else marks the probe as failed.
  std::string command_template;
};

struct SweepSpec {
  int num_vars = 0;
  int clause_width = 0;
  std::vector<double> beta_grid;
  std::vector<long long> m_grid;
  int trials = 10;
  SolverSpec solver;
  std::uint64_t base_seed = 1;
  int jobs = 1;
  SamplerMode sampler_mode = SamplerMode::kExactTable;
};

// m grid from clause/variable ratios.
std::vector<long long> ratios_to_clause_counts(const std::vector<double>& ratios, int n);

struct SweepRow {
  double beta = 0.0;
  long long m = 0;
  int num_vars = 0;
  int trials = 0;
  int sat = 0;
  int unsat = 0;
  int unknown = 0;          // budgeted solver gave up; excluded from the fraction
  double sat_fraction = 0.0;  // sat / (sat + unsat)
  double mean_moment_ratio = 0.0;  // mean over trials of E[K^2]/E[K]
  std::uint64_t seed_base = 0;     // cell key; trial t uses derive_stream(seed_base, t)
  bool flagged = false;            // external solver failed on some trial
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // beta-major, m-minor, same order as the grids
};

// Runs trials at every (beta, m) grid point. Every formula seed is a pure
// function of (base_seed, beta, m, trial), so results are identical for any
// job count and any row ordering.
SweepResult run_sweep(const SweepSpec& spec);

// Header: beta,m,n,trials,sat,unsat,unknown,sat_fraction,seed_base
void write_sweep_csv(std::ostream& out, const SweepResult& result);

// Pool-adjacent-violators fit of a nonincreasing sequence; used to smooth
// raw satisfiable fractions before locating a crossing.
std::vector<double> isotonic_nonincreasing(std::vector<double> values);

// Interpolated m where the smoothed fraction crosses 0.5, if it does.
std::optional<double> crossing_from_rows(const std::vector<long long>& ms,
                                         const std::vector<double>& sat_fractions);

class CrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CrossingResult {
  int num_vars = 0;
  int clause_width = 0;
  double beta = 0.0;
  long long m50 = 0;
  long long halfwidth = 0;
  int trials_per_probe = 0;
  double unsat_fraction_lo = 0.0;  // observed at m50 - halfwidth
  double unsat_fraction_hi = 0.0;  // observed at m50 + halfwidth
  double unknown_fraction = 0.0;   // over all probe solves
  bool valid = true;               // false when unknown_fraction > 5%
  std::uint64_t base_seed = 0;
};

// Exponential bracketing plus bisection on the clause count for the point
// where half the formulas are unsatisfiable. Probes are deterministic in
// (base_seed, m, trial), so the result does not depend on the search path
// or on the number of worker threads running a probe's trials. Stops when
// the bracket halfwidth is within 5% of m50. Throws CrossingError when no
// upper bracket exists below 4 * 2^k ln2 * n.
CrossingResult find_crossing(int n, int k, double beta, int trials_per_probe,
                             const SolverSpec& solver, std::uint64_t base_seed,
                             SamplerMode sampler_mode = SamplerMode::kExactTable,
                             int jobs = 1);

// Header: n,k,beta,m_50,halfwidth
void write_crossing_csv(std::ostream& out, const std::vector<CrossingResult>& rows);

// Least-squares slope of log m50 against log n. Requires at least four
// distinct n spanning a factor of 8; throws CrossingError otherwise.
double fit_scaling_exponent(const std::vector<CrossingResult>& crossings);

struct ExposureSummary {
  int runs = 0;
  double closed_fraction = 0.0;
  double contradiction_fraction = 0.0;
  double giant_fraction = 0.0;
  double mean_max_open = 0.0;  // mean over runs of max X_r
};

// Implied-set walks from random start literals over freshly generated
// width-2 formulas; diagnostic evidence for the percolation criterion.
ExposureSummary exposure_statistics(int n, double beta, long long m, int trials,
                                    int starts_per_formula, std::uint64_t base_seed,
                                    double giant_fraction = 0.01);

}  // namespace sfsat
