#include "sfsat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include <sys/wait.h>
#include <unistd.h>

#include "sfsat/analysis.hpp"
#include "sfsat/generator.hpp"
#include "sfsat/theory.hpp"

namespace sfsat {

namespace {

std::uint64_t cell_seed(std::uint64_t base, double beta, long long m) {
  const auto beta_bits = std::bit_cast<std::uint64_t>(beta);
  return derive_stream(derive_stream(base, beta_bits), static_cast<std::uint64_t>(m));
}

struct TrialOutcome {
  Status status = Status::kUnknown;
  double moment = 0.0;
  bool failed = false;  // external solver error
};

Status run_external(const SolverSpec& solver, const Formula& f, bool& failed) {
  static std::atomic<unsigned> counter{0};
  const std::string path = "/tmp/sfsat_" + std::to_string(::getpid()) + "_" +
                           std::to_string(counter.fetch_add(1)) + ".cnf";
  {
    std::ofstream out(path, std::ios::binary);
    write_dimacs(out, f);
  }
  std::string cmd = solver.command_template;
  const std::string placeholder = "{cnf}";
  for (std::size_t pos = cmd.find(placeholder); pos != std::string::npos;
       pos = cmd.find(placeholder)) {
    cmd.replace(pos, placeholder.size(), path);
  }
  const int raw = std::system(cmd.c_str());
  std::remove(path.c_str());
  const int code = raw == -1 ? -1 : WEXITSTATUS(raw);
  if (code == 10) return Status::kSat;
  if (code == 20) return Status::kUnsat;
  failed = true;
  return Status::kUnknown;
}

TrialOutcome run_trial(const PowerLawDist& dist, const GeneratorParams& params,
                       const SolverSpec& solver, bool want_moment) {
  TrialOutcome out;
  const Formula f = generate_formula_with(dist, params, nullptr);
  if (want_moment) out.moment = moment_ratio(occurrence_counts(f));
  switch (solver.kind) {
    case SolverKind::kTwoSat:
      out.status = solve_2sat(f).status;
      break;
    case SolverKind::kDpll:
      out.status = solve_dpll(f, solver.dpll_budget).status;
      break;
    case SolverKind::kExternal:
      out.status = run_external(solver, f, out.failed);
      break;
  }
  return out;
}

void validate(const SweepSpec& spec) {
  if (spec.beta_grid.empty() || spec.m_grid.empty())
    throw std::invalid_argument("run_sweep: grids must be nonempty");
  if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
  if (spec.solver.kind == SolverKind::kTwoSat && spec.clause_width != 2)
    throw std::invalid_argument("run_sweep: two_sat solver requires k = 2");
  for (double b : spec.beta_grid)
    if (spec.sampler_mode == SamplerMode::kApproximateInverse && !(b > 0.0 && b < 1.0))
      throw std::invalid_argument("run_sweep: approximate sampler requires 0 < beta < 1");
}

}  // namespace

std::vector<long long> ratios_to_clause_counts(const std::vector<double>& ratios, int n) {
  std::vector<long long> ms;
  ms.reserve(ratios.size());
  for (double r : ratios) ms.push_back(std::llround(r * n));
  return ms;
}

SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  SweepResult result;
  result.spec = spec;

  std::vector<PowerLawDist> dists;
  dists.reserve(spec.beta_grid.size());
  for (double beta : spec.beta_grid)
    dists.push_back(spec.sampler_mode == SamplerMode::kExactTable
                        ? PowerLawDist::make_table(spec.num_vars, beta)
                        : PowerLawDist::make_approx(spec.num_vars, beta));

  struct Task {
    std::size_t beta_idx;
    std::size_t m_idx;
    int trial;
  };
  std::vector<Task> tasks;
  tasks.reserve(spec.beta_grid.size() * spec.m_grid.size() *
                static_cast<std::size_t>(spec.trials));
  for (std::size_t bi = 0; bi < spec.beta_grid.size(); ++bi)
    for (std::size_t mi = 0; mi < spec.m_grid.size(); ++mi)
      for (int t = 0; t < spec.trials; ++t) tasks.push_back({bi, mi, t});

  std::vector<TrialOutcome> outcomes(tasks.size());
  auto work = [&](std::size_t idx) {
    const Task& task = tasks[idx];
    const double beta = spec.beta_grid[task.beta_idx];
    const long long m = spec.m_grid[task.m_idx];
    GeneratorParams params;
    params.num_vars = spec.num_vars;
    params.num_clauses = m;
    params.clause_width = spec.clause_width;
    params.beta = beta;
    params.sampler_mode = spec.sampler_mode;
    params.seed = derive_stream(cell_seed(spec.base_seed, beta, m),
                                static_cast<std::uint64_t>(task.trial));
    outcomes[idx] = run_trial(dists[task.beta_idx], params, spec.solver, true);
  };

  const int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
        work(i);
    };
    std::vector<std::thread> pool;
    const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(jobs), tasks.size());
    pool.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::size_t idx = 0;
  for (std::size_t bi = 0; bi < spec.beta_grid.size(); ++bi) {
    for (std::size_t mi = 0; mi < spec.m_grid.size(); ++mi) {
      SweepRow row;
      row.beta = spec.beta_grid[bi];
      row.m = spec.m_grid[mi];
      row.num_vars = spec.num_vars;
      row.trials = spec.trials;
      row.seed_base = cell_seed(spec.base_seed, row.beta, row.m);
      double moment_sum = 0.0;
      for (int t = 0; t < spec.trials; ++t, ++idx) {
        const TrialOutcome& o = outcomes[idx];
        moment_sum += o.moment;
        if (o.failed) row.flagged = true;
        switch (o.status) {
          case Status::kSat: ++row.sat; break;
          case Status::kUnsat: ++row.unsat; break;
          case Status::kUnknown: ++row.unknown; break;
        }
      }
      const int decided = row.sat + row.unsat;
      row.sat_fraction = decided > 0
                             ? static_cast<double>(row.sat) / decided
                             : std::numeric_limits<double>::quiet_NaN();
      row.mean_moment_ratio = moment_sum / spec.trials;
      result.rows.push_back(row);
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "beta,m,n,trials,sat,unsat,unknown,sat_fraction,seed_base\n";
  for (const auto& r : result.rows) {
    out << r.beta << "," << r.m << "," << r.num_vars << "," << r.trials << "," << r.sat
        << "," << r.unsat << "," << r.unknown << "," << r.sat_fraction << ","
        << r.seed_base << "\n";
  }
}

std::vector<double> isotonic_nonincreasing(std::vector<double> values) {
  // PAV on the negated sequence: blocks of running means that violate the
  // nonincreasing order get pooled.
  struct Block {
    double sum;
    int count;
  };
  std::vector<Block> blocks;
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() >= 2) {
      const auto& last = blocks[blocks.size() - 1];
      const auto& prev = blocks[blocks.size() - 2];
      if (prev.sum / prev.count >= last.sum / last.count) break;
      Block merged{prev.sum + last.sum, prev.count + last.count};
      blocks.pop_back();
      blocks.pop_back();
      blocks.push_back(merged);
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& b : blocks)
    for (int i = 0; i < b.count; ++i) out.push_back(b.sum / b.count);
  return out;
}

std::optional<double> crossing_from_rows(const std::vector<long long>& ms,
                                         const std::vector<double>& sat_fractions) {
  if (ms.size() != sat_fractions.size() || ms.size() < 2) return std::nullopt;
  const std::vector<double> smooth = isotonic_nonincreasing(sat_fractions);
  for (std::size_t i = 0; i + 1 < smooth.size(); ++i) {
    if (smooth[i] >= 0.5 && smooth[i + 1] < 0.5) {
      const double f0 = smooth[i], f1 = smooth[i + 1];
      const double t = (f0 - 0.5) / (f0 - f1);
      return static_cast<double>(ms[i]) +
             t * static_cast<double>(ms[i + 1] - ms[i]);
    }
  }
  return std::nullopt;
}

namespace {

struct Probe {
  double unsat_fraction = 0.0;
  int unknown = 0;
  int decided = 0;
};

}  // namespace

CrossingResult find_crossing(int n, int k, double beta, int trials_per_probe,
                             const SolverSpec& solver, std::uint64_t base_seed,
                             SamplerMode sampler_mode, int jobs) {
  if (trials_per_probe < 1)
    throw std::invalid_argument("find_crossing: trials_per_probe must be >= 1");
  const PowerLawDist dist = sampler_mode == SamplerMode::kExactTable
                                ? PowerLawDist::make_table(n, beta)
                                : PowerLawDist::make_approx(n, beta);
  long long total_unknown = 0;
  long long total_solves = 0;
  std::map<long long, Probe> cache;
  auto probe = [&](long long m) -> const Probe& {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials_per_probe));
    auto trial = [&](int t) {
      GeneratorParams params;
      params.num_vars = n;
      params.num_clauses = m;
      params.clause_width = k;
      params.beta = beta;
      params.sampler_mode = sampler_mode;
      params.seed =
          derive_stream(cell_seed(base_seed, beta, m), static_cast<std::uint64_t>(t));
      outcomes[static_cast<std::size_t>(t)] = run_trial(dist, params, solver, false);
    };
    if (jobs <= 1) {
      for (int t = 0; t < trials_per_probe; ++t) trial(t);
    } else {
      std::atomic<int> next{0};
      auto worker = [&] {
        for (int t = next.fetch_add(1); t < trials_per_probe; t = next.fetch_add(1))
          trial(t);
      };
      std::vector<std::thread> pool;
      const int count = std::min(jobs, trials_per_probe);
      pool.reserve(static_cast<std::size_t>(count));
      for (int i = 0; i < count; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    Probe p;
    int unsat = 0;
    for (const auto& o : outcomes) {
      ++total_solves;
      if (o.status == Status::kUnsat) ++unsat;
      if (o.status == Status::kUnknown || o.failed) {
        ++p.unknown;
        ++total_unknown;
      }
    }
    p.decided = trials_per_probe - p.unknown;
    p.unsat_fraction = p.decided > 0 ? static_cast<double>(unsat) / p.decided : 0.0;
    return cache.emplace(m, p).first->second;
  };
  auto upper = [&](long long m) { return probe(m).unsat_fraction > 0.5; };

  const double cap_d = 4.0 * std::pow(2.0, k) * std::log(2.0) * n;
  const long long m_cap = static_cast<long long>(cap_d);
  // Start near whichever clause-count scale is smaller: the counting bound
  // or the small-core scale n^((1-beta)k).
  double guess = std::pow(2.0, k) * std::log(2.0) * n;
  if (beta > 0.0 && beta < 1.0)
    guess = std::min(guess, std::pow(static_cast<double>(n), (1.0 - beta) * k));
  if (k == 2 && beta < 1.0) guess = std::min(guess, threshold_2sat(beta, n));
  long long lo, hi;
  long long m0 = std::max<long long>(8, std::llround(guess));
  if (upper(m0)) {
    hi = m0;
    lo = m0;
    while (lo > 1) {
      lo = std::max<long long>(1, lo / 2);
      if (!upper(lo)) break;
      hi = lo;
    }
    if (lo == 1 && upper(1)) {
      lo = 0;  // degenerate: even one clause tips the majority
      hi = 1;
    }
  } else {
    lo = m0;
    hi = m0;
    for (;;) {
      hi *= 2;
      if (hi > m_cap)
        throw CrossingError("find_crossing: no UNSAT majority below 4 * 2^k ln2 * n = " +
                            std::to_string(m_cap));
      if (upper(hi)) break;
      lo = hi;
    }
  }
  while (hi - lo > 1 &&
         static_cast<double>(hi - lo) > 0.05 * static_cast<double>(hi + lo)) {
    const long long mid = lo + (hi - lo) / 2;
    if (upper(mid))
      hi = mid;
    else
      lo = mid;
  }

  CrossingResult res;
  res.num_vars = n;
  res.clause_width = k;
  res.beta = beta;
  res.m50 = (lo + hi) / 2;
  res.halfwidth = (hi - lo + 1) / 2;
  res.trials_per_probe = trials_per_probe;
  res.unsat_fraction_lo = lo > 0 ? probe(lo).unsat_fraction : 0.0;
  res.unsat_fraction_hi = probe(hi).unsat_fraction;
  res.unknown_fraction =
      total_solves > 0 ? static_cast<double>(total_unknown) / total_solves : 0.0;
  res.valid = res.unknown_fraction <= 0.05;
  res.base_seed = base_seed;
  return res;
}

void write_crossing_csv(std::ostream& out, const std::vector<CrossingResult>& rows) {
  out << "n,k,beta,m_50,halfwidth\n";
  for (const auto& r : rows)
    out << r.num_vars << "," << r.clause_width << "," << r.beta << "," << r.m50 << ","
        << r.halfwidth << "\n";
}

double fit_scaling_exponent(const std::vector<CrossingResult>& crossings) {
  std::map<int, long long> by_n;
  for (const auto& c : crossings) by_n[c.num_vars] = c.m50;
  if (by_n.size() < 4)
    throw CrossingError("fit_scaling_exponent: need at least 4 distinct n");
  if (by_n.rbegin()->first < 8 * by_n.begin()->first)
    throw CrossingError("fit_scaling_exponent: n values must span a factor of 8");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(by_n.size());
  for (const auto& [n, m50] : by_n) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(static_cast<double>(m50));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

ExposureSummary exposure_statistics(int n, double beta, long long m, int trials,
                                    int starts_per_formula, std::uint64_t base_seed,
                                    double giant_fraction) {
  if (trials < 1 || starts_per_formula < 1)
    throw std::invalid_argument("exposure_statistics: trials and starts must be >= 1");
  const PowerLawDist dist = PowerLawDist::make_table(n, beta);
  ExposureSummary summary;
  double max_open_sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    GeneratorParams params;
    params.num_vars = n;
    params.num_clauses = m;
    params.clause_width = 2;
    params.beta = beta;
    params.seed = derive_stream(cell_seed(base_seed, beta, m), static_cast<std::uint64_t>(t));
    const Formula f = generate_formula_with(dist, params, nullptr);
    RandomStream starts(derive_stream(params.seed, 0x5747ull));
    for (int s = 0; s < starts_per_formula; ++s) {
      int v = 1 + static_cast<int>(starts.next_unit() * n);
      if (v > n) v = n;
      const Lit start = starts.next_bool() ? -v : v;
      const ExposureTrace trace = find_implied_set(f, start, giant_fraction);
      ++summary.runs;
      switch (trace.outcome) {
        case ExposureOutcome::kClosed: summary.closed_fraction += 1; break;
        case ExposureOutcome::kContradiction: summary.contradiction_fraction += 1; break;
        case ExposureOutcome::kGiant: summary.giant_fraction += 1; break;
      }
      long long max_open = 0;
      for (long long x : trace.walk) max_open = std::max(max_open, x);
      max_open_sum += static_cast<double>(max_open);
    }
  }
  summary.closed_fraction /= summary.runs;
  summary.contradiction_fraction /= summary.runs;
  summary.giant_fraction /= summary.runs;
  summary.mean_max_open = max_open_sum / summary.runs;
  return summary;
}

}  // namespace sfsat
