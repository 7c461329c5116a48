// Command-line front end: generate / solve / analyze / fit-beta / thresholds
// / sweep / crossing over the sfsat library. Exit codes for `solve` follow
// the usual competition convention (10 SAT, 20 UNSAT, 30 UNKNOWN); usage
// errors exit 2, file errors exit 1.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfsat/analysis.hpp"
#include "sfsat/generator.hpp"
#include "sfsat/harness.hpp"
#include "sfsat/solver.hpp"
#include "sfsat/theory.hpp"

namespace {

using namespace sfsat;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

struct SeedChoice {
  std::uint64_t value = 1;
  std::string source = "default";
};

SeedChoice resolve_seed(const std::optional<std::uint64_t>& flag) {
  SeedChoice c;
  if (flag) {
    c.value = *flag;
    c.source = "flag";
    return c;
  }
  if (const char* env = std::getenv("SFSAT_SEED")) {
    c.value = std::strtoull(env, nullptr, 10);
    c.source = "env SFSAT_SEED";
  }
  return c;
}

Formula read_formula(const std::string& path, std::vector<std::string>* comments = nullptr,
                     std::vector<std::string>* warnings = nullptr) {
  DimacsDocument doc;
  if (path == "-") {
    doc = parse_dimacs(std::cin);
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    doc = parse_dimacs(in);
  }
  for (const auto& w : doc.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  if (comments) *comments = doc.comments;
  if (warnings) *warnings = doc.warnings;
  return std::move(doc.formula);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<double> parse_range(const std::string& text) {
  // lo:hi:step, inclusive on both ends up to rounding.
  double lo = 0, hi = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::stringstream ss(text);
  if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
    throw std::runtime_error("expected lo:hi:step in '" + text + "'");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = lo + i * step;
    if (v > hi + step * 1e-9) break;
    out.push_back(v);
  }
  return out;
}

// Looks for a `key = value` amongst DIMACS comments (our own generate output
// records n, m, k, beta, seed that way).
std::optional<double> metadata_value(const std::vector<std::string>& comments,
                                     const std::string& key) {
  for (const auto& line : comments) {
    std::istringstream is(line);
    std::string k, eq;
    double v = 0;
    if (is >> k >> eq >> v && k == key && eq == "=") return v;
  }
  return std::nullopt;
}

SolverSpec make_solver(const std::string& name, long long budget, const std::string& command) {
  SolverSpec s;
  if (name == "2sat") {
    s.kind = SolverKind::kTwoSat;
  } else if (name == "dpll") {
    s.kind = SolverKind::kDpll;
    s.dpll_budget = budget;
  } else if (name == "external") {
    if (command.empty()) throw std::runtime_error("external solver needs --command");
    s.kind = SolverKind::kExternal;
    s.command_template = command;
  } else {
    throw std::runtime_error("unknown solver '" + name + "'");
  }
  return s;
}

int cmd_generate(int vars, long long clauses, int width, double beta,
                 const SeedChoice& seed, bool approx, const std::string& out_path) {
  GeneratorParams params;
  params.num_vars = vars;
  params.num_clauses = clauses;
  params.clause_width = width;
  params.beta = beta;
  params.seed = seed.value;
  params.sampler_mode = approx ? SamplerMode::kApproximateInverse : SamplerMode::kExactTable;
  std::vector<std::string> warnings;
  const Formula f = generate_formula(params, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::vector<std::pair<std::string, std::string>> meta = {
      {"n", std::to_string(vars)},
      {"m", std::to_string(clauses)},
      {"k", std::to_string(width)},
      {"beta", fmt(beta)},
      {"seed", std::to_string(seed.value)},
      {"sampler", approx ? "approximate-inverse" : "exact-table"},
      {"seed_source", seed.source},
  };
  if (out_path == "-") {
    write_dimacs(std::cout, f, meta);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    write_dimacs(out, f, meta);
  }
  return 0;
}

int cmd_solve(const std::string& mode, long long budget, const std::string& path) {
  const Formula f = read_formula(path);
  std::cout << "c solver = " << mode << "\n";
  if (mode == "dpll") std::cout << "c budget = " << budget << "\n";
  SatResult res;
  if (mode == "2sat")
    res = solve_2sat(f);
  else if (mode == "dpll")
    res = solve_dpll(f, budget);
  else
    throw std::runtime_error("unknown mode '" + mode + "'");
  switch (res.status) {
    case Status::kSat: {
      std::cout << "s SATISFIABLE\n";
      std::cout << "v";
      for (int v = 1; v <= f.num_vars; ++v)
        std::cout << " " << ((*res.witness)[static_cast<std::size_t>(v)] ? v : -v);
      std::cout << " 0\n";
      return 10;
    }
    case Status::kUnsat:
      std::cout << "s UNSATISFIABLE\n";
      if (res.certificate_var != 0)
        std::cout << "c certificate_var = " << res.certificate_var << "\n";
      return 20;
    case Status::kUnknown:
      std::cout << "s UNKNOWN\n";
      return 30;
  }
  return 30;
}

void emit_stats(const std::string& prefix, const OccurrenceStats& stats, long long m,
                int k, double beta) {
  {
    std::ofstream out(prefix + ".hist.csv");
    write_histogram_csv(out, stats);
  }
  {
    std::ofstream out(prefix + ".profile.csv");
    write_profile_csv(out, empirical_profile(stats));
  }
  {
    std::ofstream out(prefix + ".criteria.csv");
    write_criteria_csv(out, stats.num_vars, m, k, beta, stats);
  }
  std::cout << "c n = " << stats.num_vars << "\n";
  std::cout << "c size = " << stats.total_literals << "\n";
  std::cout << "c E_K = " << stats.mean_count << "\n";
  std::cout << "c E_K2 = " << stats.mean_count_sq << "\n";
  std::cout << "c ratio = " << moment_ratio(stats) << "\n";
  std::cout << "c Q_lit = " << criterion_literals(stats) << "\n";
  std::cout << "c Q_var = " << criterion_variables(stats) << "\n";
  std::cout << "c distinct_clauses = " << stats.distinct_clause_count << "\n";
  std::cout << "c wrote = " << prefix << ".{hist,profile,criteria}.csv\n";
}

int cmd_analyze(const std::vector<std::string>& paths, bool per_file,
                const std::string& prefix) {
  std::cout << "c mode = " << (per_file ? "per-file" : "pooled") << "\n";
  std::cout << "c out_prefix = " << prefix << "\n";
  std::cout << "c inputs =";
  for (const auto& p : paths) std::cout << " " << p;
  std::cout << "\n";
  std::vector<Formula> formulas;
  std::vector<std::vector<std::string>> comments(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i)
    formulas.push_back(read_formula(paths[i], &comments[i]));
  auto file_meta = [&](std::size_t i, long long& m, int& k, double& beta) {
    m = static_cast<long long>(formulas[i].clauses.size());
    k = formulas[i].clauses.empty() ? 0 : static_cast<int>(formulas[i].clauses[0].size());
    for (const auto& c : formulas[i].clauses)
      if (static_cast<int>(c.size()) != k) k = 0;  // mixed widths
    beta = metadata_value(comments[i], "beta").value_or(
        std::numeric_limits<double>::quiet_NaN());
  };
  if (per_file) {
    for (std::size_t i = 0; i < paths.size(); ++i) {
      long long m;
      int k;
      double beta;
      file_meta(i, m, k, beta);
      emit_stats(prefix + "." + std::to_string(i), occurrence_counts(formulas[i]), m, k, beta);
    }
    return 0;
  }
  std::vector<const Formula*> ptrs;
  for (const auto& f : formulas) ptrs.push_back(&f);
  const OccurrenceStats stats = pooled_occurrence_counts(ptrs);
  long long m = 0;
  for (const auto& f : formulas) m += static_cast<long long>(f.clauses.size());
  long long m0;
  int k;
  double beta;
  file_meta(0, m0, k, beta);
  if (paths.size() > 1) {
    for (std::size_t i = 1; i < paths.size(); ++i) {
      long long mi;
      int ki;
      double bi;
      file_meta(i, mi, ki, bi);
      if (ki != k) k = 0;
    }
  }
  emit_stats(prefix, stats, m, k, beta);
  return 0;
}

int cmd_fit(const std::vector<std::string>& paths, double x_min_flag, long long k_min_flag) {
  std::cout << "c inputs =";
  for (const auto& p : paths) std::cout << " " << p;
  std::cout << "\n";
  std::vector<Formula> formulas;
  for (const auto& p : paths) formulas.push_back(read_formula(p));
  std::vector<const Formula*> ptrs;
  for (const auto& f : formulas) ptrs.push_back(&f);
  const OccurrenceStats stats =
      formulas.size() == 1 ? occurrence_counts(formulas[0]) : pooled_occurrence_counts(ptrs);
  const double x_min = x_min_flag > 0 ? x_min_flag : 10.0 / stats.num_vars;
  const FitResult profile_fit = fit_beta(empirical_profile(stats), x_min);
  std::cout << "c x_min = " << x_min << "\n";
  std::cout << "beta_hat = " << profile_fit.beta_hat << "\n";
  std::cout << "delta_from_beta = " << profile_fit.delta_hat << "\n";
  long long k_min = k_min_flag;
  if (k_min <= 0) k_min = default_tail_cutoff(stats, profile_fit.beta_hat);
  std::cout << "c k_min = " << k_min << "\n";
  try {
    const FitResult tail_fit = fit_delta_tail(stats, k_min);
    std::cout << "delta_hat = " << tail_fit.delta_hat << "\n";
    if (profile_fit.beta_hat > 0)
      std::cout << "consistency_gap = "
                << std::abs(tail_fit.delta_hat - delta_from_beta(profile_fit.beta_hat))
                << "\n";
  } catch (const FitError& e) {
    std::cout << "delta_hat = unavailable (" << e.what() << ")\n";
  }
  return 0;
}

int cmd_thresholds(long long n, int k, double beta, const std::string& format) {
  const ThresholdReport rep = build_report(n, k, beta);
  const auto opt = [](const std::optional<double>& v) {
    return v ? fmt(*v) : std::string("-");
  };
  // Coinciding satisfiability lower bound, in the occurrence-exponent form.
  std::optional<double> lower_bound;
  if (beta == 0.0) {
    lower_bound = 1.0;
  } else if (beta < 0.5) {
    const double delta = delta_from_beta(beta);
    lower_bound = (delta - 1.0) * (delta - 3.0) / ((delta - 2.0) * (delta - 2.0));
  }
  if (format == "csv") {
    std::cout << "n,k,beta,regime,clause_threshold,ratio_threshold,core_exponent,"
                 "small_core_regime,r_star,counting_bound_ratio,sat_lower_bound_ratio\n";
    std::cout << n << "," << k << "," << fmt(beta) << "," << regime_name(rep.regime) << ","
              << opt(rep.clause_threshold) << "," << opt(rep.ratio_threshold) << ","
              << fmt(rep.core_exponent) << "," << (rep.small_core_regime ? 1 : 0) << ","
              << opt(rep.core_radius) << "," << fmt(rep.counting_bound_ratio) << ","
              << opt(lower_bound) << "\n";
    return 0;
  }
  std::cout << "n                     = " << n << "\n";
  std::cout << "k                     = " << k << "\n";
  std::cout << "beta                  = " << fmt(beta) << "\n";
  std::cout << "regime                = " << regime_name(rep.regime) << "\n";
  std::cout << "clause_threshold      = " << opt(rep.clause_threshold) << "\n";
  std::cout << "ratio_threshold       = " << opt(rep.ratio_threshold) << "\n";
  if (lower_bound)
    std::cout << "sat_lower_bound_ratio = " << fmt(*lower_bound)
              << "  (delta form, coincides with ratio_threshold)\n";
  std::cout << "core_exponent         = " << fmt(rep.core_exponent) << "\n";
  std::cout << "small_core_regime     = " << (rep.small_core_regime ? "true" : "false") << "\n";
  std::cout << "r_star                = " << opt(rep.core_radius) << "\n";
  std::cout << "counting_bound_ratio  = " << fmt(rep.counting_bound_ratio) << "\n";
  return 0;
}

void echo_spec(std::ostream& os, const SweepSpec& spec, const SeedChoice& seed) {
  os << "c n = " << spec.num_vars << "\n";
  os << "c k = " << spec.clause_width << "\n";
  os << "c trials = " << spec.trials << "\n";
  os << "c solver = "
     << (spec.solver.kind == SolverKind::kTwoSat
             ? "2sat"
             : spec.solver.kind == SolverKind::kDpll ? "dpll" : "external")
     << "\n";
  if (spec.solver.kind == SolverKind::kDpll)
    os << "c budget = " << spec.solver.dpll_budget << "\n";
  if (spec.solver.kind == SolverKind::kExternal)
    os << "c command = " << spec.solver.command_template << "\n";
  os << "c sampler = "
     << (spec.sampler_mode == SamplerMode::kExactTable ? "exact-table"
                                                       : "approximate-inverse")
     << "\n";
  os << "c jobs = " << spec.jobs << "\n";
  os << "c base_seed = " << spec.base_seed << "\n";
  os << "c seed_source = " << seed.source << "\n";
  os << "c betas =";
  for (double b : spec.beta_grid) os << " " << fmt(b);
  os << "\nc ms =";
  for (long long m : spec.m_grid) os << " " << m;
  os << "\n";
}

int cmd_sweep(SweepSpec spec, const SeedChoice& seed, const std::string& out_path) {
  const SweepResult result = run_sweep(spec);
  for (const auto& row : result.rows)
    if (row.flagged)
      std::cerr << "warning: external solver failed at beta=" << row.beta
                << " m=" << row.m << "\n";
  if (out_path == "-") {
    echo_spec(std::cerr, spec, seed);
    write_sweep_csv(std::cout, result);
  } else {
    echo_spec(std::cout, spec, seed);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    write_sweep_csv(out, result);
    std::cout << "c wrote = " << out_path << "\n";
  }
  return 0;
}

int cmd_crossing(int n, int k, double beta, int trials, const SolverSpec& solver,
                 const SeedChoice& seed, int jobs) {
  std::cerr << "c n = " << n << "\nc k = " << k << "\nc beta = " << fmt(beta)
            << "\nc trials_per_probe = " << trials << "\nc base_seed = " << seed.value
            << "\nc seed_source = " << seed.source << "\n";
  std::cerr << "c solver = "
            << (solver.kind == SolverKind::kTwoSat
                    ? "2sat"
                    : solver.kind == SolverKind::kDpll ? "dpll" : "external")
            << "\n";
  if (solver.kind == SolverKind::kDpll)
    std::cerr << "c budget = " << solver.dpll_budget << "\n";
  const CrossingResult res =
      find_crossing(n, k, beta, trials, solver, seed.value, SamplerMode::kExactTable, jobs);
  if (!res.valid)
    std::cerr << "warning: " << res.unknown_fraction * 100
              << "% of probes returned UNKNOWN; crossing flagged invalid\n";
  write_crossing_csv(std::cout, {res});
  std::cerr << "c unsat_fraction_lo = " << res.unsat_fraction_lo
            << "\nc unsat_fraction_hi = " << res.unsat_fraction_hi
            << "\nc unknown_fraction = " << res.unknown_fraction << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scale-free random k-SAT toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a random CNF in DIMACS format");
  int g_vars = 0, g_k = 0;
  long long g_clauses = 0;
  double g_beta = 0.0;
  std::optional<std::uint64_t> g_seed;
  bool g_approx = false;
  std::string g_out = "-";
  gen->add_option("--vars", g_vars, "number of variables")->required();
  gen->add_option("--clauses", g_clauses, "number of clauses")->required();
  gen->add_option("--k", g_k, "clause width")->required();
  gen->add_option("--beta", g_beta, "power-law exponent")->required();
  gen->add_option("--seed", g_seed, "RNG seed (default: SFSAT_SEED or 1)");
  gen->add_flag("--approx-sampler", g_approx, "closed-form inverse sampler");
  gen->add_option("--out", g_out, "output path, '-' for stdout");

  // solve
  auto* sol = app.add_subcommand("solve", "decide a DIMACS file (exit 10/20/30)");
  std::string s_mode = "2sat", s_file;
  long long s_budget = 1'000'000;
  sol->add_option("--mode", s_mode, "2sat|dpll")->required();
  sol->add_option("--budget", s_budget, "DPLL node budget");
  sol->add_option("file", s_file, "input path, '-' for stdin")->required();

  // analyze
  auto* ana = app.add_subcommand("analyze", "occurrence statistics and criteria CSVs");
  std::vector<std::string> a_files;
  bool a_pooled = false, a_per_file = false;
  std::string a_prefix = "analysis";
  ana->add_flag("--pooled", a_pooled, "pool all files into one profile (default)");
  ana->add_flag("--per-file", a_per_file, "emit per-file statistics instead");
  ana->add_option("--out-prefix", a_prefix, "output file prefix");
  ana->add_option("files", a_files, "DIMACS inputs")->required();

  // fit-beta
  auto* fit = app.add_subcommand("fit-beta", "estimate beta and delta from files");
  std::vector<std::string> f_files;
  double f_xmin = 0.0;
  long long f_kmin = 0;
  fit->add_option("--x-min", f_xmin, "profile fit lower bound (default 10/n)");
  fit->add_option("--k-min", f_kmin, "tail fit cutoff (default from n and beta_hat)");
  fit->add_option("files", f_files, "DIMACS inputs")->required();

  // thresholds
  auto* thr = app.add_subcommand("thresholds", "closed-form report for (n, k, beta)");
  long long t_n = 0;
  int t_k = 0;
  double t_beta = 0.0;
  std::string t_format = "text";
  thr->add_option("--n", t_n, "number of variables")->required();
  thr->add_option("--k", t_k, "clause width")->required();
  thr->add_option("--beta", t_beta, "power-law exponent")->required();
  thr->add_option("--format", t_format, "text|csv");

  // sweep
  auto* swp = app.add_subcommand("sweep", "satisfiable-fraction grid, CSV output");
  int w_vars = 0, w_k = 2, w_trials = 10, w_jobs = 1;
  std::string w_betas = "0", w_ratios, w_ms, w_solver = "2sat", w_command, w_out = "-";
  long long w_budget = 1'000'000;
  std::optional<std::uint64_t> w_seed;
  bool w_approx = false;
  swp->add_option("--vars", w_vars, "number of variables")->required();
  swp->add_option("--k", w_k, "clause width");
  swp->add_option("--betas", w_betas, "comma-separated beta grid");
  swp->add_option("--ratios", w_ratios, "m/n grid as lo:hi:step");
  swp->add_option("--ms", w_ms, "comma-separated clause counts");
  swp->add_option("--trials", w_trials, "formulas per grid point");
  swp->add_option("--solver", w_solver, "2sat|dpll|external");
  swp->add_option("--budget", w_budget, "DPLL node budget");
  swp->add_option("--command", w_command, "external command with {cnf}");
  swp->add_option("--seed", w_seed, "base seed (default: SFSAT_SEED or 1)");
  swp->add_option("--jobs", w_jobs, "worker threads");
  swp->add_flag("--approx-sampler", w_approx, "closed-form inverse sampler");
  swp->add_option("--out", w_out, "CSV path, '-' for stdout");

  // crossing
  auto* crs = app.add_subcommand("crossing", "clause count with 50% UNSAT formulas");
  int c_vars = 0, c_k = 2, c_trials = 20, c_jobs = 1;
  double c_beta = 0.0;
  std::string c_solver = "2sat", c_command;
  long long c_budget = 1'000'000;
  std::optional<std::uint64_t> c_seed;
  crs->add_option("--vars", c_vars, "number of variables")->required();
  crs->add_option("--k", c_k, "clause width");
  crs->add_option("--beta", c_beta, "power-law exponent");
  crs->add_option("--trials", c_trials, "formulas per probe");
  crs->add_option("--solver", c_solver, "2sat|dpll|external");
  crs->add_option("--budget", c_budget, "DPLL node budget");
  crs->add_option("--command", c_command, "external command with {cnf}");
  crs->add_option("--seed", c_seed, "base seed (default: SFSAT_SEED or 1)");
  crs->add_option("--jobs", c_jobs, "worker threads per probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed())
      return cmd_generate(g_vars, g_clauses, g_k, g_beta, resolve_seed(g_seed), g_approx,
                          g_out);
    if (sol->parsed()) return cmd_solve(s_mode, s_budget, s_file);
    if (ana->parsed()) return cmd_analyze(a_files, a_per_file, a_prefix);
    if (fit->parsed()) return cmd_fit(f_files, f_xmin, f_kmin);
    if (thr->parsed()) return cmd_thresholds(t_n, t_k, t_beta, t_format);
    if (swp->parsed()) {
      SweepSpec spec;
      spec.num_vars = w_vars;
      spec.clause_width = w_k;
      spec.beta_grid = parse_list(w_betas);
      if (!w_ratios.empty())
        spec.m_grid = ratios_to_clause_counts(parse_range(w_ratios), w_vars);
      else if (!w_ms.empty())
        for (double m : parse_list(w_ms)) spec.m_grid.push_back(static_cast<long long>(m));
      else
        throw std::runtime_error("sweep needs --ratios or --ms");
      spec.trials = w_trials;
      spec.solver = make_solver(w_solver, w_budget, w_command);
      const SeedChoice seed = resolve_seed(w_seed);
      spec.base_seed = seed.value;
      spec.jobs = w_jobs;
      spec.sampler_mode =
          w_approx ? SamplerMode::kApproximateInverse : SamplerMode::kExactTable;
      return cmd_sweep(spec, seed, w_out);
    }
    if (crs->parsed())
      return cmd_crossing(c_vars, c_k, c_beta, c_trials,
                          make_solver(c_solver, c_budget, c_command), resolve_seed(c_seed),
                          c_jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
