#include "sfsat/generator.hpp"

#include <cmath>
#include <iostream>

namespace sfsat {

namespace {

constexpr int kMaxConsecutiveRejections = 1'000'000;

void emit_warning(std::vector<std::string>* sink, const std::string& msg) {
  if (sink)
    sink->push_back(msg);
  else
    std::cerr << "warning: " << msg << "\n";
}

void validate(const GeneratorParams& p) {
  if (p.num_vars < 1) throw std::invalid_argument("generator: num_vars must be >= 1");
  if (p.clause_width < 1 || p.clause_width > p.num_vars)
    throw std::invalid_argument("generator: requires 1 <= k <= n");
  if (p.num_clauses < 1) throw std::invalid_argument("generator: num_clauses must be >= 1");
  if (p.beta < 0.0) throw std::invalid_argument("generator: beta must be >= 0");
}

}  // namespace

Clause generate_clause(const PowerLawDist& dist, int width, RandomStream& stream) {
  if (width < 1 || width > dist.n())
    throw std::invalid_argument("generate_clause: requires 1 <= width <= n");
  Clause clause(static_cast<std::size_t>(width));
  for (int rejections = 0; rejections <= kMaxConsecutiveRejections; ++rejections) {
    bool distinct = true;
    for (int j = 0; j < width; ++j) {
      const int v = dist.sample(stream.next_unit());
      const bool negated = stream.next_bool();
      for (int t = 0; t < j; ++t) {
        if (var_of(clause[static_cast<std::size_t>(t)]) == v) {
          distinct = false;
          break;
        }
      }
      clause[static_cast<std::size_t>(j)] = negated ? -v : v;
      if (!distinct) break;
    }
    if (distinct) return clause;
  }
  throw GenerationError("generate_clause: rejection cap reached (n=" +
                        std::to_string(dist.n()) + ", k=" + std::to_string(width) +
                        ", beta=" + std::to_string(dist.beta()) + ")");
}

Formula generate_formula_with(const PowerLawDist& dist, const GeneratorParams& params,
                              std::vector<std::string>* warnings) {
  validate(params);
  if (dist.n() != params.num_vars)
    throw std::invalid_argument("generate_formula_with: distribution size mismatch");
  if (params.beta >= 1.0)
    emit_warning(warnings, "beta >= 1: variable probabilities no longer vanish and "
                           "duplicate rejection may dominate");
  if (static_cast<long long>(params.clause_width) * params.clause_width >= params.num_vars)
    emit_warning(warnings, "k^2 >= n: duplicate-variable rejection is not negligible");
  Formula f;
  f.num_vars = params.num_vars;
  f.clauses.reserve(static_cast<std::size_t>(params.num_clauses));
  for (long long j = 0; j < params.num_clauses; ++j) {
    RandomStream stream(derive_stream(params.seed, static_cast<std::uint64_t>(j)));
    f.clauses.push_back(generate_clause(dist, params.clause_width, stream));
  }
  return f;
}

Formula generate_formula(const GeneratorParams& params, std::vector<std::string>* warnings) {
  validate(params);
  const PowerLawDist dist = params.sampler_mode == SamplerMode::kExactTable
                                ? PowerLawDist::make_table(params.num_vars, params.beta)
                                : PowerLawDist::make_approx(params.num_vars, params.beta);
  return generate_formula_with(dist, params, warnings);
}

double expected_occurrences(int var_index, const GeneratorParams& params) {
  if (!(params.beta > 0.0 && params.beta < 1.0))
    throw std::domain_error("expected_occurrences: beta must lie in (0,1)");
  if (var_index < 1 || var_index > params.num_vars)
    throw std::domain_error("expected_occurrences: variable index out of range");
  const double density =
      static_cast<double>(params.num_clauses) / static_cast<double>(params.num_vars);
  const double x = static_cast<double>(var_index) / static_cast<double>(params.num_vars);
  return density * params.clause_width * (1.0 - params.beta) * std::pow(x, -params.beta);
}

}  // namespace sfsat
