#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfsat/formula.hpp"
#include "sfsat/rng.hpp"
#include "sfsat/sampler.hpp"

namespace sfsat {

struct GeneratorParams {
  int num_vars = 0;
  long long num_clauses = 0;
  int clause_width = 0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  SamplerMode sampler_mode = SamplerMode::kExactTable;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One clause: draw `width` variables independently from `dist`, each negated
// with probability 1/2, and redraw the whole clause while any variable
// repeats. Gives every valid clause probability proportional to the product
// of its variable weights. Throws GenerationError after 10^6 consecutive
// rejections.
Clause generate_clause(const PowerLawDist& dist, int width, RandomStream& stream);

// All clauses of a formula. Clause j consumes its own stream derived from
// (params.seed, j), so the output is bit-identical for identical params
// regardless of worker count or platform.
//
// Non-fatal diagnostics (beta >= 1, k^2 >= n) are appended to `warnings`
// when given, otherwise written to stderr.
Formula generate_formula(const GeneratorParams& params,
                         std::vector<std::string>* warnings = nullptr);

// As above with a caller-built distribution (must match params.num_vars,
// params.beta and params.sampler_mode); lets sweeps reuse one table across
// many formulas.
Formula generate_formula_with(const PowerLawDist& dist, const GeneratorParams& params,
                              std::vector<std::string>* warnings = nullptr);

// Asymptotic expected occurrence count of variable i in a formula with
// m = C n clauses of width k: C k (1-beta) (i/n)^-beta. Requires 0 < beta < 1.
double expected_occurrences(int var_index, const GeneratorParams& params);

}  // namespace sfsat
