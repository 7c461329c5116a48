#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sfsat/formula.hpp"

namespace sfsat {

enum class Status { kSat, kUnsat, kUnknown };

struct SatResult {
  Status status = Status::kUnknown;
  // Present iff status == kSat; indexed 1..num_vars and verified against
  // every clause before being returned.
  std::optional<std::vector<bool>> witness;
  // For 2-SAT refutations: a variable mutually reachable with its negation
  // in the implication graph. 0 otherwise.
  int certificate_var = 0;
};

// Digraph on 2n literal nodes; every 2-clause a|b contributes the edges
// ~a -> b and ~b -> a, so the edge set is skew-symmetric.
class ImplicationGraph {
 public:
  static ImplicationGraph build(const Formula& f);  // requires width-2 clauses

  int num_vars() const { return num_vars_; }
  int num_nodes() const { return 2 * num_vars_; }
  long long num_edges() const { return static_cast<long long>(targets_.size()); }

  // Dense node id of a literal; positive phase even, negative odd.
  static int node_of(Lit l) { return 2 * (var_of(l) - 1) + (l < 0 ? 1 : 0); }
  static Lit lit_of(int node) { return (node % 2 == 0 ? 1 : -1) * (node / 2 + 1); }

  std::pair<const int*, const int*> successors(int node) const {
    return {targets_.data() + offsets_[static_cast<std::size_t>(node)],
            targets_.data() + offsets_[static_cast<std::size_t>(node) + 1]};
  }

  // Nodes reachable from `from` (inclusive), as literal values.
  std::vector<Lit> reachable_from(Lit from) const;

 private:
  int num_vars_ = 0;
  std::vector<int> offsets_;
  std::vector<int> targets_;
};

// Exact 2-SAT decision via strongly connected components of the implication
// graph. Linear in the formula size. Throws std::invalid_argument on a
// clause whose width is not 2.
SatResult solve_2sat(const Formula& f);

// Depth-first search with unit propagation and pure-literal elimination.
// Branches on the lowest-index variable still occurring in an unsatisfied
// clause, positive phase first. Each decision node spends one unit of
// budget; an exhausted budget yields kUnknown.
SatResult solve_dpll(const Formula& f, long long node_budget);

// Restricts the formula to clauses whose variables all have index <= r and
// decides that subset; kUnsat certifies an unsatisfiable core of the full
// formula.
SatResult core_restricted_status(const Formula& f, int r, long long node_budget);

enum class ExposureOutcome { kClosed, kContradiction, kGiant };

struct ExposureStep {
  Lit from = 0;           // y of the selected clause y|z
  Lit implied = 0;        // z
  char case_label = '?';  // 'A', 'B' or 'C'
  int count_neg_implied = 0;    // k_{~z} at selection time (original count)
  int removed_neg_implied = 0;  // c_{~z} before the step
  long long open_after = 0;     // X_r after the step
};

struct ExposureTrace {
  Lit start = 0;
  std::vector<Lit> implied;        // in discovery order, starts with `start`
  std::vector<long long> walk;     // X_0, X_1, ... (walk[r] after iteration r)
  std::vector<ExposureStep> steps;
  ExposureOutcome outcome = ExposureOutcome::kClosed;
};

// Enumerates the literals implied by `start` by repeatedly consuming the
// earliest-generated clause y|z with ~y already implied, maintaining per
// literal removed-clause counters and the open-occurrence count
// X = sum over implied ~x of (k_x - c_x). Stops on a contradiction (both
// phases of some variable implied), when the implied set reaches
// giant_fraction of the 2n literals, or when no clause is eligible.
ExposureTrace find_implied_set(const Formula& f, Lit start, double giant_fraction);

}  // namespace sfsat
