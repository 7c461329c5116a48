#include "sfsat/solver.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace sfsat {

namespace {

void require_width_two(const Formula& f, const char* who) {
  for (const auto& c : f.clauses)
    if (c.size() != 2) throw std::invalid_argument(std::string(who) + ": clause width != 2");
}

}  // namespace

ImplicationGraph ImplicationGraph::build(const Formula& f) {
  require_width_two(f, "ImplicationGraph");
  ImplicationGraph g;
  g.num_vars_ = f.num_vars;
  const int nodes = 2 * f.num_vars;
  std::vector<int> degree(static_cast<std::size_t>(nodes) + 1, 0);
  for (const auto& c : f.clauses) {
    ++degree[static_cast<std::size_t>(node_of(negate(c[0]))) + 1];
    ++degree[static_cast<std::size_t>(node_of(negate(c[1]))) + 1];
  }
  g.offsets_.assign(degree.begin(), degree.end());
  for (int i = 0; i < nodes; ++i)
    g.offsets_[static_cast<std::size_t>(i) + 1] += g.offsets_[static_cast<std::size_t>(i)];
  g.targets_.resize(static_cast<std::size_t>(g.offsets_.back()));
  std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& c : f.clauses) {
    const int u0 = node_of(negate(c[0]));
    const int u1 = node_of(negate(c[1]));
    g.targets_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u0)]++)] = node_of(c[1]);
    g.targets_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u1)]++)] = node_of(c[0]);
  }
  return g;
}

std::vector<Lit> ImplicationGraph::reachable_from(Lit from) const {
  std::vector<bool> seen(static_cast<std::size_t>(num_nodes()), false);
  std::vector<int> stack{node_of(from)};
  seen[static_cast<std::size_t>(node_of(from))] = true;
  std::vector<Lit> out;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    out.push_back(lit_of(u));
    auto [it, end] = successors(u);
    for (; it != end; ++it) {
      if (!seen[static_cast<std::size_t>(*it)]) {
        seen[static_cast<std::size_t>(*it)] = true;
        stack.push_back(*it);
      }
    }
  }
  return out;
}

namespace {

// Iterative Tarjan; component ids are assigned in completion order, so an
// edge u -> v between distinct components implies comp[v] < comp[u].
std::vector<int> strongly_connected_components(const ImplicationGraph& g, int& num_comps) {
  const int n = g.num_nodes();
  constexpr int kUnset = -1;
  std::vector<int> index(static_cast<std::size_t>(n), kUnset);
  std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
  std::vector<int> comp(static_cast<std::size_t>(n), kUnset);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> scc_stack;
  struct Frame {
    int node;
    const int* it;
    const int* end;
  };
  std::vector<Frame> frames;
  int next_index = 0;
  num_comps = 0;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != kUnset) continue;
    auto open = [&](int v) {
      index[static_cast<std::size_t>(v)] = lowlink[static_cast<std::size_t>(v)] = next_index++;
      scc_stack.push_back(v);
      on_stack[static_cast<std::size_t>(v)] = true;
      auto [b, e] = g.successors(v);
      frames.push_back({v, b, e});
    };
    open(root);
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.it != f.end) {
        const int w = *f.it++;
        if (index[static_cast<std::size_t>(w)] == kUnset) {
          open(w);
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          lowlink[static_cast<std::size_t>(f.node)] =
              std::min(lowlink[static_cast<std::size_t>(f.node)], index[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      const int v = f.node;
      frames.pop_back();
      if (!frames.empty()) {
        const int p = frames.back().node;
        lowlink[static_cast<std::size_t>(p)] =
            std::min(lowlink[static_cast<std::size_t>(p)], lowlink[static_cast<std::size_t>(v)]);
      }
      if (lowlink[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
        for (;;) {
          const int w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp[static_cast<std::size_t>(w)] = num_comps;
          if (w == v) break;
        }
        ++num_comps;
      }
    }
  }
  return comp;
}

}  // namespace

SatResult solve_2sat(const Formula& f) {
  require_width_two(f, "solve_2sat");
  const ImplicationGraph g = ImplicationGraph::build(f);
  int num_comps = 0;
  const std::vector<int> comp = strongly_connected_components(g, num_comps);
  SatResult res;
  for (int v = 1; v <= f.num_vars; ++v) {
    const int cp = comp[static_cast<std::size_t>(ImplicationGraph::node_of(v))];
    const int cn = comp[static_cast<std::size_t>(ImplicationGraph::node_of(-v))];
    if (cp == cn) {
      res.status = Status::kUnsat;
      res.certificate_var = v;
      return res;
    }
  }
  std::vector<bool> assignment(static_cast<std::size_t>(f.num_vars) + 1, false);
  for (int v = 1; v <= f.num_vars; ++v) {
    const int cp = comp[static_cast<std::size_t>(ImplicationGraph::node_of(v))];
    const int cn = comp[static_cast<std::size_t>(ImplicationGraph::node_of(-v))];
    // Completion order points toward sinks: the phase whose component closed
    // first is safe to set true.
    assignment[static_cast<std::size_t>(v)] = cp < cn;
  }
  if (!satisfies(f, assignment))
    throw std::logic_error("solve_2sat: witness failed verification");
  res.status = Status::kSat;
  res.witness = std::move(assignment);
  return res;
}

namespace {

class DpllSearch {
 public:
  DpllSearch(const Formula& f, long long budget)
      : formula_(f),
        budget_(budget),
        assign_(static_cast<std::size_t>(f.num_vars) + 1, 0),
        pos_count_(static_cast<std::size_t>(f.num_vars) + 1, 0),
        neg_count_(static_cast<std::size_t>(f.num_vars) + 1, 0) {}

  SatResult run() {
    SatResult res;
    res.status = search();
    if (res.status == Status::kSat) {
      if (!satisfies(formula_, model_))
        throw std::logic_error("solve_dpll: witness failed verification");
      res.witness = std::move(model_);
    }
    return res;
  }

 private:
  Status search() {
    if (budget_ <= 0) return Status::kUnknown;
    --budget_;
    const std::size_t mark = trail_.size();
    for (;;) {
      int branch_var = 0;
      const int scan = propagate_scan(branch_var);
      if (scan == kConflict) {
        rollback(mark);
        return Status::kUnsat;
      }
      if (scan == kAssigned) continue;  // units or pures placed, rescan
      if (branch_var == 0) {            // nothing unsatisfied remains
        capture_model();
        rollback(mark);
        return Status::kSat;
      }
      bool saw_unknown = false;
      for (const int phase : {+1, -1}) {
        set_var(branch_var, phase);
        const Status sub = search();
        trail_.pop_back();
        assign_[static_cast<std::size_t>(branch_var)] = 0;
        if (sub == Status::kSat) {
          rollback(mark);
          return Status::kSat;
        }
        if (sub == Status::kUnknown) saw_unknown = true;
      }
      rollback(mark);
      return saw_unknown ? Status::kUnknown : Status::kUnsat;
    }
  }

  static constexpr int kConflict = -1;
  static constexpr int kAssigned = 1;
  static constexpr int kStable = 0;

  // One pass over all clauses: detects conflicts, places unit and pure
  // assignments, and otherwise reports the lowest-index variable occurring
  // in an unsatisfied clause (0 when every clause is satisfied).
  int propagate_scan(int& branch_var) {
    branch_var = 0;
    touched_.clear();
    std::vector<Lit> units;
    bool any_open = false;
    for (const auto& clause : formula_.clauses) {
      bool sat = false;
      int unassigned = 0;
      Lit last_free = 0;
      for (Lit l : clause) {
        const int8_t a = assign_[static_cast<std::size_t>(var_of(l))];
        if (a == 0) {
          ++unassigned;
          last_free = l;
        } else if ((a > 0) == (l > 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (unassigned == 0) return kConflict;
      any_open = true;
      if (unassigned == 1) {
        units.push_back(last_free);
        continue;
      }
      for (Lit l : clause) {
        const int v = var_of(l);
        if (assign_[static_cast<std::size_t>(v)] != 0) continue;
        if (pos_count_[static_cast<std::size_t>(v)] == 0 &&
            neg_count_[static_cast<std::size_t>(v)] == 0)
          touched_.push_back(v);
        ++(l > 0 ? pos_count_ : neg_count_)[static_cast<std::size_t>(v)];
        if (branch_var == 0 || v < branch_var) branch_var = v;
      }
    }
    if (!any_open) {
      clear_counts();
      branch_var = 0;
      return kStable;
    }
    if (!units.empty()) {
      clear_counts();
      for (Lit u : units) {
        const int v = var_of(u);
        const int phase = u > 0 ? +1 : -1;
        const int8_t cur = assign_[static_cast<std::size_t>(v)];
        if (cur == 0)
          set_var(v, phase);
        else if (cur != phase)
          return kConflict;
      }
      return kAssigned;
    }
    bool placed_pure = false;
    for (const int v : touched_) {
      const int p = pos_count_[static_cast<std::size_t>(v)];
      const int q = neg_count_[static_cast<std::size_t>(v)];
      if (p > 0 && q == 0) {
        set_var(v, +1);
        placed_pure = true;
      } else if (q > 0 && p == 0) {
        set_var(v, -1);
        placed_pure = true;
      }
    }
    clear_counts();
    return placed_pure ? kAssigned : kStable;
  }

  void set_var(int v, int phase) {
    assign_[static_cast<std::size_t>(v)] = static_cast<int8_t>(phase);
    trail_.push_back(v);
  }

  void rollback(std::size_t mark) {
    while (trail_.size() > mark) {
      assign_[static_cast<std::size_t>(trail_.back())] = 0;
      trail_.pop_back();
    }
  }

  void clear_counts() {
    for (const int v : touched_) {
      pos_count_[static_cast<std::size_t>(v)] = 0;
      neg_count_[static_cast<std::size_t>(v)] = 0;
    }
    touched_.clear();
  }

  void capture_model() {
    model_.assign(static_cast<std::size_t>(formula_.num_vars) + 1, false);
    for (int v = 1; v <= formula_.num_vars; ++v)
      model_[static_cast<std::size_t>(v)] = assign_[static_cast<std::size_t>(v)] > 0;
  }

  const Formula& formula_;
  long long budget_;
  std::vector<int8_t> assign_;
  std::vector<int> pos_count_;
  std::vector<int> neg_count_;
  std::vector<int> touched_;
  std::vector<int> trail_;
  std::vector<bool> model_;
};

}  // namespace

SatResult solve_dpll(const Formula& f, long long node_budget) {
  if (node_budget < 1) throw std::invalid_argument("solve_dpll: node_budget must be >= 1");
  return DpllSearch(f, node_budget).run();
}

SatResult core_restricted_status(const Formula& f, int r, long long node_budget) {
  if (r < 1) throw std::invalid_argument("core_restricted_status: r must be >= 1");
  Formula restricted;
  restricted.num_vars = f.num_vars;
  for (const auto& clause : f.clauses) {
    bool inside = true;
    for (Lit l : clause)
      if (var_of(l) > r) {
        inside = false;
        break;
      }
    if (inside) restricted.clauses.push_back(clause);
  }
  return solve_dpll(restricted, node_budget);
}

ExposureTrace find_implied_set(const Formula& f, Lit start, double giant_fraction) {
  require_width_two(f, "find_implied_set");
  if (!(giant_fraction > 0.0 && giant_fraction <= 1.0))
    throw std::invalid_argument("find_implied_set: giant_fraction must lie in (0,1]");
  if (var_of(start) < 1 || var_of(start) > f.num_vars)
    throw std::invalid_argument("find_implied_set: start literal out of range");
  const int nodes = 2 * f.num_vars;
  std::vector<int> occurrences(static_cast<std::size_t>(nodes), 0);   // k per literal
  std::vector<int> removed_count(static_cast<std::size_t>(nodes), 0); // c per literal
  std::vector<std::vector<int>> clauses_with(static_cast<std::size_t>(nodes));
  for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const auto& c = f.clauses[ci];
    if (var_of(c[0]) == var_of(c[1]))
      throw std::invalid_argument("find_implied_set: clause repeats a variable");
    for (Lit l : c) {
      const int node = ImplicationGraph::node_of(l);
      ++occurrences[static_cast<std::size_t>(node)];
      clauses_with[static_cast<std::size_t>(node)].push_back(static_cast<int>(ci));
    }
  }
  std::vector<bool> flagged(static_cast<std::size_t>(nodes), false);
  std::vector<bool> removed(f.clauses.size(), false);
  std::priority_queue<int, std::vector<int>, std::greater<int>> eligible;

  ExposureTrace trace;
  trace.start = start;
  long long open = 0;
  const double giant_size = giant_fraction * 2.0 * f.num_vars;

  auto flag = [&](Lit z) {
    const int zn = ImplicationGraph::node_of(z);
    flagged[static_cast<std::size_t>(zn)] = true;
    trace.implied.push_back(z);
    const int nzn = ImplicationGraph::node_of(negate(z));
    open += occurrences[static_cast<std::size_t>(nzn)] -
            removed_count[static_cast<std::size_t>(nzn)];
    for (const int ci : clauses_with[static_cast<std::size_t>(nzn)])
      if (!removed[static_cast<std::size_t>(ci)]) eligible.push(ci);
  };

  flag(start);
  trace.walk.push_back(open);
  if (static_cast<double>(trace.implied.size()) >= giant_size) {
    trace.outcome = ExposureOutcome::kGiant;
    return trace;
  }

  while (!eligible.empty()) {
    const int ci = eligible.top();
    eligible.pop();
    if (removed[static_cast<std::size_t>(ci)]) continue;
    const auto& clause = f.clauses[static_cast<std::size_t>(ci)];
    Lit y = clause[0], z = clause[1];
    if (!flagged[static_cast<std::size_t>(ImplicationGraph::node_of(negate(y)))])
      std::swap(y, z);
    const int yn = ImplicationGraph::node_of(y);
    const int zn = ImplicationGraph::node_of(z);
    const int nzn = ImplicationGraph::node_of(negate(z));

    ExposureStep step;
    step.from = y;
    step.implied = z;
    step.count_neg_implied = occurrences[static_cast<std::size_t>(nzn)];
    step.removed_neg_implied = removed_count[static_cast<std::size_t>(nzn)];

    removed[static_cast<std::size_t>(ci)] = true;
    ++removed_count[static_cast<std::size_t>(yn)];
    open -= 1;  // ~y is implied by selection
    const bool z_flagged = flagged[static_cast<std::size_t>(zn)];
    const bool nz_flagged = flagged[static_cast<std::size_t>(nzn)];
    ++removed_count[static_cast<std::size_t>(zn)];
    if (nz_flagged) open -= 1;

    if (z_flagged) {
      step.case_label = 'A';
    } else if (!nz_flagged) {
      step.case_label = 'B';
      flag(z);
    } else {
      step.case_label = 'C';
      flag(z);  // records the contradicting literal
    }
    step.open_after = open;
    trace.steps.push_back(step);
    trace.walk.push_back(open);

    if (step.case_label == 'C') {
      trace.outcome = ExposureOutcome::kContradiction;
      return trace;
    }
    if (static_cast<double>(trace.implied.size()) >= giant_size) {
      trace.outcome = ExposureOutcome::kGiant;
      return trace;
    }
  }
  trace.outcome = ExposureOutcome::kClosed;
  return trace;
}

}  // namespace sfsat
