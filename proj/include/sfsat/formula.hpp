#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sfsat {

// A literal is a nonzero signed variable index, DIMACS style: i stands for
// the variable x_i, -i for its negation, |i| <= num_vars.
using Lit = int;

inline int var_of(Lit l) { return l < 0 ? -l : l; }
inline Lit negate(Lit l) { return -l; }

using Clause = std::vector<Lit>;

// Conjunction of possibly repeated clauses (multiset semantics).
struct Formula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  long long size() const {  // total literal count |F|
    long long s = 0;
    for (const auto& c : clauses) s += static_cast<long long>(c.size());
    return s;
  }
};

// Canonical form for duplicate-clause statistics: literals sorted by
// variable index, positive phase first within a variable.
Clause canonical_clause(const Clause& c);

// True when the assignment (indexed 1..num_vars) satisfies every clause.
// Used as the independent witness check by both solvers.
bool satisfies(const Formula& f, const std::vector<bool>& assignment);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct DimacsDocument {
  std::vector<std::string> comments;  // comment lines, 'c ' stripped
  int header_vars = 0;
  long long header_clauses = 0;
  Formula formula;
  std::vector<std::string> warnings;
};

// Tolerant DIMACS CNF reader. Clauses may span lines, whitespace is free
// form, comments may appear anywhere. Hard errors: missing or duplicated
// header, literal out of range, non-integer token. A clause count that
// disagrees with the header is only a warning; the clauses actually read
// win. Never preallocates from header claims.
DimacsDocument parse_dimacs(std::istream& in);

// Convenience wrapper returning just the formula.
Formula parse_dimacs_formula(std::istream& in);

// Writes `c key = value` comment lines, the `p cnf` header, then one line
// per clause, space separated and zero terminated. ASCII, '\n' endings.
void write_dimacs(std::ostream& out, const Formula& f,
                  const std::vector<std::pair<std::string, std::string>>& metadata = {});

std::string to_dimacs_string(const Formula& f,
                             const std::vector<std::pair<std::string, std::string>>& metadata = {});

}  // namespace sfsat
