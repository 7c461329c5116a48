#include "sfsat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace sfsat {

Clause canonical_clause(const Clause& c) {
  Clause out = c;
  std::sort(out.begin(), out.end(), [](Lit a, Lit b) {
    if (var_of(a) != var_of(b)) return var_of(a) < var_of(b);
    return a > b;  // positive phase first
  });
  return out;
}

bool satisfies(const Formula& f, const std::vector<bool>& assignment) {
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (Lit l : clause) {
      const int v = var_of(l);
      if (v <= 0 || v > f.num_vars || static_cast<std::size_t>(v) >= assignment.size())
        return false;
      const bool value = assignment[static_cast<std::size_t>(v)];
      if ((l > 0 && value) || (l < 0 && !value)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

bool parse_int(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  std::size_t i = tok[0] == '-' ? 1 : 0;
  if (i == tok.size()) return false;
  long long v = 0;
  for (; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    v = v * 10 + (tok[i] - '0');
    if (v > (1ll << 40)) return false;  // nothing in a CNF needs more
  }
  out = tok[0] == '-' ? -v : v;
  return true;
}

}  // namespace

DimacsDocument parse_dimacs(std::istream& in) {
  DimacsDocument doc;
  bool have_header = false;
  Clause current;
  bool clause_open = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') {
      std::size_t start = first + 1;
      if (start < line.size() && line[start] == ' ') ++start;
      doc.comments.push_back(line.substr(start));
      continue;
    }
    if (line[first] == 'p') {
      if (have_header) throw ParseError(lineno, "duplicated 'p cnf' header");
      std::istringstream hs(line.substr(first));
      std::string p, fmt;
      long long nv = -1, nc = -1;
      hs >> p >> fmt >> nv >> nc;
      if (p != "p" || fmt != "cnf" || hs.fail() || nv < 0 || nc < 0)
        throw ParseError(lineno, "malformed 'p cnf' header");
      doc.header_vars = static_cast<int>(nv);
      doc.header_clauses = nc;
      doc.formula.num_vars = doc.header_vars;
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause data before 'p cnf' header");
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (tok[0] == 'c') break;  // trailing comment
      long long value = 0;
      if (!parse_int(tok, value))
        throw ParseError(lineno, "non-integer token '" + tok + "'");
      if (value == 0) {
        doc.formula.clauses.push_back(std::move(current));
        current = Clause();
        clause_open = false;
        continue;
      }
      if (value > doc.header_vars || value < -static_cast<long long>(doc.header_vars))
        throw ParseError(lineno, "literal " + tok + " exceeds declared variable count");
      current.push_back(static_cast<Lit>(value));
      clause_open = true;
    }
  }
  if (!have_header) throw ParseError(lineno, "missing 'p cnf' header");
  if (clause_open) {
    doc.warnings.push_back("final clause not zero-terminated; kept as read");
    doc.formula.clauses.push_back(std::move(current));
  }
  if (static_cast<long long>(doc.formula.clauses.size()) != doc.header_clauses) {
    doc.warnings.push_back("header declares " + std::to_string(doc.header_clauses) +
                           " clauses, file contains " +
                           std::to_string(doc.formula.clauses.size()));
  }
  return doc;
}

Formula parse_dimacs_formula(std::istream& in) { return parse_dimacs(in).formula; }

void write_dimacs(std::ostream& out, const Formula& f,
                  const std::vector<std::pair<std::string, std::string>>& metadata) {
  for (const auto& [key, value] : metadata) out << "c " << key << " = " << value << "\n";
  out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& clause : f.clauses) {
    for (Lit l : clause) out << l << " ";
    out << "0\n";
  }
}

std::string to_dimacs_string(const Formula& f,
                             const std::vector<std::pair<std::string, std::string>>& metadata) {
  std::ostringstream os;
  write_dimacs(os, f, metadata);
  return os.str();
}

}  // namespace sfsat
