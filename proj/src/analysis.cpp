#include "sfsat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <unordered_set>

namespace sfsat {

namespace {

struct ClauseHash {
  std::size_t operator()(const Clause& c) const {
    std::size_t h = 1469598103934665603ull;
    for (Lit l : c) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
      h *= 1099511628211ull;
    }
    return h;
  }
};

void finalize_moments(OccurrenceStats& s) {
  long double sum = 0.0L, sum_sq = 0.0L;
  for (std::size_t v = 1; v < s.variable_counts.size(); ++v) {
    const long long k = s.variable_counts[v];
    sum += k;
    sum_sq += static_cast<long double>(k) * k;
    ++s.degree_histogram[k];
  }
  const double n = static_cast<double>(s.num_vars);
  s.mean_count = static_cast<double>(sum) / n;
  s.mean_count_sq = static_cast<double>(sum_sq) / n;
}

}  // namespace

OccurrenceStats occurrence_counts(const Formula& f) {
  OccurrenceStats s;
  s.num_vars = f.num_vars;
  s.positive_counts.assign(static_cast<std::size_t>(f.num_vars) + 1, 0);
  s.negative_counts.assign(static_cast<std::size_t>(f.num_vars) + 1, 0);
  s.variable_counts.assign(static_cast<std::size_t>(f.num_vars) + 1, 0);
  std::unordered_set<Clause, ClauseHash> distinct;
  distinct.reserve(f.clauses.size());
  for (const auto& clause : f.clauses) {
    for (Lit l : clause) {
      const std::size_t v = static_cast<std::size_t>(var_of(l));
      ++(l > 0 ? s.positive_counts : s.negative_counts)[v];
      ++s.variable_counts[v];
      ++s.total_literals;
    }
    distinct.insert(canonical_clause(clause));
  }
  s.distinct_clause_count = static_cast<long long>(distinct.size());
  finalize_moments(s);
  return s;
}

OccurrenceStats pooled_occurrence_counts(const std::vector<const Formula*>& formulas) {
  OccurrenceStats s;
  s.positive_counts.push_back(0);  // 1-based
  s.negative_counts.push_back(0);
  s.variable_counts.push_back(0);
  for (const Formula* f : formulas) {
    OccurrenceStats part = occurrence_counts(*f);
    s.num_vars += part.num_vars;
    s.total_literals += part.total_literals;
    s.distinct_clause_count += part.distinct_clause_count;
    s.positive_counts.insert(s.positive_counts.end(), part.positive_counts.begin() + 1,
                             part.positive_counts.end());
    s.negative_counts.insert(s.negative_counts.end(), part.negative_counts.begin() + 1,
                             part.negative_counts.end());
    s.variable_counts.insert(s.variable_counts.end(), part.variable_counts.begin() + 1,
                             part.variable_counts.end());
  }
  if (s.num_vars > 0) finalize_moments(s);
  return s;
}

double moment_ratio(const OccurrenceStats& stats) {
  if (stats.total_literals <= 0)
    throw std::domain_error("moment_ratio: empty formula");
  return stats.mean_count_sq / stats.mean_count;
}

double criterion_literals(const OccurrenceStats& stats) {
  long double q = 0.0L;
  for (std::size_t v = 1; v < stats.variable_counts.size(); ++v) {
    const long double kp = static_cast<long double>(stats.positive_counts[v]);
    const long double kn = static_cast<long double>(stats.negative_counts[v]);
    q += kp * (kn - 1.0L) + kn * (kp - 1.0L);
  }
  return static_cast<double>(q);
}

double criterion_variables(const OccurrenceStats& stats) {
  long double q = 0.0L;
  for (std::size_t v = 1; v < stats.variable_counts.size(); ++v) {
    const long double k = static_cast<long double>(stats.variable_counts[v]);
    q += k * (k - 3.0L);
  }
  return static_cast<double>(q);
}

NormalizedProfile profile_from_counts(std::vector<double> counts) {
  std::sort(counts.begin(), counts.end(), std::greater<>());
  long double total = 0.0L;
  for (double c : counts) total += c;
  NormalizedProfile p;
  if (total <= 0.0L) return p;
  const double n = static_cast<double>(counts.size());
  const double scale = static_cast<double>(n / total);
  p.points.resize(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    p.points[j].x = static_cast<double>(j + 1) / n;
    p.points[j].phi = scale * counts[j];
  }
  return p;
}

NormalizedProfile empirical_profile(const OccurrenceStats& stats) {
  if (stats.total_literals <= 0)
    throw std::domain_error("empirical_profile: empty formula");
  std::vector<double> counts;
  counts.reserve(static_cast<std::size_t>(stats.num_vars));
  for (std::size_t v = 1; v < stats.variable_counts.size(); ++v)
    counts.push_back(static_cast<double>(stats.variable_counts[v]));
  return profile_from_counts(std::move(counts));
}

namespace {

struct LineFit {
  double slope = 0.0;
  double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - fit.slope * sx) / n;
  double sq = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + intercept);
    sq += r * r;
  }
  fit.rms = std::sqrt(sq / n);
  return fit;
}

double delta_of_beta(double beta) { return 1.0 / beta + 1.0; }
double beta_of_delta(double delta) { return 1.0 / (delta - 1.0); }

}  // namespace

FitResult fit_beta(const NormalizedProfile& profile, double x_min) {
  if (!(x_min > 0.0 && x_min < 1.0))
    throw std::invalid_argument("fit_beta: x_min must lie in (0,1)");
  // Aggregate into logarithmic x bins before the least-squares line, so the
  // slope is weighted per decade the way a log-log plot reads, not by the
  // point mass that piles up at x near 1.
  std::size_t usable = 0;
  std::vector<double> xs, ys;
  double lo = x_min;
  auto it = profile.points.begin();
  while (it != profile.points.end() && it->x < x_min) ++it;
  while (it != profile.points.end()) {
    const double hi = lo * kLogBinRatio;
    double sum_x = 0.0, sum_y = 0.0;
    int count = 0;
    for (; it != profile.points.end() && it->x < hi; ++it) {
      if (it->phi <= 0.0) continue;  // zero counts carry no slope
      sum_x += std::log(it->x);
      sum_y += std::log(it->phi);
      ++count;
    }
    if (count > 0) {
      xs.push_back(sum_x / count);
      ys.push_back(sum_y / count);
      usable += static_cast<std::size_t>(count);
    }
    lo = hi;
  }
  if (usable < 10) throw FitError("fit_beta: fewer than 10 points above x_min");
  if (xs.size() < 2) throw FitError("fit_beta: profile spans fewer than 2 bins");
  const LineFit fit = least_squares(xs, ys);
  FitResult res;
  res.beta_hat = -fit.slope;
  res.delta_hat = res.beta_hat > 0.0 ? delta_of_beta(res.beta_hat)
                                     : std::numeric_limits<double>::quiet_NaN();
  res.range_lo = std::exp(xs.front());
  res.range_hi = std::exp(xs.back());
  res.residual = fit.rms;
  return res;
}

FitResult fit_delta_tail(const OccurrenceStats& stats, long long k_min) {
  if (k_min < 1) throw std::invalid_argument("fit_delta_tail: k_min must be >= 1");
  long long k_max = 0;
  for (const auto& [k, cnt] : stats.degree_histogram)
    if (cnt > 0 && k > k_max) k_max = k;
  if (k_max < k_min) throw FitError("fit_delta_tail: no counts at or above k_min");
  std::vector<double> centers, densities;
  double lo = static_cast<double>(k_min);
  auto it = stats.degree_histogram.lower_bound(k_min);
  while (lo <= static_cast<double>(k_max)) {
    const double hi = lo * kLogBinRatio;
    long long in_bin = 0;
    while (it != stats.degree_histogram.end() && static_cast<double>(it->first) < hi) {
      in_bin += it->second;
      ++it;
    }
    if (in_bin > 0) {
      centers.push_back(std::log(std::sqrt(lo * hi)));
      densities.push_back(std::log(static_cast<double>(in_bin) / (hi - lo)));
    }
    lo = hi;
  }
  if (centers.size() < 5) throw FitError("fit_delta_tail: fewer than 5 nonempty bins");
  const LineFit fit = least_squares(centers, densities);
  FitResult res;
  res.delta_hat = -fit.slope;
  res.beta_hat = res.delta_hat > 1.0 ? beta_of_delta(res.delta_hat)
                                     : std::numeric_limits<double>::quiet_NaN();
  res.range_lo = static_cast<double>(k_min);
  res.range_hi = static_cast<double>(k_max);
  res.residual = fit.rms;
  return res;
}

double concentration_tail_cutoff(long long n, double beta) {
  const double nd = static_cast<double>(n);
  const double logn = std::log(nd);
  const double hoeffding = std::sqrt(nd * logn);
  if (!(beta > 0.0)) return hoeffding;
  const double chernoff = std::pow(nd * nd * logn, beta / (2.0 + beta));
  return std::max(hoeffding, chernoff);
}

long long default_tail_cutoff(const OccurrenceStats& stats, double beta) {
  constexpr long long kMinTailSupport = 500;
  long long cum = 0;
  long long support_bound = 1;
  for (auto it = stats.degree_histogram.rbegin(); it != stats.degree_histogram.rend();
       ++it) {
    cum += it->second;
    if (cum >= kMinTailSupport) {
      support_bound = it->first;
      break;
    }
  }
  const long long concentration =
      std::llround(concentration_tail_cutoff(stats.num_vars, std::max(0.0, beta)));
  return std::max<long long>(1, std::min(concentration, support_bound));
}

void write_histogram_csv(std::ostream& out, const OccurrenceStats& stats) {
  out << "K,count\n";
  for (const auto& [k, cnt] : stats.degree_histogram) out << k << "," << cnt << "\n";
}

void write_profile_csv(std::ostream& out, const NormalizedProfile& p) {
  out << "x,phi\n";
  for (const auto& pt : p.points) out << pt.x << "," << pt.phi << "\n";
}

void write_criteria_csv(std::ostream& out, long long n, long long m, int k, double beta,
                        const OccurrenceStats& stats) {
  out << "n,m,k,beta,E_K,E_K2,ratio,Q_lit,Q_var\n";
  out << n << "," << m << "," << k << "," << beta << "," << stats.mean_count << ","
      << stats.mean_count_sq << "," << moment_ratio(stats) << ","
      << criterion_literals(stats) << "," << criterion_variables(stats) << "\n";
}

}  // namespace sfsat
