#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sfsat/analysis.hpp"
#include "sfsat/generator.hpp"
#include "sfsat/rng.hpp"
#include "sfsat/theory.hpp"

using namespace sfsat;

namespace {

Formula make(int n, std::vector<Clause> clauses) {
  Formula f;
  f.num_vars = n;
  f.clauses = std::move(clauses);
  return f;
}

Formula complete_2cnf(int n) {
  Formula f;
  f.num_vars = n;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb)
          f.clauses.push_back({sa ? -a : a, sb ? -b : b});
  return f;
}

Formula random_formula(int n, long long m, int k, double beta, std::uint64_t seed) {
  GeneratorParams p;
  p.num_vars = n;
  p.num_clauses = m;
  p.clause_width = k;
  p.beta = beta;
  p.seed = seed;
  std::vector<std::string> discard;  // small-n instances trip diagnostics
  return generate_formula(p, &discard);
}

}  // namespace

TEST_CASE("occurrence counts: hand-counted example") {
  const auto stats = occurrence_counts(make(2, {{1, 2}, {-1, 2}}));
  CHECK(stats.literal_count(1) == 1);
  CHECK(stats.literal_count(-1) == 1);
  CHECK(stats.literal_count(2) == 2);
  CHECK(stats.literal_count(-2) == 0);
  CHECK(stats.variable_counts[1] == 2);
  CHECK(stats.variable_counts[2] == 2);
  CHECK(stats.mean_count == 2.0);
  CHECK(stats.total_literals == 4);
  CHECK(stats.distinct_clause_count == 2);
}

TEST_CASE("complete 2-CNF over n=3: every literal occurs 2(n-1) times") {
  const auto stats = occurrence_counts(complete_2cnf(3));
  for (int v = 1; v <= 3; ++v) {
    CHECK(stats.literal_count(v) == 4);
    CHECK(stats.literal_count(-v) == 4);
    CHECK(stats.variable_counts[static_cast<std::size_t>(v)] == 8);
  }
  CHECK(moment_ratio(stats) == doctest::Approx(8.0));  // 64 / 8
}

TEST_CASE("conservation: sum of K equals m*k on random formulas") {
  RandomStream seeds(1);
  for (int iter = 0; iter < 100; ++iter) {
    const int n = 5 + static_cast<int>(seeds.next_unit() * 50);
    const int k = 1 + static_cast<int>(seeds.next_unit() * 3);
    const long long m = 1 + static_cast<long long>(seeds.next_unit() * 200);
    const auto f = random_formula(n, m, std::min(k, n), 0.4, seeds.next_u64());
    const auto stats = occurrence_counts(f);
    long long total = 0;
    for (int v = 1; v <= n; ++v) total += stats.variable_counts[static_cast<std::size_t>(v)];
    CHECK(total == m * std::min(k, n));
    CHECK(total == stats.total_literals);
  }
}

TEST_CASE("moment_ratio: degenerate and error cases") {
  // All K_x equal to c gives ratio c.
  const auto stats = occurrence_counts(make(3, {{1, 2}, {3, 1}, {2, 3}}));
  CHECK(moment_ratio(stats) == doctest::Approx(2.0));
  CHECK_THROWS_AS(moment_ratio(occurrence_counts(make(3, {}))), std::domain_error);
}

TEST_CASE("criterion_literals: regular counts and plug-in values") {
  // One positive and one negative occurrence per literal: sum k(k-1) = 0.
  const auto regular = occurrence_counts(make(2, {{1, 2}, {-1, -2}}));
  CHECK(criterion_literals(regular) == 0.0);
  // k_l = 2 for every literal: 2n * 2 * 1 = 4n.
  const auto doubled =
      occurrence_counts(make(2, {{1, 2}, {-1, -2}, {1, 2}, {-1, -2}}));
  CHECK(criterion_literals(doubled) == 8.0);
}

TEST_CASE("criterion_variables: fixed-count formulas and the exact identity") {
  const auto three = occurrence_counts(make(2, {{1, 2}, {1, 2}, {-1, -2}}));
  CHECK(three.variable_counts[1] == 3);
  CHECK(criterion_variables(three) == 0.0);
  const auto four = occurrence_counts(make(2, {{1, 2}, {1, 2}, {-1, -2}, {-1, -2}}));
  CHECK(criterion_variables(four) == 2 * 4.0);
  RandomStream seeds(7);
  for (int iter = 0; iter < 50; ++iter) {
    const int n = 10 + static_cast<int>(seeds.next_unit() * 100);
    const auto f = random_formula(n, 3 * n, 2, 0.3, seeds.next_u64());
    const auto stats = occurrence_counts(f);
    const double identity =
        n * (stats.mean_count_sq - 3.0 * stats.mean_count);
    CHECK(criterion_variables(stats) == doctest::Approx(identity).epsilon(1e-9));
  }
}

TEST_CASE("criteria agree in sign away from the transition") {
  const int n = 20'000;
  const double threshold = threshold_2sat(0.3, n);
  int agreements = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    for (const double scale : {0.8, 1.2}) {
      const auto f = random_formula(n, std::llround(scale * threshold), 2, 0.3,
                                    derive_stream(888, static_cast<std::uint64_t>(t) * 2 +
                                                            (scale > 1.0)));
      const auto stats = occurrence_counts(f);
      const bool lit_positive = criterion_literals(stats) > 0;
      const bool var_positive = criterion_variables(stats) > 0;
      agreements += lit_positive == var_positive ? 1 : 0;
    }
  }
  CHECK(agreements >= 2 * trials - 4);  // majority, allowing stragglers
}

TEST_CASE("empirical profile: flat when all counts equal, unit integral") {
  const auto stats = occurrence_counts(make(3, {{1, 2}, {3, 1}, {2, 3}}));
  const auto profile = empirical_profile(stats);
  REQUIRE(profile.points.size() == 3);
  for (const auto& pt : profile.points) CHECK(pt.phi == doctest::Approx(1.0));
  // Trapezoid integral over (0,1] with the left edge extended flat.
  auto integral = [](const NormalizedProfile& p) {
    double acc = p.points.front().phi * p.points.front().x;
    for (std::size_t i = 1; i < p.points.size(); ++i)
      acc += 0.5 * (p.points[i].phi + p.points[i - 1].phi) *
             (p.points[i].x - p.points[i - 1].x);
    return acc;
  };
  CHECK(integral(profile) == doctest::Approx(1.0).epsilon(0.01));
  RandomStream seeds(3);
  for (int iter = 0; iter < 20; ++iter) {
    const auto f = random_formula(500, 2000, 3, 0.5, seeds.next_u64());
    CHECK(integral(empirical_profile(occurrence_counts(f))) ==
          doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("synthetic power-law counts reproduce the limiting profile shape") {
  const int n = 10'000;
  const double beta = 0.5;
  std::vector<double> counts(n);
  for (int j = 1; j <= n; ++j)
    counts[static_cast<std::size_t>(j - 1)] = std::pow(static_cast<double>(j), -beta);
  const auto profile = profile_from_counts(counts);
  for (const auto& pt : profile.points) {
    if (pt.x < 10.0 / n) continue;
    const double want = (1.0 - beta) * std::pow(pt.x, -beta);
    CHECK(std::abs(pt.phi - want) / want < 0.02);
  }
}

TEST_CASE("fit_beta: exact synthetic slopes and error paths") {
  const int n = 5000;
  for (const double beta : {0.3, 0.5, 0.82}) {
    std::vector<double> counts(n);
    for (int j = 1; j <= n; ++j)
      counts[static_cast<std::size_t>(j - 1)] = std::pow(static_cast<double>(j), -beta);
    const auto fit = fit_beta(profile_from_counts(counts), 10.0 / n);
    CHECK(std::abs(fit.beta_hat - beta) < 0.01);
    CHECK(fit.delta_hat == doctest::Approx(delta_from_beta(fit.beta_hat)));
  }
  // Flat counts: beta_hat near zero.
  const auto flat = fit_beta(profile_from_counts(std::vector<double>(n, 3.0)), 10.0 / n);
  CHECK(std::abs(flat.beta_hat) < 0.05);
  CHECK_THROWS_AS(fit_beta(profile_from_counts({1.0, 0.5, 0.3}), 0.01), FitError);
}

TEST_CASE("fit_beta roundtrip on a generated formula") {
  const auto f = random_formula(100'000, 250'000, 3, 0.82, 20240817);
  const auto stats = occurrence_counts(f);
  const auto fit = fit_beta(empirical_profile(stats), 10.0 / 100'000);
  CHECK(fit.beta_hat > 0.77);
  CHECK(fit.beta_hat < 0.87);
}

TEST_CASE("fit_beta on beta = 0 formulas stays near zero") {
  // Flatness of the rank profile needs concentrated counts; at mean
  // occurrence 7.5 the sorted Poisson spread alone fakes a slope of ~0.3,
  // so this runs in the dense regime (mean occurrence 3000).
  const auto f = random_formula(4000, 4'000'000, 3, 0.0, 5);
  const auto fit = fit_beta(empirical_profile(occurrence_counts(f)), 10.0 / 4000);
  CHECK(std::abs(fit.beta_hat) < 0.05);
}

TEST_CASE("fit_delta_tail: synthetic histogram with slope 3") {
  OccurrenceStats stats;
  stats.num_vars = 0;
  for (long long K = 10; K <= 30'000; ++K) {
    const long long count = std::llround(1e9 * std::pow(static_cast<double>(K), -3.0));
    if (count > 0) {
      stats.degree_histogram[K] = count;
      stats.num_vars += static_cast<int>(count);
      stats.total_literals += K * count;
    }
  }
  const auto fit = fit_delta_tail(stats, 10);
  CHECK(std::abs(fit.delta_hat - 3.0) < 0.1);
  CHECK(fit.beta_hat == doctest::Approx(beta_from_delta(fit.delta_hat)));
  CHECK_THROWS_AS(fit_delta_tail(stats, 29'000), FitError);
}

TEST_CASE("concentration_tail_cutoff picks the larger bound") {
  const double n = 1e5;
  const double hoeffding = std::sqrt(n * std::log(n));
  CHECK(concentration_tail_cutoff(100'000, 0.0) == doctest::Approx(hoeffding));
  const double chernoff = std::pow(n * n * std::log(n), 0.82 / 2.82);
  CHECK(concentration_tail_cutoff(100'000, 0.82) == doctest::Approx(std::max(hoeffding, chernoff)));
}

TEST_CASE("default_tail_cutoff keeps enough tail support") {
  const auto f = random_formula(100'000, 250'000, 3, 0.82, 912);
  const auto stats = occurrence_counts(f);
  const long long cutoff = default_tail_cutoff(stats, 0.82);
  CHECK(cutoff < std::llround(concentration_tail_cutoff(100'000, 0.82)));
  long long tail = 0;
  for (const auto& [k, count] : stats.degree_histogram)
    if (k >= cutoff) tail += count;
  CHECK(tail >= 500);
  // Fitting at the support-bounded default recovers the tail exponent.
  const auto fit = fit_delta_tail(stats, cutoff);
  CHECK(std::abs(fit.delta_hat - 2.22) < 0.25);
}

TEST_CASE("pooled counts concatenate variable populations") {
  const auto f1 = make(2, {{1, 2}});
  const auto f2 = make(3, {{1, 2}, {2, 3}, {-1, 3}});
  const auto pooled = pooled_occurrence_counts({&f1, &f2});
  CHECK(pooled.num_vars == 5);
  CHECK(pooled.total_literals == 8);
  CHECK(pooled.variable_counts.size() == 6);
  CHECK(pooled.variable_counts[1] == 1);  // from f1
  CHECK(pooled.variable_counts[3] == 2);  // f2's variable 1
}

TEST_CASE("profile is invariant under serialize/parse roundtrip") {
  const auto f = random_formula(2000, 6000, 3, 0.7, 31);
  std::istringstream in(to_dimacs_string(f));
  const Formula back = parse_dimacs_formula(in);
  const auto p1 = empirical_profile(occurrence_counts(f));
  const auto p2 = empirical_profile(occurrence_counts(back));
  REQUIRE(p1.points.size() == p2.points.size());
  for (std::size_t i = 0; i < p1.points.size(); ++i)
    CHECK(p1.points[i].phi == p2.points[i].phi);
}

TEST_CASE("CSV exports carry the documented headers") {
  const auto f = make(2, {{1, 2}, {-1, 2}});
  const auto stats = occurrence_counts(f);
  std::ostringstream hist, prof, crit;
  write_histogram_csv(hist, stats);
  CHECK(hist.str().rfind("K,count\n", 0) == 0);
  write_profile_csv(prof, empirical_profile(stats));
  CHECK(prof.str().rfind("x,phi\n", 0) == 0);
  write_criteria_csv(crit, 2, 2, 2, 0.5, stats);
  CHECK(crit.str().rfind("n,m,k,beta,E_K,E_K2,ratio,Q_lit,Q_var\n", 0) == 0);
}
