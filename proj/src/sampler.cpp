#include "sfsat/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sfsat {

namespace {

constexpr long long kExactSummationLimit = 10'000'000;
constexpr double kEulerGamma = 0.5772156649015329;

// Tail-corrected partial sums; valid for beta > 0, beta != 1. For beta > 1
// this converges to the ordinary series value, for beta < 1 to the analytic
// continuation.
double zeta_tail_corrected(double beta) {
  double sum = 0.0;
  long long i = 1;
  long long block_end = 64;
  double prev = 0.0;
  bool have_prev = false;
  for (;;) {
    for (; i <= block_end; ++i) sum += std::pow(static_cast<double>(i), -beta);
    const double nd = static_cast<double>(block_end);
    const double est =
        sum - std::pow(nd, 1.0 - beta) / (1.0 - beta) - 0.5 * std::pow(nd, -beta);
    if (have_prev && std::abs(est - prev) < 1e-10) return est;
    prev = est;
    have_prev = true;
    if (block_end > (1ll << 26))  // ~6.7e7 terms; estimate has long converged
      return est;
    block_end *= 2;
  }
}

}  // namespace

double zeta_unit_interval(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("zeta_unit_interval: beta must lie in (0,1), got " +
                            std::to_string(beta));
  return zeta_tail_corrected(beta);
}

double harmonic(long long n, double beta) {
  if (n < 1) throw std::domain_error("harmonic: n must be >= 1");
  if (beta < 0.0) throw std::domain_error("harmonic: beta must be >= 0");
  if (beta == 0.0) return static_cast<double>(n);
  if (n <= kExactSummationLimit) {
    // Ascending term magnitudes: sum from i = n down to 1.
    double sum = 0.0;
    for (long long i = n; i >= 1; --i) sum += std::pow(static_cast<double>(i), -beta);
    return sum;
  }
  const double nd = static_cast<double>(n);
  if (beta == 1.0) return kEulerGamma + std::log(nd);
  return zeta_tail_corrected(beta) + std::pow(nd, 1.0 - beta) / (1.0 - beta) +
         0.5 * std::pow(nd, -beta);
}

PowerLawDist PowerLawDist::make_table(int n, double beta) {
  if (n < 1) throw std::domain_error("PowerLawDist: n must be >= 1");
  if (beta < 0.0) throw std::domain_error("PowerLawDist: beta must be >= 0");
  PowerLawDist d;
  d.n_ = n;
  d.beta_ = beta;
  d.mode_ = SamplerMode::kExactTable;
  // Accumulate weights in extended precision so the per-entry increments of
  // the normalized table stay within 1e-12 of i^-beta / H.
  std::vector<double> weights(static_cast<std::size_t>(n));
  long double total = 0.0L;
  for (int i = 1; i <= n; ++i) {
    const double w = std::pow(static_cast<double>(i), -beta);
    weights[static_cast<std::size_t>(i - 1)] = w;
    total += w;
  }
  d.normalization_ = static_cast<double>(total);
  d.cumulative_.resize(static_cast<std::size_t>(n));
  long double run = 0.0L;
  for (int i = 0; i < n; ++i) {
    run += weights[static_cast<std::size_t>(i)];
    d.cumulative_[static_cast<std::size_t>(i)] = static_cast<double>(run / total);
  }
  d.cumulative_.back() = 1.0;  // exact by construction, pin against rounding
  return d;
}

PowerLawDist PowerLawDist::make_approx(int n, double beta) {
  if (n < 1) throw std::domain_error("PowerLawDist: n must be >= 1");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("PowerLawDist: approximate mode requires 0 < beta < 1");
  PowerLawDist d;
  d.n_ = n;
  d.beta_ = beta;
  d.mode_ = SamplerMode::kApproximateInverse;
  d.normalization_ = harmonic(n, beta);
  d.zeta_term_ = (1.0 - beta) * zeta_unit_interval(beta);
  return d;
}

int PowerLawDist::sample(double u) const {
  return mode_ == SamplerMode::kExactTable ? sample_variable(*this, u)
                                           : sample_variable_approx(*this, u);
}

int sample_variable(const PowerLawDist& dist, double u) {
  if (dist.mode() != SamplerMode::kExactTable)
    throw std::invalid_argument("sample_variable: distribution has no cumulative table");
  const auto& cum = dist.cumulative();
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  if (it == cum.end()) return dist.n();  // u == 1 - eps rounding guard
  return static_cast<int>(it - cum.begin()) + 1;
}

int sample_variable_approx(const PowerLawDist& dist, double u) {
  const double beta = dist.beta();
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("sample_variable_approx: beta must lie in (0,1)");
  const double zt = dist.mode() == SamplerMode::kApproximateInverse
                        ? dist.zeta_term()
                        : (1.0 - beta) * zeta_unit_interval(beta);
  const double scale = std::pow(static_cast<double>(dist.n()), 1.0 - beta) + zt;
  const double inner = scale * u - zt;
  // inner is positive for u in [0,1): at u = 0 it equals -(1-beta)zeta(beta) > 0.
  const double x = std::pow(inner, 1.0 / (1.0 - beta));
  long long idx = static_cast<long long>(std::floor(x)) + 1;
  if (idx < 1) idx = 1;
  if (idx > dist.n()) idx = dist.n();  // closed form can overshoot at finite n
  return static_cast<int>(idx);
}

RejectionEstimate rejection_probability(long long n, int k, double beta) {
  if (k < 1 || k > n)
    throw std::domain_error("rejection_probability: requires 1 <= k <= n");
  RejectionEstimate est;
  est.k = k;
  est.power_sums.assign(static_cast<std::size_t>(k), 0.0);
  const double h = harmonic(n, beta);
  // P_j accumulated by repeated multiplication, small terms first.
  for (long long i = n; i >= 1; --i) {
    const double p = std::pow(static_cast<double>(i), -beta) / h;
    double pj = p;
    for (int j = 0; j < k; ++j) {
      est.power_sums[static_cast<std::size_t>(j)] += pj;
      pj *= p;
    }
  }
  std::vector<double> r(static_cast<std::size_t>(k) + 1, 0.0);
  r[0] = 1.0;
  for (int kk = 1; kk <= k; ++kk) {
    double acc = 0.0;
    double falling = 1.0;  // (kk-1)! / (kk-j)! built incrementally over j
    for (int j = 1; j <= kk; ++j) {
      const double term =
          falling * est.power_sums[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(kk - j)];
      acc += (j % 2 == 1) ? term : -term;
      falling *= static_cast<double>(kk - j);
    }
    r[static_cast<std::size_t>(kk)] = acc;
  }
  // A single draw cannot collide; 1 - r_1 may carry rounding from P_1.
  est.coincidence_probability = k == 1 ? 0.0 : 1.0 - r[static_cast<std::size_t>(k)];
  est.coincidence_probability = std::clamp(est.coincidence_probability, 0.0, 1.0);
  return est;
}

}  // namespace sfsat
