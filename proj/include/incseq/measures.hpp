#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>
#include <vector>

#include "incseq/combinatorics.hpp"
#include "incseq/counting.hpp"
#include "incseq/sampling.hpp"
#include "incseq/types.hpp"

namespace incseq {

// The distribution of Z_{n,k} under the uniform measure, as exact counts
// of permutations per Z value.
struct ZHistogram {
  long n = 0;
  long k = 0;
  std::map<BigCount, BigCount> counts;
  bool exact = true;
  long samples = 0;  // meaningful only when !exact
};

inline constexpr long kHistogramDefaultBudget = 8;

// Exhaustive histogram over all n! permutations (in-place generation).
inline ZHistogram z_histogram_exact(long n, long k, long budget = kHistogramDefaultBudget) {
  if (k < 1 || k > n) throw std::domain_error("z_histogram_exact: need 1 <= k <= n");
  if (n > budget) throw BudgetError("z_histogram_exact: n exceeds enumeration budget");
  ZHistogram hist;
  hist.n = n;
  hist.k = k;
  std::vector<int> v(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) v[static_cast<size_t>(i)] = static_cast<int>(i) + 1;
  Permutation perm;
  do {
    perm.images = v;
    hist.counts[count_k_incseq(perm, static_cast<int>(k))] += 1;
  } while (std::next_permutation(v.begin(), v.end()));
  return hist;
}

struct TVReport {
  long n = 0;
  long k = 0;
  bool exact = true;
  ExactRatio tv_exact;   // set in exact mode
  double tv = 0.0;       // float view in both modes
  double std_error = 0.0;   // estimated mode only
  long samples = 0;
};

// || mu_{n;k} - U_n || = (1/2) sum_sigma | Z(sigma) k!/(C(n,k) n!) - 1/n! |,
// grouped by Z value. Exact rational.
inline TVReport total_variation_exact(long n, long k, long budget = kHistogramDefaultBudget) {
  const ZHistogram hist = z_histogram_exact(n, k, budget);
  const BigCount choose = binomial(n, k);
  const BigCount kfact = factorial(k);
  BigCount abs_sum = 0;  // sum over sigma of |Z k! - C(n,k)|, a big integer
  for (const auto& [z, cnt] : hist.counts) {
    const BigCount diff = z * kfact - choose;
    abs_sum += cnt * (diff < 0 ? -diff : diff);
  }
  TVReport report;
  report.n = n;
  report.k = k;
  report.exact = true;
  report.tv_exact = ExactRatio(abs_sum, 2 * choose * factorial(n));
  report.tv = to_double(report.tv_exact);
  if (report.tv_exact < 0 || report.tv_exact > 1)
    throw InvariantViolation("total_variation_exact: TV outside [0,1]");
  return report;
}

// The density ratio mu/U equals Z/EZ, so TV = (1/2) E_U |Z/EZ - 1|; this
// Monte Carlo estimator reaches far beyond enumerable n.
inline TVReport total_variation_mc(long n, long k, long samples, RandomStream& rng) {
  if (samples < 1) throw std::domain_error("total_variation_mc: need samples >= 1");
  const BigCount choose = binomial(n, k);
  const BigCount kfact = factorial(k);
  double sum = 0.0, sum_sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    const Permutation perm = sample_uniform(static_cast<int>(n), rng);
    const BigCount z = count_k_incseq_fast(perm, static_cast<int>(k));
    BigCount diff = z * kfact - choose;
    if (diff < 0) diff = -diff;
    const double x = to_double(ExactRatio(diff, choose));  // |Z/EZ - 1|
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  TVReport report;
  report.n = n;
  report.k = k;
  report.exact = false;
  report.samples = samples;
  report.tv = mean / 2.0;
  report.std_error = std::sqrt(var / static_cast<double>(samples)) / 2.0;
  return report;
}

struct ExceedanceEstimate {
  long n = 0;
  long k = 0;
  double epsilon = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

// Monte Carlo estimate of P(|Z/EZ - 1| > eps) under the uniform measure.
// The comparison |Z k! - C(n,k)| > eps C(n,k) is done in exact rational
// arithmetic so boundary cases never depend on float rounding.
inline ExceedanceEstimate lln_exceedance(long n, long k, double epsilon, long samples, RandomStream& rng) {
  if (!(epsilon > 0)) throw std::domain_error("lln_exceedance: need epsilon > 0");
  if (samples < 1) throw std::domain_error("lln_exceedance: need samples >= 1");
  const BigCount choose = binomial(n, k);
  const BigCount kfact = factorial(k);
  const ExactRatio eps(epsilon);  // exact value of the double
  const BigCount eps_num = boost::multiprecision::numerator(eps);
  const BigCount eps_den = boost::multiprecision::denominator(eps);
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    const Permutation perm = sample_uniform(static_cast<int>(n), rng);
    const BigCount z = count_k_incseq_fast(perm, static_cast<int>(k));
    BigCount diff = z * kfact - choose;
    if (diff < 0) diff = -diff;
    if (diff * eps_den > eps_num * choose) ++hits;
  }
  ExceedanceEstimate est;
  est.n = n;
  est.k = k;
  est.epsilon = epsilon;
  est.samples = samples;
  est.value = static_cast<double>(hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(samples));
  return est;
}

struct ExponentScanCell {
  double l = 0.0;
  long n = 0;
  long k = 0;
  double epsilon = 0.0;
  double exceedance = 0.0;
  double std_error = 0.0;
  long samples = 0;
  uint64_t seed = 0;
};

// lln_exceedance over a (l, n) grid with k = max(1, floor(n^l)). Each cell
// runs on its own stream derived from the master by a stable key, so the
// grid is reproducible cell-by-cell, extending it never perturbs existing
// cells, and cells may run on any number of worker threads with results
// assembled in job order.
inline std::vector<ExponentScanCell> exponent_scan(const std::vector<double>& l_list,
                                                   const std::vector<long>& n_list, double epsilon,
                                                   long samples, const RandomStream& master,
                                                   int threads = 1) {
  std::vector<ExponentScanCell> cells;
  for (const double l : l_list) {
    if (!(l > 0.0 && l < 0.5)) throw std::domain_error("exponent_scan: each l must lie in (0, 0.5)");
    for (const long n : n_list) {
      const long k = std::max(1L, static_cast<long>(std::floor(std::pow(static_cast<double>(n), l))));
      ExponentScanCell cell;
      cell.l = l;
      cell.n = n;
      cell.k = k;
      cell.epsilon = epsilon;
      cell.samples = samples;
      cells.push_back(cell);
    }
  }
  auto run_cell = [&](ExponentScanCell& cell) {
    char key[128];
    std::snprintf(key, sizeof key, "exponent-scan|l=%.17g|n=%ld|eps=%.17g|samples=%ld", cell.l, cell.n,
                  epsilon, samples);
    RandomStream stream = master.child(job_key(key));
    cell.seed = stream.root_seed();
    const ExceedanceEstimate est = lln_exceedance(cell.n, cell.k, epsilon, samples, stream);
    cell.exceedance = est.value;
    cell.std_error = est.std_error;
  };
  if (threads <= 1 || cells.size() <= 1) {
    for (auto& cell : cells) run_cell(cell);
    return cells;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  const size_t workers = std::min<size_t>(static_cast<size_t>(threads), cells.size());
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) run_cell(cells[i]);
    });
  for (auto& t : pool) t.join();
  return cells;
}

}  // namespace incseq
