#pragma once

#include <cmath>
#include <vector>

#include "incseq/atable.hpp"
#include "incseq/combinatorics.hpp"
#include "incseq/types.hpp"

namespace incseq {

// Exact moments of Z_{n,k}, all rationals in lowest terms.
struct MomentSummary {
  long n = 0;
  long k = 0;
  ExactRatio first;     // E Z
  ExactRatio second;    // E Z^2
  ExactRatio variance;  // E Z^2 - (E Z)^2
  ExactRatio ratio;     // variance / (E Z)^2
};

// E Z^2_{n,k} = sum_{j=0}^{k} C(n, 2k-j) A(k-j, j) / (2k-j)!
inline ExactRatio second_moment(long n, long k, long a_budget = kATableDefaultBudget) {
  if (k < 1 || k > n) throw std::domain_error("second_moment: need 1 <= k <= n");
  ExactRatio total = 0;
  for (long j = 0; j <= k; ++j) {
    const BigCount choose = binomial(BigCount(n), BigCount(2 * k - j));
    if (choose == 0) continue;
    total += ExactRatio(choose * a_exact(k - j, j, a_budget), factorial(2 * k - j));
  }
  return total;
}

inline MomentSummary moment_summary(long n, long k, long a_budget = kATableDefaultBudget) {
  MomentSummary s;
  s.n = n;
  s.k = k;
  s.first = expected_count(n, k);
  s.second = second_moment(n, k, a_budget);
  s.variance = s.second - s.first * s.first;
  if (s.variance < 0) throw InvariantViolation("moment_summary: negative variance");
  s.ratio = s.variance / (s.first * s.first);
  return s;
}

// B(n,k,j) = ((n-k)!)^2/(n!(n-2k+j)!) * ((2k)!/(2k-j)!)^2 * (2k)^{j/2},
// evaluated in log space; the diagnostic envelope of the overlap terms.
inline double b_term(long n, long k, long j) {
  if (j < 1 || j > k || 2 * k - j > n) throw std::domain_error("b_term: need 1 <= j <= k and 2k-j <= n");
  const double lg = 2.0 * log_factorial(static_cast<double>(n - k)) -
                    log_factorial(static_cast<double>(n)) -
                    log_factorial(static_cast<double>(n - 2 * k + j)) +
                    2.0 * (log_factorial(static_cast<double>(2 * k)) -
                           log_factorial(static_cast<double>(2 * k - j))) +
                    0.5 * static_cast<double>(j) * std::log(2.0 * static_cast<double>(k));
  return std::exp(lg);
}

// C(n,k) = ((n-k)!)^2/(n!(n-2k+1)!) * k^4 (2k-1)^{-2} (2k-2)^{1/2}: the
// j = 1 lower-bound diagnostic. Zero at k = 1.
inline double c_diagnostic(long n, long k) {
  if (k < 1 || 2 * k - 1 > n) throw std::domain_error("c_diagnostic: need k >= 1 and 2k-1 <= n");
  if (k == 1) return 0.0;
  const double lg = 2.0 * log_factorial(static_cast<double>(n - k)) -
                    log_factorial(static_cast<double>(n)) -
                    log_factorial(static_cast<double>(n - 2 * k + 1)) +
                    4.0 * std::log(static_cast<double>(k)) -
                    2.0 * std::log(2.0 * static_cast<double>(k) - 1.0) +
                    0.5 * std::log(2.0 * static_cast<double>(k) - 2.0);
  return std::exp(lg);
}

// A(N,j) / [ j^{1/2}/Gamma((j+1)/2) * (2N)^{j/2} * C(2N,N)^2 ]: bounded by
// C_rho^j when j/N <= rho.
inline double lemma2_ratio(long N, long j, long a_budget = kATableDefaultBudget) {
  if (N < 1 || j < 1) throw std::domain_error("lemma2_ratio: need N, j >= 1");
  const double log_a = log_big(a_exact(N, j, a_budget));
  const double log_env = 0.5 * std::log(static_cast<double>(j)) -
                         log_gamma((static_cast<double>(j) + 1.0) / 2.0) +
                         0.5 * static_cast<double>(j) * std::log(2.0 * static_cast<double>(N)) +
                         2.0 * log_big(binomial(2 * N, N));
  return std::exp(log_a - log_env);
}

// A(k-1,1) / [ (2k-2)^{1/2} C(2k-2,k-1)^2 ]: bounded below by a positive
// constant.
inline double lemma3_ratio(long k, long a_budget = kATableDefaultBudget) {
  if (k < 2) throw std::domain_error("lemma3_ratio: need k >= 2");
  const double log_a = log_big(a_exact(k - 1, 1, a_budget));
  const double log_env = 0.5 * std::log(2.0 * static_cast<double>(k) - 2.0) +
                         2.0 * log_big(binomial(2 * k - 2, k - 1));
  return std::exp(log_a - log_env);
}

struct ScanRow {
  MomentSummary summary;
  double ratio_float = 0.0;
  double ratio_norm = 0.0;  // ratio * n / k^{5/2}
};

inline constexpr long kScanDefaultKBudget = 64;

// Exact moment summaries along k = max(1, floor(n^exponent)). Behavior for
// exponent >= 1/2 is out of the studied range; the scan refuses it.
inline std::vector<ScanRow> variance_scan(double exponent, const std::vector<long>& n_list,
                                          long k_budget = kScanDefaultKBudget, bool force = false) {
  if (!(exponent > 0.0 && exponent < 0.5))
    throw std::domain_error("variance_scan: exponent must lie in (0, 0.5)");
  std::vector<ScanRow> rows;
  rows.reserve(n_list.size());
  for (const long n : n_list) {
    const long k = std::max(1L, static_cast<long>(std::floor(std::pow(static_cast<double>(n), exponent))));
    if (k > k_budget && !force) throw BudgetError("variance_scan: k exceeds budget (use force)");
    ScanRow row;
    row.summary = moment_summary(n, k, std::max(k, static_cast<long>(kATableDefaultBudget)));
    row.ratio_float = to_double(row.summary.ratio);
    row.ratio_norm = row.ratio_float * static_cast<double>(n) / std::pow(static_cast<double>(k), 2.5);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace incseq
