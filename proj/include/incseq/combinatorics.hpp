#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "incseq/types.hpp"

namespace incseq {

// Shared immutable factorial table. Built once on first use, read-only
// afterwards, so concurrent lookups need no coordination.
inline constexpr int kFactorialTableCap = 512;

namespace detail {
inline const std::vector<BigCount>& factorial_table() {
  static const std::vector<BigCount> table = [] {
    std::vector<BigCount> t(kFactorialTableCap + 1);
    t[0] = 1;
    for (int i = 1; i <= kFactorialTableCap; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}
}  // namespace detail

inline BigCount factorial(long n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  const auto& table = detail::factorial_table();
  if (n <= kFactorialTableCap) return table[static_cast<size_t>(n)];
  BigCount out = table.back();
  for (long i = kFactorialTableCap + 1; i <= n; ++i) out *= i;
  return out;
}

// Exact binomial coefficient; 0 when k > n. Arguments are big integers so
// callers never worry about overflow, but the loop count k (after the
// symmetry reduction) must be desk-scale.
inline BigCount binomial(const BigCount& n, const BigCount& k) {
  if (k < 0 || n < 0) throw std::domain_error("binomial: negative argument");
  if (k > n) return 0;
  BigCount kk = k;
  if (kk > n - kk) kk = n - kk;
  if (kk > 1000000) throw BudgetError("binomial: k too large after symmetry reduction");
  const auto& table = detail::factorial_table();
  if (n <= kFactorialTableCap) {
    const auto ni = n.convert_to<size_t>();
    const auto ki = k.convert_to<size_t>();
    return table[ni] / (table[ki] * table[ni - ki]);
  }
  // Multiplicative form; every intermediate quotient is an exact integer.
  BigCount out = 1;
  const long m = kk.convert_to<long>();
  for (long i = 1; i <= m; ++i) {
    out *= n - kk + i;
    out /= i;
  }
  return out;
}

inline BigCount binomial(long n, long k) { return binomial(BigCount(n), BigCount(k)); }

// (2k)!/(2k-j)! style falling factorial, exact.
inline BigCount falling_factorial(long n, long j) {
  if (j < 0 || n < 0 || j > n) throw std::domain_error("falling_factorial: bad arguments");
  BigCount out = 1;
  for (long i = 0; i < j; ++i) out *= n - i;
  return out;
}

// E Z_{n,k} = C(n,k)/k!: the expected number of increasing subsequences of
// length k in a uniform permutation of n symbols.
inline ExactRatio expected_count(long n, long k) {
  if (k < 1 || k > n) throw std::domain_error("expected_count: need 1 <= k <= n");
  return ExactRatio(binomial(BigCount(n), BigCount(k)), factorial(k));
}

inline double log_gamma(double x) {
  if (!(x > 0)) throw std::domain_error("log_gamma: need x > 0");
  return std::lgamma(x);
}

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

// log of the Stirling approximation of E Z_{n, c n^l}. Evaluated in log
// space only: the value itself overflows any fixed-width float well before
// n reaches interesting sizes. The exp(-c^2/2) correction applies exactly
// at l = 1/2, where the subsequence length reaches the sqrt(n) scale.
inline double asymptotic_expected_count_log(double c, double l, long n) {
  if (!(c > 0)) throw std::domain_error("asymptotic_expected_count_log: need c > 0");
  if (!(l > 0.0 && l <= 0.5)) throw std::domain_error("asymptotic_expected_count_log: need l in (0, 1/2]");
  if (n < 1) throw std::domain_error("asymptotic_expected_count_log: need n >= 1");
  const double ln_n = std::log(static_cast<double>(n));
  const double k = c * std::exp(l * ln_n);  // c * n^l, kept real-valued
  double out = -std::log(2.0 * std::numbers::pi * k) + k * (2.0 * (1.0 - std::log(c)) + (1.0 - 2.0 * l) * ln_n);
  if (l == 0.5) out -= c * c / 2.0;
  return out;
}

}  // namespace incseq
