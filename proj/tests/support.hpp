#pragma once

// Shared test oracles, all independent of the implementation paths they
// check: exhaustive permutation sweeps, a mixture-density evaluation of
// mu_{n;k}, the full lazy-walk distribution, and chi-square helpers.

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "incseq/counting.hpp"
#include "incseq/interlacing.hpp"
#include "incseq/permutation.hpp"
#include "incseq/types.hpp"

namespace testsupport {

using incseq::BigCount;
using incseq::ExactRatio;
using incseq::Permutation;

inline void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn) {
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
  Permutation perm;
  do {
    perm.images = v;
    fn(perm);
  } while (std::next_permutation(v.begin(), v.end()));
}

inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i + 1;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

// mu_{n;k}(sigma) evaluated from the mixture definition: count the value
// chains sigma contains by literal subset enumeration (no DP involved),
// then weight by k!/(C(n,k) n!).
inline ExactRatio mu_density_mixture(const Permutation& perm, int k) {
  const int n = perm.size();
  BigCount chains = 0;
  for_each_subset(n, k, [&](const std::vector<int>& values) {
    if (incseq::contains_chain(perm, values)) ++chains;
  });
  return ExactRatio(chains * incseq::factorial(k), incseq::binomial(n, k) * incseq::factorial(n));
}

// Exact distribution of the lazy walk (+-1 w.p. 1/4, hold w.p. 1/2) at
// time n: path counts over denominator 4^n, offsets -n..n.
struct LazyDistribution {
  long n = 0;
  std::vector<BigCount> counts;  // index a + n

  BigCount count_at(long a) const {
    if (a < -n || a > n) return 0;
    return counts[static_cast<size_t>(a + n)];
  }
  ExactRatio prob_at(long a) const { return ExactRatio(count_at(a), BigCount(1) << static_cast<unsigned>(2 * n)); }
};

inline LazyDistribution lazy_distribution(long n) {
  LazyDistribution dist;
  dist.n = n;
  dist.counts.assign(static_cast<size_t>(2 * n + 1), BigCount(0));
  std::vector<BigCount> cur{BigCount(1)};  // time 0, offset range [0,0]
  for (long t = 1; t <= n; ++t) {
    std::vector<BigCount> next(static_cast<size_t>(2 * t + 1), BigCount(0));
    for (long a = -(t - 1); a <= t - 1; ++a) {
      const BigCount& c = cur[static_cast<size_t>(a + t - 1)];
      if (c == 0) continue;
      next[static_cast<size_t>(a - 1 + t)] += c;      // step down
      next[static_cast<size_t>(a + 1 + t)] += c;      // step up
      next[static_cast<size_t>(a + t)] += 2 * c;      // hold (weight 2 of 4)
    }
    cur = std::move(next);
  }
  dist.counts = std::move(cur);
  return dist;
}

inline double chi2_statistic(const std::vector<long>& observed, const std::vector<double>& expected) {
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    const double diff = static_cast<double>(observed[i]) - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

inline double chi2_quantile(int dof, double p) {
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(dist, p);
}

}  // namespace testsupport
