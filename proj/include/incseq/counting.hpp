#pragma once

#include <vector>

#include "incseq/combinatorics.hpp"
#include "incseq/permutation.hpp"
#include "incseq/types.hpp"

namespace incseq {

// Z_{n,k}(sigma): the number of strictly increasing subsequences of length
// k. Reference implementation: the plain quadratic recurrence
//   c[i][t] = sum_{h < i, sigma(h) < sigma(i)} c[h][t-1],  c[i][1] = 1,
// summed over ending positions. O(n^2 k) big-integer additions.
inline BigCount count_k_incseq(const Permutation& perm, int k) {
  const int n = perm.size();
  if (k < 1 || k > n) throw std::domain_error("count_k_incseq: need 1 <= k <= n");
  std::vector<BigCount> prev(static_cast<size_t>(n), 1);  // t = 1
  for (int t = 2; t <= k; ++t) {
    std::vector<BigCount> cur(static_cast<size_t>(n), 0);
    for (int i = 1; i < n; ++i) {
      BigCount acc = 0;
      for (int h = 0; h < i; ++h)
        if (perm.images[static_cast<size_t>(h)] < perm.images[static_cast<size_t>(i)]) acc += prev[static_cast<size_t>(h)];
      cur[static_cast<size_t>(i)] = std::move(acc);
    }
    prev = std::move(cur);
  }
  BigCount total = 0;
  for (const auto& c : prev) total += c;
  return total;
}

namespace detail {
// Fenwick tree over values 1..n with big-integer sums.
class BigFenwick {
 public:
  explicit BigFenwick(int n) : tree_(static_cast<size_t>(n) + 1) {}
  void add(int i, const BigCount& v) {
    for (; i < static_cast<int>(tree_.size()); i += i & -i) tree_[static_cast<size_t>(i)] += v;
  }
  BigCount prefix_sum(int i) const {  // sum of entries 1..i
    BigCount s = 0;
    for (; i > 0; i -= i & -i) s += tree_[static_cast<size_t>(i)];
    return s;
  }
  void clear() { std::fill(tree_.begin(), tree_.end(), BigCount(0)); }

 private:
  std::vector<BigCount> tree_;
};
}  // namespace detail

// Same contract as count_k_incseq via a value-indexed prefix-sum
// accumulator: O(n log n * k) big-integer additions. Used by the Monte
// Carlo estimators, where millions of counts are needed.
inline BigCount count_k_incseq_fast(const Permutation& perm, int k) {
  const int n = perm.size();
  if (k < 1 || k > n) throw std::domain_error("count_k_incseq_fast: need 1 <= k <= n");
  std::vector<BigCount> layer(static_cast<size_t>(n), 1);
  detail::BigFenwick fen(n);
  for (int t = 2; t <= k; ++t) {
    fen.clear();
    for (int i = 0; i < n; ++i) {
      const int v = perm.images[static_cast<size_t>(i)];
      BigCount below = fen.prefix_sum(v - 1);
      fen.add(v, layer[static_cast<size_t>(i)]);
      layer[static_cast<size_t>(i)] = std::move(below);
    }
  }
  BigCount total = 0;
  for (const auto& c : layer) total += c;
  return total;
}

// Oracle: literal enumeration of all k-subsets of positions. Only for
// small instances; the cap guards the C(n,k) subset count.
inline BigCount brute_force_count(const Permutation& perm, int k, uint64_t enumeration_cap = 5000000) {
  const int n = perm.size();
  if (k < 1 || k > n) throw std::domain_error("brute_force_count: need 1 <= k <= n");
  const BigCount subsets = binomial(static_cast<long>(n), static_cast<long>(k));
  if (subsets > enumeration_cap) throw BudgetError("brute_force_count: C(n,k) exceeds enumeration cap");
  std::vector<int> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
  BigCount total = 0;
  while (true) {
    bool increasing = true;
    for (int i = 1; i < k && increasing; ++i)
      increasing = perm.images[static_cast<size_t>(idx[static_cast<size_t>(i - 1)])] <
                   perm.images[static_cast<size_t>(idx[static_cast<size_t>(i)])];
    if (increasing) ++total;
    // next combination
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  return total;
}

// All of Z_{n,1}(sigma) .. Z_{n,n}(sigma) in one DP pass over the full
// c[i][t] table. Entry t-1 of the result is Z_{n,t}.
inline std::vector<BigCount> count_profile(const Permutation& perm) {
  const int n = perm.size();
  std::vector<std::vector<BigCount>> c(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = c[static_cast<size_t>(i)];
    row.assign(static_cast<size_t>(n) + 1, BigCount(0));
    row[1] = 1;
    for (int h = 0; h < i; ++h) {
      if (perm.images[static_cast<size_t>(h)] >= perm.images[static_cast<size_t>(i)]) continue;
      const auto& prev = c[static_cast<size_t>(h)];
      for (int t = 2; t <= i + 1; ++t) row[static_cast<size_t>(t)] += prev[static_cast<size_t>(t - 1)];
    }
  }
  std::vector<BigCount> profile(static_cast<size_t>(n), 0);
  for (int t = 1; t <= n; ++t)
    for (int i = 0; i < n; ++i) profile[static_cast<size_t>(t - 1)] += c[static_cast<size_t>(i)][static_cast<size_t>(t)];
  return profile;
}

}  // namespace incseq
