#pragma once

#include <algorithm>
#include <vector>

#include "incseq/permutation.hpp"
#include "incseq/rng.hpp"

namespace incseq {

// Uniform draw from S_n (Fisher-Yates).
inline Permutation sample_uniform(int n, RandomStream& rng) {
  if (n < 1) throw std::domain_error("sample_uniform: need n >= 1");
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<uint64_t>(i) + 1));
    std::swap(v[static_cast<size_t>(i)], v[static_cast<size_t>(j)]);
  }
  return Permutation(std::move(v));
}

namespace detail {
// Uniform k-subset of {1..n}, sorted: partial Fisher-Yates on 1..n.
inline std::vector<int> sample_subset(int n, int k, RandomStream& rng) {
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<uint64_t>(n - i)));
    std::swap(v[static_cast<size_t>(i)], v[static_cast<size_t>(j)]);
  }
  std::vector<int> out(v.begin(), v.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace detail

// Draw from mu_{n;k}, the mixture of uniform measures on permutations
// containing a fixed increasing chain. Card construction: mark k cards at
// random; the marked values keep their increasing order while the
// unmarked cards are reinserted uniformly. Concretely: a uniform k-subset
// of values goes in increasing order into a uniform k-subset of positions,
// and the remaining values fill the remaining positions in uniform order.
inline Permutation sample_mu(int n, int k, RandomStream& rng) {
  if (k < 1 || k > n) throw std::domain_error("sample_mu: need 1 <= k <= n");
  const std::vector<int> marked_values = detail::sample_subset(n, k, rng);
  const std::vector<int> marked_positions = detail::sample_subset(n, k, rng);

  std::vector<char> value_marked(static_cast<size_t>(n), 0);
  for (const int v : marked_values) value_marked[static_cast<size_t>(v - 1)] = 1;
  std::vector<int> rest;
  rest.reserve(static_cast<size_t>(n - k));
  for (int v = 1; v <= n; ++v)
    if (!value_marked[static_cast<size_t>(v - 1)]) rest.push_back(v);
  for (int i = n - k - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<uint64_t>(i) + 1));
    std::swap(rest[static_cast<size_t>(i)], rest[static_cast<size_t>(j)]);
  }

  std::vector<int> images(static_cast<size_t>(n), 0);
  for (int i = 0; i < k; ++i) images[static_cast<size_t>(marked_positions[static_cast<size_t>(i)] - 1)] = marked_values[static_cast<size_t>(i)];
  size_t r = 0;
  for (int p = 0; p < n; ++p)
    if (images[static_cast<size_t>(p)] == 0) images[static_cast<size_t>(p)] = rest[r++];
  return Permutation(std::move(images));
}

}  // namespace incseq
