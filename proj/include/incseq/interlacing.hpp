#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "incseq/combinatorics.hpp"
#include "incseq/types.hpp"

namespace incseq {

// A strictly increasing set of k indices in 1..n, as used to label the
// chain events B^n_{x_1,...,x_k}.
struct IndexSet {
  std::vector<int> values;

  IndexSet() = default;
  explicit IndexSet(std::vector<int> v) : values(std::move(v)) {
    for (size_t i = 0; i < values.size(); ++i) {
      if (values[i] < 1 || (i > 0 && values[i] <= values[i - 1]))
        throw std::invalid_argument("IndexSet: values must be strictly increasing and >= 1");
    }
  }
  int size() const { return static_cast<int>(values.size()); }
};

// How two k-element index sets interleave: j common elements, and for
// each of the j+1 gaps (before the first common element, between
// consecutive ones, after the last) the number of x-only and y-only
// elements falling strictly inside it.
struct InterlacingProfile {
  int common = 0;          // j
  std::vector<int> l;      // j+1 entries, x-only elements per gap
  std::vector<int> m;      // j+1 entries, y-only elements per gap
};

inline InterlacingProfile interlacing_profile(const IndexSet& x, const IndexSet& y) {
  if (x.size() != y.size()) throw std::invalid_argument("interlacing_profile: |x| != |y|");
  std::vector<int> common;
  std::set_intersection(x.values.begin(), x.values.end(), y.values.begin(), y.values.end(),
                        std::back_inserter(common));
  const int j = static_cast<int>(common.size());
  InterlacingProfile profile;
  profile.common = j;
  profile.l.assign(static_cast<size_t>(j) + 1, 0);
  profile.m.assign(static_cast<size_t>(j) + 1, 0);
  auto fill = [&](const std::vector<int>& vals, std::vector<int>& out) {
    for (const int v : vals) {
      if (std::binary_search(common.begin(), common.end(), v)) continue;
      // gap index: number of common elements strictly below v
      const auto gap = std::upper_bound(common.begin(), common.end(), v) - common.begin();
      ++out[static_cast<size_t>(gap)];
    }
  };
  fill(x.values, profile.l);
  fill(y.values, profile.m);
  return profile;
}

// E[1_Bx 1_By] for a pair of k-chains with the given interlacing profile:
//   (1/(2k-j)!) * prod_r (l_r+m_r)! / (l_r! m_r!)
inline ExactRatio pair_expectation(const InterlacingProfile& profile, int k) {
  const int j = profile.common;
  const long sum_l = std::accumulate(profile.l.begin(), profile.l.end(), 0L);
  const long sum_m = std::accumulate(profile.m.begin(), profile.m.end(), 0L);
  if (sum_l != k - j || sum_m != k - j)
    throw std::invalid_argument("pair_expectation: profile inconsistent with k");
  BigCount numer = 1;
  for (size_t r = 0; r < profile.l.size(); ++r)
    numer *= binomial(static_cast<long>(profile.l[r] + profile.m[r]), static_cast<long>(profile.l[r]));
  return ExactRatio(numer, factorial(2L * k - j));
}

}  // namespace incseq
