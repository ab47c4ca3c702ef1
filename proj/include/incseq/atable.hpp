#pragma once

#include <functional>
#include <mutex>
#include <vector>

#include "incseq/combinatorics.hpp"
#include "incseq/types.hpp"

namespace incseq {

inline constexpr int kATableDefaultBudget = 128;

namespace detail {

// Visit every composition of `total` into `parts` nonnegative parts.
inline void for_each_composition(long total, int parts, std::vector<long>& buf,
                                 const std::function<void(const std::vector<long>&)>& visit,
                                 int at = 0, long left = -1) {
  if (at == 0) {
    buf.assign(static_cast<size_t>(parts), 0);
    left = total;
  }
  if (at == parts - 1) {
    buf[static_cast<size_t>(at)] = left;
    visit(buf);
    return;
  }
  for (long v = 0; v <= left; ++v) {
    buf[static_cast<size_t>(at)] = v;
    for_each_composition(total, parts, buf, visit, at + 1, left - v);
  }
}

// Truncated 2D convolution cache for A(N,j). Layer j holds the (j+1)-fold
// convolution of the kernel T[l][m] = C(l+m,l)^2 on the box [0,B]^2, so
// A(N,j) is its (N,N) entry. Layers grow on demand behind a single lock.
class ATableCache {
 public:
  static ATableCache& instance() {
    static ATableCache cache;
    return cache;
  }

  BigCount a(long N, long j, long budget) {
    if (N < 0 || j < 0) throw std::domain_error("a_exact: need N, j >= 0");
    if (N > budget) throw BudgetError("a_exact: N exceeds budget (override to proceed)");
    if (N == 0) return 1;
    std::scoped_lock lock(mutex_);
    ensure(static_cast<int>(j), static_cast<int>(N));
    const Layer& layer = layers_[static_cast<size_t>(j)];
    return layer.grid[static_cast<size_t>(N) * static_cast<size_t>(layer.box + 1) + static_cast<size_t>(N)];
  }

 private:
  struct Layer {
    int box = -1;
    std::vector<BigCount> grid;  // (box+1)^2, row-major
  };

  static std::vector<BigCount> kernel(int box) {
    std::vector<BigCount> t(static_cast<size_t>(box + 1) * static_cast<size_t>(box + 1));
    for (int l = 0; l <= box; ++l)
      for (int m = 0; m <= box; ++m) {
        BigCount b = binomial(static_cast<long>(l + m), static_cast<long>(l));
        t[static_cast<size_t>(l) * static_cast<size_t>(box + 1) + static_cast<size_t>(m)] = b * b;
      }
    return t;
  }

  void ensure(int j, int box) {
    if (static_cast<size_t>(j) >= layers_.size()) layers_.resize(static_cast<size_t>(j) + 1);
    if (layers_[static_cast<size_t>(j)].box >= box) return;
    if (j == 0) {
      layers_[0].grid = kernel(box);
      layers_[0].box = box;
      return;
    }
    ensure(j - 1, box);
    const Layer& prev = layers_[static_cast<size_t>(j - 1)];
    const auto t = kernel(box);
    const size_t w = static_cast<size_t>(box) + 1;
    const size_t pw = static_cast<size_t>(prev.box) + 1;
    std::vector<BigCount> grid(w * w, BigCount(0));
    for (int a = 0; a <= box; ++a)
      for (int b = 0; b <= box; ++b) {
        BigCount acc = 0;
        for (int l = 0; l <= a; ++l)
          for (int m = 0; m <= b; ++m)
            acc += prev.grid[static_cast<size_t>(a - l) * pw + static_cast<size_t>(b - m)] *
                   t[static_cast<size_t>(l) * w + static_cast<size_t>(m)];
        grid[static_cast<size_t>(a) * w + static_cast<size_t>(b)] = std::move(acc);
      }
    layers_[static_cast<size_t>(j)].grid = std::move(grid);
    layers_[static_cast<size_t>(j)].box = box;
  }

  std::mutex mutex_;
  std::vector<Layer> layers_;
};

}  // namespace detail

// A(N,j): the sum over pairs of compositions {l_r}, {m_r} of N into j+1
// nonnegative parts of prod_r ((l_r+m_r)!/(l_r! m_r!))^2. Governs the
// j-overlap terms of the second moment.
inline BigCount a_exact(long N, long j, long budget = kATableDefaultBudget) {
  return detail::ATableCache::instance().a(N, j, budget);
}

// Oracle: the literal double enumeration over composition pairs.
inline BigCount a_bruteforce(long N, long j, uint64_t pair_cap = 10000000) {
  if (N < 0 || j < 0) throw std::domain_error("a_bruteforce: need N, j >= 0");
  const BigCount comps = binomial(N + j, j);
  if (comps * comps > pair_cap) throw BudgetError("a_bruteforce: composition pair count exceeds cap");
  std::vector<std::vector<long>> all;
  std::vector<long> buf;
  detail::for_each_composition(N, static_cast<int>(j) + 1, buf,
                               [&](const std::vector<long>& c) { all.push_back(c); });
  BigCount total = 0;
  for (const auto& ls : all)
    for (const auto& ms : all) {
      BigCount prod = 1;
      for (size_t r = 0; r < ls.size(); ++r) {
        const BigCount b = binomial(ls[r] + ms[r], ls[r]);
        prod *= b * b;
      }
      total += prod;
    }
  return total;
}

}  // namespace incseq
