#pragma once

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <vector>

#include "incseq/atable.hpp"
#include "incseq/combinatorics.hpp"
#include "incseq/rng.hpp"
#include "incseq/types.hpp"

namespace incseq {

// A checkpoint pattern for the conditioned two-row walk: a composition
// (s_0,...,s_j) of 2N. The event D_{s_0,...,s_j} asks V_{t_r} = 0 at every
// partial sum t_r = s_0 + ... + s_r.
struct BridgeSpec {
  long N = 0;
  std::vector<long> s;

  BridgeSpec() = default;
  BridgeSpec(long N_, std::vector<long> s_) : N(N_), s(std::move(s_)) {
    if (N < 1) throw std::invalid_argument("BridgeSpec: need N >= 1");
    if (s.size() < 2) throw std::invalid_argument("BridgeSpec: need j >= 1 (at least two parts)");
    long total = 0;
    for (const long v : s) {
      if (v < 0) throw std::invalid_argument("BridgeSpec: parts must be nonnegative");
      total += v;
    }
    if (total != 2 * N) throw std::invalid_argument("BridgeSpec: parts must sum to 2N");
  }

  int j() const { return static_cast<int>(s.size()) - 1; }

  std::vector<long> checkpoints() const {  // t_0 .. t_j, with t_j = 2N
    std::vector<long> t(s.size());
    std::partial_sum(s.begin(), s.end(), t.begin());
    return t;
  }
};

// P(D_{s_0,...,s_j}) = C(2N,N)^{-2} sum_{sum l_r = N, l_r <= s_r}
// prod_r C(s_r, l_r)^2. The bounded sum is the coefficient of x^N in the
// product of the per-part polynomials sum_l C(s_r,l)^2 x^l.
inline ExactRatio bridge_event_prob_exact(const BridgeSpec& spec) {
  const long N = spec.N;
  if (N > 4096) throw BudgetError("bridge_event_prob_exact: N exceeds budget");
  std::vector<BigCount> poly{BigCount(1)};
  for (const long part : spec.s) {
    const long cap = std::min(part, N);
    std::vector<BigCount> factor(static_cast<size_t>(cap) + 1);
    for (long l = 0; l <= cap; ++l) {
      const BigCount b = binomial(part, l);
      factor[static_cast<size_t>(l)] = b * b;
    }
    std::vector<BigCount> next(std::min(static_cast<size_t>(N) + 1, poly.size() + factor.size() - 1), BigCount(0));
    for (size_t i = 0; i < poly.size(); ++i) {
      if (poly[i] == 0) continue;
      for (size_t l = 0; l < factor.size() && i + l < next.size(); ++l)
        next[i + l] += poly[i] * factor[l];
    }
    poly = std::move(next);
  }
  const BigCount denom_root = binomial(2 * N, N);
  const BigCount numer = poly.size() > static_cast<size_t>(N) ? poly[static_cast<size_t>(N)] : BigCount(0);
  return ExactRatio(numer, denom_root * denom_root);
}

// Oracle: enumerate all C(2N,N)^2 pairs of row fillings literally and
// test X_{t_r} = Y_{t_r} at every checkpoint.
inline ExactRatio bridge_event_prob_enum(const BridgeSpec& spec) {
  const long N = spec.N;
  if (2 * N > 14) throw BudgetError("bridge_event_prob_enum: 2N exceeds enumeration budget");
  const auto t = spec.checkpoints();
  std::vector<long> times(t.begin(), t.end() - 1);  // t_j = 2N always matches

  // Every arrangement of N +1 steps among 2N, reduced to its checkpoint
  // signature (walk heights at the times of interest).
  std::vector<std::vector<int>> sigs;
  std::vector<int> idx(static_cast<size_t>(N));
  for (long i = 0; i < N; ++i) idx[static_cast<size_t>(i)] = static_cast<int>(i);
  const int n2 = static_cast<int>(2 * N);
  while (true) {
    std::vector<int> height(static_cast<size_t>(n2) + 1, 0);
    std::vector<char> up(static_cast<size_t>(n2), 0);
    for (const int i : idx) up[static_cast<size_t>(i)] = 1;
    for (int i = 0; i < n2; ++i) height[static_cast<size_t>(i + 1)] = height[static_cast<size_t>(i)] + (up[static_cast<size_t>(i)] ? 1 : -1);
    std::vector<int> sig;
    sig.reserve(times.size());
    for (const long tc : times) sig.push_back(height[static_cast<size_t>(tc)]);
    sigs.push_back(std::move(sig));
    int i = static_cast<int>(N) - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n2 - static_cast<int>(N) + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int q = i + 1; q < static_cast<int>(N); ++q) idx[static_cast<size_t>(q)] = idx[static_cast<size_t>(q - 1)] + 1;
  }

  BigCount matches = 0;
  for (const auto& a : sigs)
    for (const auto& b : sigs)
      if (a == b) ++matches;
  const BigCount denom_root = binomial(2 * N, N);
  return ExactRatio(matches, denom_root * denom_root);
}

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

// Monte Carlo estimate of P(D_spec): two independent uniform ball
// arrangements per trial, checked at the checkpoints.
inline McEstimate bridge_event_prob_mc(const BridgeSpec& spec, long samples, RandomStream& rng) {
  if (samples < 1) throw std::domain_error("bridge_event_prob_mc: need samples >= 1");
  const long n2 = 2 * spec.N;
  const auto t = spec.checkpoints();
  std::vector<long> times(t.begin(), t.end() - 1);
  std::vector<int> row(static_cast<size_t>(n2));
  std::vector<int> height(static_cast<size_t>(n2) + 1, 0);
  auto draw_heights = [&](std::vector<int>& heights) {
    for (long i = 0; i < n2; ++i) row[static_cast<size_t>(i)] = i < spec.N ? 1 : -1;
    for (long i = n2 - 1; i > 0; --i) {
      const auto j = static_cast<long>(rng.below(static_cast<uint64_t>(i) + 1));
      std::swap(row[static_cast<size_t>(i)], row[static_cast<size_t>(j)]);
    }
    for (long i = 0; i < n2; ++i) height[static_cast<size_t>(i + 1)] = height[static_cast<size_t>(i)] + row[static_cast<size_t>(i)];
    heights.clear();
    for (const long tc : times) heights.push_back(height[static_cast<size_t>(tc)]);
  };
  long hits = 0;
  std::vector<int> hx, hy;
  for (long s = 0; s < samples; ++s) {
    draw_heights(hx);
    draw_heights(hy);
    if (hx == hy) ++hits;
  }
  McEstimate est;
  est.samples = samples;
  est.value = static_cast<double>(hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(samples));
  return est;
}

// Both sides of the identity: summing P(D_{s_0,...,s_j}) over all
// compositions of 2N into j+1 parts equals A(N,j)/C(2N,N)^2.
inline std::pair<ExactRatio, ExactRatio> identity_4_2(long N, long j, uint64_t composition_cap = 1000000) {
  if (N < 0 || j < 0) throw std::domain_error("identity_4_2: need N, j >= 0");
  if (N == 0) return {ExactRatio(1), ExactRatio(1)};
  if (j == 0) {
    // single block: the conditioning event is trivially satisfied
    const BigCount root = binomial(2 * N, N);
    return {ExactRatio(1), ExactRatio(a_exact(N, 0), root * root)};
  }
  if (binomial(2 * N + j, j) > composition_cap)
    throw BudgetError("identity_4_2: composition count exceeds cap");
  ExactRatio lhs = 0;
  std::vector<long> buf;
  detail::for_each_composition(2 * N, static_cast<int>(j) + 1, buf, [&](const std::vector<long>& parts) {
    lhs += bridge_event_prob_exact(BridgeSpec(N, parts));
  });
  const BigCount root = binomial(2 * N, N);
  const ExactRatio rhs(a_exact(N, j), root * root);
  return {lhs, rhs};
}

// P(Z_n = 0 | Z_0 = 0) for the lazy walk (+-1 w.p. 1/4 each, hold w.p.
// 1/2), by the binomial sum
//   (1/2)^n sum_i (1/2)^{2i} C(2i,i) C(n,2i).
inline ExactRatio lazy_return_prob(long n) {
  if (n < 0) throw std::domain_error("lazy_return_prob: need n >= 0");
  const long half = n / 2;
  BigCount numer = 0;
  BigCount central = 1;  // C(2i, i)
  BigCount row = 1;      // C(n, 2i)
  for (long i = 0; i <= half; ++i) {
    numer += central * row * (BigCount(1) << static_cast<unsigned>(2 * (half - i)));
    central = central * ((2 * i + 1) * (2 * i + 2)) / ((i + 1) * (i + 1));
    row = row * (n - 2 * i) / (2 * i + 1) * (n - 2 * i - 1) / (2 * i + 2);
  }
  return ExactRatio(numer, BigCount(1) << static_cast<unsigned>(n + 2 * half));
}

// min and max of sqrt(n+1) * P(Z_n = 0) over 1 <= n <= n_max. The walk has
// step variance 1/2, so the sequence approaches pi^{-1/2}.
inline std::pair<double, double> lemma4_band(long n_max) {
  if (n_max < 1) throw std::domain_error("lemma4_band: need n_max >= 1");
  double lo = 1e300, hi = -1e300;
  for (long n = 1; n <= n_max; ++n) {
    const double v = std::sqrt(static_cast<double>(n) + 1.0) * to_double(lazy_return_prob(n));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

// P(Z_n = 0 | Z_0 = a) for the simple symmetric walk: C(n,(n+a)/2)/2^n
// when n+a is even and |a| <= n, else 0.
inline ExactRatio walk1d_prob(long n, long a) {
  if (n < 0) throw std::domain_error("walk1d_prob: need n >= 0");
  const long abs_a = std::abs(a);
  if ((n + abs_a) % 2 != 0 || abs_a > n) return ExactRatio(0);
  return ExactRatio(binomial(n, (n + abs_a) / 2), BigCount(1) << static_cast<unsigned>(n));
}

inline constexpr long kWalk2dBudget = 600;

namespace detail {

// Step-by-step convolution of the 4-direction kernel from the origin.
// After n steps the path-count grid (denominator 4^n) is cached; the row
// y = 0 answers every offset question at time n by translation symmetry.
class Walk2dTable {
 public:
  static Walk2dTable& instance() {
    static Walk2dTable table;
    return table;
  }

  // Path count to (x, 0) after n steps (denominator 4^n).
  BigCount row0_count(long n, long x) {
    std::scoped_lock lock(mutex_);
    ensure(n);
    if (std::abs(x) > n) return 0;
    return rows_[static_cast<size_t>(n)][static_cast<size_t>(std::abs(x))];
  }

 private:
  void ensure(long n) {
    if (static_cast<long>(rows_.size()) > n) return;
    if (grid_.empty()) {
      box_ = static_cast<int>(std::max<long>(n, 16));
      width_ = 2 * box_ + 1;
      grid_.assign(static_cast<size_t>(width_) * static_cast<size_t>(width_), BigCount(0));
      at(0, 0) = 1;
      rows_.push_back(extract_row0(0));
      steps_ = 0;
    } else if (n > box_) {
      // grow: restart from the origin at a larger box
      grid_.clear();
      rows_.clear();
      ensure(n);
      return;
    }
    std::vector<BigCount> next(grid_.size(), BigCount(0));
    while (steps_ < n) {
      const long m = steps_ + 1;
      std::fill(next.begin(), next.end(), BigCount(0));
      const long lim = std::min<long>(m, box_);
      for (long x = -lim; x <= lim; ++x)
        for (long y = -(lim - std::abs(x)); y <= lim - std::abs(x); ++y) {
          if (((std::abs(x) + std::abs(y)) & 1) != (m & 1)) continue;
          BigCount acc = 0;
          if (x > -box_) acc += at(x - 1, y);
          if (x < box_) acc += at(x + 1, y);
          if (y > -box_) acc += at(x, y - 1);
          if (y < box_) acc += at(x, y + 1);
          next[index(x, y)] = std::move(acc);
        }
      grid_.swap(next);
      ++steps_;
      rows_.push_back(extract_row0(steps_));
    }
  }

  size_t index(long x, long y) const {
    return static_cast<size_t>(x + box_) * static_cast<size_t>(width_) + static_cast<size_t>(y + box_);
  }
  BigCount& at(long x, long y) { return grid_[index(x, y)]; }

  std::vector<BigCount> extract_row0(long n) {
    std::vector<BigCount> row(static_cast<size_t>(n) + 1);
    for (long x = 0; x <= n; ++x) row[static_cast<size_t>(x)] = at(x, 0);
    return row;
  }

  std::mutex mutex_;
  int box_ = 0;
  int width_ = 0;
  long steps_ = 0;
  std::vector<BigCount> grid_;
  std::vector<std::vector<BigCount>> rows_;  // rows_[n][|x|]
};

}  // namespace detail

// P((X_n, Y_n) = (0,0) | start (a, 0)) for the simple symmetric 2D walk,
// by n-fold convolution of the 4-direction kernel. Exact, with dyadic
// denominator 4^n.
inline ExactRatio walk2d_prob(long n, long a) {
  if (n < 0) throw std::domain_error("walk2d_prob: need n >= 0");
  if (n > kWalk2dBudget) throw BudgetError("walk2d_prob: n exceeds budget");
  const BigCount count = detail::Walk2dTable::instance().row0_count(n, a);
  return ExactRatio(count, BigCount(1) << static_cast<unsigned>(2 * n));
}

struct EnvelopeRow {
  long n = 0;
  long a = 0;
  ExactRatio exact;
  double envelope = 0.0;
  bool ok = false;
};

struct EnvelopeReport {
  double c2 = 0.0;       // chosen upper-bound rate
  double c1 = 0.0;       // fitted: smallest c1 with P <= c1/n exp(-c2 a^2/n)
  double cl2 = 0.0;      // chosen lower-bound rate
  double cl1 = 0.0;      // fitted: largest cl1 with P >= cl1/n exp(-cl2 a^2/n)
  long violations = 0;   // grid cells with a nonpositive/nonfinite ratio
  std::vector<EnvelopeRow> upper;  // all-parity grid, bound with fitted c1
  std::vector<EnvelopeRow> lower;  // even-argument grid, bound with fitted cl1
};

// Fit envelope constants for the 2D return probabilities over the grid
// n <= n_max, |a| <= L sqrt(n). Upper: every (n,a) with nonzero parity
// cell. Lower: even arguments (2m, 2a) only, and m >= L^2 so the offset
// stays reachable (the bound is asymptotic).
inline EnvelopeReport lemma6_8_envelopes(long n_max, double L, double c2 = 0.25, double cl2 = 2.0) {
  if (n_max > kWalk2dBudget) throw BudgetError("lemma6_8_envelopes: n_max exceeds budget");
  EnvelopeReport report;
  report.c2 = c2;
  report.cl2 = cl2;

  struct Cell {
    long n, a;
    ExactRatio exact;
    double ratio;
  };
  std::vector<Cell> upper_cells, lower_cells;

  double c1 = 0.0;
  for (long n = 1; n <= n_max; ++n) {
    const long amax = static_cast<long>(std::floor(L * std::sqrt(static_cast<double>(n))));
    for (long a = -amax; a <= amax; ++a) {
      if (((n + a) & 1) != 0) continue;  // odd-parity cells are exactly 0
      const ExactRatio p = walk2d_prob(n, a);
      const double ratio = to_double(p) * static_cast<double>(n) *
                           std::exp(c2 * static_cast<double>(a) * static_cast<double>(a) / static_cast<double>(n));
      if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        ++report.violations;
        continue;
      }
      c1 = std::max(c1, ratio);
      upper_cells.push_back({n, a, p, ratio});
    }
  }
  report.c1 = c1;

  double cl1 = 1e300;
  const long m_min = std::max<long>(1, static_cast<long>(std::ceil(L * L)));
  for (long m = m_min; 2 * m <= n_max; ++m) {
    const long amax = static_cast<long>(std::floor(L * std::sqrt(static_cast<double>(m))));
    for (long a = -amax; a <= amax; ++a) {
      const ExactRatio p = walk2d_prob(2 * m, 2 * a);
      const double ratio = to_double(p) * static_cast<double>(m) *
                           std::exp(cl2 * static_cast<double>(a) * static_cast<double>(a) / static_cast<double>(m));
      if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        ++report.violations;
        continue;
      }
      cl1 = std::min(cl1, ratio);
      lower_cells.push_back({2 * m, 2 * a, p, ratio});
    }
  }
  report.cl1 = lower_cells.empty() ? 0.0 : cl1;

  for (const auto& cell : upper_cells) {
    EnvelopeRow row;
    row.n = cell.n;
    row.a = cell.a;
    row.exact = cell.exact;
    row.envelope = report.c1 / static_cast<double>(cell.n) *
                   std::exp(-c2 * static_cast<double>(cell.a) * static_cast<double>(cell.a) / static_cast<double>(cell.n));
    row.ok = to_double(cell.exact) <= row.envelope * (1.0 + 1e-12);
    if (!row.ok) ++report.violations;
    report.upper.push_back(std::move(row));
  }
  for (const auto& cell : lower_cells) {
    const long m = cell.n / 2;
    EnvelopeRow row;
    row.n = cell.n;
    row.a = cell.a;
    row.exact = cell.exact;
    row.envelope = report.cl1 / static_cast<double>(m) *
                   std::exp(-cl2 * static_cast<double>(cell.a / 2) * static_cast<double>(cell.a / 2) / static_cast<double>(m));
    row.ok = to_double(cell.exact) >= row.envelope * (1.0 - 1e-12);
    if (!row.ok) ++report.violations;
    report.lower.push_back(std::move(row));
  }
  return report;
}

}  // namespace incseq
