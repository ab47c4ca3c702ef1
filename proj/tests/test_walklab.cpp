#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "incseq/walklab.hpp"
#include "support.hpp"

using namespace incseq;

TEST_CASE("BridgeSpec validation") {
  CHECK_NOTHROW(BridgeSpec(2, {1, 3}));
  CHECK_THROWS_AS(BridgeSpec(0, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(BridgeSpec(2, {4}), std::invalid_argument);
  CHECK_THROWS_AS(BridgeSpec(2, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(BridgeSpec(2, {5, -1}), std::invalid_argument);
}

TEST_CASE("bridge probability: closed cases") {
  CHECK(bridge_event_prob_exact(BridgeSpec(1, {1, 1})) == ExactRatio(1, 2));
  CHECK(bridge_event_prob_exact(BridgeSpec(1, {2, 0})) == 1);
  CHECK(bridge_event_prob_exact(BridgeSpec(2, {2, 2})) == ExactRatio(1, 2));
  CHECK(bridge_event_prob_enum(BridgeSpec(1, {1, 1})) == ExactRatio(1, 2));
  CHECK(bridge_event_prob_enum(BridgeSpec(2, {1, 3})) == ExactRatio(1, 2));
  // a single nonzero block imposes no constraint
  CHECK(bridge_event_prob_enum(BridgeSpec(3, {6, 0})) == 1);
  CHECK(bridge_event_prob_enum(BridgeSpec(3, {0, 6, 0})) == 1);
  CHECK_THROWS_AS(bridge_event_prob_enum(BridgeSpec(8, {8, 8})), BudgetError);
}

TEST_CASE("bridge probability: formula equals enumeration for N <= 4, j <= 3") {
  for (long N = 1; N <= 4; ++N) {
    for (int j = 1; j <= 3; ++j) {
      std::vector<long> buf;
      incseq::detail::for_each_composition(2 * N, j + 1, buf, [&](const std::vector<long>& parts) {
        const BridgeSpec spec(N, parts);
        REQUIRE(bridge_event_prob_exact(spec) == bridge_event_prob_enum(spec));
      });
    }
  }
}

TEST_CASE("identity: checkpoint sum equals A(N,j)/C(2N,N)^2") {
  const auto [lhs11, rhs11] = identity_4_2(1, 1);
  CHECK(lhs11 == ExactRatio(5, 2));
  CHECK(rhs11 == ExactRatio(5, 2));
  const auto [lhs21, rhs21] = identity_4_2(2, 1);
  CHECK(lhs21 == ExactRatio(7, 2));
  CHECK(rhs21 == ExactRatio(7, 2));
  const auto [lhs0, rhs0] = identity_4_2(0, 3);
  CHECK(lhs0 == 1);
  CHECK(rhs0 == 1);
  for (long N = 1; N <= 4; ++N)
    for (long j = 1; j <= 3; ++j) {
      const auto [lhs, rhs] = identity_4_2(N, j);
      REQUIRE(lhs == rhs);
    }
}

TEST_CASE("lazy walk return probability: exact values") {
  CHECK(lazy_return_prob(0) == 1);
  CHECK(lazy_return_prob(1) == ExactRatio(1, 2));
  CHECK(lazy_return_prob(2) == ExactRatio(3, 8));
  CHECK_THROWS_AS(lazy_return_prob(-1), std::domain_error);
}

TEST_CASE("lazy walk: nonincreasing and consistent with the full distribution") {
  ExactRatio prev = 1;
  for (long n = 1; n <= 200; ++n) {
    const ExactRatio p = lazy_return_prob(n);
    REQUIRE(p <= prev);
    prev = p;
  }
  // one-step recursion against the independent distribution oracle:
  // P(Z_{n+1}=0) = 1/4 P(Z_n=-1) + 1/2 P(Z_n=0) + 1/4 P(Z_n=1)
  for (long n : {0L, 1L, 5L, 17L, 60L}) {
    const auto dist = testsupport::lazy_distribution(n);
    REQUIRE(dist.prob_at(0) == lazy_return_prob(n));
    const ExactRatio rhs = ExactRatio(1, 4) * dist.prob_at(-1) + ExactRatio(1, 2) * dist.prob_at(0) +
                           ExactRatio(1, 4) * dist.prob_at(1);
    REQUIRE(lazy_return_prob(n + 1) == rhs);
  }
}

TEST_CASE("lemma4 band at desk scale") {
  const auto [lo, hi] = lemma4_band(300);
  CHECK(lo > 0.4);
  CHECK(hi < 0.8);
  CHECK(std::sqrt(2.0) * to_double(lazy_return_prob(1)) == Catch::Approx(std::sqrt(2.0) / 2.0));
  // drifting toward pi^{-1/2}
  const double v300 = std::sqrt(301.0) * to_double(lazy_return_prob(300));
  CHECK(v300 == Catch::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(0.01));
}

TEST_CASE("walk1d: closed cases and parity") {
  CHECK(walk1d_prob(2, 0) == ExactRatio(1, 2));
  CHECK(walk1d_prob(3, 0) == 0);
  CHECK(walk1d_prob(0, 0) == 1);
  CHECK(walk1d_prob(5, -3) == walk1d_prob(5, 3));
  CHECK(walk1d_prob(4, 6) == 0);
  CHECK_THROWS_AS(walk1d_prob(-1, 0), std::domain_error);
}

TEST_CASE("walk1d: local-CLT envelopes over the grid") {
  // Upper: P(Z_n=0|a) <= C0/sqrt(n) exp(-a^2/2n). Lower (even offsets):
  // P(Z_2n=0|2a) >= cL/sqrt(n) exp(-a^2/n) once L sqrt(n) <= n.
  double c0 = 0.0;
  for (long n = 1; n <= 500; ++n) {
    const long amax = 2 * static_cast<long>(std::sqrt(static_cast<double>(n)));
    for (long a = -amax; a <= amax; ++a) {
      const double p = to_double(walk1d_prob(n, a));
      if (p == 0.0) continue;
      c0 = std::max(c0, p * std::sqrt(static_cast<double>(n)) *
                            std::exp(static_cast<double>(a * a) / (2.0 * static_cast<double>(n))));
    }
  }
  CHECK(c0 > 0.0);
  CHECK(c0 < 1.0);

  double cl = 1e300;
  for (long n = 4; n <= 250; ++n) {
    const long amax = static_cast<long>(2.0 * std::sqrt(static_cast<double>(n)));
    for (long a = -amax; a <= amax; ++a) {
      const double p = to_double(walk1d_prob(2 * n, 2 * a));
      REQUIRE(p > 0.0);
      cl = std::min(cl, p * std::sqrt(static_cast<double>(n)) *
                            std::exp(static_cast<double>(a * a) / static_cast<double>(n)));
    }
  }
  CHECK(cl > 0.05);
}

TEST_CASE("walk2d: closed cases, parity, budget") {
  CHECK(walk2d_prob(2, 0) == ExactRatio(1, 4));
  CHECK(walk2d_prob(1, 0) == 0);
  CHECK(walk2d_prob(0, 0) == 1);
  CHECK(walk2d_prob(3, 2) == 0);  // odd parity
  CHECK(walk2d_prob(10, -4) == walk2d_prob(10, 4));
  CHECK_THROWS_AS(walk2d_prob(601, 0), BudgetError);
  CHECK_THROWS_AS(walk2d_prob(-1, 0), std::domain_error);
}

TEST_CASE("walk2d equals the product of two independent 1D walks") {
  // The diagonal rotation sends the 4-direction walk to two independent
  // simple walks, so P((0,0) at n | (a,0)) = P(Z_n=0|a)^2 exactly.
  for (long n = 0; n <= 40; ++n)
    for (long a = -n; a <= n; ++a) {
      const ExactRatio p1 = walk1d_prob(n, a);
      REQUIRE(walk2d_prob(n, a) == p1 * p1);
    }
}

TEST_CASE("walk2d diagonal return: n * P >= c3 at even times") {
  double c3 = 1e300;
  for (long n = 2; n <= 200; n += 2) c3 = std::min(c3, static_cast<double>(n) * to_double(walk2d_prob(n, 0)));
  CHECK(c3 > 0.49);  // min sits at n = 2: 2 * 1/4
}

TEST_CASE("envelope report over the (n, a) grid") {
  const EnvelopeReport report = lemma6_8_envelopes(200, 1.0);
  CHECK(report.violations == 0);
  CHECK(report.c1 > 0.0);
  CHECK(report.c1 < 1.0);
  CHECK(report.cl1 > 0.2);
  REQUIRE(!report.upper.empty());
  REQUIRE(!report.lower.empty());
  for (const auto& row : report.upper) {
    REQUIRE(row.ok);
    REQUIRE((row.n + row.a) % 2 == 0);  // odd-parity cells excluded
  }
  for (const auto& row : report.lower) {
    REQUIRE(row.ok);
    REQUIRE(row.n % 2 == 0);
    REQUIRE(row.a % 2 == 0);
  }
  // the a = 0 column of the upper grid is the diagonal-return check
  bool found_a0 = false;
  for (const auto& row : report.upper)
    if (row.a == 0 && row.n % 2 == 0) {
      found_a0 = true;
      REQUIRE(to_double(row.exact) * static_cast<double>(row.n) <= report.c1 * (1 + 1e-12));
    }
  CHECK(found_a0);
  CHECK_THROWS_AS(lemma6_8_envelopes(1000, 1.0), BudgetError);
}

TEST_CASE("bridge Monte Carlo: exact targets and degenerate spec") {
  RandomStream rng(424242);
  const auto est = bridge_event_prob_mc(BridgeSpec(1, {1, 1}), 100000, rng);
  CHECK(std::abs(est.value - 0.5) <= 0.005);
  const auto est2 = bridge_event_prob_mc(BridgeSpec(2, {2, 2}), 100000, rng);
  CHECK(std::abs(est2.value - 0.5) <= 0.005);
  const auto single = bridge_event_prob_mc(BridgeSpec(3, {6, 0}), 2000, rng);
  CHECK(single.value == 1.0);
  CHECK(single.std_error == 0.0);
}

TEST_CASE("bridge Monte Carlo tracks exact values over a spec batch") {
  // 100 random specs; at least 99 estimates within 4 standard errors.
  RandomStream master(777);
  int within = 0;
  for (int trial = 0; trial < 100; ++trial) {
    RandomStream rng = master.child(static_cast<uint64_t>(trial));
    const long N = 1 + static_cast<long>(rng.below(5));
    const int j = 1 + static_cast<int>(rng.below(4));
    // random composition of 2N into j+1 parts via stars and bars
    std::vector<long> parts(static_cast<size_t>(j) + 1, 0);
    for (long s = 0; s < 2 * N; ++s) ++parts[static_cast<size_t>(rng.below(static_cast<uint64_t>(j) + 1))];
    const BridgeSpec spec(N, parts);
    const ExactRatio exact = bridge_event_prob_exact(spec);
    const auto est = bridge_event_prob_mc(spec, 4000, rng);
    const double err = std::abs(est.value - to_double(exact));
    if (err <= 4.0 * est.std_error || err == 0.0) ++within;
  }
  CHECK(within >= 99);
}
