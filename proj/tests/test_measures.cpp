#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "incseq/measures.hpp"
#include "incseq/moments.hpp"
#include "support.hpp"

using namespace incseq;
using testsupport::for_each_permutation;

TEST_CASE("z_histogram: exact counts for small cases") {
  const ZHistogram h32 = z_histogram_exact(3, 2);
  REQUIRE(h32.counts.size() == 4);
  CHECK(h32.counts.at(BigCount(3)) == 1);
  CHECK(h32.counts.at(BigCount(2)) == 2);
  CHECK(h32.counts.at(BigCount(1)) == 2);
  CHECK(h32.counts.at(BigCount(0)) == 1);

  const ZHistogram h22 = z_histogram_exact(2, 2);
  CHECK(h22.counts.at(BigCount(1)) == 1);
  CHECK(h22.counts.at(BigCount(0)) == 1);

  CHECK_THROWS_AS(z_histogram_exact(9, 2), BudgetError);
  CHECK_THROWS_AS(z_histogram_exact(4, 5), std::domain_error);
}

TEST_CASE("z_histogram mass checks") {
  for (long n = 2; n <= 6; ++n) {
    for (long k = 1; k <= n; ++k) {
      const ZHistogram hist = z_histogram_exact(n, k);
      BigCount mass = 0, weighted = 0;
      for (const auto& [z, cnt] : hist.counts) {
        mass += cnt;
        weighted += z * cnt;
        REQUIRE(z <= binomial(n, k));
      }
      REQUIRE(mass == factorial(n));
      REQUIRE(ExactRatio(weighted, factorial(n)) == expected_count(n, k));
    }
  }
}

TEST_CASE("total variation: exact values") {
  for (long n = 2; n <= 8; ++n) CHECK(total_variation_exact(n, 1).tv_exact == 0);
  CHECK(total_variation_exact(2, 2).tv_exact == ExactRatio(1, 2));
  CHECK(total_variation_exact(3, 2).tv_exact == ExactRatio(5, 18));
}

TEST_CASE("total variation: bounds and the two evaluation orders agree") {
  for (long n = 2; n <= 5; ++n) {
    for (long k = 1; k <= n; ++k) {
      const TVReport report = total_variation_exact(n, k);
      REQUIRE(report.tv_exact >= 0);
      REQUIRE(report.tv_exact <= 1);
      // direct per-permutation evaluation, no histogram grouping
      ExactRatio direct = 0;
      const ExactRatio uniform(1, factorial(n));
      for_each_permutation(static_cast<int>(n), [&](const Permutation& perm) {
        const ExactRatio mu(count_k_incseq(perm, static_cast<int>(k)) * factorial(k),
                            binomial(n, k) * factorial(n));
        const ExactRatio diff = mu - uniform;
        direct += diff < 0 ? -diff : diff;
      });
      REQUIRE(report.tv_exact == direct / 2);
    }
  }
}

TEST_CASE("density identity: mixture evaluation equals Z k!/(C(n,k) n!)") {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      for_each_permutation(n, [&](const Permutation& perm) {
        const ExactRatio mixture = testsupport::mu_density_mixture(perm, k);
        const BigCount z = count_k_incseq(perm, k);
        // restated as integers: mu(sigma) n! C(n,k) = Z(sigma) k!
        REQUIRE(mixture * ExactRatio(factorial(n) * binomial(n, k)) == ExactRatio(z * factorial(k)));
      });
    }
  }
}

TEST_CASE("total_variation_mc: degenerate k = 1 and accuracy at (3,2)") {
  RandomStream rng(5150);
  const TVReport zero = total_variation_mc(6, 1, 2000, rng);
  CHECK(zero.tv == 0.0);
  CHECK(zero.std_error == 0.0);

  const TVReport est = total_variation_mc(3, 2, 100000, rng);
  CHECK(std::abs(est.tv - to_double(ExactRatio(5, 18))) < 0.01);
}

TEST_CASE("total_variation_mc within 4 stderr of exact at (8,3)") {
  RandomStream rng(8080);
  const TVReport exact = total_variation_exact(8, 3);
  const TVReport est = total_variation_mc(8, 3, 20000, rng);
  CHECK(std::abs(est.tv - exact.tv) <= 4.0 * est.std_error);
}

TEST_CASE("total_variation_mc is unbiased at (5,2)") {
  const TVReport exact = total_variation_exact(5, 2);
  RandomStream master(99999);
  const int reps = 200;
  const long samples = 1000;
  double mean = 0.0, combined_var = 0.0;
  for (int r = 0; r < reps; ++r) {
    RandomStream rng = master.child(static_cast<uint64_t>(r));
    const TVReport est = total_variation_mc(5, 2, samples, rng);
    mean += est.tv;
    combined_var += est.std_error * est.std_error;
  }
  mean /= reps;
  const double combined_stderr = std::sqrt(combined_var) / reps;
  CHECK(std::abs(mean - exact.tv) <= 3.0 * combined_stderr);
}

TEST_CASE("lln_exceedance: degenerate k = 1, and the exact counterpart at (6,2)") {
  RandomStream rng(13);
  const auto zero = lln_exceedance(5, 1, 0.1, 1000, rng);
  CHECK(zero.value == 0.0);

  // exact exceedance from the histogram: P(|Z/EZ - 1| > 1/4)
  const ZHistogram hist = z_histogram_exact(6, 2);
  const ExactRatio ez = expected_count(6, 2);
  BigCount outside = 0;
  for (const auto& [z, cnt] : hist.counts) {
    const ExactRatio dev = ExactRatio(z) / ez - 1;
    if ((dev < 0 ? -dev : dev) > ExactRatio(1, 4)) outside += cnt;
  }
  const double exact = to_double(ExactRatio(outside, factorial(6)));
  const auto est = lln_exceedance(6, 2, 0.25, 40000, rng);
  CHECK(std::abs(est.value - exact) <= 4.0 * est.std_error);
}

TEST_CASE("lln_exceedance satisfies the Chebyshev bound") {
  RandomStream rng(2718);
  for (const auto& [n, k] : std::vector<std::pair<long, long>>{{50, 3}, {100, 3}}) {
    const double ratio = to_double(moment_summary(n, k).ratio);
    for (const double eps : {0.25, 0.5}) {
      const auto est = lln_exceedance(n, k, eps, 2000, rng);
      CHECK(est.value <= ratio / (eps * eps) + 3.0 * est.std_error);
    }
  }
}

TEST_CASE("concentration improves from (400,6) to (800,7) at eps = 0.25") {
  // Var/(EZ)^2 = 0.0625 at (400,6) vs 0.0491 at (800,7); the exceedance
  // drops accordingly (roughly 0.31 to 0.23).
  RandomStream rng_a(606), rng_b(607);
  const auto a = lln_exceedance(400, 6, 0.25, 2000, rng_a);
  const auto b = lln_exceedance(800, 7, 0.25, 2000, rng_b);
  const double gap_stderr = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  CHECK(b.value < a.value - 2.0 * gap_stderr);
}

TEST_CASE("proposition-1 echo: TV and exceedance move together, exactly") {
  // k = 2, n = 4..8: TV strictly decreases; at every step where the exact
  // exceedance (eps = 1/4) decreases, TV decreases with it.
  std::vector<ExactRatio> tvs, excs;
  for (long n = 4; n <= 8; ++n) {
    tvs.push_back(total_variation_exact(n, 2).tv_exact);
    const ZHistogram hist = z_histogram_exact(n, 2);
    const ExactRatio ez = expected_count(n, 2);
    BigCount outside = 0;
    for (const auto& [z, cnt] : hist.counts) {
      const ExactRatio dev = ExactRatio(z) / ez - 1;
      if ((dev < 0 ? -dev : dev) > ExactRatio(1, 4)) outside += cnt;
    }
    excs.push_back(ExactRatio(outside, factorial(n)));
  }
  for (size_t i = 1; i < tvs.size(); ++i) {
    REQUIRE(tvs[i] < tvs[i - 1]);
    if (excs[i] < excs[i - 1]) REQUIRE(tvs[i] < tvs[i - 1]);
  }
}

TEST_CASE("exponent_scan: grid shape, reproducibility, threading") {
  RandomStream master(42);
  const std::vector<double> ls{0.2, 0.3};
  const std::vector<long> ns{30, 60};
  const auto cells = exponent_scan(ls, ns, 0.25, 400, master);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].l == 0.2);
  CHECK(cells[0].n == 30);
  CHECK(cells[3].l == 0.3);
  CHECK(cells[3].n == 60);

  // bit-for-bit reproducible under the same master seed
  RandomStream master2(42);
  const auto again = exponent_scan(ls, ns, 0.25, 400, master2);
  for (size_t i = 0; i < cells.size(); ++i) {
    REQUIRE(cells[i].exceedance == again[i].exceedance);
    REQUIRE(cells[i].seed == again[i].seed);
  }

  // worker threads change nothing
  RandomStream master3(42);
  const auto threaded = exponent_scan(ls, ns, 0.25, 400, master3, 4);
  for (size_t i = 0; i < cells.size(); ++i) REQUIRE(cells[i].exceedance == threaded[i].exceedance);

  // extending the n list never perturbs existing cells
  RandomStream master4(42);
  const auto extended = exponent_scan(ls, {30, 60, 90}, 0.25, 400, master4);
  REQUIRE(extended.size() == 6);
  CHECK(extended[0].exceedance == cells[0].exceedance);
  CHECK(extended[1].exceedance == cells[1].exceedance);

  CHECK_THROWS_AS(exponent_scan({0.6}, ns, 0.25, 100, master), std::domain_error);
}
