#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oneround/optimal_k.hpp"

using namespace oneround;

TEST_CASE("delta_sbar: worked values") {
  CHECK(delta_sbar(4, 1) == 23);  // (1+8+28+56) - 70
  CHECK(delta_sbar(7, 2) == 41);  // 3473 - 3432
  CHECK(delta_sbar(7, 3) == 1471 - 3432);
  CHECK(delta_sbar(7, 3) < 0);
  CHECK_THROWS_AS(delta_sbar(7, 0), std::domain_error);
  CHECK_THROWS_AS(delta_sbar(7, 7), std::domain_error);
}

TEST_CASE("delta_sbar matches matrix diagonal differences") {
  for (int n = 2; n <= 20; ++n) {
    const DiagonalSums d = diagonal_sums(build_stern(n));
    for (int k = 1; k < n; ++k) REQUIRE(delta_sbar(n, k) == d.below[k] - d.below[k - 1]);
  }
}

TEST_CASE("delta_s closed form matches matrix diagonal differences") {
  // s_{kN} - s_{k-1,N} = -(C(2N,0) + ... + C(2N,N-k))
  for (int n = 2; n <= 20; ++n) {
    const DiagonalSums d = diagonal_sums(build_stern(n));
    for (int k = 1; k < n; ++k)
      REQUIRE(d.above[k] - d.above[k - 1] == -prefix_sum_row(2 * n, n - k));
  }
}

TEST_CASE("k_approx: worked values") {
  CHECK(k_approx(3) == 1);
  CHECK(k_approx(7) == 2);
  CHECK(k_approx(8) == 2);
  CHECK(k_approx(13) == 3);
  CHECK(k_approx(90) == 10);
  CHECK_THROWS_AS(k_approx(2), std::domain_error);
}

TEST_CASE("k_exact: worked values and the crossing arithmetic") {
  CHECK(k_exact(7) == 2);
  // the two sides of the N=7 crossing
  CHECK(binomial(7, 1) * binomial(7, 1) + prefix_sum_row(14, 5) == 3522);
  CHECK(binomial(7, 2) * binomial(7, 2) + prefix_sum_row(14, 4) == 1912);
  CHECK(BigInt(3522) >= binomial(14, 7));
  CHECK(BigInt(1912) < binomial(14, 7));

  CHECK(k_exact(13) == 3);
  CHECK_THROWS_AS(k_exact(2), std::domain_error);

  const std::vector<int> want{1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3};
  for (int n = 3; n <= 15; ++n) CHECK(k_exact(n) == want[n - 3]);
}

TEST_CASE("center-out formula agrees with k_approx") {
  for (long n = 3; n <= 300; ++n) REQUIRE(k_approx_center_out(n) == k_approx(n));
  CHECK(k_approx_center_out(3) == 1);
  CHECK(k_approx_center_out(7) == 2);
  CHECK(k_approx_center_out(13) == 3);
}

TEST_CASE("f_pi_values matches matrix objectives") {
  for (int n = 1; n <= 20; ++n) {
    const TrickMatrix P = build_stern(n);
    const auto fv = f_pi_values(n);
    REQUIRE(static_cast<int>(fv.size()) == n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k)
      REQUIRE(fv[k] == objective(P, no_gap_strategy(n, k)));
  }
}

TEST_CASE("F increments: exact identity and single crossing") {
  // F(pi_k) - F(pi_{k-1}) = Delta sbar_{kN} + p_{k,N+1-k}
  for (long n : {3L, 7L, 20L, 41L, 60L}) {
    const auto fv = f_pi_values(n);
    bool negative_seen = false;
    for (long k = 1; k < static_cast<long>(fv.size()); ++k) {
      const BigInt inc = fv[k] - fv[k - 1];
      REQUIRE(inc == delta_sbar(n, k) + amd_entry(static_cast<int>(n), static_cast<int>(k)));
      if (inc < 0) negative_seen = true;
      else REQUIRE_FALSE(negative_seen);  // increments stay single-crossing
    }
  }
}

TEST_CASE("k_exact maximizes F(pi_k)") {
  for (long n = 3; n <= 60; ++n) {
    const auto fv = f_pi_values(n);
    int argmax = 0;
    for (int k = 1; k < static_cast<int>(fv.size()); ++k)
      if (fv[k] > fv[argmax]) argmax = k;
    REQUIRE(argmax == k_exact(n));
  }
}

TEST_CASE("k_report: N=90 is a lower-bound exception") {
  const KReport r = k_report(90);
  CHECK(r.k_exact == 10);
  CHECK(r.k_approx == 10);
  REQUIRE(r.bound_violation.has_value());
  CHECK(*r.bound_violation == "lower");
  CHECK_THAT(r.lower_bound, Catch::Matchers::WithinAbs(10.0621, 1e-3));
}

TEST_CASE("k_report: N=500 ratio") {
  const KReport r = k_report(500, /*with_f_values=*/false);
  CHECK(r.k_exact == 31);
  CHECK(r.k_approx == 31);
  CHECK_FALSE(r.bound_violation.has_value());
  CHECK_THAT(r.ratio, Catch::Matchers::WithinAbs(0.556122, 5e-4));
  CHECK(r.naive_bound_ok);
}

TEST_CASE("k_report: naive bound is sharp at N=8") {
  const KReport r = k_report(8);
  CHECK(certified::floor_naive_bound(8) == 2);
  CHECK(r.k_approx == 2);
  CHECK(r.naive_bound_ok);
}

TEST_CASE("k_report JSON shape") {
  const nlohmann::json j = to_json(k_report(90));
  CHECK(j["n"] == 90);
  CHECK(j["k_exact"] == 10);
  CHECK(j["bound_violation"] == "lower");
  const nlohmann::json j7 = to_json(k_report(7));
  CHECK(j7["bound_violation"].is_null());
}

TEST_CASE("k and k* never diverge in range") {
  CHECK(kk_star_divergence_scan(3).empty());
  CHECK(kk_star_divergence_scan(200).empty());
}

TEST_CASE("k functions run far beyond matrix range") {
  CHECK(k_exact(1000) == 47);
  CHECK(k_approx(1000) == 47);
  CHECK(k_exact(5000) == 120);
  CHECK(k_approx_center_out(5000) == 120);
}

TEST_CASE("k* sits between k and k+1") {
  for (long n = 3; n <= 200; ++n) {
    const int ka = k_approx(n), ke = k_exact(n);
    REQUIRE(ka <= ke);
    REQUIRE(ke <= ka + 1);
  }
}

TEST_CASE("c_ij: direct arithmetic and bracket form") {
  const TrickMatrix P7 = build_stern(7);
  // 2(p_41 - p_31) + p_35 - p_44 = 2(3312-3102) + 491 - 1716
  CHECK(c_ij(P7, 3, 1) == -805);
  CHECK(c_ij_closed(7, 3, 1) == -805);
  CHECK_THROWS_AS(c_ij(P7, 3, 3), std::domain_error);
  CHECK_THROWS_AS(c_ij(P7, 7, 1), std::domain_error);

  for (int n = 3; n <= 16; ++n) {
    const TrickMatrix P = build_stern(n);
    for (int i = 2; i + 1 <= n; ++i)
      for (int j = 1; j < i; ++j) REQUIRE(c_ij(P, i, j) == c_ij_closed(n, i, j));
  }
}

TEST_CASE("d_ij: exact rational value and preconditions") {
  // 1 * C(8,1) / (4 * C(16,4) * C(8,3)) = 8 / (4 * 1820 * 56)
  BigRational want(8, 4L * 1820 * 56);
  want.canonicalize();
  CHECK(d_ij(8, 3, 1) == want);
  CHECK_THROWS_AS(d_ij(8, 3, 3), std::domain_error);
  CHECK_THROWS_AS(d_ij(8, 3, 4), std::domain_error);
  CHECK_THROWS_AS(d_ij(8, 8, 1), std::domain_error);
}

TEST_CASE("d_ij monotonicity: recorded empirical region") {
  // The monotonicity D_ij > D_{i+1,j+1} is asymptotic; at desk scale the
  // a-priori region contains exceptions, which the scan records.
  const LemmaRegionScan s12 = dij_region_scan(12);
  CHECK(s12.exceptions == std::vector<std::pair<long, long>>{{5, 1}});
  const LemmaRegionScan s20 = dij_region_scan(20);
  CHECK(s20.exceptions ==
        std::vector<std::pair<long, long>>{{8, 1}, {9, 1}, {9, 2}, {9, 3}});
  CHECK(s20.cells.size() == 26);
}

TEST_CASE("lemma45_scan: the (20,5) / (20,8) frontier") {
  CHECK(binomial(40, 15) == BigInt("40225345056"));
  CHECK(binomial(40, 20) == BigInt("137846528820"));

  const LemmaRegionScan paper = lemma45_scan(20, 20, Lemma45Mode::paper);
  const LemmaRegionScan alt = lemma45_scan(20, 20, Lemma45Mode::alternative);
  auto holds = [](const LemmaRegionScan& s, long n, long k) {
    for (const auto& [cn, ck, h] : s.cells)
      if (cn == n && ck == k) return h;
    throw std::runtime_error("cell not scanned");
  };
  CHECK_FALSE(holds(paper, 20, 5));
  CHECK(holds(paper, 20, 8));
  CHECK(holds(alt, 20, 5));
  CHECK(alt.exceptions.empty());
}

TEST_CASE("lemma45_scan alternative mode holds through N=40") {
  CHECK(lemma45_scan(8, 40, Lemma45Mode::alternative).exceptions.empty());
}

TEST_CASE("lemma45 certified comparison agrees with rational bracketing") {
  // e^-1 > C(40,15)/C(40,20) > e^-1.25
  BigRational q1(1, 1), q125(5, 4);
  CHECK(certified::less_than_scaled_exp(binomial(40, 15), binomial(40, 20), q1));
  CHECK_FALSE(certified::less_than_scaled_exp(binomial(40, 15), binomial(40, 20), q125));
}

TEST_CASE("pi0_bound_check holds across the buildable range") {
  CHECK_THROWS_AS(pi0_bound_check(29), std::domain_error);
  for (int n = 30; n <= 60; ++n) {
    INFO("n=" << n);
    REQUIRE(pi0_bound_check(build_stern(n)));
  }
}

TEST_CASE("certified floors") {
  CHECK(certified::floor_sqrt_nlogn_over(30, 2) == 7);   // sqrt(30 ln30 / 2) = 7.14..
  CHECK(certified::floor_sqrt_nlogn_over(90, 1) == 20);  // sqrt(90 ln90) = 20.12..
  CHECK(certified::floor_naive_bound(8) == 2);
  CHECK(certified::floor_naive_bound(500) == 19);  // (sqrt(500 pi)-1)/2 = 19.3..
}

TEST_CASE("certified strict bound comparisons at the N=90 edge") {
  // k*(90) = 10 and sqrt(90 ln 90 / 4) = 10.06..: the lower bound fails
  CHECK_FALSE(certified::exceeds_sqrt_nlogn_over(10, 90, 4));
  CHECK(certified::exceeds_sqrt_nlogn_over(11, 90, 4));
  // and 10 < sqrt(90 ln 90 / 2) = 14.2..
  CHECK_FALSE(certified::exceeds_sqrt_nlogn_over(10, 90, 2));
}
