#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "oneround/oracles.hpp"
#include "oneround/optimal_k.hpp"

using namespace oneround;

namespace {

Strategy perm(std::vector<int> img) { return Strategy(std::move(img)); }

// Independent oracle for the greedy matcher: Kuhn's augmenting-path matching
// on the bipartite "beats" graph.
int max_beats_kuhn(const Deal& d) {
  const int n = static_cast<int>(d.hand2.size());
  std::vector<int> match(n, -1);  // hand1 index -> hand2 index
  std::vector<bool> visited;
  auto try_augment = [&](auto&& self, int i) -> bool {
    for (int j = 0; j < n; ++j) {
      if (d.hand2[i] > d.hand1[j] && !visited[j]) {
        visited[j] = true;
        if (match[j] < 0 || self(self, match[j])) {
          match[j] = i;
          return true;
        }
      }
    }
    return false;
  };
  int total = 0;
  for (int i = 0; i < n; ++i) {
    visited.assign(n, false);
    if (try_augment(try_augment, i)) ++total;
  }
  return total;
}

}  // namespace

TEST_CASE("enumerate_deals: counts, order, uniqueness") {
  CHECK(enumerate_deals(1).size() == 2);
  CHECK(enumerate_deals(2).size() == 6);
  CHECK(enumerate_deals(5).size() == 252);

  const auto deals = enumerate_deals(3);
  REQUIRE(deals.size() == 20);
  CHECK(deals.front().hand2 == std::vector<int>{1, 2, 3});
  CHECK(deals.front().hand1 == std::vector<int>{4, 5, 6});
  CHECK(deals.back().hand2 == std::vector<int>{4, 5, 6});
  std::set<std::vector<int>> seen;
  for (size_t t = 0; t < deals.size(); ++t) {
    seen.insert(deals[t].hand2);
    if (t > 0) REQUIRE(deals[t - 1].hand2 < deals[t].hand2);  // lexicographic
    // complementarity
    std::vector<int> all = deals[t].hand2;
    all.insert(all.end(), deals[t].hand1.begin(), deals[t].hand1.end());
    std::sort(all.begin(), all.end());
    REQUIRE(all == std::vector<int>{1, 2, 3, 4, 5, 6});
  }
  CHECK(seen.size() == 20);

  CHECK_THROWS_AS(enumerate_deals(11), CapExceeded);
}

TEST_CASE("deal unranking agrees with sequential enumeration") {
  const auto deals = enumerate_deals(4);
  for (uint64_t r = 0; r < deals.size(); ++r)
    REQUIRE(hand2_from_rank(4, r) == deals[r].hand2);
}

TEST_CASE("tricks_won: worked examples") {
  // the three-horse legend: values a>A>b>B>c>C become 6>5>4>3>2>1
  Deal legend;
  legend.hand2 = {1, 3, 5};
  legend.hand1 = {2, 4, 6};
  CHECK(tricks_won(legend, perm({3, 1, 2})) == 2);
  CHECK(tricks_won(legend, Strategy::identity(3)) == 0);

  Deal dominant;
  dominant.hand2 = {4, 5, 6};
  dominant.hand1 = {1, 2, 3};
  Deal hopeless;
  hopeless.hand2 = {1, 2, 3};
  hopeless.hand1 = {4, 5, 6};
  std::vector<int> img{1, 2, 3};
  do {
    CHECK(tricks_won(dominant, Strategy(img)) == 3);
    CHECK(tricks_won(hopeless, Strategy(img)) == 0);
  } while (std::next_permutation(img.begin(), img.end()));
}

TEST_CASE("expected_tricks_bruteforce: worked values") {
  CHECK(expected_tricks_bruteforce(3, perm({3, 1, 2})) == BigRational(33, 20));
  CHECK(expected_tricks_bruteforce(3, Strategy::identity(3)) == BigRational(3, 2));
  CHECK(expected_tricks_bruteforce(1, Strategy::identity(1)) == BigRational(1, 2));
  CHECK_THROWS_AS(expected_tricks_bruteforce(11, Strategy::identity(11)), CapExceeded);
}

TEST_CASE("brute-force expectation equals objective/scale") {
  for (int n : {2, 3, 4, 6}) {
    const TrickMatrix P = build_stern(n);
    std::mt19937_64 rng(n);
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    for (int t = 0; t < 12; ++t) {
      std::shuffle(img.begin(), img.end(), rng);
      const Strategy s{img};
      BigRational expect{objective(P, s)};
      expect /= BigRational(P.scale());
      expect.canonicalize();
      REQUIRE(expected_tricks_bruteforce(n, s) == expect);
    }
  }
}

TEST_CASE("exhaustive_optimal: worked values") {
  const OptimumResult r3 = exhaustive_optimal(build_stern(3));
  CHECK(r3.value == 33);
  REQUIRE(r3.argmax.size() == 1);
  CHECK(r3.argmax.front() == perm({3, 1, 2}));

  const OptimumResult r2 = exhaustive_optimal(build_stern(2));
  CHECK(r2.value == 6);
  REQUIRE(r2.argmax.size() == 2);  // identity and the swap tie
  CHECK(r2.argmax[0] == Strategy::identity(2));
  CHECK(r2.argmax[1] == perm({2, 1}));

  const OptimumResult r5 = exhaustive_optimal(build_stern(5));
  CHECK(r5.value == 765);  // 1 + 764
  REQUIRE(r5.argmax.size() == 1);
  CHECK(r5.argmax.front() == no_gap_strategy(5, 1));

  CHECK_THROWS_AS(exhaustive_optimal(build_stern(10)), CapExceeded);
}

TEST_CASE("exhaustive maximizers have the proven structure") {
  for (int n = 3; n <= 8; ++n) {
    const OptimumResult r = exhaustive_optimal(build_stern(n));
    REQUIRE(r.argmax.size() == 1);
    const Strategy& s = r.argmax.front();
    CHECK(is_shape_valid(s));
    CHECK(is_symmetric(s));
    CHECK(is_gap_free(throw_string_of(s)));
    CHECK(s(1) == n);
    CHECK(s == no_gap_strategy(n, k_exact(n)));
  }
}

TEST_CASE("shape-pruned search finds the same optimum") {
  for (int n : {4, 6, 7}) {
    const OptimumResult full = exhaustive_optimal(build_stern(n));
    const OptimumResult pruned = exhaustive_optimal(build_stern(n), {}, /*shape_pruned=*/true);
    CHECK(full.value == pruned.value);
  }
}

TEST_CASE("lap_optimal agrees with exhaustive search on P^N") {
  for (int n = 1; n <= 7; ++n) {
    const TrickMatrix P = build_stern(n);
    const OptimumResult ex = exhaustive_optimal(P);
    const OptimumResult lap = lap_optimal(P);
    REQUIRE(lap.value == ex.value);
    REQUIRE(objective(P, lap.argmax.front()) == lap.value);
  }
}

TEST_CASE("lap_optimal flags the N=2 tie") {
  const OptimumResult lap = lap_optimal(build_stern(2));
  CHECK(lap.value == 6);
  CHECK(lap.tie_possible);
  // the unique-optimum cases do not flag
  CHECK_FALSE(lap_optimal(build_stern(3)).tie_possible);
}

TEST_CASE("lap_optimal agrees with exhaustive search on random matrices") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    TrickMatrix M(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        M.at(i, j) = static_cast<long>(rng() % mpz_get_ui(M.scale().get_mpz_t()));
    const OptimumResult ex = exhaustive_optimal(M);
    const OptimumResult lap = lap_optimal(M);
    REQUIRE(lap.value == ex.value);
    REQUIRE(std::find(ex.argmax.begin(), ex.argmax.end(), lap.argmax.front()) !=
            ex.argmax.end());
    REQUIRE(lap.tie_possible == (ex.argmax.size() > 1));
  }
}

TEST_CASE("lap value equals F(pi_{k*}) through N=30") {
  for (int n = 3; n <= 30; ++n) {
    const TrickMatrix P = build_stern(n);
    const OptimumResult lap = lap_optimal(P);
    REQUIRE(lap.value == f_pi_k(n, k_exact(n)));
    REQUIRE(is_gap_free(throw_string_of(lap.argmax.front())));
  }
}

TEST_CASE("max_tricks_any_matching: worked examples") {
  Deal legend;
  legend.hand2 = {1, 3, 5};
  legend.hand1 = {2, 4, 6};
  CHECK(max_tricks_any_matching(legend) == 2);

  Deal evens;
  evens.hand2 = {2, 4, 6};
  evens.hand1 = {1, 3, 5};
  CHECK(max_tricks_any_matching(evens) == 3);

  Deal hopeless;
  hopeless.hand2 = {1, 2, 3};
  hopeless.hand1 = {4, 5, 6};
  CHECK(max_tricks_any_matching(hopeless) == 0);
}

TEST_CASE("greedy matcher equals bipartite matching on every deal") {
  for (int n = 1; n <= 5; ++n)
    for (const Deal& d : enumerate_deals(n))
      REQUIRE(max_tricks_any_matching(d) == max_beats_kuhn(d));
}

TEST_CASE("majority property holds for N = 3 and 5") {
  for (int n : {3, 5}) {
    const auto reports = verify_majority_property(n);
    REQUIRE(reports.size() == 2);
    for (const auto& r : reports) {
      INFO("n=" << n << " " << r.lemma);
      CHECK(r.pass);
    }
  }
  CHECK_THROWS_AS(verify_majority_property(4), std::domain_error);
}

TEST_CASE("majority win counts by direct enumeration") {
  // independent tally of how many deals the majority strategy wins outright
  const std::vector<std::pair<int, int>> expected = {{3, 14}, {5, 207}};
  for (const auto& [n, want] : expected) {
    const Strategy maj = majority_strategy(n);
    int wins = 0;
    for (const Deal& d : enumerate_deals(n))
      if (2 * tricks_won(d, maj) > n) ++wins;
    CHECK(wins == want);
  }
}

TEST_CASE("verification report JSON") {
  const auto reports = verify_majority_property(3);
  const nlohmann::json j = to_json(reports.front());
  CHECK(j["lemma"] == "majority_guarantee");
  CHECK(j["n"] == 3);
  CHECK(j["pass"] == true);
  CHECK(j["checked"] == 20);
}
