#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "oneround/deals.hpp"
#include "oneround/parallel.hpp"
#include "oneround/report.hpp"
#include "oneround/strategy.hpp"
#include "oneround/trick_matrix.hpp"

namespace oneround {

struct OracleOptions {
  int brute_cap = 10;       // deal enumeration
  int exhaustive_cap = 9;   // N! search
  int threads = 0;
};

// All C(2N,N) deals, lexicographic in hand2.
inline std::vector<Deal> enumerate_deals(int n, const OracleOptions& opt = {}) {
  if (n < 1) throw std::domain_error("enumerate_deals: n >= 1 required");
  if (n > opt.brute_cap)
    throw CapExceeded("enumerate_deals: n = " + std::to_string(n) + " exceeds cap " +
                      std::to_string(opt.brute_cap));
  std::vector<Deal> out;
  out.reserve(deal_count(n));
  for_each_deal(n, [&](const Deal& d) { out.push_back(d); });
  return out;
}

// #{ i : hand2[i] > hand1[pi(i)] } under perfect play-out of the pairing.
inline int tricks_won(const Deal& d, const Strategy& s) {
  const int n = s.n();
  if (static_cast<int>(d.hand2.size()) != n)
    throw std::invalid_argument("tricks_won: deal size mismatch");
  int won = 0;
  for (int i = 1; i <= n; ++i)
    if (d.hand2[i - 1] > d.hand1[s(i) - 1]) ++won;
  return won;
}

// Ground-truth expectation by full enumeration; equals objective/scale.
inline BigRational expected_tricks_bruteforce(int n, const Strategy& s,
                                              const OracleOptions& opt = {}) {
  if (s.n() != n) throw std::invalid_argument("expected_tricks_bruteforce: dimension mismatch");
  if (n > opt.brute_cap)
    throw CapExceeded("expected_tricks_bruteforce: n = " + std::to_string(n) +
                      " exceeds cap " + std::to_string(opt.brute_cap));
  uint64_t total = 0;
  for_each_deal(n, [&](const Deal& d) { total += static_cast<uint64_t>(tricks_won(d, s)); });
  BigRational r{BigInt(static_cast<unsigned long>(total))};
  r /= BigRational(binomial(2L * n, n));
  r.canonicalize();
  return r;
}

struct OptimumResult {
  BigInt value;
  std::vector<Strategy> argmax;   // all maximizers (exhaustive) or one (LAP)
  bool tie_possible = false;      // LAP only: a zero-reduced-cost entry off the matching
};

namespace detail {

template <typename Value, typename Cell>
OptimumResult exhaustive_search(int n, const Cell& cell) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  Value best{};
  bool first = true;
  std::vector<std::vector<int>> arg;
  do {
    Value v{};
    for (int i = 0; i < n; ++i) v += cell(i + 1, img[i]);
    if (first || v > best) {
      best = v;
      arg.assign(1, img);
      first = false;
    } else if (v == best) {
      arg.push_back(img);
    }
  } while (std::next_permutation(img.begin(), img.end()));
  OptimumResult out;
  out.value = BigInt(best);
  for (auto& a : arg) out.argmax.emplace_back(std::move(a));
  return out;
}

}  // namespace detail

// Exact maximum of F over all N! permutations with the complete argmax set.
// The default mode is unpruned so it stays theorem-independent; the pruned
// mode searches only shape candidates and exists for cross-checks.
inline OptimumResult exhaustive_optimal(const TrickMatrix& P, const OracleOptions& opt = {},
                                        bool shape_pruned = false) {
  const int n = P.n();
  if (n > opt.exhaustive_cap)
    throw CapExceeded("exhaustive_optimal: n = " + std::to_string(n) + " exceeds cap " +
                      std::to_string(opt.exhaustive_cap));
  if (shape_pruned) {
    OptimumResult out;
    bool first = true;
    for (const Strategy& s : enumerate_shape_candidates(n, n)) {
      const BigInt v = objective(P, s);
      if (first || v > out.value) {
        out.value = v;
        out.argmax.assign(1, s);
        first = false;
      } else if (v == out.value) {
        out.argmax.push_back(s);
      }
    }
    return out;
  }
  if (P.scale().fits_ulong_p() && n <= 15) {
    std::vector<int64_t> grid(static_cast<size_t>(n) * n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        grid[static_cast<size_t>(i - 1) * n + (j - 1)] = P.at(i, j).get_si();
    return detail::exhaustive_search<int64_t>(
        n, [&](int i, int j) { return grid[static_cast<size_t>(i - 1) * n + (j - 1)]; });
  }
  return detail::exhaustive_search<BigInt>(n, [&](int i, int j) { return P.at(i, j); });
}

// Exact max-sum assignment via shortest augmenting paths with integer
// potentials (minimizing scale - p).  No floating point anywhere, so ties
// such as N = 2 are decided exactly.
inline OptimumResult lap_optimal(const TrickMatrix& P) {
  const int n = P.n();
  auto cost = [&](int i, int j) -> BigInt { return P.scale() - P.at(i, j); };
  BigInt span(1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      BigInt c = cost(i, j);
      if (c < 0) c = -c;
      if (c > span) span = c;
    }
  const BigInt inf = span * (n + 1) + 1;

  std::vector<BigInt> u(n + 1, BigInt(0)), v(n + 1, BigInt(0));
  std::vector<int> match_col(n + 1, 0);  // match_col[j] = row assigned to column j
  std::vector<int> way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match_col[0] = i;
    int j0 = 0;
    std::vector<BigInt> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match_col[j0];
      int j1 = -1;
      BigInt delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        BigInt cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);
    do {
      const int j1 = way[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> img(n, 0);
  for (int j = 1; j <= n; ++j) img[match_col[j] - 1] = j;
  OptimumResult out;
  out.argmax.emplace_back(img);
  out.value = objective(P, out.argmax.front());
  // Tie detection: an alternate optimum exists iff the zero-reduced-cost
  // edges admit an alternating cycle.  Arc i -> owner(j) for every unmatched
  // tight entry (i,j); any directed cycle rematches into an equal-cost
  // assignment, and by complementary slackness every alternate optimum
  // yields such a cycle.
  std::vector<std::vector<int>> arcs(n + 1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (img[i - 1] == j) continue;
      if (cost(i, j) - u[i] - v[j] == 0) arcs[i].push_back(match_col[j]);
    }
  std::vector<int> color(n + 1, 0);  // 0 new, 1 on stack, 2 done
  auto has_cycle = [&](auto&& self, int node) -> bool {
    color[node] = 1;
    for (int next : arcs[node]) {
      if (color[next] == 1) return true;
      if (color[next] == 0 && self(self, next)) return true;
    }
    color[node] = 2;
    return false;
  };
  for (int i = 1; i <= n && !out.tie_possible; ++i)
    if (color[i] == 0 && has_cycle(has_cycle, i)) out.tie_possible = true;
  return out;
}

// Perfect-information optimum for one deal: the greedy two-pointer sweep
// (match each opposing card, ascending, with the weakest card that beats it)
// attains the maximum beat-matching by the usual exchange argument.
inline int max_tricks_any_matching(const Deal& d) {
  int won = 0;
  size_t p = 0;
  for (int b : d.hand1) {
    while (p < d.hand2.size() && d.hand2[p] <= b) ++p;
    if (p == d.hand2.size()) break;
    ++won;
    ++p;
  }
  return won;
}

// Courtney's majority property, verified by full enumeration:
//   guarantee:  whenever any matching wins n+1 tricks, the majority strategy does;
//   optimality: no permutation wins a majority on strictly more deals.
inline std::vector<VerificationReport> verify_majority_property(int n,
                                                                const OracleOptions& opt = {}) {
  if (n < 3 || n % 2 == 0)
    throw std::domain_error("verify_majority_property: odd N >= 3 required");
  if (n > opt.brute_cap)
    throw CapExceeded("verify_majority_property: n = " + std::to_string(n) + " exceeds cap " +
                      std::to_string(opt.brute_cap));
  const int need = (n + 1) / 2;  // strict majority of an odd number of tricks
  const Strategy maj = majority_strategy(n);

  std::vector<VerificationReport> out;
  // Per-deal beat masks: bit j-1 of mask[i-1] set iff hand2[i] beats hand1[j].
  std::vector<std::vector<uint16_t>> masks;
  masks.reserve(deal_count(n));
  VerificationReport guarantee{"majority_guarantee", n};
  uint64_t majority_wins = 0;
  for_each_deal(n, [&](const Deal& d) {
    ++guarantee.checked;
    std::vector<uint16_t> m(n, 0);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (d.hand2[i - 1] > d.hand1[j - 1]) m[i - 1] |= static_cast<uint16_t>(1u << (j - 1));
    masks.push_back(std::move(m));
    const int tw = tricks_won(d, maj);
    if (tw >= need) ++majority_wins;
    if (max_tricks_any_matching(d) >= need && tw < need)
      guarantee.fail({{"hand2", d.hand2}, {"tricks_won", tw}});
  });
  out.push_back(std::move(guarantee));

  VerificationReport optimality{"majority_optimality", n};
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  uint64_t best = 0;
  std::vector<int> best_img;
  do {
    ++optimality.checked;
    uint64_t wins = 0;
    for (const auto& m : masks) {
      int t = 0;
      for (int i = 0; i < n; ++i) t += (m[i] >> (img[i] - 1)) & 1;
      if (t >= need) ++wins;
    }
    if (wins > best) {
      best = wins;
      best_img = img;
    }
  } while (std::next_permutation(img.begin(), img.end()));
  if (best > majority_wins)
    optimality.fail({{"better_strategy", best_img},
                     {"wins", best},
                     {"majority_wins", majority_wins}});
  out.push_back(std::move(optimality));
  return out;
}

}  // namespace oneround
