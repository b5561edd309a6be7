#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "oneround/optimal_k.hpp"
#include "oneround/parallel.hpp"
#include "oneround/strategy.hpp"

namespace oneround {

struct SimConfig {
  int n = 0;
  Strategy strategy;
  long long deals = 0;
  uint64_t seed = 0;
  int threads = 0;
};

struct SimReport {
  double mean_tricks = 0;
  double stderr_mean = 0;
  double majority_win_rate = 0;
  long long deals = 0;
  uint64_t seed = 0;
};

namespace detail {

inline uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in [0, m) by rejection; exact and reproducible.
inline uint64_t bounded(uint64_t& s, uint64_t m) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % m;
  uint64_t x;
  do x = splitmix64(s);
  while (x >= limit);
  return x % m;
}

}  // namespace detail

// Monte Carlo play-out.  Each deal index owns its own counter-based
// substream derived from (seed, index), so serial and parallel runs (and any
// worker count) produce bit-identical tallies.
inline SimReport simulate(const SimConfig& cfg) {
  if (cfg.deals < 1) throw std::domain_error("simulate: deals >= 1 required");
  if (cfg.strategy.n() != cfg.n) throw std::invalid_argument("simulate: strategy.n != n");
  const int n = cfg.n;
  const int deck = 2 * n;

  struct Tally {
    uint64_t sum = 0, sum_sq = 0, wins = 0;
  };
  const int workers = worker_count(cfg.threads);
  std::vector<Tally> tallies(workers);
  parallel_chunks(cfg.deals, workers, [&](int w, long long lo, long long hi) {
    Tally& t = tallies[w];
    std::vector<int> vals(deck);
    std::vector<int> hand2(n), hand1(n);
    for (long long d = lo; d < hi; ++d) {
      uint64_t s = cfg.seed;
      (void)detail::splitmix64(s);
      s ^= 0x9e3779b97f4a7c15ULL * (static_cast<uint64_t>(d) + 1);
      for (int v = 0; v < deck; ++v) vals[v] = v + 1;
      // partial Fisher-Yates: the first n entries become player 2's hand
      for (int i = 0; i < n; ++i) {
        const int j = i + static_cast<int>(detail::bounded(s, static_cast<uint64_t>(deck - i)));
        std::swap(vals[i], vals[j]);
      }
      std::copy(vals.begin(), vals.begin() + n, hand2.begin());
      std::copy(vals.begin() + n, vals.end(), hand1.begin());
      std::sort(hand2.begin(), hand2.end());
      std::sort(hand1.begin(), hand1.end());
      int won = 0;
      for (int i = 1; i <= n; ++i)
        if (hand2[i - 1] > hand1[cfg.strategy(i) - 1]) ++won;
      t.sum += static_cast<uint64_t>(won);
      t.sum_sq += static_cast<uint64_t>(won) * static_cast<uint64_t>(won);
      if (2 * won > n) ++t.wins;  // ties are non-wins
    }
  });

  Tally total;
  for (const Tally& t : tallies) {
    total.sum += t.sum;
    total.sum_sq += t.sum_sq;
    total.wins += t.wins;
  }
  const long double d = static_cast<long double>(cfg.deals);
  const long double mean = static_cast<long double>(total.sum) / d;
  long double var = 0;
  if (cfg.deals > 1)
    var = (static_cast<long double>(total.sum_sq) - d * mean * mean) / (d - 1);
  if (var < 0) var = 0;
  SimReport r;
  r.mean_tricks = static_cast<double>(mean);
  r.stderr_mean = static_cast<double>(std::sqrt(var / d));
  r.majority_win_rate = static_cast<double>(static_cast<long double>(total.wins) / d);
  r.deals = cfg.deals;
  r.seed = cfg.seed;
  return r;
}

inline nlohmann::json to_json(const SimReport& r) {
  return nlohmann::json{{"mean_tricks", r.mean_tricks},
                        {"stderr", r.stderr_mean},
                        {"majority_win_rate", r.majority_win_rate},
                        {"deals", r.deals},
                        {"seed", r.seed}};
}

enum class KRule { exact, approx };

struct LossRow {
  long n = 0;
  double expected_losses = 0;  // N - F(pi_k)/C(2N,N), exact arithmetic rounded once
  double sqrt_half_nlogn = 0;
};

// Exact expected losses of the no-gap optimum next to the asymptotic
// sqrt(N ln N / 2); no sampling involved.
inline std::vector<LossRow> sweep_loss_fraction(const std::vector<long>& ns,
                                                KRule rule = KRule::exact) {
  std::vector<LossRow> out;
  out.reserve(ns.size());
  for (long n : ns) {
    const int k = rule == KRule::exact ? k_exact(n) : k_approx(n);
    BigRational frac(f_pi_k(n, k));
    frac /= BigRational(binomial(2 * n, n));
    frac.canonicalize();
    LossRow row;
    row.n = n;
    row.expected_losses = static_cast<double>(n) - frac.get_d();
    row.sqrt_half_nlogn = std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)) / 2.0);
    out.push_back(row);
  }
  return out;
}

}  // namespace oneround
