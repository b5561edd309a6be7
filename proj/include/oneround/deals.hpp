#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oneround {

// A partition of the face values {1..2N} into two sorted N-card hands.
// hand2 is player 2's, hand1 the complement.  Values ascend: index 0 is the
// worst card (order statistic 1).
struct Deal {
  std::vector<int> hand2;
  std::vector<int> hand1;
};

// Thrown when an enumeration exceeds its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// uint64 binomial table; enough for C(60,30).
inline uint64_t binom_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 62) throw std::domain_error("binom_u64: n too large");
  static const auto table = [] {
    std::vector<std::vector<uint64_t>> t(63);
    for (int i = 0; i <= 62; ++i) {
      t[i].resize(i + 1);
      t[i][0] = t[i][i] = 1;
      for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t;
  }();
  return table[n][k];
}

}  // namespace detail

inline uint64_t deal_count(int n) {
  if (n < 1 || n > 30) throw std::domain_error("deal_count: need 1 <= n <= 30");
  return detail::binom_u64(2 * n, n);
}

// Lexicographic unranking of player 2's hand (combinations of {1..2n} size n).
inline std::vector<int> hand2_from_rank(int n, uint64_t rank) {
  std::vector<int> hand;
  hand.reserve(n);
  int v = 1;
  for (int slot = 0; slot < n; ++slot) {
    for (;; ++v) {
      const uint64_t with_v = detail::binom_u64(2 * n - v, n - slot - 1);
      if (rank < with_v) break;
      rank -= with_v;
    }
    hand.push_back(v++);
  }
  return hand;
}

// Advances hand to the next combination in lexicographic order.
// Returns false when hand was the last one.
inline bool next_hand2(std::vector<int>& hand, int deck) {
  const int n = static_cast<int>(hand.size());
  int i = n - 1;
  while (i >= 0 && hand[i] == deck - (n - 1 - i)) --i;
  if (i < 0) return false;
  ++hand[i];
  for (int t = i + 1; t < n; ++t) hand[t] = hand[t - 1] + 1;
  return true;
}

inline Deal deal_from_hand2(int n, const std::vector<int>& hand2) {
  Deal d;
  d.hand2 = hand2;
  d.hand1.reserve(n);
  std::vector<bool> taken(2 * n + 1, false);
  for (int v : hand2) taken[v] = true;
  for (int v = 1; v <= 2 * n; ++v)
    if (!taken[v]) d.hand1.push_back(v);
  return d;
}

// Streams all C(2n,n) deals, lexicographic in hand2, within [lo, hi) ranks.
inline void for_each_deal_in(int n, uint64_t lo, uint64_t hi,
                             const std::function<void(const Deal&)>& fn) {
  if (lo >= hi) return;
  std::vector<int> hand2 = hand2_from_rank(n, lo);
  for (uint64_t r = lo; r < hi; ++r) {
    fn(deal_from_hand2(n, hand2));
    if (r + 1 < hi && !next_hand2(hand2, 2 * n)) break;
  }
}

inline void for_each_deal(int n, const std::function<void(const Deal&)>& fn) {
  for_each_deal_in(n, 0, deal_count(n), fn);
}

}  // namespace oneround
