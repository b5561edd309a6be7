#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "oneround/trick_matrix.hpp"

namespace oneround {

// A strategy is a permutation of {1..N}: player 2's card i is played against
// player 1's card pi(i).  Stored as the 1-based forward map.
class Strategy {
 public:
  explicit Strategy(std::vector<int> images) : img_(std::move(images)) {
    const int n = static_cast<int>(img_.size());
    std::vector<bool> seen(n + 1, false);
    for (int v : img_) {
      if (v < 1 || v > n || seen[v])
        throw std::invalid_argument("Strategy: images must be a bijection on {1..N}");
      seen[v] = true;
    }
  }

  static Strategy identity(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    return Strategy(std::move(img));
  }

  int n() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i - 1]; }
  const std::vector<int>& images() const { return img_; }

  Strategy inverse() const {
    std::vector<int> inv(img_.size());
    for (int i = 1; i <= n(); ++i) inv[img_[i - 1] - 1] = i;
    return Strategy(std::move(inv));
  }

  bool operator==(const Strategy& o) const { return img_ == o.img_; }
  bool operator<(const Strategy& o) const { return img_ < o.img_; }

 private:
  std::vector<int> img_;
};

// F(pi) = sum_i p_{i,pi(i)}, scaled by C(2N,N).
inline BigInt objective(const TrickMatrix& P, const Strategy& s) {
  if (s.n() != P.n()) throw std::invalid_argument("objective: dimension mismatch");
  BigInt acc(0);
  for (int i = 1; i <= s.n(); ++i) acc += P.at(i, s(i));
  return acc;
}

// Reflection through the anti-main diagonal: pi' = rho pi^{-1} rho with
// rho(i) = N+1-i.  An involution, and objective-preserving on any
// AMD-symmetric matrix.
inline Strategy reflect(const Strategy& s) {
  const int n = s.n();
  const Strategy inv = s.inverse();
  std::vector<int> img(n);
  for (int i = 1; i <= n; ++i) img[i - 1] = n + 1 - inv(n + 1 - i);
  return Strategy(std::move(img));
}

// Shape of an optimal permutation: no fixed points; the below-diagonal
// points run NW to SE (columns strictly increase with the row); the
// above-diagonal points run SW to NE (columns strictly decrease with the
// row).
inline bool is_shape_valid(const Strategy& s) {
  const int n = s.n();
  if (n <= 2) throw std::domain_error("is_shape_valid: N > 2 required");
  int last_below = 0, last_above = n + 1;
  for (int i = 1; i <= n; ++i) {
    const int j = s(i);
    if (j == i) return false;
    if (j < i) {
      if (j <= last_below) return false;
      last_below = j;
    } else {
      if (j >= last_above) return false;
      last_above = j;
    }
  }
  return true;
}

// All shape-valid permutations, by backtracking with the same two running
// bounds.  There are exactly 2^(N-3) of them.
inline std::vector<Strategy> enumerate_shape_candidates(int n, int cap = 20) {
  if (n < 3) throw std::domain_error("enumerate_shape_candidates: N >= 3 required");
  if (n > cap)
    throw CapExceeded("enumerate_shape_candidates: n = " + std::to_string(n) +
                      " exceeds cap " + std::to_string(cap));
  std::vector<Strategy> out;
  std::vector<int> img(n, 0);
  std::vector<bool> used(n + 1, false);
  auto rec = [&](auto&& self, int i, int last_below, int last_above) -> void {
    if (i > n) {
      out.emplace_back(img);
      return;
    }
    for (int j = 1; j <= n; ++j) {
      if (used[j] || j == i) continue;
      if (j < i) {
        if (j <= last_below) continue;
        used[j] = true;
        img[i - 1] = j;
        self(self, i + 1, j, last_above);
        used[j] = false;
      } else {
        if (j >= last_above) continue;
        used[j] = true;
        img[i - 1] = j;
        self(self, i + 1, last_below, j);
        used[j] = false;
      }
    }
  };
  rec(rec, 1, 0, n + 1);
  return out;
}

// AMD symmetry: (rho pi)^2 = identity.
inline bool is_symmetric(const Strategy& s) {
  const int n = s.n();
  auto f = [&](int i) { return n + 1 - s(i); };
  for (int i = 1; i <= n; ++i)
    if (f(f(i)) != i) return false;
  return true;
}

// Bit string of length floor(N/2): bit i set means pi(i) = N+1-i (the i-th
// AMD position is occupied / trick i is thrown).
struct ThrowString {
  int n = 0;
  std::vector<bool> bits;

  static ThrowString parse(int n, const std::string& text) {
    ThrowString t;
    t.n = n;
    if (static_cast<int>(text.size()) != n / 2)
      throw std::invalid_argument("ThrowString: expected exactly " + std::to_string(n / 2) +
                                  " bits for N = " + std::to_string(n));
    for (char c : text) {
      if (c != '0' && c != '1') throw std::invalid_argument("ThrowString: bits must be 0/1");
      t.bits.push_back(c == '1');
    }
    return t;
  }

  std::string str() const {
    std::string s;
    for (bool b : bits) s += b ? '1' : '0';
    return s;
  }

  bool operator==(const ThrowString& o) const { return n == o.n && bits == o.bits; }
};

// The unique AMD-symmetric strategy with the given thrown set: each set bit i
// maps to N+1-i, and the remaining rows, in increasing order, map to the
// remaining columns in increasing order.
inline Strategy strategy_from_string(const ThrowString& t) {
  const int n = t.n;
  if (static_cast<int>(t.bits.size()) != n / 2)
    throw std::invalid_argument("strategy_from_string: bit length mismatch");
  std::vector<int> img(n, 0);
  std::vector<bool> col_used(n + 1, false);
  for (int i = 1; i <= n / 2; ++i) {
    if (t.bits[i - 1]) {
      img[i - 1] = n + 1 - i;
      col_used[n + 1 - i] = true;
    }
  }
  int col = 0;
  for (int i = 1; i <= n; ++i) {
    if (img[i - 1] != 0) continue;
    do ++col;
    while (col_used[col]);
    img[i - 1] = col;
    col_used[col] = true;
  }
  return Strategy(std::move(img));
}

// AMD occupancy of the first floor(N/2) rows.
inline ThrowString throw_string_of(const Strategy& s) {
  ThrowString t;
  t.n = s.n();
  for (int i = 1; i <= s.n() / 2; ++i) t.bits.push_back(s(i) == s.n() + 1 - i);
  return t;
}

// 1^k 0^* : no rogue elements after the first gap.
inline bool is_gap_free(const ThrowString& t) {
  bool seen_zero = false;
  for (bool b : t.bits) {
    if (!b) seen_zero = true;
    else if (seen_zero) return false;
  }
  return true;
}

// pi_k: throw tricks 1..k in reverse order against the opponent's top k,
// play the rest straight.
inline Strategy no_gap_strategy(int n, int k) {
  if (k < 0 || k > n / 2) throw std::domain_error("no_gap_strategy: need 0 <= k <= floor(N/2)");
  std::vector<int> img(n);
  for (int i = 1; i <= n; ++i) img[i - 1] = i <= k ? n + 1 - i : i - k;
  return Strategy(std::move(img));
}

// Courtney's majority strategy for odd N = 2n+1: throw n tricks, pairing the
// top n+1 cards against the opponent's bottom n+1 in order.
inline Strategy majority_strategy(int n) {
  if (n < 3 || n % 2 == 0) throw std::domain_error("majority_strategy: odd N >= 3 required");
  return no_gap_strategy(n, (n - 1) / 2);
}

// F(pi) + F(pi') + F(sigma) = F(tau1) + F(tau2) + F(tau3) whenever the two
// sides select the same multiset of matrix cells; checks both the multiset
// equality and the numeric identity.
inline bool verify_splice_identity(const TrickMatrix& P, const Strategy& pi,
                                   const Strategy& pi_prime, const Strategy& sigma,
                                   const Strategy& tau1, const Strategy& tau2,
                                   const Strategy& tau3) {
  const int n = P.n();
  for (const Strategy* s : {&pi, &pi_prime, &sigma, &tau1, &tau2, &tau3})
    if (s->n() != n) throw std::invalid_argument("verify_splice_identity: dimension mismatch");
  auto cells = [&](const Strategy& a, const Strategy& b, const Strategy& c) {
    std::vector<std::pair<int, int>> v;
    for (int i = 1; i <= n; ++i) {
      v.emplace_back(i, a(i));
      v.emplace_back(i, b(i));
      v.emplace_back(i, c(i));
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  if (cells(pi, pi_prime, sigma) != cells(tau1, tau2, tau3)) return false;
  return objective(P, pi) + objective(P, pi_prime) + objective(P, sigma) ==
         objective(P, tau1) + objective(P, tau2) + objective(P, tau3);
}

// JSON form: array of 1-based images, e.g. [7,1,6,5,2,3,4].
inline nlohmann::json to_json(const Strategy& s) { return nlohmann::json(s.images()); }

inline Strategy strategy_from_json(const nlohmann::json& j) {
  return Strategy(j.get<std::vector<int>>());
}

}  // namespace oneround
