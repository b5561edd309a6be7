#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "oneround/interval.hpp"
#include "oneround/strategy.hpp"
#include "oneround/trick_matrix.hpp"

namespace oneround {

// Delta sbar_{kN} = C(2N,0) + ... + C(2N,N-k) - C(2N,N): the gain of moving
// the straight cards one more diagonal down.
inline BigInt delta_sbar(long n, long k) {
  if (k < 1 || k > n - 1) throw std::domain_error("delta_sbar: need 1 <= k <= N-1");
  return prefix_sum_row(2 * n, n - k) - binomial(2 * n, n);
}

namespace detail {

// Shared scan core: row 2N is consumed once, every Delta sbar_{kN} falls out
// of a running prefix sum.  The strict-decrease of the sequence is verified,
// not assumed.
struct KScan {
  int k_approx = 0;  // last k with Delta sbar >= 0
  int k_exact = 0;   // last k in [1, N/2] with C(N,k-1)^2 + prefix >= C(2N,N)
};

inline KScan k_scan(long n) {
  if (n < 3) throw std::domain_error("k functions: N >= 3 required (N = 2 is n/a)");
  const auto& row2n = pascal_row(static_cast<unsigned long>(2 * n));
  const auto& rown = pascal_row(static_cast<unsigned long>(n));
  const BigInt& center = row2n[n];
  BigInt prefix(0);  // sum_{j=0}^{n-k} C(2N,j), maintained as k grows
  for (long j = 0; j <= n - 1; ++j) prefix += row2n[j];

  KScan out;
  std::optional<BigInt> prev_delta;
  bool exact_done = false;
  for (long k = 1; k <= n - 1; ++k) {
    // prefix currently holds sum up to n-k
    const BigInt delta = prefix - center;
    if (prev_delta && !(delta < *prev_delta))
      throw std::logic_error("k_scan: Delta sbar sequence failed to decrease");
    prev_delta = delta;
    if (delta >= 0) out.k_approx = static_cast<int>(k);
    if (k <= n / 2) {
      const bool pred = rown[k - 1] * rown[k - 1] + delta >= 0;
      if (pred) {
        if (exact_done)
          throw std::logic_error("k_scan: k* predicate is not a prefix of [1, N/2]");
        out.k_exact = static_cast<int>(k);
      } else {
        exact_done = true;
      }
    }
    prefix -= row2n[n - k];
  }
  if (out.k_approx < 1 || out.k_exact < 1)
    throw std::logic_error("k_scan: no admissible k found");
  return out;
}

}  // namespace detail

// k(N) = sup { k : sum_{j<=N-k} C(2N,j) >= C(2N,N) }.
inline int k_approx(long n) { return detail::k_scan(n).k_approx; }

// k*(N) = sup { k : C(N,k-1)^2 + sum_{j<=N-k} C(2N,j) >= C(2N,N) }.
inline int k_exact(long n) { return detail::k_scan(n).k_exact; }

// Center-out variant: sup { k : 4^N - 3 C(2N,N) - 2[C(2N,N-1)+...+C(2N,N-k+1)] >= 0 }
// (the defining inequality doubled to stay in integers).  Agrees with
// k_approx identically because the row sums to 4^N.
inline int k_approx_center_out(long n) {
  if (n < 3) throw std::domain_error("k_approx_center_out: N >= 3 required");
  const auto& row2n = pascal_row(static_cast<unsigned long>(2 * n));
  BigInt lhs = pow2(static_cast<unsigned long>(2 * n)) - 3 * row2n[n];
  int best = 0;
  for (long k = 1; k <= n; ++k) {
    // lhs currently equals the doubled expression for this k
    if (lhs >= 0) best = static_cast<int>(k);
    else break;
    if (n - k >= 0) lhs -= 2 * row2n[n - k];
  }
  if (best < 1) throw std::logic_error("k_approx_center_out: no admissible k");
  return best;
}

// p_{k,N+1-k} for k in the upper half, without a matrix.
inline BigInt amd_entry_closed(long n, long k) { return amd_entry(static_cast<int>(n), static_cast<int>(k)); }

// F(pi_k) for k = 0..floor(N/2) from the closed forms
// (diagonal sum below + thrown AMD entries); no matrix required.
inline std::vector<BigInt> f_pi_values(long n) {
  if (n < 1) throw std::domain_error("f_pi_values: N >= 1 required");
  const auto& row2n = pascal_row(static_cast<unsigned long>(2 * n));
  const auto& rown = pascal_row(static_cast<unsigned long>(n));
  const BigInt& center = row2n[n];

  std::vector<BigInt> out;
  out.reserve(n / 2 + 1);
  BigInt sbar = center * n;
  mpz_divexact_ui(sbar.get_mpz_t(), sbar.get_mpz_t(), 2);  // sbar_{0N} = N C(2N,N)/2
  out.push_back(sbar);

  BigInt prefix(0);
  for (long j = 0; j <= n - 1; ++j) prefix += row2n[j];
  BigInt amd_sum(0), amd_entry_k(1);  // p_{k,N+1-k} = 1 + sum_{t<k} C(N,t)^2
  for (long k = 1; k <= n / 2; ++k) {
    sbar += prefix - center;  // + Delta sbar_{kN}
    prefix -= row2n[n - k];
    amd_sum += amd_entry_k;
    out.push_back(sbar + amd_sum);
    amd_entry_k += rown[k] * rown[k];
  }
  return out;
}

inline BigInt f_pi_k(long n, long k) {
  auto v = f_pi_values(n);
  if (k < 0 || k >= static_cast<long>(v.size()))
    throw std::domain_error("f_pi_k: need 0 <= k <= floor(N/2)");
  return v[k];
}

// The closed-form answer for one N, with certified bound verdicts.
struct KReport {
  long n = 0;
  int k_exact = 0;
  int k_approx = 0;
  std::vector<BigInt> f_values;  // F(pi_k), k = 0..floor(N/2); empty if skipped
  double lower_bound = 0;        // sqrt(N ln N / 4)
  double upper_bound = 0;        // sqrt(N ln N / 2)
  double ratio = 0;              // k_exact / sqrt(N ln N)
  std::optional<std::string> bound_violation;  // "lower" / "upper", certified
  bool naive_bound_ok = false;   // floor((sqrt(pi N)-1)/2) <= k_approx
};

inline KReport k_report(long n, bool with_f_values = true) {
  KReport r;
  r.n = n;
  const auto scan = detail::k_scan(n);
  r.k_exact = scan.k_exact;
  r.k_approx = scan.k_approx;
  if (r.k_approx > r.k_exact || r.k_exact > r.k_approx + 1)
    throw std::logic_error("k_report: k <= k* <= k+1 violated");
  if (with_f_values) {
    r.f_values = f_pi_values(n);
    int argmax = 0;
    for (int k = 1; k < static_cast<int>(r.f_values.size()); ++k)
      if (r.f_values[k] > r.f_values[argmax]) argmax = k;
    if (argmax != r.k_exact)
      throw std::logic_error("k_report: k* does not maximize F(pi_k)");
  }
  const double nlogn = static_cast<double>(n) * std::log(static_cast<double>(n));
  r.lower_bound = std::sqrt(nlogn / 4.0);
  r.upper_bound = std::sqrt(nlogn / 2.0);
  r.ratio = static_cast<double>(r.k_exact) / std::sqrt(nlogn);
  if (!certified::exceeds_sqrt_nlogn_over(r.k_exact, n, 4))
    r.bound_violation = "lower";
  else if (certified::exceeds_sqrt_nlogn_over(r.k_exact, n, 2))
    r.bound_violation = "upper";
  r.naive_bound_ok = certified::floor_naive_bound(n) <= r.k_approx;
  return r;
}

inline nlohmann::json to_json(const KReport& r) {
  nlohmann::json j{{"n", r.n},
                   {"k_exact", r.k_exact},
                   {"k_approx", r.k_approx},
                   {"lower_bound", r.lower_bound},
                   {"upper_bound", r.upper_bound},
                   {"ratio", r.ratio}};
  j["bound_violation"] = r.bound_violation ? nlohmann::json(*r.bound_violation)
                                           : nlohmann::json(nullptr);
  return j;
}

// All N <= n_max where the approximate and exact formulas disagree
// (expected empty).
inline std::vector<long> kk_star_divergence_scan(long n_max) {
  if (n_max < 3) throw std::domain_error("kk_star_divergence_scan: N_max >= 3 required");
  std::vector<long> out;
  for (long n = 3; n <= n_max; ++n) {
    const auto scan = detail::k_scan(n);
    if (scan.k_approx != scan.k_exact) out.push_back(n);
  }
  return out;
}

// Objective change of the rogue-element slide: moving the AMD bead in row
// i+1 up to row i, with the below-diagonal bead in column j following.
inline BigInt c_ij(const TrickMatrix& P, int i, int j) {
  const int n = P.n();
  if (!(1 <= j && j < i && i + 1 <= n))
    throw std::domain_error("c_ij: need 1 <= j < i and i+1 <= N");
  return 2 * (P.at(i + 1, j) - P.at(i, j)) + P.at(i, n + 1 - i) - P.at(i + 1, n - i);
}

// D_ij = j C(N,j) / ((i+j) C(2N,i+j) C(N,i)), exact.
inline BigRational d_ij(long n, long i, long j) {
  if (!(1 <= j && j < i && i <= n - 1))
    throw std::domain_error("d_ij: need 1 <= j < i <= N-1");
  BigRational r(binomial(n, j) * j);
  r /= BigRational(binomial(2 * n, i + j) * binomial(n, i) * (i + j));
  r.canonicalize();
  return r;
}

// [2 C(2N,N) D_ij - 1] C(N,i)^2, the bracket form of c_ij; exact integer.
inline BigInt c_ij_closed(long n, long i, long j) {
  const BigInt cni = binomial(n, i);
  BigRational r = BigRational(2 * binomial(2 * n, n)) * d_ij(n, i, j) - 1;
  r *= BigRational(cni * cni);
  r.canonicalize();
  if (r.get_den() != 1) throw std::logic_error("c_ij_closed: non-integral value");
  return r.get_num();
}

// Result grid of an inequality scan: the lemma's empirical validity region.
struct LemmaRegionScan {
  std::string name;
  // (n, k, holds) in scan order
  std::vector<std::tuple<long, long, bool>> cells;
  std::vector<std::pair<long, long>> exceptions;  // the false cells

  void record(long n, long k, bool holds) {
    cells.emplace_back(n, k, holds);
    if (!holds) exceptions.emplace_back(n, k);
  }
};

enum class Lemma45Mode { paper, alternative };

// Scans the one-sided CLT bound C(2N,N-k) < e^{-x} C(2N,N) over
// 8 <= N, 3 <= k <= N/2 - 1, with x = k^2/N (printed form) or k^2/(N+k).
// The left side is exact; the comparison is certified.
inline LemmaRegionScan lemma45_scan(long n_lo, long n_hi, Lemma45Mode mode) {
  if (n_lo < 8) n_lo = 8;
  LemmaRegionScan scan;
  scan.name = mode == Lemma45Mode::paper ? "lemma45_paper" : "lemma45_alt";
  for (long n = n_lo; n <= n_hi; ++n) {
    const auto& row = pascal_row(static_cast<unsigned long>(2 * n));
    for (long k = 3; k <= n / 2 - 1; ++k) {
      const long den = mode == Lemma45Mode::paper ? n : n + k;
      BigRational q(k * k, den);
      q.canonicalize();
      scan.record(n, k, certified::less_than_scaled_exp(row[n - k], row[n], q));
    }
  }
  return scan;
}

// Monotonicity D_ij > D_{i+1,j+1} scanned over the a-priori region
// N/4 < i < N/2, i-j < 2 sqrt(N ln N) (an asymptotic claim; the scan records
// where it actually holds).  The region cut uses doubles, the verdicts are
// exact rational comparisons; cells are keyed (i, j).
inline LemmaRegionScan dij_region_scan(long n) {
  LemmaRegionScan scan;
  scan.name = "dij_monotone";
  const double cut = 2.0 * std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)));
  for (long i = n / 4 + 1; 2 * i < n; ++i) {
    if (i + 1 > n - 1) break;
    for (long j = 1; j < i; ++j) {
      if (static_cast<double>(i - j) >= cut) continue;
      scan.record(i, j, d_ij(n, i, j) > d_ij(n, i + 1, j + 1));
    }
  }
  return scan;
}

// Lemma 3.2 bound: F(pi_0) >= (N-k) C(2N,N) [1 - e^{-(k-1)^2/N}] with
// k = floor(sqrt(N ln N / 2)).  Left side exact from the matrix, right side
// certified.
inline bool pi0_bound_check(const TrickMatrix& P) {
  const long n = P.n();
  if (n < 30) throw std::domain_error("pi0_bound_check: N >= 30 required");
  const long k = certified::floor_sqrt_nlogn_over(n, 2);
  const BigInt lhs = objective(P, no_gap_strategy(static_cast<int>(n), static_cast<int>(k)));
  const BigInt coef = BigInt(n - k) * P.scale();
  BigRational q((k - 1) * (k - 1), n);
  q.canonicalize();
  return certified::at_least_scaled_one_minus_exp(lhs, coef, q);
}

inline bool pi0_bound_check(long n) {
  if (n < 30) throw std::domain_error("pi0_bound_check: N >= 30 required");
  return pi0_bound_check(build_stern(static_cast<int>(n)));
}

}  // namespace oneround
