#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace oneround {

// All counting in this library is exact: scaled probabilities are integers
// out of C(2N,N), which reaches ~10^600 at N = 1000, so everything big is
// GMP-backed.
using BigInt = mpz_class;
using BigRational = mpq_class;

// C(n,k) by the multiplicative formula with running exact division, keeping
// intermediates linear in the result size.  Out-of-range k (k < 0 or k > n)
// yields 0 so telescoping sums can rely on vanishing boundary terms.
inline BigInt binomial(long n, long k) {
  if (n < 0) throw std::domain_error("binomial: n must be nonnegative");
  if (k < 0 || k > n) return BigInt(0);
  const unsigned long kk = static_cast<unsigned long>(std::min(k, n - k));
  BigInt r(1);
  for (unsigned long t = 1; t <= kk; ++t) {
    r *= static_cast<unsigned long>(n) - kk + t;
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), t);
  }
  return r;
}

inline BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

namespace detail {

// Builds [C(m,0), ..., C(m,m)] left to right.
inline std::vector<BigInt> build_pascal_row(unsigned long m) {
  std::vector<BigInt> row;
  row.reserve(m + 1);
  row.emplace_back(1);
  for (unsigned long j = 1; j <= m; ++j) {
    BigInt next = row.back() * (m - j + 1);
    mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), j);
    row.push_back(std::move(next));
  }
  return row;
}

}  // namespace detail

// Memoized Pascal row: the same 2N-th row is consumed repeatedly by the
// diagonal-sum formulas.  Entries are immutable once built; the cache is
// mutex-guarded so concurrent workers may share it.
inline const std::vector<BigInt>& pascal_row(unsigned long m) {
  static std::mutex mu;
  static std::map<unsigned long, std::vector<BigInt>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, detail::build_pascal_row(m)).first;
  return it->second;
}

// Sum C(m,0) + ... + C(m,t).  Returns 0 for t < 0 and 2^m for t >= m.
// Computed without materializing the row, so sweeps across many m stay cheap.
inline BigInt prefix_sum_row(long m, long t) {
  if (m < 0) throw std::domain_error("prefix_sum_row: m must be nonnegative");
  if (t < 0) return BigInt(0);
  if (t >= m) return pow2(static_cast<unsigned long>(m));
  BigInt term(1), sum(1);
  for (long j = 1; j <= t; ++j) {
    term *= static_cast<unsigned long>(m - j + 1);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(j));
    sum += term;
  }
  return sum;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

inline BigInt bigint_from_decimal(const std::string& s) {
  BigInt v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("not a decimal integer: " + s);
  return v;
}

}  // namespace oneround
