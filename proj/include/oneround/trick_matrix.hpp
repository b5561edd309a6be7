#pragma once

#include <cassert>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oneround/bigint.hpp"
#include "oneround/deals.hpp"
#include "oneround/parallel.hpp"
#include "oneround/report.hpp"

namespace oneround {

// The N x N trick matrix, scaled by C(2N,N): entry (i,j) counts the deals in
// which player 2's i-th worst card beats player 1's j-th worst.  1-based
// accessors throughout, matching the row/column conventions of the game.
class TrickMatrix {
 public:
  explicit TrickMatrix(int n)
      : n_(n), scale_(binomial(2L * n, n)), cells_(static_cast<size_t>(n) * n) {
    if (n < 1) throw std::domain_error("TrickMatrix: n >= 1 required");
  }

  int n() const { return n_; }
  const BigInt& scale() const { return scale_; }

  const BigInt& at(int i, int j) const {
    assert(1 <= i && i <= n_ && 1 <= j && j <= n_);
    return cells_[static_cast<size_t>(i - 1) * n_ + (j - 1)];
  }
  BigInt& at(int i, int j) {
    assert(1 <= i && i <= n_ && 1 <= j && j <= n_);
    return cells_[static_cast<size_t>(i - 1) * n_ + (j - 1)];
  }

  // p_ij / C(2N,N), reduced.
  BigRational probability(int i, int j) const {
    BigRational r(at(i, j));
    r /= BigRational(scale_);
    r.canonicalize();
    return r;
  }

  bool operator==(const TrickMatrix& o) const {
    return n_ == o.n_ && scale_ == o.scale_ && cells_ == o.cells_;
  }

 private:
  int n_;
  BigInt scale_;
  std::vector<BigInt> cells_;
};

struct BruteForceOptions {
  int cap = 10;   // C(2N,N)*N work; override via CLI --max-brute
  int threads = 0;
};

// Counts deals directly.  Per deal, the columns beaten by card i form a
// prefix of hand1, and the prefix length is nondecreasing in i, so one
// two-pointer sweep tallies the whole deal.
inline TrickMatrix build_bruteforce(int n, const BruteForceOptions& opt = {}) {
  if (n < 1) throw std::domain_error("build_bruteforce: n >= 1 required");
  if (n > opt.cap)
    throw CapExceeded("build_bruteforce: n = " + std::to_string(n) +
                      " exceeds brute-force cap " + std::to_string(opt.cap));
  const uint64_t total = deal_count(n);
  const int workers = worker_count(opt.threads);

  // marks[w][i][c]: deals in worker w's chunk where card i beats exactly the
  // first c opposing cards.
  std::vector<std::vector<std::vector<uint64_t>>> marks(
      workers, std::vector<std::vector<uint64_t>>(n + 1, std::vector<uint64_t>(n + 1, 0)));
  parallel_chunks(static_cast<long long>(total), workers,
                  [&](int w, long long lo, long long hi) {
                    auto& m = marks[w];
                    for_each_deal_in(n, static_cast<uint64_t>(lo), static_cast<uint64_t>(hi),
                                     [&](const Deal& d) {
                                       int c = 0;
                                       for (int i = 1; i <= n; ++i) {
                                         while (c < n && d.hand1[c] < d.hand2[i - 1]) ++c;
                                         ++m[i][c];
                                       }
                                     });
                  });

  TrickMatrix P(n);
  for (int i = 1; i <= n; ++i) {
    // p_ij = number of deals whose beaten prefix for card i has length >= j.
    BigInt running(0);
    for (int j = n; j >= 1; --j) {
      uint64_t cnt = 0;
      for (int w = 0; w < workers; ++w) cnt += marks[w][i][j];
      running += cnt;
      P.at(i, j) = running;
    }
  }
  return P;
}

// Row-telescoping formula: p_ij = sum_{k=j}^{N} C(k+i-1,i-1) C(2N-k-i,N-i).
// Each row is filled right-to-left from incremental binomial updates.
inline TrickMatrix build_stern(int n) {
  TrickMatrix P(n);
  for (int i = 1; i <= n; ++i) {
    // a = C(j+i-1, i-1), b = C(2N-j-i, N-i) at the current j.
    BigInt a = binomial(n + i - 1, i - 1);
    BigInt b(1);  // C(n-i, n-i)
    BigInt acc = a * b;
    P.at(i, n) = acc;
    for (int j = n - 1; j >= 1; --j) {
      // a: C(j+i,i-1) -> C(j+i-1,i-1) scales by (j+1)/(j+i)
      a *= static_cast<unsigned long>(j + 1);
      mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(j + i));
      // b: C(2N-j-1-i,N-i) -> C(2N-j-i,N-i) scales by (2N-j-i)/(N-j)
      b *= static_cast<unsigned long>(2 * n - j - i);
      mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n - j));
      acc += a * b;
      P.at(i, j) = acc;
    }
  }
  return P;
}

// Diagonal-telescoping formula:
// p_ij = sum_{k=1}^{i} C(i+j-1,k-1) C(2N-i-j+1,N-k+1).
inline TrickMatrix build_antidiagonal(int n) {
  TrickMatrix P(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const auto& row_a = pascal_row(static_cast<unsigned long>(i + j - 1));
      const auto& row_b = pascal_row(static_cast<unsigned long>(2 * n - i - j + 1));
      BigInt acc(0);
      for (int k = 1; k <= i; ++k) {
        const int bi = n - k + 1;
        if (bi > 2 * n - i - j + 1) continue;  // vanishing boundary term
        acc += row_a[k - 1] * row_b[bi];
      }
      P.at(i, j) = acc;
    }
  }
  return P;
}

using Grid = std::vector<std::vector<BigInt>>;

// Entry (i,j) plus everything to its right in row i and everything above it
// in column j; zero outside the grid.  1-based.
inline BigInt hook_sum(const Grid& m, int i, int j) {
  const int sz = static_cast<int>(m.size());
  if (i < 1 || i > sz || j < 1 || j > sz) return BigInt(0);
  BigInt acc(0);
  for (int jj = j; jj <= sz; ++jj) acc += m[i - 1][jj - 1];
  for (int ii = 1; ii < i; ++ii) acc += m[ii - 1][j - 1];
  return acc;
}

// P^N augmented with a first column and last row of C(2N,N); the northeast
// N x N block is P^N.
inline Grid augment(const TrickMatrix& P) {
  const int n = P.n();
  Grid g(n + 1, std::vector<BigInt>(n + 1, P.scale()));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) g[i - 1][j] = P.at(i, j);
  return g;
}

// Hook-sum map: out(I,J) = hook(I,J) - hook(I-1,J+1).
inline TrickMatrix hook_map(const Grid& m) {
  const int sz = static_cast<int>(m.size());
  // suffix sums along rows and prefix sums down columns make every hook O(1)
  Grid row_suffix(sz, std::vector<BigInt>(sz + 1, BigInt(0)));
  Grid col_prefix(sz + 1, std::vector<BigInt>(sz, BigInt(0)));
  for (int i = 0; i < sz; ++i)
    for (int j = sz - 1; j >= 0; --j) row_suffix[i][j] = row_suffix[i][j + 1] + m[i][j];
  for (int j = 0; j < sz; ++j)
    for (int i = 0; i < sz; ++i) col_prefix[i + 1][j] = col_prefix[i][j] + m[i][j];
  auto hook = [&](int i, int j) -> BigInt {
    if (i < 1 || i > sz || j < 1 || j > sz) return BigInt(0);
    return row_suffix[i - 1][j - 1] + col_prefix[i - 1][j - 1];
  };
  TrickMatrix out(sz);
  for (int i = 1; i <= sz; ++i)
    for (int j = 1; j <= sz; ++j) out.at(i, j) = hook(i, j) - hook(i - 1, j + 1);
  return out;
}

// Iterates P^1 -> P^2 -> ... -> P^N through augment + hook-sum.
inline TrickMatrix build_hooksum(int n) {
  if (n < 1) throw std::domain_error("build_hooksum: n >= 1 required");
  TrickMatrix P(1);
  P.at(1, 1) = 1;
  for (int m = 1; m < n; ++m) P = hook_map(augment(P));
  return P;
}

// AMD entry p_{i,N+1-i} = 1 + C(N,1)^2 + ... + C(N,i-1)^2, stated for the
// upper half i < N+1-i.
inline BigInt amd_entry(int n, int i) {
  if (i < 1 || i >= n + 1 - i)
    throw std::domain_error("amd_entry: need 1 <= i < N+1-i");
  const auto& row = pascal_row(static_cast<unsigned long>(n));
  BigInt acc(1);
  for (int t = 1; t <= i - 1; ++t) acc += row[t] * row[t];
  return acc;
}

struct DiagonalSums {
  std::vector<BigInt> above;  // s_{kN},    k = 0..N-1
  std::vector<BigInt> below;  // sbar_{kN}, k = 0..N-1
};

inline DiagonalSums diagonal_sums(const TrickMatrix& P) {
  const int n = P.n();
  DiagonalSums d;
  d.above.assign(n, BigInt(0));
  d.below.assign(n, BigInt(0));
  for (int k = 0; k < n; ++k) {
    for (int i = 1; i + k <= n; ++i) {
      d.above[k] += P.at(i, i + k);
      d.below[k] += P.at(i + k, i);
    }
  }
  return d;
}

// Closed form of the diagonal sums: the coefficient of C(2N,j) is min(k, N-j).
inline BigInt diag_sum_above_closed(long n, long k) {
  if (k < 0 || k >= n) throw std::domain_error("diag_sum_above_closed: 0 <= k < N");
  const auto& row = pascal_row(static_cast<unsigned long>(2 * n));
  BigInt acc = row[n] * n;
  mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), 2);  // C(2N,N) is even
  for (long j = 0; j < n; ++j) acc -= row[j] * std::min(k, n - j);
  return acc;
}

inline BigInt diag_sum_below_closed(long n, long k) {
  return binomial(2 * n, n) * (n - k) - diag_sum_above_closed(n, k);
}

// p_ij - p_{i+1,j} - p_{i,j+1} + p_{i+1,j+1}, the Monge test on a unit square.
inline BigInt unit_square_defect(const TrickMatrix& P, int i, int j) {
  const int n = P.n();
  if (i < 1 || i > n - 1 || j < 1 || j > n - 1)
    throw std::domain_error("unit_square_defect: need 1 <= i,j <= N-1");
  return P.at(i, j) - P.at(i + 1, j) - P.at(i, j + 1) + P.at(i + 1, j + 1);
}

// Closed form of the defect, from the row-telescoping differences:
//   C(i+j-1,i-1) C(2N-i-j,N-i) N (i-j) / (i (2N-i-j)),
// an exact integer with sign(i-j).
inline BigInt unit_square_defect_closed(long n, long i, long j) {
  if (i < 1 || i > n - 1 || j < 1 || j > n - 1)
    throw std::domain_error("unit_square_defect_closed: need 1 <= i,j <= N-1");
  BigRational r(binomial(i + j - 1, i - 1) * binomial(2 * n - i - j, n - i) * n * (i - j));
  r /= BigRational(i * (2 * n - i - j));
  r.canonicalize();
  if (r.get_den() != 1)
    throw std::logic_error("unit_square_defect_closed: non-integral value");
  return r.get_num();
}

namespace detail {

inline nlohmann::json index_pair(int i, int j) { return nlohmann::json{{"i", i}, {"j", j}}; }

}  // namespace detail

// Checks every structural lemma of the matrix and reports the first
// counterexample per lemma:
//   complement          p_ij + p_ji = C(2N,N)           (also fixes the diagonal at C/2)
//   amd_symmetry        p_ij = p_{N-j+1,N-i+1}
//   monotonicity        strict growth down columns and right-to-left in rows
//   row_col_sums        row j and column N-j+1 sum to j C(2N,N-1)
//   diagonal_sums       closed forms reproduce both diagonal sum families
//   mixed_monge         unit-square defect sign = sign(i-j), and the closed form
//   diagonal_extrema    above-diagonal max (below-diagonal min) sits in the
//                       center, tied pair exactly when the diagonal has even length
inline std::vector<VerificationReport> verify_structural_lemmas(const TrickMatrix& P) {
  const int n = P.n();
  std::vector<VerificationReport> out;

  {
    VerificationReport r{"complement", n};
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        ++r.checked;
        if (P.at(i, j) + P.at(j, i) != P.scale())
          r.fail({{"i", i}, {"j", j}, {"sum", to_decimal(P.at(i, j) + P.at(j, i))},
                  {"scale", to_decimal(P.scale())}});
      }
    out.push_back(std::move(r));
  }
  {
    VerificationReport r{"amd_symmetry", n};
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        ++r.checked;
        if (P.at(i, j) != P.at(n - j + 1, n - i + 1)) r.fail(detail::index_pair(i, j));
      }
    out.push_back(std::move(r));
  }
  {
    VerificationReport r{"monotonicity", n};
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i + 1 <= n) {
          ++r.checked;
          if (!(P.at(i + 1, j) > P.at(i, j)))
            r.fail({{"kind", "column"}, {"i", i}, {"j", j}});
        }
        if (j + 1 <= n) {
          ++r.checked;
          if (!(P.at(i, j) > P.at(i, j + 1)))
            r.fail({{"kind", "row"}, {"i", i}, {"j", j}});
        }
      }
    out.push_back(std::move(r));
  }
  {
    VerificationReport r{"row_col_sums", n};
    const BigInt unit = binomial(2L * n, n - 1);
    for (int j = 1; j <= n; ++j) {
      BigInt row_sum(0), col_sum(0);
      for (int t = 1; t <= n; ++t) {
        row_sum += P.at(j, t);
        col_sum += P.at(t, n - j + 1);
      }
      r.checked += 2;
      if (row_sum != unit * j)
        r.fail({{"kind", "row"}, {"j", j}, {"sum", to_decimal(row_sum)}});
      if (col_sum != unit * j)
        r.fail({{"kind", "column"}, {"j", j}, {"sum", to_decimal(col_sum)}});
    }
    out.push_back(std::move(r));
  }
  {
    VerificationReport r{"diagonal_sums", n};
    const DiagonalSums d = diagonal_sums(P);
    for (int k = 0; k < n; ++k) {
      r.checked += 2;
      if (d.above[k] != diag_sum_above_closed(n, k))
        r.fail({{"kind", "above"}, {"k", k}, {"sum", to_decimal(d.above[k])}});
      if (d.below[k] != diag_sum_below_closed(n, k))
        r.fail({{"kind", "below"}, {"k", k}, {"sum", to_decimal(d.below[k])}});
    }
    out.push_back(std::move(r));
  }
  {
    VerificationReport r{"mixed_monge", n};
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) {
        ++r.checked;
        const BigInt d = unit_square_defect(P, i, j);
        const int want = i > j ? 1 : (i < j ? -1 : 0);
        if (sgn(d) != want || d != unit_square_defect_closed(n, i, j))
          r.fail({{"i", i}, {"j", j}, {"defect", to_decimal(d)}});
      }
    out.push_back(std::move(r));
  }
  {
    VerificationReport r{"diagonal_extrema", n};
    for (int k = 1; k < n; ++k) {
      const int len = n - k;
      std::vector<const BigInt*> above, below;
      for (int i = 1; i + k <= n; ++i) {
        above.push_back(&P.at(i, i + k));
        below.push_back(&P.at(i + k, i));
      }
      auto center_extreme = [&](const std::vector<const BigInt*>& diag, bool want_max) {
        std::vector<int> arg{0};
        for (int t = 1; t < len; ++t) {
          const int c = cmp(*diag[t], *diag[arg[0]]);
          if ((want_max && c > 0) || (!want_max && c < 0)) arg.assign(1, t);
          else if (c == 0) arg.push_back(t);
        }
        if (len % 2 == 1) return arg == std::vector<int>{(len - 1) / 2};
        return arg == std::vector<int>{len / 2 - 1, len / 2};
      };
      r.checked += 2;
      if (!center_extreme(above, true)) r.fail({{"kind", "above"}, {"k", k}});
      if (!center_extreme(below, false)) r.fail({{"kind", "below"}, {"k", k}});
    }
    out.push_back(std::move(r));
  }
  return out;
}

// --- serialization -----------------------------------------------------

// { "n": int, "scale": decimal-string, "rows": [[decimal-string,...],...] },
// rows listed from i = 1 (topmost) with 1-based (i,j) semantics.
inline nlohmann::json to_json(const TrickMatrix& P) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 1; i <= P.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j <= P.n(); ++j) row.push_back(to_decimal(P.at(i, j)));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"n", P.n()}, {"scale", to_decimal(P.scale())}, {"rows", rows}};
}

inline TrickMatrix trick_matrix_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  TrickMatrix P(n);
  if (bigint_from_decimal(j.at("scale").get<std::string>()) != P.scale())
    throw std::invalid_argument("trick_matrix_from_json: scale mismatch");
  const auto& rows = j.at("rows");
  if (static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("trick_matrix_from_json: row count mismatch");
  for (int i = 1; i <= n; ++i) {
    if (static_cast<int>(rows[i - 1].size()) != n)
      throw std::invalid_argument("trick_matrix_from_json: column count mismatch");
    for (int jj = 1; jj <= n; ++jj)
      P.at(i, jj) = bigint_from_decimal(rows[i - 1][jj - 1].get<std::string>());
  }
  return P;
}

// Header row of column indices, then one row per i.
inline std::string to_csv(const TrickMatrix& P) {
  std::ostringstream os;
  for (int j = 1; j <= P.n(); ++j) os << (j > 1 ? "," : "") << j;
  os << '\n';
  for (int i = 1; i <= P.n(); ++i) {
    for (int j = 1; j <= P.n(); ++j) os << (j > 1 ? "," : "") << to_decimal(P.at(i, j));
    os << '\n';
  }
  return os.str();
}

// Right-aligned columns, Table-1.1 style; values never truncated.
inline std::string to_pretty(const TrickMatrix& P) {
  size_t width = 0;
  for (int i = 1; i <= P.n(); ++i)
    for (int j = 1; j <= P.n(); ++j) width = std::max(width, to_decimal(P.at(i, j)).size());
  std::ostringstream os;
  for (int i = 1; i <= P.n(); ++i) {
    for (int j = 1; j <= P.n(); ++j) {
      const std::string s = to_decimal(P.at(i, j));
      os << (j > 1 ? " " : "") << std::string(width - s.size(), ' ') << s;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace oneround
