#pragma once

#include <mpfr.h>

#include <stdexcept>

#include "oneround/bigint.hpp"

namespace oneround {

// Certified comparisons between exact integers/rationals and transcendental
// expressions.  Each predicate evaluates a lower and an upper bound of the
// transcendental side with MPFR directed rounding and widens the precision
// until the strict comparison is decidable.  Exact ties would loop forever,
// but none of the expressions here (e^q, sqrt(N ln N), sqrt(pi N)) can equal
// a rational, so the loop terminates.

namespace certified {

namespace detail {

constexpr mpfr_prec_t kStartPrec = 96;
constexpr mpfr_prec_t kMaxPrec = 1 << 16;

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// exp(-q) for exact rational q, rounded in the requested direction.
inline void exp_neg_q(mpfr_ptr out, const BigRational& q, mpfr_rnd_t rnd) {
  // For a lower bound of exp(-q), use an upper bound of q; and vice versa.
  mpfr_set_q(out, q.get_mpq_t(), rnd == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD);
  mpfr_neg(out, out, rnd);
  mpfr_exp(out, out, rnd);
}

}  // namespace detail

// Decides lhs < rhs * exp(-q)  (all strict), lhs/rhs positive integers.
inline bool less_than_scaled_exp(const BigInt& lhs, const BigInt& rhs, const BigRational& q) {
  BigRational ratio(lhs);
  ratio /= BigRational(rhs);
  ratio.canonicalize();
  for (mpfr_prec_t prec = detail::kStartPrec; prec <= detail::kMaxPrec; prec *= 2) {
    detail::Real lo(prec), hi(prec);
    detail::exp_neg_q(lo.get(), q, MPFR_RNDD);
    detail::exp_neg_q(hi.get(), q, MPFR_RNDU);
    if (mpfr_cmp_q(lo.get(), ratio.get_mpq_t()) > 0) return true;   // ratio < lower(e^-q)
    if (mpfr_cmp_q(hi.get(), ratio.get_mpq_t()) <= 0) return false; // ratio >= upper(e^-q)
  }
  throw std::runtime_error("certified::less_than_scaled_exp: comparison not decidable");
}

// Decides  lhs >= coef * (1 - exp(-q)),  with lhs, coef exact integers >= 0.
inline bool at_least_scaled_one_minus_exp(const BigInt& lhs, const BigInt& coef,
                                          const BigRational& q) {
  for (mpfr_prec_t prec = detail::kStartPrec; prec <= detail::kMaxPrec; prec *= 2) {
    detail::Real e_lo(prec), e_hi(prec), rhs_lo(prec), rhs_hi(prec), c(prec);
    detail::exp_neg_q(e_lo.get(), q, MPFR_RNDD);
    detail::exp_neg_q(e_hi.get(), q, MPFR_RNDU);
    // rhs upper bound: coef(up) * (1 - e_lo)(up)
    mpfr_set_z(c.get(), coef.get_mpz_t(), MPFR_RNDU);
    mpfr_ui_sub(rhs_hi.get(), 1, e_lo.get(), MPFR_RNDU);
    mpfr_mul(rhs_hi.get(), rhs_hi.get(), c.get(), MPFR_RNDU);
    // rhs lower bound: coef(down) * (1 - e_hi)(down)
    mpfr_set_z(c.get(), coef.get_mpz_t(), MPFR_RNDD);
    mpfr_ui_sub(rhs_lo.get(), 1, e_hi.get(), MPFR_RNDD);
    mpfr_mul(rhs_lo.get(), rhs_lo.get(), c.get(), MPFR_RNDD);
    if (mpfr_cmp_z(rhs_hi.get(), lhs.get_mpz_t()) <= 0) return true;  // lhs >= upper(rhs)
    if (mpfr_cmp_z(rhs_lo.get(), lhs.get_mpz_t()) > 0) return false;  // lhs < lower(rhs)
  }
  throw std::runtime_error("certified::at_least_scaled_one_minus_exp: not decidable");
}

namespace detail {

// N * ln(N), directed.
inline void n_log_n(mpfr_ptr out, long n, mpfr_rnd_t rnd) {
  mpfr_set_si(out, n, rnd);
  mpfr_log(out, out, rnd);
  mpfr_mul_si(out, out, n, rnd);
}

}  // namespace detail

// Decides k > sqrt(N ln N / d), i.e. d*k^2 > N ln N, for integer k >= 0.
inline bool exceeds_sqrt_nlogn_over(long k, long n, long d) {
  if (n < 2) throw std::domain_error("exceeds_sqrt_nlogn_over: n >= 2 required");
  const long lhs = d * k * k;
  for (mpfr_prec_t prec = detail::kStartPrec; prec <= detail::kMaxPrec; prec *= 2) {
    detail::Real lo(prec), hi(prec);
    detail::n_log_n(lo.get(), n, MPFR_RNDD);
    detail::n_log_n(hi.get(), n, MPFR_RNDU);
    if (mpfr_cmp_si(hi.get(), lhs) < 0) return true;   // N lnN < d k^2
    if (mpfr_cmp_si(lo.get(), lhs) >= 0) return false; // N lnN >= d k^2
  }
  throw std::runtime_error("certified::exceeds_sqrt_nlogn_over: not decidable");
}

// floor(sqrt(N ln N / d)).
inline long floor_sqrt_nlogn_over(long n, long d) {
  if (n < 2) throw std::domain_error("floor_sqrt_nlogn_over: n >= 2 required");
  for (mpfr_prec_t prec = detail::kStartPrec; prec <= detail::kMaxPrec; prec *= 2) {
    detail::Real lo(prec), hi(prec);
    detail::n_log_n(lo.get(), n, MPFR_RNDD);
    mpfr_div_si(lo.get(), lo.get(), d, MPFR_RNDD);
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    detail::n_log_n(hi.get(), n, MPFR_RNDU);
    mpfr_div_si(hi.get(), hi.get(), d, MPFR_RNDU);
    mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
    const long flo = mpfr_get_si(lo.get(), MPFR_RNDD);
    const long fhi = mpfr_get_si(hi.get(), MPFR_RNDD);
    if (flo == fhi) return flo;
  }
  throw std::runtime_error("certified::floor_sqrt_nlogn_over: not decidable");
}

// floor((sqrt(pi * N) - 1) / 2).
inline long floor_naive_bound(long n) {
  for (mpfr_prec_t prec = detail::kStartPrec; prec <= detail::kMaxPrec; prec *= 2) {
    detail::Real lo(prec), hi(prec);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_mul_si(lo.get(), lo.get(), n, MPFR_RNDD);
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_sub_ui(lo.get(), lo.get(), 1, MPFR_RNDD);
    mpfr_div_ui(lo.get(), lo.get(), 2, MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    mpfr_mul_si(hi.get(), hi.get(), n, MPFR_RNDU);
    mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
    mpfr_sub_ui(hi.get(), hi.get(), 1, MPFR_RNDU);
    mpfr_div_ui(hi.get(), hi.get(), 2, MPFR_RNDU);
    const long flo = mpfr_get_si(lo.get(), MPFR_RNDD);
    const long fhi = mpfr_get_si(hi.get(), MPFR_RNDD);
    if (flo == fhi) return flo;
  }
  throw std::runtime_error("certified::floor_naive_bound: not decidable");
}

}  // namespace certified
}  // namespace oneround
