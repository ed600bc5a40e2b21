#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include <mpfr.h>

#include "arctanpi/numerics/big_rational.hpp"
#include "arctanpi/numerics/precision.hpp"

namespace arctanpi {

/// Binary floating-point number with caller-chosen precision (MPFR backed).
/// Binary operations produce a result at the larger operand precision and
/// round to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(double value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  Real(long value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(int value, mpfr_prec_t bits) : Real(static_cast<long>(value), bits) {}
  Real(const mpz_class& value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }
  Real(const BigRational& value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }

  /// Decimal string in any form accepted by mpfr_set_str.
  static Real from_string(const std::string& text, mpfr_prec_t bits) {
    Real r(bits);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
      throw InvalidArgument("cannot parse real '" + text + "'");
    }
    return r;
  }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

  /// Copy rounded (or widened) to `bits`.
  Real with_precision(mpfr_prec_t bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }
  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Exact rational value of a finite Real.
  BigRational to_rational() const {
    if (!is_finite()) throw InvalidArgument("Real: non-finite value has no rational form");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return BigRational(q);
  }

  /// Scientific notation with `digits` significant digits, e.g. "-1.2500e-3".
  std::string to_scientific(int digits) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
    if (is_zero()) {
      return digits > 1 ? "0." + std::string(static_cast<std::size_t>(digits - 1), '0') : "0";
    }
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string out;
    if (mant.front() == '-') {
      out += '-';
      mant.erase(0, 1);
    }
    out += mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(static_cast<long>(exp10) - 1);
    return out;
  }

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& rhs) { return apply(rhs, mpfr_add); }
  Real& operator-=(const Real& rhs) { return apply(rhs, mpfr_sub); }
  Real& operator*=(const Real& rhs) { return apply(rhs, mpfr_mul); }
  Real& operator/=(const Real& rhs) { return apply(rhs, mpfr_div); }

  Real& operator*=(long rhs) {
    mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(long rhs) {
    mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
  }
  Real& operator+=(long rhs) {
    mpfr_add_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, long rhs) { return lhs /= rhs; }
  friend Real operator+(Real lhs, long rhs) { return lhs += rhs; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  /// Multiply by 2^k exactly.
  Real scaled_by_pow2(long k) const {
    Real r(precision());
    mpfr_mul_2si(r.v_, v_, k, MPFR_RNDN);
    return r;
  }

 private:
  template <class Op>
  Real& apply(const Real& rhs, Op op) {
    const mpfr_prec_t bits = std::max(precision(), rhs.precision());
    if (bits != precision()) mpfr_prec_round(v_, bits, MPFR_RNDN);
    op(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

namespace detail {
template <class Fn>
Real unary(const Real& x, Fn fn) {
  Real r(x.precision());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline Real abs(const Real& x) { return detail::unary(x, mpfr_abs); }
inline Real sqrt(const Real& x) { return detail::unary(x, mpfr_sqrt); }
inline Real exp(const Real& x) { return detail::unary(x, mpfr_exp); }
inline Real log(const Real& x) { return detail::unary(x, mpfr_log); }
inline Real cos(const Real& x) { return detail::unary(x, mpfr_cos); }
inline Real sin(const Real& x) { return detail::unary(x, mpfr_sin); }

/// MPFR's own erf. Used only by the quadrature cross-checks, which must stay
/// independent of the Maclaurin reference oracle.
inline Real library_erf(const Real& x) { return detail::unary(x, mpfr_erf); }

/// 10^k at the given precision.
inline Real pow10(long k, mpfr_prec_t bits) {
  Real r(bits);
  Real ten(10L, bits);
  mpfr_pow_si(r.get(), ten.get(), k, MPFR_RNDN);
  return r;
}

}  // namespace arctanpi
