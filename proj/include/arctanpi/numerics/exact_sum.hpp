#pragma once

#include <cstddef>

#include <gmpxx.h>
#include <mpfr.h>

#include "arctanpi/numerics/big_rational.hpp"
#include "arctanpi/numerics/real.hpp"

namespace arctanpi {

/// A rational p/q with q > 0 that has not been reduced to lowest terms.
/// Binary splitting produces these; reducing is deferred because the gcd of
/// two multi-megabit integers dominates everything else.
struct Fraction {
  mpz_class num{0};
  mpz_class den{1};

  BigRational reduced() const { return BigRational(num, den); }

  /// Correctly rounded value at `bits` of precision.
  Real to_real(mpfr_prec_t bits) const {
    const auto exact_bits = [](const mpz_class& z) {
      return static_cast<mpfr_prec_t>(std::max<std::size_t>(mpz_sizeinbase(z.get_mpz_t(), 2), 2));
    };
    Real n(num, exact_bits(num));
    Real d(den, exact_bits(den));
    Real r(bits);
    mpfr_div(r.get(), n.get(), d.get(), MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(to_real(53).get(), MPFR_RNDN); }
};

namespace detail {

template <class TermFn>
Fraction split_sum(std::size_t lo, std::size_t hi, TermFn& term) {
  if (hi - lo == 1) return term(lo);
  const std::size_t mid = lo + (hi - lo) / 2;
  Fraction left = split_sum(lo, mid, term);
  Fraction right = split_sum(mid, hi, term);
  Fraction out;
  out.num = left.num * right.den + right.num * left.den;
  out.den = left.den * right.den;
  return out;
}

}  // namespace detail

/// Exact sum of term(0) ... term(n-1), each returned as a Fraction with a
/// positive denominator. The terms are combined by a balanced tree, so the
/// operand sizes stay matched and GMP's fast multiplication applies.
template <class TermFn>
Fraction exact_series_sum(std::size_t n, TermFn&& term) {
  if (n == 0) return Fraction{};
  return detail::split_sum(0, n, term);
}

}  // namespace arctanpi
