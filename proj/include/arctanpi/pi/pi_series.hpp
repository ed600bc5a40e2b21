#pragma once

#include <cmath>
#include <cstdint>

#include <gmpxx.h>

#include "arctanpi/series/rational_series.hpp"

namespace arctanpi {

/// Direct truncation 16L sum_{l=1..L} 1 / ((2l-1)^2 + 4L^2); equal to
/// 4 arctan_approx(1, L).
inline ApproxValue pi_direct(std::uint64_t L, const EvalMode& mode) {
  return detail::evaluate_series(
      "pi_direct", SeriesParams(L, BigRational(1)), mode,
      [L](const BigRational&) {
        const mpz_class LL = detail::to_mpz(L);
        const mpz_class num = 16 * LL;
        const mpz_class base = 4 * LL * LL;
        return [=](std::uint64_t l) {
          const mpz_class m = 2 * detail::to_mpz(l) - 1;
          return Fraction{num, m * m + base};
        };
      },
      [L](const Real&, mpfr_prec_t bits) {
        const Real LL(detail::to_mpz(L), bits);
        const Real num = LL * 16L;
        const Real base = LL * LL * 4L;
        return [=](std::uint64_t l) {
          const Real m(detail::to_mpz(2 * l - 1), bits);
          return num / (m * m + base);
        };
      },
      [L](double) {
        const double LL = static_cast<double>(L);
        return [=](std::uint64_t l) {
          const double m = 2.0 * static_cast<double>(l) - 1.0;
          return 16.0 * LL / (m * m + 4.0 * LL * LL);
        };
      });
}

namespace detail {

/// Exact term l of the asymptotic series at x = P/Q. The bracket equals
/// Q^2 (1/A + 1/B) with A = (2l-1)^2 P^2 + 4L^2 Q^2 and
/// B = (2l-1)^2 Q^2 + 4L^2 P^2.
inline auto asymptotic_exact_term(const BigRational& xq, std::uint64_t L) {
  const mpz_class P = abs(xq.numerator());
  const mpz_class Q = xq.denominator();
  const mpz_class LL = to_mpz(L);
  const mpz_class scale = 8 * LL * P * Q;
  const mpz_class p2 = P * P;
  const mpz_class q2 = Q * Q;
  const mpz_class four_l2 = 4 * LL * LL;
  return [=](std::uint64_t l) {
    const mpz_class m = 2 * to_mpz(l) - 1;
    const mpz_class m2 = m * m;
    const mpz_class a = m2 * p2 + four_l2 * q2;
    const mpz_class b = m2 * q2 + four_l2 * p2;
    return Fraction{scale * (a + b), a * b};
  };
}

}  // namespace detail

/// Asymptotic truncation
///   8L|x| sum_{l=1..L} [1 / ((2l-1)^2 x^2 + 4L^2) + 1 / ((2l-1)^2 + 4L^2 x^2)].
/// Even in x and symmetric under x -> 1/x; x = 0 is rejected.
inline ApproxValue pi_asymptotic(const Argument& x, std::uint64_t L, const EvalMode& mode) {
  if (is_zero(x)) throw InvalidArgument("pi_asymptotic: x must be nonzero");
  return detail::evaluate_series(
      "pi_asymptotic", SeriesParams(L, x), mode,
      [L](const BigRational& xq) { return detail::asymptotic_exact_term(xq, L); },
      [L](const Real& xr, mpfr_prec_t bits) {
        const Real LL(detail::to_mpz(L), bits);
        const Real ax = abs(xr);
        const Real scale = ax * LL * 8L;
        const Real x2 = ax * ax;
        const Real four_l2 = LL * LL * 4L;
        const Real four_l2x2 = four_l2 * x2;
        const Real one(1L, bits);
        return [=](std::uint64_t l) {
          const Real m(detail::to_mpz(2 * l - 1), bits);
          const Real m2 = m * m;
          return scale * (one / (m2 * x2 + four_l2) + one / (m2 + four_l2x2));
        };
      },
      [L](double xd) {
        const double LL = static_cast<double>(L);
        const double ax = std::fabs(xd);
        return [=](std::uint64_t l) {
          const double m = 2.0 * static_cast<double>(l) - 1.0;
          const double m2 = m * m;
          return 8.0 * LL * ax * (1.0 / (m2 * ax * ax + 4.0 * LL * LL) + 1.0 / (m2 + 4.0 * LL * LL * ax * ax));
        };
      });
}

/// Exact value of pi_asymptotic(x, L) left unreduced. Rendering or rounding
/// this is cheap even where reducing it to lowest terms is not.
inline Fraction pi_asymptotic_fraction(const BigRational& x, std::uint64_t L) {
  if (x.is_zero()) throw InvalidArgument("pi_asymptotic: x must be nonzero");
  if (L < 1) throw InvalidArgument("series: L must be >= 1");
  auto term = detail::asymptotic_exact_term(x, L);
  return exact_series_sum(L, [&](std::size_t i) { return term(static_cast<std::uint64_t>(i) + 1); });
}

}  // namespace arctanpi
