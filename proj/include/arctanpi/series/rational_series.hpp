#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "arctanpi/numerics/exact_sum.hpp"
#include "arctanpi/series/approx_value.hpp"

namespace arctanpi {

namespace detail {

inline mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

/// Evaluates sum_{l=1..L} term(l) in the requested mode. Terms are supplied
/// per number type; every mode sums in ascending l.
///
///   exact(l)            -> Fraction (unreduced, positive denominator)
///   real(l)             -> Real at the working precision of the call
///   binary64(l)         -> double
template <class MakeExact, class MakeReal, class MakeDouble>
ApproxValue evaluate_series(std::string series, const SeriesParams& p, const EvalMode& mode, MakeExact make_exact,
                            MakeReal make_real, MakeDouble make_double) {
  p.validate();
  ApproxValue out{BigRational(0), std::move(series), p, SummationKernel::sequential, mode};

  if (std::holds_alternative<ExactMode>(mode)) {
    const auto* x = std::get_if<BigRational>(&p.x);
    if (x == nullptr) throw InvalidArgument(out.series + ": exact mode requires a rational argument");
    auto term = make_exact(*x);
    out.value = exact_series_sum(p.L, [&](std::size_t i) { return term(static_cast<std::uint64_t>(i) + 1); }).reduced();
    return out;
  }

  if (const auto* real = std::get_if<RealMode>(&mode)) {
    const mpfr_prec_t out_bits = real->ctx.working_bits();
    // One extra bit per doubling of L keeps accumulated rounding below the
    // working precision.
    const mpfr_prec_t bits = out_bits + 16 + static_cast<mpfr_prec_t>(std::bit_width(p.L));
    auto term = make_real(to_real(p.x, bits), bits);
    Real sum(bits);
    for (std::uint64_t l = 1; l <= p.L; ++l) sum += term(l);
    out.value = sum.with_precision(out_bits);
    return out;
  }

  const auto& b64 = std::get<Binary64Mode>(mode);
  out.kernel = b64.summation.kernel;
  auto term = make_double(to_real(p.x, 53).to_double());
  out.value = sum_indexed(
      static_cast<std::size_t>(p.L), [&](std::size_t i) { return term(static_cast<std::uint64_t>(i) + 1); },
      b64.summation);
  return out;
}

}  // namespace detail

/// Truncated rational approximation of the arctangent:
///   4L sum_{l=1..L} x / ((2l-1)^2 x^2 + 4L^2).
/// Odd in x by construction.
inline ApproxValue arctan_approx(const SeriesParams& p, const EvalMode& mode) {
  const std::uint64_t L = p.L;
  return detail::evaluate_series(
      "arctan", p, mode,
      [L](const BigRational& x) {
        const mpz_class P = x.numerator();
        const mpz_class Q = x.denominator();
        const mpz_class LL = detail::to_mpz(L);
        const mpz_class num = 4 * LL * P * Q;
        const mpz_class p2 = P * P;
        const mpz_class base = 4 * LL * LL * Q * Q;
        return [=](std::uint64_t l) {
          const mpz_class m = 2 * detail::to_mpz(l) - 1;
          return Fraction{num, m * m * p2 + base};
        };
      },
      [L](const Real& x, mpfr_prec_t bits) {
        const Real LL(detail::to_mpz(L), bits);
        const Real num = x * LL * 4L;
        const Real x2 = x * x;
        const Real base = LL * LL * 4L;
        return [=](std::uint64_t l) {
          const Real m(detail::to_mpz(2 * l - 1), bits);
          return num / (x2 * m * m + base);
        };
      },
      [L](double x) {
        const double LL = static_cast<double>(L);
        return [=](std::uint64_t l) {
          const double m = 2.0 * static_cast<double>(l) - 1.0;
          return 4.0 * LL * x / (m * m * x * x + 4.0 * LL * LL);
        };
      });
}

/// Truncated counterpart series
///   -4L sum_{l=1..L} x / ((2l-1)^2 + 4L^2 x^2),
/// approximating -sgn(x) pi/2 + arctan(x). For x != 0 it equals
/// -arctan_approx(1/x) with the same L; at x = 0 every term vanishes.
inline ApproxValue counterpart_approx(const SeriesParams& p, const EvalMode& mode) {
  const std::uint64_t L = p.L;
  return detail::evaluate_series(
      "counterpart", p, mode,
      [L](const BigRational& x) {
        const mpz_class P = x.numerator();
        const mpz_class Q = x.denominator();
        const mpz_class LL = detail::to_mpz(L);
        const mpz_class num = -4 * LL * P * Q;
        const mpz_class q2 = Q * Q;
        const mpz_class base = 4 * LL * LL * P * P;
        return [=](std::uint64_t l) {
          const mpz_class m = 2 * detail::to_mpz(l) - 1;
          return Fraction{num, m * m * q2 + base};
        };
      },
      [L](const Real& x, mpfr_prec_t bits) {
        const Real LL(detail::to_mpz(L), bits);
        const Real num = -(x * LL * 4L);
        const Real base = LL * LL * x * x * 4L;
        return [=](std::uint64_t l) {
          const Real m(detail::to_mpz(2 * l - 1), bits);
          return num / (m * m + base);
        };
      },
      [L](double x) {
        const double LL = static_cast<double>(L);
        return [=](std::uint64_t l) {
          const double m = 2.0 * static_cast<double>(l) - 1.0;
          return -4.0 * LL * x / (m * m + 4.0 * LL * LL * x * x);
        };
      });
}

}  // namespace arctanpi
