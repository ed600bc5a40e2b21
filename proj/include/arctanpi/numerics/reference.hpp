#pragma once

#include <cmath>
#include <mutex>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "arctanpi/numerics/big_rational.hpp"
#include "arctanpi/numerics/digits.hpp"
#include "arctanpi/numerics/precision.hpp"
#include "arctanpi/numerics/real.hpp"

namespace arctanpi {

/// First 50 significant digits of pi. Every reference_pi result must agree
/// with this prefix.
inline constexpr std::string_view kPiAnchor50 = "3.1415926535897932384626433832795028841971693993751";

namespace detail {

/// floor(unity * arccot(n)) up to an error of a few units, via the integer
/// Gregory series arccot(n) = sum (-1)^k / ((2k+1) n^(2k+1)).
inline mpz_class arccot_fixed(unsigned long n, const mpz_class& unity) {
  const unsigned long n2 = n * n;
  mpz_class power = unity / n;
  mpz_class sum = power;
  mpz_class term;
  for (unsigned long k = 1; power != 0; ++k) {
    power /= n2;
    term = power / (2 * k + 1);
    if (k % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

/// Digits "31415..." of floor(pi * 10^(total-1)), computed with Machin's
/// formula in fixed point with `extra` digits beyond `total`.
inline std::string machin_pi_digits(int total, int extra) {
  mpz_class unity;
  mpz_ui_pow_ui(unity.get_mpz_t(), 10, static_cast<unsigned long>(total - 1 + extra));
  mpz_class pi = 4 * (4 * arccot_fixed(5, unity) - arccot_fixed(239, unity));
  std::string s = pi.get_str();
  s.resize(static_cast<std::size_t>(total));
  return s;
}

struct PiDigitCache {
  std::mutex mutex;
  std::string digits;  // verified prefix
};

inline PiDigitCache& pi_digit_cache() {
  static PiDigitCache cache;
  return cache;
}

}  // namespace detail

/// Digits of pi correct to ctx.decimal_digits (truncated, not rounded).
///
/// Each request is computed twice, at decimal_digits + guard and 20 digits
/// beyond that, and the two runs must agree; the first 50 digits must match
/// kPiAnchor50. Verified digits are cached process-wide.
inline DigitString reference_pi(const PrecisionContext& ctx) {
  const int digits = ctx.decimal_digits();
  require_supported_digits(digits, "reference_pi");
  auto& cache = detail::pi_digit_cache();
  std::lock_guard lock(cache.mutex);

  if (cache.digits.size() < static_cast<std::size_t>(digits)) {
    const std::string a = detail::machin_pi_digits(digits, ctx.guard_digits());
    const std::string b = detail::machin_pi_digits(digits, ctx.guard_digits() + 20);
    if (a != b) {
      throw PrecisionError("reference_pi: runs at two precisions disagree at " + std::to_string(digits) +
                           " digits; increase guard_digits");
    }
    std::string anchor(kPiAnchor50);
    anchor.erase(1, 1);
    const std::size_t n = std::min(anchor.size(), a.size());
    if (a.compare(0, n, anchor, 0, n) != 0) {
      throw PrecisionError("reference_pi: computed digits disagree with the 50-digit anchor");
    }
    cache.digits = a;
  }
  DigitString out;
  out.digits = cache.digits.substr(0, static_cast<std::size_t>(digits));
  out.integer_digits = 1;
  return out;
}

/// pi as a Real at `bits` of precision, from the verified reference digits.
inline Real pi_real(mpfr_prec_t bits) {
  const int digits = static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 5;
  const DigitString d = reference_pi(PrecisionContext(digits));
  return Real::from_string(d.to_string(), bits);
}

/// arctan(x) correct to ctx.decimal_digits, independent of the rational
/// approximation under test.
///
/// The argument is halved in angle with arctan(x) = 2 arctan(x / (1 + sqrt(1 + x^2)))
/// until |x| < 1/10, then the alternating Maclaurin series is summed until the
/// next term drops below 2^-(working bits). Odd by construction.
inline Real reference_arctan(const Real& x, const PrecisionContext& ctx) {
  require_supported_digits(ctx.decimal_digits(), "reference_arctan");
  if (!x.is_finite()) throw InvalidArgument("reference_arctan: non-finite argument");
  const mpfr_prec_t out_bits = ctx.working_bits();
  if (x.is_zero()) return Real(out_bits);

  const mpfr_prec_t bits = out_bits + 64;
  Real t = abs(x).with_precision(bits);
  const Real tenth = Real(1L, bits) / 10;
  long halvings = 0;
  while (t >= tenth) {
    t = t / (sqrt(t * t + 1) + 1);
    ++halvings;
  }

  const Real t2 = t * t;
  Real power = t;
  Real sum = t;
  const Real eps = Real(1L, bits).scaled_by_pow2(-static_cast<long>(bits));
  long n = 1;
  for (;; ++n) {
    power *= t2;
    const Real term = power / (2 * n + 1);
    if (abs(term) < eps) break;
    if (n % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
    if (n > 4 * static_cast<long>(bits)) {
      throw PrecisionError("reference_arctan: series failed to converge at " + std::to_string(bits) + " bits");
    }
  }
  Real out = sum.scaled_by_pow2(halvings).with_precision(out_bits);
  return x.sign() < 0 ? -out : out;
}

inline Real reference_arctan(const BigRational& x, const PrecisionContext& ctx) {
  return reference_arctan(Real(x, ctx.working_bits() + 64), ctx);
}

/// erf(x) correct to ctx.decimal_digits from the Maclaurin series
/// erf(x) = 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1)), for |x| <= 10.
///
/// Terms peak near n = x^2 at about e^(x^2), so the series is summed with
/// that many extra bits to absorb the cancellation. Once n > x^2 the terms
/// alternate and decrease, and the tail is bounded by the first omitted term.
inline Real reference_erf(const Real& x, const PrecisionContext& ctx) {
  require_supported_digits(ctx.decimal_digits(), "reference_erf");
  if (!x.is_finite()) throw InvalidArgument("reference_erf: non-finite argument");
  const double xd = x.to_double();
  if (std::fabs(xd) > 10.0) throw InvalidArgument("reference_erf: |x| must be <= 10");
  const mpfr_prec_t out_bits = ctx.working_bits();
  if (x.is_zero()) return Real(out_bits);

  const mpfr_prec_t cancellation = static_cast<mpfr_prec_t>(std::ceil(xd * xd * 1.4426950408889634));
  const mpfr_prec_t bits = out_bits + cancellation + 64;
  const Real xx = x.with_precision(bits);
  const Real x2 = xx * xx;
  const Real eps = Real(1L, bits).scaled_by_pow2(-static_cast<long>(out_bits + 16));

  Real power = xx;  // (-1)^n x^(2n+1) / n!
  Real sum = xx;
  for (long n = 1;; ++n) {
    power = -(power * x2) / n;
    const Real term = power / (2 * n + 1);
    sum += term;
    if (static_cast<double>(n) > xd * xd && abs(term) < eps) break;
    if (n > 100000) throw PrecisionError("reference_erf: series failed to converge");
  }
  const Real scale = Real(2L, bits) / sqrt(pi_real(bits));
  return (sum * scale).with_precision(out_bits);
}

}  // namespace arctanpi
