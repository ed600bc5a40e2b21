#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

#include "arctanpi/numerics/big_rational.hpp"
#include "arctanpi/numerics/precision.hpp"
#include "arctanpi/numerics/real.hpp"

namespace arctanpi {

/// Positional decimal digits with the decimal point removed.
///
/// `digits` holds the integer part followed by the fractional part, so
/// "3.1415" is stored as "31415" with `integer_digits` = 1 and "0.0012" as
/// "00012" with `integer_digits` = 1. Leading zeros appear only for values
/// below one.
struct DigitString {
  bool negative = false;
  std::string digits;
  std::size_t integer_digits = 1;

  /// Parses text such as "3.14159", "-0.25" or "3.14159…". A trailing
  /// ellipsis ("…" or "...") is ignored.
  static DigitString parse(std::string_view text) {
    auto fail = [&] { return InvalidArgument("not a decimal digit string: '" + std::string(text) + "'"); };
    for (std::string_view suffix : {std::string_view("…"), std::string_view("...")}) {
      if (text.size() >= suffix.size() && text.substr(text.size() - suffix.size()) == suffix) {
        text.remove_suffix(suffix.size());
      }
    }
    DigitString out;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
      out.negative = text.front() == '-';
      text.remove_prefix(1);
    }
    bool seen_point = false;
    out.integer_digits = 0;
    for (char c : text) {
      if (c == '.') {
        if (seen_point) throw fail();
        seen_point = true;
      } else if (c >= '0' && c <= '9') {
        out.digits += c;
        if (!seen_point) ++out.integer_digits;
      } else {
        throw fail();
      }
    }
    if (out.digits.empty() || out.integer_digits == 0) throw fail();
    // Normalize redundant leading zeros of the integer part ("007.5" -> "7.5").
    while (out.integer_digits > 1 && out.digits.front() == '0') {
      out.digits.erase(0, 1);
      --out.integer_digits;
    }
    return out;
  }

  /// Renders with the decimal point restored, e.g. "3.200000000".
  std::string to_string() const {
    std::string s = negative ? "-" : "";
    s += digits.substr(0, integer_digits);
    if (integer_digits < digits.size()) s += "." + digits.substr(integer_digits);
    return s;
  }

  friend bool operator==(const DigitString&, const DigitString&) = default;
};

/// Length of the common leading digit prefix. The decimal point is ignored;
/// strings of opposite sign share no digits.
inline std::size_t digit_coincidence(const DigitString& a, const DigitString& b) {
  if (a.negative != b.negative) return 0;
  const auto mismatch = std::mismatch(a.digits.begin(), a.digits.end(), b.digits.begin(), b.digits.end());
  return static_cast<std::size_t>(mismatch.first - a.digits.begin());
}

namespace detail {

/// Builds a DigitString from `significant` digits and the decimal exponent e
/// with value = 0.d1d2... x 10^e.
inline DigitString from_mantissa(bool negative, std::string significant, long exp10) {
  DigitString out;
  out.negative = negative;
  if (exp10 >= 1) {
    if (static_cast<std::size_t>(exp10) > significant.size()) {
      significant.append(static_cast<std::size_t>(exp10) - significant.size(), '0');
    }
    out.integer_digits = static_cast<std::size_t>(exp10);
    out.digits = std::move(significant);
  } else {
    out.integer_digits = 1;
    out.digits = std::string(static_cast<std::size_t>(1 - exp10), '0') + significant;
  }
  return out;
}

}  // namespace detail

/// Rounds an exact rational to `significant` digits, ties to even.
inline DigitString render_digits(const BigRational& value, int significant) {
  if (significant < 1) throw InvalidArgument("render_digits: need at least one digit");
  if (value.is_zero()) return detail::from_mantissa(false, std::string(static_cast<std::size_t>(significant), '0'), 1);

  const mpz_class num = abs(value.numerator());
  const mpz_class den = value.denominator();

  // e such that 10^(e-1) <= |value| < 10^e, starting from a size estimate.
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10)) + 1;
  auto pow10z = [](long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return p;
  };
  // |value| >= 10^k  <=>  num * 10^-k >= den
  auto at_least_pow10 = [&](long k) { return k >= 0 ? num >= den * pow10z(k) : num * pow10z(-k) >= den; };
  while (at_least_pow10(e)) ++e;
  while (!at_least_pow10(e - 1)) --e;

  const long shift = significant - e;
  mpz_class scaled_num = num;
  mpz_class scaled_den = den;
  if (shift >= 0) {
    scaled_num *= pow10z(shift);
  } else {
    scaled_den *= pow10z(-shift);
  }
  mpz_class quotient;
  mpz_class remainder;
  mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  const int half = cmp(remainder * 2, scaled_den);
  if (half > 0 || (half == 0 && mpz_odd_p(quotient.get_mpz_t()))) ++quotient;

  std::string text = quotient.get_str();
  if (text.size() > static_cast<std::size_t>(significant)) {
    text.resize(static_cast<std::size_t>(significant));
    ++e;
  }
  return detail::from_mantissa(value.sign() < 0, std::move(text), e);
}

/// Rounds a high-precision real to `significant` digits, ties to even.
inline DigitString render_digits(const Real& value, int significant) {
  if (significant < 1) throw InvalidArgument("render_digits: need at least one digit");
  if (!value.is_finite()) throw InvalidArgument("render_digits: non-finite value");
  if (value.is_zero()) return detail::from_mantissa(false, std::string(static_cast<std::size_t>(significant), '0'), 1);
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(significant), value.get(), MPFR_RNDN);
  std::string text(raw);
  mpfr_free_str(raw);
  const bool negative = text.front() == '-';
  if (negative) text.erase(0, 1);
  return detail::from_mantissa(negative, std::move(text), static_cast<long>(exp10));
}

}  // namespace arctanpi
