#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "arctanpi/numerics/precision.hpp"

namespace arctanpi {

/// Exact rational number. The representation is always canonical:
/// denominator > 0 and gcd(|numerator|, denominator) = 1.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  BigRational(int value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  BigRational(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw InvalidArgument("BigRational: zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
  }

  explicit BigRational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  static BigRational from_integers(std::int64_t numerator, std::int64_t denominator) {
    return BigRational(mpz_class(std::to_string(numerator)), mpz_class(std::to_string(denominator)));
  }

  /// Exact value of a binary64 number.
  static BigRational from_double(double value) {
    if (!std::isfinite(value)) throw InvalidArgument("BigRational: non-finite double");
    return BigRational(mpq_class(value));
  }

  /// Accepts "p/q", integers and finite decimal literals with an optional
  /// exponent ("0.25", "-1e-9"). Decimal literals are converted exactly.
  static BigRational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& mpq() const noexcept { return value_; }
  mpq_srcptr get_mpq_t() const noexcept { return value_.get_mpq_t(); }

  int sign() const noexcept { return sgn(value_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  BigRational abs() const { return BigRational(::abs(value_)); }
  BigRational reciprocal() const {
    if (is_zero()) throw InvalidArgument("BigRational: reciprocal of zero");
    return BigRational(mpq_class(1) / value_);
  }

  double to_double() const { return value_.get_d(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  BigRational operator-() const { return BigRational(mpq_class(-value_)); }

  BigRational& operator+=(const BigRational& rhs) { value_ += rhs.value_; return *this; }
  BigRational& operator-=(const BigRational& rhs) { value_ -= rhs.value_; return *this; }
  BigRational& operator*=(const BigRational& rhs) { value_ *= rhs.value_; return *this; }
  BigRational& operator/=(const BigRational& rhs) {
    if (rhs.is_zero()) throw InvalidArgument("BigRational: division by zero");
    value_ /= rhs.value_;
    return *this;
  }

  friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
  friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
  friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
  friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& q) { return os << q.to_string(); }

 private:
  mpq_class value_{0};
};

inline BigRational BigRational::parse(std::string_view text) {
  auto fail = [&] { return InvalidArgument("cannot parse rational '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    auto is_int = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      }
      return true;
    };
    if (!is_int(num) || !is_int(den)) throw fail();
    auto strip_plus = [](std::string_view s) { return std::string(s.front() == '+' ? s.substr(1) : s); };
    const mpz_class d(strip_plus(den));
    if (d == 0) throw InvalidArgument("rational '" + std::string(text) + "' has zero denominator");
    return BigRational(mpz_class(strip_plus(num)), d);
  }

  // Decimal literal: [sign] digits [. digits] [(e|E) [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string mantissa;
  long scale = 0;
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    mantissa += text[i++];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mantissa += text[i++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    const std::size_t start = i;
    long exponent = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exponent = exponent * 10 + (text[i++] - '0');
      if (exponent > 100000) throw fail();
    }
    if (i == start) throw fail();
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != text.size()) throw fail();

  mpz_class num(mantissa);
  mpz_class den(1);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale < 0) {
    den = power;
  } else {
    num *= power;
  }
  if (negative) num = -num;
  return BigRational(num, den);
}

}  // namespace arctanpi
