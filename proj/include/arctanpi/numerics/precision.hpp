#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <mpfr.h>

namespace arctanpi {

/// Raised when a precondition on the inputs of an operation is violated.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an oracle cannot deliver the requested precision. Oracles
/// reject rather than return a degraded value.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest decimal precision the reference oracles accept.
inline constexpr int kMaxDecimalDigits = 20000;

/// Requested output digits plus guard digits carried internally. Values are
/// rounded to `decimal_digits` only when rendered.
class PrecisionContext {
 public:
  explicit PrecisionContext(int decimal_digits, int guard_digits = 10)
      : decimal_digits_(decimal_digits), guard_digits_(guard_digits) {
    if (decimal_digits < 1) {
      throw InvalidArgument("decimal_digits must be >= 1, got " + std::to_string(decimal_digits));
    }
    if (guard_digits < 1) {
      throw InvalidArgument("guard_digits must be >= 1, got " + std::to_string(guard_digits));
    }
  }

  int decimal_digits() const noexcept { return decimal_digits_; }
  int guard_digits() const noexcept { return guard_digits_; }
  int working_digits() const noexcept { return decimal_digits_ + guard_digits_; }

  /// Binary precision that holds `working_digits()` decimal digits.
  mpfr_prec_t working_bits() const noexcept { return digits_to_bits(working_digits()); }

  static mpfr_prec_t digits_to_bits(int digits) noexcept {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
  }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  int decimal_digits_;
  int guard_digits_;
};

/// Throws PrecisionError when `digits` exceeds what the oracles support.
inline void require_supported_digits(int digits, const char* what) {
  if (digits > kMaxDecimalDigits) {
    throw PrecisionError(std::string(what) + ": " + std::to_string(digits) +
                         " digits requested, at most " + std::to_string(kMaxDecimalDigits) +
                         " supported");
  }
}

}  // namespace arctanpi
