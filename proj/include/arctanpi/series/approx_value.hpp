#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>

#include "arctanpi/numerics/big_rational.hpp"
#include "arctanpi/numerics/digits.hpp"
#include "arctanpi/numerics/precision.hpp"
#include "arctanpi/numerics/real.hpp"
#include "arctanpi/numerics/summation.hpp"

namespace arctanpi {

/// A series argument: exact rational or high-precision real.
using Argument = std::variant<BigRational, Real>;

inline bool is_zero(const Argument& x) {
  return std::visit([](const auto& v) { return v.is_zero(); }, x);
}

inline int sign(const Argument& x) {
  return std::visit([](const auto& v) { return v.sign(); }, x);
}

inline Real to_real(const Argument& x, mpfr_prec_t bits) {
  if (const auto* q = std::get_if<BigRational>(&x)) return Real(*q, bits);
  return std::get<Real>(x).with_precision(bits);
}

inline std::string to_string(const Argument& x) {
  if (const auto* q = std::get_if<BigRational>(&x)) return q->to_string();
  return std::get<Real>(x).to_scientific(20);
}

/// Truncation order L and argument x of a truncated series.
struct SeriesParams {
  std::uint64_t L = 1;
  Argument x = BigRational(0);

  SeriesParams(std::uint64_t order, Argument argument) : L(order), x(std::move(argument)) { validate(); }

  void validate() const {
    if (L < 1) throw InvalidArgument("series: L must be >= 1");
    if (const auto* r = std::get_if<Real>(&x); r != nullptr && !r->is_finite()) {
      throw InvalidArgument("series: x must be finite");
    }
  }
};

/// Big-rational evaluation with no rounding at all.
struct ExactMode {};

/// High-precision evaluation at ctx working precision.
struct RealMode {
  PrecisionContext ctx;
};

/// Binary64 evaluation with a selectable summation kernel.
struct Binary64Mode {
  SummationOptions summation;
};

using EvalMode = std::variant<ExactMode, RealMode, Binary64Mode>;

inline std::string mode_name(const EvalMode& mode) {
  if (std::holds_alternative<ExactMode>(mode)) return "exact";
  if (std::holds_alternative<RealMode>(mode)) return "real";
  return "binary64";
}

/// A computed series value together with how it was computed.
struct ApproxValue {
  std::variant<BigRational, Real, double> value;
  std::string series;
  SeriesParams params;
  SummationKernel kernel = SummationKernel::sequential;
  EvalMode mode = ExactMode{};

  bool exact() const noexcept { return std::holds_alternative<BigRational>(value); }

  const BigRational& rational() const {
    if (const auto* q = std::get_if<BigRational>(&value)) return *q;
    throw InvalidArgument("ApproxValue: not an exact value");
  }

  Real to_real(mpfr_prec_t bits) const {
    return std::visit(
        [bits](const auto& v) -> Real {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, BigRational>) {
            return Real(v, bits);
          } else if constexpr (std::is_same_v<T, Real>) {
            return v.with_precision(bits);
          } else {
            return Real(v, bits);
          }
        },
        value);
  }

  double to_double() const { return to_real(53).to_double(); }

  /// Decimal rendering rounded half-even to `significant` digits.
  DigitString digits(int significant) const {
    if (const auto* q = std::get_if<BigRational>(&value)) return render_digits(*q, significant);
    return render_digits(to_real(std::get_if<Real>(&value) ? std::get<Real>(value).precision() : 53), significant);
  }
};

}  // namespace arctanpi
