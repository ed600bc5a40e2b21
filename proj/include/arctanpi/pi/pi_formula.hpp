#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arctanpi/numerics/reference.hpp"
#include "arctanpi/series/rational_series.hpp"

namespace arctanpi {

/// One term c * arctan(b) of a Machin-type identity.
struct FormulaTerm {
  BigRational coefficient;
  BigRational argument;
};

/// A Machin-type identity pi = sum c_n arctan(b_n). Any outer factor is
/// distributed into the coefficients.
class PiFormula {
 public:
  PiFormula(std::string name, std::vector<FormulaTerm> terms) : name_(std::move(name)), terms_(std::move(terms)) {
    if (terms_.empty()) throw InvalidArgument("PiFormula '" + name_ + "': needs at least one term");
    for (const auto& t : terms_) {
      if (t.argument.is_zero()) throw InvalidArgument("PiFormula '" + name_ + "': arctan argument must be nonzero");
    }
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<FormulaTerm>& terms() const noexcept { return terms_; }

  /// True once verify_formula has accepted the identity at >= 50 digits.
  bool verified() const noexcept { return verified_; }

  /// "16*arctan(1/5) - 4*arctan(1/239)"
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      if (i == 0) {
        s += (t.coefficient.sign() < 0 ? "-" : "");
      } else {
        s += (t.coefficient.sign() < 0 ? " - " : " + ");
      }
      s += t.coefficient.abs().to_string() + "*arctan(" + t.argument.to_string() + ")";
    }
    return s;
  }

 private:
  friend PiFormula mark_verified(PiFormula f, int digits);

  std::string name_;
  std::vector<FormulaTerm> terms_;
  bool verified_ = false;
};

inline constexpr int kMinVerifyDigits = 10;
inline constexpr int kVerifiedDigits = 50;

/// True iff |sum c_n reference_arctan(b_n) - pi| < 10^-(digits-1). Uses the
/// reference oracle only, never the series under test.
inline bool verify_formula(const PiFormula& f, int digits) {
  if (digits < kMinVerifyDigits) {
    throw InvalidArgument("verify_formula: digits must be >= " + std::to_string(kMinVerifyDigits));
  }
  const PrecisionContext ctx(digits);
  const mpfr_prec_t bits = ctx.working_bits();
  Real sum(bits);
  for (const auto& t : f.terms()) sum += Real(t.coefficient, bits) * reference_arctan(t.argument, ctx);
  const Real pi = pi_real(bits);
  return abs(sum - pi) < pow10(-(digits - 1), bits);
}

/// Returns `f` flagged as verified after checking it at `digits` >= 50.
inline PiFormula mark_verified(PiFormula f, int digits = kVerifiedDigits) {
  if (digits < kVerifiedDigits) throw InvalidArgument("mark_verified: needs >= 50 digits");
  if (!verify_formula(f, digits)) {
    throw InvalidArgument("formula '" + f.name() + "' is not an identity for pi at " + std::to_string(digits) +
                          " digits");
  }
  f.verified_ = true;
  return f;
}

/// The three built-in identities: pi = 4 arctan(1), Machin's
/// 16 arctan(1/5) - 4 arctan(1/239), and
/// 48 arctan(1/18) + 32 arctan(1/57) - 20 arctan(1/239).
inline const std::vector<PiFormula>& builtin_formulas() {
  static const std::vector<PiFormula> formulas = [] {
    auto q = [](long p, long den) { return BigRational::from_integers(p, den); };
    std::vector<PiFormula> out;
    out.push_back(mark_verified(PiFormula("direct", {{4, 1}})));
    out.push_back(mark_verified(PiFormula("machin", {{16, q(1, 5)}, {-4, q(1, 239)}})));
    out.push_back(mark_verified(PiFormula("three-term", {{48, q(1, 18)}, {32, q(1, 57)}, {-20, q(1, 239)}})));
    return out;
  }();
  return formulas;
}

inline const PiFormula& find_builtin_formula(const std::string& name) {
  for (const auto& f : builtin_formulas()) {
    if (f.name() == name) return f;
  }
  throw InvalidArgument("unknown formula '" + name + "'");
}

/// sum c_n arctan_approx(b_n, L) for a verified formula. Unverified formulas
/// are rejected unless `allow_unverified` is set.
inline ApproxValue pi_via_formula(const PiFormula& f, std::uint64_t L, const EvalMode& mode,
                                  bool allow_unverified = false) {
  if (!f.verified() && !allow_unverified) {
    throw InvalidArgument("pi_via_formula: formula '" + f.name() + "' has not been verified");
  }
  std::vector<ApproxValue> parts;
  parts.reserve(f.terms().size());
  for (const auto& t : f.terms()) parts.push_back(arctan_approx(SeriesParams(L, t.argument), mode));
  ApproxValue out = parts.front();
  out.series = "pi_formula:" + f.name();

  const auto& terms = f.terms();
  if (std::holds_alternative<ExactMode>(mode)) {
    BigRational sum(0);
    for (std::size_t i = 0; i < terms.size(); ++i) sum += terms[i].coefficient * parts[i].rational();
    out.value = sum;
  } else if (const auto* real = std::get_if<RealMode>(&mode)) {
    const mpfr_prec_t bits = real->ctx.working_bits();
    Real sum(bits);
    for (std::size_t i = 0; i < terms.size(); ++i) sum += Real(terms[i].coefficient, bits) * parts[i].to_real(bits);
    out.value = sum;
  } else {
    double sum = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      sum += terms[i].coefficient.to_double() * std::get<double>(parts[i].value);
    }
    out.value = sum;
  }
  return out;
}

}  // namespace arctanpi
