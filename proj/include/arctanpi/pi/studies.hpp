#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arctanpi/numerics/digits.hpp"
#include "arctanpi/numerics/reference.hpp"
#include "arctanpi/pi/pi_series.hpp"

namespace arctanpi {

/// Common leading digits of `value` (rounded half-even to ctx digits) and
/// the reference digits of pi.
inline std::size_t coinciding_digits(const ApproxValue& value, const PrecisionContext& ctx) {
  return digit_coincidence(value.digits(ctx.decimal_digits()), reference_pi(ctx));
}

/// |value - pi| at ctx working precision.
inline Real pi_abs_error(const ApproxValue& value, const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.working_bits();
  return abs(value.to_real(bits) - pi_real(bits));
}

struct ConvergenceRecord {
  std::uint64_t L = 0;
  BigRational x;
  DigitString value;
  std::size_t coinciding = 0;
  Real abs_error;

  /// Recomputes the coincidence count from the stored digits.
  std::size_t recount(const PrecisionContext& ctx) const { return digit_coincidence(value, reference_pi(ctx)); }
};

struct ConvergenceStudy {
  std::vector<ConvergenceRecord> records;
  /// orders[i] = log(err_i / err_{i+1}) / log(L_{i+1} / L_i); one fewer than records.
  std::vector<double> orders;
};

namespace detail {

inline void require_digit_mode(const EvalMode& mode, const char* what) {
  if (std::holds_alternative<Binary64Mode>(mode)) {
    throw InvalidArgument(std::string(what) + ": digit counting needs exact or real mode, not binary64");
  }
}

inline ConvergenceRecord make_record(const BigRational& x, std::uint64_t L, const EvalMode& mode,
                                     const PrecisionContext& ctx) {
  const ApproxValue v = pi_asymptotic(x, L, mode);
  ConvergenceRecord r{L, x, v.digits(ctx.decimal_digits()), 0, pi_abs_error(v, ctx)};
  r.coinciding = digit_coincidence(r.value, reference_pi(ctx));
  return r;
}

}  // namespace detail

/// Empirical order p from errors at two truncation orders.
inline double empirical_order(const Real& err_a, std::uint64_t L_a, const Real& err_b, std::uint64_t L_b) {
  const mpfr_prec_t bits = std::max(err_a.precision(), err_b.precision());
  const Real ratio = log(err_a / err_b);
  const Real span = log(Real(detail::to_mpz(L_b), bits) / Real(detail::to_mpz(L_a), bits));
  return (ratio / span).to_double();
}

/// One record per L of pi_asymptotic(x, L), plus empirical orders between
/// consecutive L values.
inline ConvergenceStudy convergence_study(const BigRational& x, std::span<const std::uint64_t> Ls,
                                          const EvalMode& mode, const PrecisionContext& ctx) {
  detail::require_digit_mode(mode, "convergence_study");
  if (Ls.empty()) throw InvalidArgument("convergence_study: needs at least one L");
  for (std::size_t i = 1; i < Ls.size(); ++i) {
    if (Ls[i] <= Ls[i - 1]) throw InvalidArgument("convergence_study: L values must be strictly ascending");
  }
  ConvergenceStudy study;
  for (const auto L : Ls) study.records.push_back(detail::make_record(x, L, mode, ctx));
  for (std::size_t i = 0; i + 1 < study.records.size(); ++i) {
    const auto& a = study.records[i];
    const auto& b = study.records[i + 1];
    if (a.abs_error.is_zero() || b.abs_error.is_zero()) {
      study.orders.push_back(std::nan(""));
    } else {
      study.orders.push_back(empirical_order(a.abs_error, a.L, b.abs_error, b.L));
    }
  }
  return study;
}

struct OptimalXScan {
  BigRational best_x;
  std::vector<ConvergenceRecord> records;
};

/// Evaluates pi_asymptotic at every candidate and returns the one with the
/// most coinciding digits; ties go to the smallest |x|, then to input order.
/// No claim of global optimality.
inline OptimalXScan optimal_x_scan(std::uint64_t L, std::span<const BigRational> xs, const EvalMode& mode,
                                   const PrecisionContext& ctx) {
  detail::require_digit_mode(mode, "optimal_x_scan");
  if (xs.size() < 2) throw InvalidArgument("optimal_x_scan: needs at least two candidates");
  for (const auto& x : xs) {
    if (x.is_zero()) throw InvalidArgument("optimal_x_scan: candidates must be nonzero");
  }
  OptimalXScan scan;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    scan.records.push_back(detail::make_record(xs[i], L, mode, ctx));
    const auto& r = scan.records.back();
    if (!best) {
      best = i;
      continue;
    }
    const auto& b = scan.records[*best];
    if (r.coinciding > b.coinciding || (r.coinciding == b.coinciding && xs[i].abs() < xs[*best].abs())) best = i;
  }
  scan.best_x = xs[*best];
  return scan;
}

}  // namespace arctanpi
