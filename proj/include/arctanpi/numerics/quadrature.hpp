#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "arctanpi/numerics/big_rational.hpp"
#include "arctanpi/numerics/precision.hpp"
#include "arctanpi/numerics/real.hpp"
#include "arctanpi/numerics/reference.hpp"

// Quadrature cross-checks for the integral identities behind the series:
//   integral_0^inf exp(-y^2 t^2) erf(x t) dt = arctan(x / y) / (y sqrt(pi))
//   erf(x) = (2x / pi) integral_0^inf exp(-t^2 / 4) sinc(x t) dt
// The integrals are truncated at an explicit cutoff and evaluated with
// composite Simpson panels. The integrand uses MPFR's erf, not the
// Maclaurin oracle, so the two stay independent.

namespace arctanpi {

namespace detail {

/// Number of panels cutoff / step; throws unless it is a positive integer.
inline std::uint64_t panel_count(const BigRational& step, const BigRational& cutoff) {
  if (step.sign() <= 0 || cutoff.sign() <= 0) throw InvalidArgument("quadrature: step and cutoff must be positive");
  const BigRational ratio = cutoff / step;
  if (!ratio.is_integer()) throw InvalidArgument("quadrature: step must divide cutoff");
  const mpz_class n = ratio.numerator();
  if (!n.fits_ulong_p() || n > 50000000) throw InvalidArgument("quadrature: too many panels");
  return n.get_ui();
}

/// Composite Simpson over [0, panels * step] with one midpoint per panel.
inline Real simpson(const std::function<Real(const Real&)>& f, const BigRational& step, std::uint64_t panels,
                    mpfr_prec_t bits) {
  const Real h(step, bits);
  const Real half_h = h.scaled_by_pow2(-1);
  Real ends(bits);
  Real mids(bits);
  Real left = f(Real(bits));
  for (std::uint64_t k = 0; k < panels; ++k) {
    const Real a = h * static_cast<long>(k);
    const Real right = f(a + h);
    ends += left + right;
    mids += f(a + half_h);
    left = right;
  }
  return (ends + mids * 4L) * h / 6L;
}

inline void require_gaussian_cutoff(const Real& decay_exponent, const PrecisionContext& ctx) {
  // exp(-decay_exponent) < 10^-digits
  if (decay_exponent.to_double() <= ctx.decimal_digits() * 2.302585092994046) {
    throw InvalidArgument("quadrature: cutoff too small for " + std::to_string(ctx.decimal_digits()) +
                          " digits; the Gaussian tail is not negligible");
  }
}

}  // namespace detail

/// y sqrt(pi) times the truncated integral of exp(-y^2 t^2) erf(x t) over
/// [0, cutoff]; approximates arctan(x / y).
inline Real arctan_via_quadrature(const BigRational& x, const BigRational& y, const BigRational& step,
                                  const BigRational& cutoff, const PrecisionContext& ctx) {
  if (y.sign() <= 0) throw InvalidArgument("arctan_via_quadrature: y must be positive");
  const std::uint64_t panels = detail::panel_count(step, cutoff);
  const mpfr_prec_t bits = ctx.working_bits() + 16;
  const Real yr(y, bits);
  const Real c(cutoff, bits);
  detail::require_gaussian_cutoff(yr * yr * c * c, ctx);
  if (x.is_zero()) return Real(ctx.working_bits());

  const Real xr(x, bits);
  const Real y2 = yr * yr;
  auto integrand = [&](const Real& t) { return exp(-(y2 * t * t)) * library_erf(xr * t); };
  const Real integral = detail::simpson(integrand, step, panels, bits);
  return (yr * sqrt(pi_real(bits)) * integral).with_precision(ctx.working_bits());
}

/// (2x / pi) times the truncated integral of exp(-t^2 / 4) sinc(x t) over
/// [0, cutoff]; approximates erf(x).
inline Real erf_via_quadrature(const BigRational& x, const BigRational& step, const BigRational& cutoff,
                               const PrecisionContext& ctx) {
  const std::uint64_t panels = detail::panel_count(step, cutoff);
  const mpfr_prec_t bits = ctx.working_bits() + 16;
  const Real c(cutoff, bits);
  detail::require_gaussian_cutoff((c * c).scaled_by_pow2(-2), ctx);
  if (x.is_zero()) return Real(ctx.working_bits());

  const Real xr(x, bits);
  auto integrand = [&](const Real& t) {
    const Real xt = xr * t;
    const Real sinc = xt.is_zero() ? Real(1L, bits) : sin(xt) / xt;
    return exp(-(t * t).scaled_by_pow2(-2)) * sinc;
  };
  const Real integral = detail::simpson(integrand, step, panels, bits);
  return (xr.scaled_by_pow2(1) / pi_real(bits) * integral).with_precision(ctx.working_bits());
}

/// Result of refining a quadrature by repeated step halving.
struct HalvingResult {
  Real value;
  BigRational step;
  double last_difference = 0.0;  // |R(step) - R(2 step)|
};

/// Halves the step, starting from `initial_step`, until two successive
/// results agree to `tolerance`.
inline HalvingResult refine_by_halving(const std::function<Real(const BigRational&)>& rule,
                                       BigRational initial_step, double tolerance, int max_halvings = 24) {
  Real previous = rule(initial_step);
  BigRational step = std::move(initial_step);
  for (int i = 0; i < max_halvings; ++i) {
    step /= 2;
    Real current = rule(step);
    const double diff = abs(current - previous).to_double();
    if (diff < tolerance) return HalvingResult{std::move(current), step, diff};
    previous = std::move(current);
  }
  throw PrecisionError("quadrature: step halving did not reach tolerance");
}

}  // namespace arctanpi
