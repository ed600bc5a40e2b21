#pragma once

#include <cstdint>

#include "arctanpi/numerics/precision.hpp"
#include "arctanpi/numerics/real.hpp"
#include "arctanpi/numerics/reference.hpp"
#include "arctanpi/series/rational_series.hpp"

namespace arctanpi {

/// Gaussian-sum expansion of the error function truncated at L terms:
///   (2x / sqrt(pi)) (1/L) sum_{l=1..L} exp(-(l - 1/2)^2 x^2 / L^2).
/// Odd in x for every L.
inline Real erf_gauss_sum(const Real& x, std::uint64_t L, const PrecisionContext& ctx) {
  if (L < 1) throw InvalidArgument("erf_gauss_sum: L must be >= 1");
  if (!x.is_finite()) throw InvalidArgument("erf_gauss_sum: x must be finite");
  require_supported_digits(ctx.decimal_digits(), "erf_gauss_sum");
  const mpfr_prec_t out_bits = ctx.working_bits();
  if (x.is_zero()) return Real(out_bits);

  const mpfr_prec_t bits = out_bits + 16 + static_cast<mpfr_prec_t>(std::bit_width(L));
  const Real xr = x.with_precision(bits);
  const Real LL(detail::to_mpz(L), bits);
  // (l - 1/2)^2 x^2 / L^2 = (2l - 1)^2 x^2 / (4 L^2)
  const Real scale = (xr * xr) / (LL * LL * 4L);
  Real sum(bits);
  for (std::uint64_t l = 1; l <= L; ++l) {
    const Real m(detail::to_mpz(2 * l - 1), bits);
    sum += exp(-(scale * m * m));
  }
  const Real prefactor = xr.scaled_by_pow2(1) / (sqrt(pi_real(bits)) * LL);
  return (prefactor * sum).with_precision(out_bits);
}

}  // namespace arctanpi
