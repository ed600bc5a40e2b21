#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arctanpi/numerics/reference.hpp"
#include "arctanpi/series/rational_series.hpp"

namespace arctanpi {

struct ErrorPoint {
  BigRational x;
  Real epsilon;  // arctan(x) - arctan_approx(x, L)
};

/// epsilon(x) = arctan(x) - arctan_approx(x, L) for each x, in input order,
/// with the series evaluated in real mode at ctx precision.
inline std::vector<ErrorPoint> error_curve(std::uint64_t L, std::span<const BigRational> xs,
                                           const PrecisionContext& ctx) {
  std::vector<ErrorPoint> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    const Real approx = arctan_approx(SeriesParams(L, x), RealMode{ctx}).to_real(ctx.working_bits());
    out.push_back(ErrorPoint{x, reference_arctan(x, ctx) - approx});
  }
  return out;
}

}  // namespace arctanpi
