#pragma once

#include <cmath>
#include <cstdint>
#include <type_traits>

#include "arctanpi/numerics/precision.hpp"
#include "arctanpi/numerics/real.hpp"

// Cosine expansions of sinc(x) = sin(x)/x from quadrature of
// integral_0^1 cos(x u) du with L panels. Each function is a template over
// the scalar type: double for binary64, Real for high precision.

namespace arctanpi {

namespace detail {

inline double cos_of(double v) { return std::cos(v); }
inline Real cos_of(const Real& v) { return cos(v); }

template <class T>
T constant_like(const T& like, long value) {
  if constexpr (std::is_same_v<T, Real>) {
    return Real(value, like.precision());
  } else {
    return static_cast<T>(value);
  }
}

/// sum_{l=1..L} cos((l - 1/2) x / L)
template <class T>
T midpoint_cosines(const T& x, std::uint64_t L) {
  T sum = constant_like(x, 0);
  const T step = x / constant_like(x, static_cast<long>(2 * L));
  for (std::uint64_t l = 1; l <= L; ++l) sum += cos_of(step * constant_like(x, static_cast<long>(2 * l - 1)));
  return sum;
}

/// sum_{l=1..L-1} cos(l x / L)
template <class T>
T interior_cosines(const T& x, std::uint64_t L) {
  T sum = constant_like(x, 0);
  const T step = x / constant_like(x, static_cast<long>(L));
  for (std::uint64_t l = 1; l < L; ++l) sum += cos_of(step * constant_like(x, static_cast<long>(l)));
  return sum;
}

inline void require_order(std::uint64_t L) {
  if (L < 1) throw InvalidArgument("sinc: L must be >= 1");
}

}  // namespace detail

/// Midpoint rule: (1/L) sum_{l=1..L} cos((l - 1/2) x / L).
template <class T>
T sinc_midpoint(const T& x, std::uint64_t L) {
  detail::require_order(L);
  return detail::midpoint_cosines(x, L) / detail::constant_like(x, static_cast<long>(L));
}

/// Trapezoidal rule: (1/L) [(1 + cos x)/2 + sum_{l=1..L-1} cos(l x / L)].
template <class T>
T sinc_trapezoid(const T& x, std::uint64_t L) {
  detail::require_order(L);
  const T one = detail::constant_like(x, 1);
  const T ends = (one + detail::cos_of(x)) / detail::constant_like(x, 2);
  return (ends + detail::interior_cosines(x, L)) / detail::constant_like(x, static_cast<long>(L));
}

/// Simpson's rule:
///   (1/(6L)) [1 + cos x + 4 sum cos((l - 1/2) x / L) + 2 sum_{l<L} cos(l x / L)],
/// algebraically (2/3) sinc_midpoint + (1/3) sinc_trapezoid.
template <class T>
T sinc_simpson(const T& x, std::uint64_t L) {
  detail::require_order(L);
  const T one = detail::constant_like(x, 1);
  const T inner = one + detail::cos_of(x) + detail::constant_like(x, 4) * detail::midpoint_cosines(x, L) +
                  detail::constant_like(x, 2) * detail::interior_cosines(x, L);
  return inner / detail::constant_like(x, static_cast<long>(6 * L));
}

/// sin(x)/x with sinc(0) = 1.
inline double sinc_exact(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace arctanpi
