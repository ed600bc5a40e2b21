#!/usr/bin/env python3
"""Independent oracle for the frozen expected values used by the C++ tests.

Every truncated series is summed exactly with Python integers (binary
splitting of p/q pairs, no rounding anywhere) and rendered to decimal with
integer arithmetic. Transcendental targets come from mpmath at high
precision. Nothing here shares code with the C++ implementation.

Run:  python3 tests/oracles/freeze_values.py > tests/frozen_values.hpp
"""
from fractions import Fraction
import math

import mpmath

mpmath.mp.dps = 120
PI_DIGITS = mpmath.nstr(mpmath.pi, 110, strip_zeros=False).replace(".", "")[:100]
RENDER_DIGITS = 30


def tree_sum(pairs):
    """Exact sum of p/q pairs (q > 0) by balanced splitting."""
    def rec(lo, hi):
        if hi - lo == 1:
            return pairs[lo]
        mid = lo + (hi - lo) // 2
        a, b = rec(lo, mid), rec(mid, hi)
        return (a[0] * b[1] + b[0] * a[1], a[1] * b[1])
    p, q = rec(0, len(pairs))
    return Fraction(p, q)


def arctan_series(x, L):
    p, q = x.numerator, x.denominator
    return tree_sum([(4 * L * p * q, (2 * l - 1) ** 2 * p * p + 4 * L * L * q * q)
                     for l in range(1, L + 1)])


def pi_direct(L):
    return tree_sum([(16 * L, (2 * l - 1) ** 2 + 4 * L * L) for l in range(1, L + 1)])


def pi_asym(x, L):
    p, q = abs(x.numerator), x.denominator
    pairs = []
    for l in range(1, L + 1):
        a = (2 * l - 1) ** 2 * p * p + 4 * L * L * q * q
        b = (2 * l - 1) ** 2 * q * q + 4 * L * L * p * p
        pairs.append((8 * L * p * q * (a + b), a * b))
    return tree_sum(pairs)


def render(value, digits):
    """Round-half-even to `digits` significant digits; digit stream only."""
    assert value > 0
    e = 0
    while Fraction(10) ** e <= value:
        e += 1
    while Fraction(10) ** (e - 1) > value:
        e -= 1
    scaled = value * Fraction(10) ** (digits - e)
    n = scaled.numerator // scaled.denominator
    rem = scaled - n
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and n % 2 == 1):
        n += 1
    s = str(n)
    if len(s) > digits:
        s = s[:digits]
        e += 1
    if e <= 0:
        s = "0" * (1 - e) + s
    return s


def coinciding(value, digits=RENDER_DIGITS):
    s = render(value, digits)
    ref = PI_DIGITS[:digits]
    n = 0
    while n < min(len(s), len(ref)) and s[n] == ref[n]:
        n += 1
    return n


def abs_err(value):
    return abs(mpmath.mpf(value.numerator) / value.denominator - mpmath.pi)


def machin(L):
    return 16 * arctan_series(Fraction(1, 5), L) - 4 * arctan_series(Fraction(1, 239), L)


def three_term(L):
    return (48 * arctan_series(Fraction(1, 18), L) + 32 * arctan_series(Fraction(1, 57), L)
            - 20 * arctan_series(Fraction(1, 239), L))


def doubling_tol(f, L):
    return 2 * abs(f(2 * L) - f(L))


def sinc_mid(x, L):
    return mpmath.fsum(mpmath.cos((l - mpmath.mpf(1) / 2) * x / L) for l in range(1, L + 1)) / L


def sinc_trap(x, L):
    return ((1 + mpmath.cos(x)) / 2 + mpmath.fsum(mpmath.cos(l * x / L) for l in range(1, L))) / L


def sinc_simp(x, L):
    return 2 * sinc_mid(x, L) / 3 + sinc_trap(x, L) / 3


def erf_sum(x, L):
    s = mpmath.fsum(mpmath.exp(-((l - mpmath.mpf(1) / 2) ** 2) * x * x / (L * L))
                    for l in range(1, L + 1))
    return 2 * x / mpmath.sqrt(mpmath.pi) / L * s


def simpson(f, h, panels):
    total = mpmath.mpf(0)
    left = f(mpmath.mpf(0))
    for k in range(panels):
        a = k * h
        right = f(a + h)
        total += left + right + 4 * f(a + h / 2)
        left = right
    return total * h / 6


def arctan_quad(x, y, step, cutoff):
    x, y = mpmath.mpf(x.numerator) / x.denominator, mpmath.mpf(y.numerator) / y.denominator
    h = mpmath.mpf(step.numerator) / step.denominator
    panels = int(cutoff / step)
    return y * mpmath.sqrt(mpmath.pi) * simpson(lambda t: mpmath.exp(-y * y * t * t) * mpmath.erf(x * t), h, panels)


def halving(x, y, step, cutoff, agree):
    """Halve until two successive results agree to `agree`; return (step, tolerance)."""
    prev = arctan_quad(x, y, step, cutoff)
    while True:
        step /= 2
        cur = arctan_quad(x, y, step, cutoff)
        if abs(cur - prev) < agree:
            return step, 2 * abs(cur - prev)
        prev = cur


def g(v):
    """Round a positive tolerance up to two significant digits."""
    v = float(v)
    if v == 0.0:
        return "0.0"
    e = math.floor(math.log10(v)) - 1
    m = math.ceil(v / 10 ** e)
    return f"{m}e{e}"


def main():
    out = []
    emit = out.append
    emit("// Generated by tests/oracles/freeze_values.py. Do not edit by hand.")
    emit("#pragma once\n")
    emit("#include <cstdint>\n")
    emit("namespace arctanpi::frozen {\n")
    emit(f"inline constexpr int kRenderDigits = {RENDER_DIGITS};\n")

    # Direct formula and the x = 1 convergence study.
    errs = {}
    for L in (10, 100, 1000, 10000):
        v = pi_direct(L)
        errs[L] = abs_err(v)
        emit(f"inline constexpr int kDirectCoinciding_L{L} = {coinciding(v)};")
        emit(f"inline constexpr double kDirectAbsError_L{L} = {mpmath.nstr(errs[L], 17)};")
    p_hi = mpmath.log(errs[1000] / errs[10000]) / mpmath.log(10)
    p_lo = mpmath.log(errs[100] / errs[1000]) / mpmath.log(10)
    emit(f"inline constexpr double kOrder_1e2_1e3 = {mpmath.nstr(p_lo, 17)};")
    emit(f"inline constexpr double kOrder_1e3_1e4 = {mpmath.nstr(p_hi, 17)};\n")

    # Machin-type formulas.
    for L in (100, 1000):
        emit(f"inline constexpr int kMachinCoinciding_L{L} = {coinciding(machin(L))};")
        emit(f"inline constexpr int kThreeTermCoinciding_L{L} = {coinciding(three_term(L))};")
    emit("")

    # Optimal-x scan over {1, 1/10, 1/100, 1/10^6}.
    grid = [Fraction(1), Fraction(1, 10), Fraction(1, 100), Fraction(1, 10**6)]
    names = ["1", "1e_1", "1e_2", "1e_6"]
    for L in (100, 10000):
        best, best_c = None, -1
        for x, name in zip(grid, names):
            c = coinciding(pi_asym(x, L))
            emit(f"inline constexpr int kScanCoinciding_L{L}_x{name} = {c};")
            if c > best_c or (c == best_c and x < best):
                best, best_c = x, c
        emit(f"inline constexpr std::int64_t kScanBestDen_L{L} = {best.denominator};")
    emit("")

    emit(f"inline constexpr int kAsymCoinciding_L10000_x1_100 = "
         f"{coinciding(pi_asym(Fraction(1, 100), 10000))};")

    a = arctan_series(Fraction(1), 10000)
    err = mpmath.atan(1) - mpmath.mpf(a.numerator) / a.denominator
    emit(f"inline constexpr double kArctan1_L10000_Error = {mpmath.nstr(err, 17)};")

    c = -arctan_series(Fraction(1, 2), 1000)
    err = abs(mpmath.mpf(c.numerator) / c.denominator - (mpmath.atan(2) - mpmath.pi / 2))
    emit(f"inline constexpr double kCounterpart2_L1000_Tol = {g(err)};")
    c = -arctan_series(Fraction(1, 2), 100)
    err = abs(mpmath.mpf(c.numerator) / c.denominator - (mpmath.atan(2) - mpmath.pi / 2))
    emit(f"inline constexpr double kCounterpart2_L100_Tol = {g(err)};\n")

    # L-doubling tolerances.
    one = mpmath.mpf(1)
    emit(f"inline constexpr double kErfTol_x1_L1000 = {g(doubling_tol(lambda L: erf_sum(one, L), 1000))};")
    for label, x in (("pi_4", mpmath.pi / 4), ("pi_2", mpmath.pi / 2), ("pi", mpmath.pi)):
        for rule, f in (("Midpoint", sinc_mid), ("Trapezoid", sinc_trap), ("Simpson", sinc_simp)):
            for L in (100, 200):
                tol = doubling_tol(lambda n: f(x, n), L)
                emit(f"inline constexpr double kSinc{rule}Tol_{label}_L{L} = {g(tol)};")
    emit("")

    # Step-halving tolerances for the integral cross-check (cutoff 6, start step 1/2).
    mpmath.mp.dps = 40
    for name, x, y in (("1_1", Fraction(1), Fraction(1)), ("1_4_1", Fraction(1, 4), Fraction(1)),
                       ("2_1", Fraction(2), Fraction(1)), ("2_3", Fraction(2), Fraction(3))):
        step, tol = halving(x, y, Fraction(1, 2), Fraction(6), mpmath.mpf("1e-10"))
        emit(f"inline constexpr std::int64_t kQuadStepDen_{name} = {step.denominator};")
        emit(f"inline constexpr double kQuadTol_{name} = {g(tol)};")
    mpmath.mp.dps = 120
    emit("")

    # Summation oracles.
    tenth = Fraction(0.1)
    emit(f"inline constexpr double kMillionTenths = {float(tenth * 10**6)!r};")
    emit("\n}  // namespace arctanpi::frozen")
    print("\n".join(out))


if __name__ == "__main__":
    main()
