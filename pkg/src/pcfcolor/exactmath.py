"""Exact arithmetic helpers shared by the bound and verification modules.

Comparisons against irrational right-hand sides are never done in floating
point: ceilings of q + k*sqrt(m) are certified by squaring, and bounds that
involve transcendental constants are evaluated as mpmath interval enclosures
whose endpoints are converted back to exact rationals before comparing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp

from .errors import ParameterError

Rational = Union[int, Fraction]

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

#: relative margin inside which a transcendental comparison refuses to certify
REL_MARGIN = Fraction(1, 10**9)


def as_fraction(x) -> Fraction:
    """Coerce x to an exact Fraction.

    Strings are parsed as exact decimals or "p/q"; floats convert to their
    exact binary value (pass strings when a decimal constant is meant).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ParameterError(f"non-finite value {x!r}")
        return Fraction(x)
    raise ParameterError(f"cannot interpret {x!r} as a rational")


def mpf_to_fraction(x) -> Fraction:
    """Exact value of an mpmath mpf (binary float of arbitrary precision)."""
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0 and exp != 0:
        raise ParameterError("cannot convert non-finite mpf")
    v = Fraction(man, 1) * (Fraction(2) ** exp)
    return -v if sign else v


def fraction_to_mpf(q: Fraction):
    return mp.mpf(q.numerator) / mp.mpf(q.denominator)


def iv_to_fractions(x) -> tuple[Fraction, Fraction]:
    """Endpoints of an mpmath interval as exact rationals."""
    return mpf_to_fraction(x.a), mpf_to_fraction(x.b)


def ceil_fraction(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def ceil_plus_sqrt(q: Rational, coeff: Rational, radicand: Rational) -> int:
    """Exact ceil(q + coeff*sqrt(radicand)) for rationals, coeff, radicand >= 0.

    n >= q + k*sqrt(m)  <=>  n - q >= 0 and (n - q)^2 >= k^2 * m,
    so the ceiling is found by an exact rational comparison near a float guess.
    """
    q = as_fraction(q)
    k = as_fraction(coeff)
    m = as_fraction(radicand)
    if k < 0 or m < 0:
        raise ParameterError("ceil_plus_sqrt needs coeff >= 0 and radicand >= 0")
    if k == 0 or m == 0:
        return ceil_fraction(q)
    k2m = k * k * m
    n = math.floor(float(q) + float(k) * math.sqrt(float(m))) - 2
    while True:
        diff = n - q
        if diff >= 0 and diff * diff >= k2m:
            return n
        n += 1


def floor_rational_power(base: int, num: int, den: int) -> int:
    """Exact floor(base**(num/den)) for positive integers."""
    if base < 1 or num < 0 or den < 1:
        raise ParameterError("floor_rational_power needs base >= 1, num >= 0, den >= 1")
    target = base**num
    m = int(round(base ** (num / den)))
    m = max(m, 0)
    while (m + 1) ** den <= target:
        m += 1
    while m > 0 and m**den > target:
        m -= 1
    return m


def leq_verdict(lhs: Fraction, rhs_lo: Fraction, rhs_hi: Fraction,
                margin: Fraction = REL_MARGIN) -> str:
    """Directed verdict for "lhs <= rhs" given an enclosure [rhs_lo, rhs_hi].

    Within the relative margin the verdict is inconclusive, never a pass.
    """
    if rhs_lo > rhs_hi:
        raise ParameterError("invalid enclosure")
    slack = margin * abs(rhs_lo)
    if lhs <= rhs_lo - slack:
        return PASS
    if lhs > rhs_hi + margin * abs(rhs_hi):
        return FAIL
    return INCONCLUSIVE


def e_power_bounds(exponent: int, prec: int = 128) -> tuple[Fraction, Fraction]:
    """Directed rational bounds on e**exponent (exponent a nonnegative integer)."""
    if exponent < 0:
        raise ParameterError("exponent must be >= 0")
    if exponent == 0:
        return Fraction(1), Fraction(1)
    old = mpmath.iv.prec
    try:
        mpmath.iv.prec = prec + 4 * exponent.bit_length()
        enc = mpmath.iv.e ** exponent
        lo, hi = iv_to_fractions(enc)
    finally:
        mpmath.iv.prec = old
    return lo, hi
