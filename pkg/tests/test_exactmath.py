import math
from fractions import Fraction

import pytest

from pcfcolor.errors import ParameterError
from pcfcolor.exactmath import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    as_fraction,
    ceil_fraction,
    ceil_plus_sqrt,
    e_power_bounds,
    floor_rational_power,
    leq_verdict,
    mpf_to_fraction,
)


def test_as_fraction_forms():
    assert as_fraction("0.32754") == Fraction(32754, 100000)
    assert as_fraction("2/3") == Fraction(2, 3)
    assert as_fraction(5) == 5
    assert as_fraction(0.5) == Fraction(1, 2)  # exact binary value
    with pytest.raises(ParameterError):
        as_fraction(float("inf"))
    with pytest.raises(ParameterError):
        as_fraction(object())


def test_ceil_fraction():
    assert ceil_fraction(Fraction(7, 2)) == 4
    assert ceil_fraction(Fraction(-7, 2)) == -3
    assert ceil_fraction(Fraction(4)) == 4


def test_ceil_plus_sqrt():
    # ceil(750 + 600 + sqrt(750)) = 1378
    assert ceil_plus_sqrt(1350, 1, 750) == 1378
    assert ceil_plus_sqrt(0, 1, 2) == 2
    assert ceil_plus_sqrt(Fraction(1, 2), 0, 99) == 1
    assert ceil_plus_sqrt(1, 2, 4) == 5  # exact integer sqrt, already attained
    # brute-check a small grid against floats with a safety window
    for q in range(0, 8):
        for m in range(0, 30):
            got = ceil_plus_sqrt(q, 1, m)
            assert got == math.ceil(q + math.isqrt(m)) or got == math.ceil(q + math.sqrt(m))
    with pytest.raises(ParameterError):
        ceil_plus_sqrt(1, -1, 4)


def test_floor_rational_power():
    assert floor_rational_power(600, 19, 20) == 435
    assert floor_rational_power(2, 3, 1) == 8
    assert floor_rational_power(10, 1, 2) == 3
    assert floor_rational_power(1, 7, 3) == 1
    with pytest.raises(ParameterError):
        floor_rational_power(0, 1, 2)


def test_leq_verdict():
    one = Fraction(1)
    assert leq_verdict(Fraction(1, 2), one, one) == PASS
    assert leq_verdict(Fraction(2), one, one) == FAIL
    # inside the relative margin: refuse to certify
    eps = Fraction(1, 10**12)
    assert leq_verdict(one - eps, one, one) == INCONCLUSIVE
    assert leq_verdict(one + eps, one, one) == INCONCLUSIVE
    with pytest.raises(ParameterError):
        leq_verdict(one, Fraction(2), Fraction(1))


def test_e_power_bounds():
    lo, hi = e_power_bounds(1)
    assert lo <= hi
    assert Fraction(2718281828, 10**9) < lo and hi < Fraction(2718281829, 10**9)
    assert e_power_bounds(0) == (Fraction(1), Fraction(1))
    lo4, hi4 = e_power_bounds(4)
    assert Fraction("54.59815003") < lo4 and hi4 < Fraction("54.59815004")
    assert (hi4 - lo4) / lo4 < Fraction(1, 10**20)
    with pytest.raises(ParameterError):
        e_power_bounds(-1)


def test_mpf_to_fraction():
    import mpmath

    assert mpf_to_fraction(mpmath.mpf("0.25")) == Fraction(1, 4)
    assert mpf_to_fraction(mpmath.mpf(-3)) == -3
    with pytest.raises(ParameterError):
        mpf_to_fraction(mpmath.inf)
