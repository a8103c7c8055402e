"""Verification of the two-variable maximization behind the partition-term
bound, plus the small calculus facts used by the fractional rounding step.

The target function f(x, y) on 0 < x < 0.5, max(3x-1, 0) < y < x is shown
to stay below 0.7524. After the substitution s = 1-2x, t = x-y it becomes
g(s, t) on Omega = {0 < s < 1, 0 < t < min(s, (1-s)/2)}, whose unique
critical point (s0, t0) is located through the root r0 of

    h(r) = (r+2)(r-1)^3 e^r + 6e r(r-2),        r = s/t.

Everything that feeds a verdict is evaluated either with interval
arithmetic (brackets, the certified maximum) or in log-space at >= 64
fractional bits (point evaluations); verdicts inside the 1e-6 margin of
0.7524 report "inconclusive" rather than "pass".
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import ParameterError
from .exactmath import (FAIL, INCONCLUSIVE, PASS, as_fraction,
                        iv_to_fractions, mpf_to_fraction)

#: the claimed strict upper bound on f and g
TARGET = 0.7524
#: verdict margin for comparisons against TARGET
TARGET_MARGIN = 1e-6

_PREC = 96  # working precision in bits for point evaluations


def in_xy_domain(x: float, y: float) -> bool:
    return 0 < x < 0.5 and max(3 * x - 1, 0) < y < x


def in_st_domain(s: float, t: float) -> bool:
    return 0 < s < 1 and 0 < t < min(s, (1 - s) / 2)


def summand_base_xy(x: float, y: float) -> float:
    """f(x,y) = ((x-y)/(1-3x+y)) * ((1-3x+y)/(e(x-y)^2))^(2x-y)
                * ((1-3x+y)/6)^(x-y) * ((1-3x+y)/(2y))^y, in log-space."""
    if not in_xy_domain(x, y):
        raise ParameterError(f"(x={x}, y={y}) outside 0<x<0.5, max(3x-1,0)<y<x")
    with mpmath.workprec(_PREC):
        xm, ym = mpmath.mpf(x), mpmath.mpf(y)
        w = 1 - 3 * xm + ym
        d = xm - ym
        log_f = (mpmath.log(d) - mpmath.log(w)
                 + (2 * xm - ym) * (mpmath.log(w) - 1 - 2 * mpmath.log(d))
                 + d * (mpmath.log(w) - mpmath.log(6))
                 + ym * (mpmath.log(w) - mpmath.log(2 * ym)))
        return float(mpmath.exp(log_f))


def _log_g_ctx(s, t, ctx):
    """log g(s,t) under an mpmath context (mp or iv); no domain check."""
    u = (1 - s) / 2 - t
    log2e = ctx.log(2 * ctx.e)
    log3e = ctx.log(3 * ctx.e)
    return (-(s - t) * ctx.log(s - t) + (s - 1) * log2e / 2 + s * ctx.log(t)
            - t * log3e - 2 * t * ctx.log(t) - u * ctx.log(u))


def summand_base_st(s: float, t: float) -> float:
    """g(s,t) = (s-t)^-(s-t) / sqrt(2e) * (sqrt(2e) t)^s * (3e t^2)^-t
                * u^-u with u = (1-s)/2 - t, in log-space."""
    if not in_st_domain(s, t):
        raise ParameterError(f"(s={s}, t={t}) outside 0<s<1, 0<t<min(s,(1-s)/2)")
    with mpmath.workprec(_PREC):
        return float(mpmath.exp(_log_g_ctx(mpmath.mpf(s), mpmath.mpf(t), mpmath.mp)))


def grad_log_g(s: float, t: float) -> tuple[float, float]:
    """Closed-form (d/ds, d/dt) of log g."""
    if not in_st_domain(s, t):
        raise ParameterError(f"(s={s}, t={t}) outside the substituted domain")
    u = (1 - s) / 2 - t
    gs = -math.log(s - t) + math.log(2) / 2 + math.log(t) + math.log(u) / 2
    gt = (math.log(s - t) + s / t - math.log(3 * math.e)
          - 2 * math.log(t) + math.log(u))
    return gs, gt


def hessian_log_g(s, t):
    """Closed-form second partials of log g as a symmetric 2x2 (exact when
    s, t are rational): (g_ss, g_st, g_tt)."""
    ss = as_fraction(s)
    tt = as_fraction(t)
    g_ss = -1 / (ss - tt) - Fraction(1, 2) / (1 - ss - 2 * tt)
    g_st = 1 / (ss - tt) + 1 / tt - 1 / (1 - ss - 2 * tt)
    g_tt = -1 / (ss - tt) - ss / tt**2 - 2 / tt - 2 / (1 - ss - 2 * tt)
    return g_ss, g_st, g_tt


def hessian_negdef(s: float, t: float) -> bool:
    """Negative definiteness of the Hessian of log g at (s,t), exactly."""
    if not in_st_domain(s, t):
        raise ParameterError(f"(s={s}, t={t}) outside the substituted domain")
    g_ss, g_st, g_tt = hessian_log_g(s, t)
    return g_ss < 0 and g_ss * g_tt - g_st * g_st > 0


def critical_poly(r: float) -> float:
    """h(r) = (r+2)(r-1)^3 e^r + 6e r(r-2); h is increasing for r > 1."""
    if r <= 1:
        raise ParameterError(f"critical_poly needs r > 1, got {r}")
    with mpmath.workprec(_PREC):
        rm = mpmath.mpf(r)
        return float((rm + 2) * (rm - 1) ** 3 * mpmath.exp(rm)
                     + 6 * mpmath.e * rm * (rm - 2))


def _h_sign(r: Fraction, prec: int) -> int:
    # sign of h at an exact rational point, 0 when the enclosure straddles 0
    old = mpmath.iv.prec
    try:
        mpmath.iv.prec = prec
        rm = mpmath.iv.mpf(r.numerator) / r.denominator
        val = ((rm + 2) * (rm - 1) ** 3 * mpmath.iv.exp(rm)
               + 6 * mpmath.iv.e * rm * (rm - 2))
        lo, hi = iv_to_fractions(val)
    finally:
        mpmath.iv.prec = old
    if hi < 0:
        return -1
    if lo > 0:
        return 1
    return 0


@dataclass(frozen=True)
class CriticalPoint:
    """Certified brackets for the critical point and the maximum of log g."""

    r0: tuple[Fraction, Fraction]
    t0: tuple[Fraction, Fraction]
    s0: tuple[Fraction, Fraction]
    log_g_hi: Fraction
    log_g_lo: Fraction

    @property
    def g_max_hi(self) -> float:
        return math.exp(float(self.log_g_hi))


def find_critical(width: Fraction = Fraction(1, 10**8)) -> CriticalPoint:
    """Bisect h over [1.5, 2] to the requested bracket width, then push the
    r-bracket through t = r(2-r)/(r+2), s = r t with interval arithmetic and
    enclose log g over the resulting box.

    The upper endpoint log_g_hi is a certified bound on log g(s0, t0).
    """
    lo, hi = Fraction(3, 2), Fraction(2)
    sign_lo = _h_sign(lo, 128)
    sign_hi = _h_sign(hi, 128)
    if not (sign_lo < 0 < sign_hi):
        raise ParameterError("bisection bracket [1.5, 2] does not straddle the root")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = 0
        prec = 128
        while s == 0 and prec <= 2048:
            s = _h_sign(mid, prec)
            prec *= 2
        if s == 0:
            # mid is (numerically) the root itself; nudge the cut point
            mid = lo + (hi - lo) * Fraction(9, 19)
            s = _h_sign(mid, 2048)
            if s == 0:
                raise ParameterError("cannot resolve the sign of h at the cut point")
        if s < 0:
            lo = mid
        else:
            hi = mid
    old = mpmath.iv.prec
    try:
        mpmath.iv.prec = 256
        r = mpmath.iv.mpf([mpmath.mpf(lo.numerator) / lo.denominator,
                           mpmath.mpf(hi.numerator) / hi.denominator])
        t = r * (2 - r) / (r + 2)
        s = r * t
        box_log = _log_g_ctx(s, t, mpmath.iv)
        t_lo, t_hi = iv_to_fractions(t)
        s_lo, s_hi = iv_to_fractions(s)
        lg_lo, lg_hi = iv_to_fractions(box_log)
    finally:
        mpmath.iv.prec = old
    return CriticalPoint((lo, hi), (t_lo, t_hi), (s_lo, s_hi), lg_hi, lg_lo)


def bound_verdict(value: float, threshold: float = TARGET,
                  margin: float = TARGET_MARGIN) -> str:
    """pass / fail / inconclusive for value < threshold with a safety margin."""
    if value <= threshold - margin:
        return PASS
    if value >= threshold:
        return FAIL
    return INCONCLUSIVE


def _log_g_grid(s: np.ndarray, t: np.ndarray) -> np.ndarray:
    u = (1 - s) / 2 - t
    d = s - t
    log2e = math.log(2 * math.e)
    return (-d * np.log(d) + (s - 1) * log2e / 2 + s * np.log(t)
            - t * math.log(3 * math.e) - 2 * t * np.log(t) - u * np.log(u))


def _grid_chunk(args) -> tuple[float, float, float]:
    s_values, step, inset = args
    best = (-math.inf, 0.0, 0.0)
    for s in s_values:
        t_max = min(s, (1 - s) / 2) - inset
        if t_max <= inset:
            continue
        t = np.arange(inset, t_max, step)
        if not len(t):
            continue
        vals = _log_g_grid(np.full_like(t, s), t)
        k = int(np.argmax(vals))
        if vals[k] > best[0]:
            best = (float(vals[k]), float(s), float(t[k]))
    return best


def _golden_refine(s: float, t: float, radius: float, rounds: int) -> tuple[float, float, float]:
    # coordinate-wise golden-section polish inside the best grid cell
    phi = (math.sqrt(5) - 1) / 2
    best_s, best_t = s, t
    for _ in range(rounds):
        for axis in (0, 1):
            a = (best_s if axis == 0 else best_t) - radius
            b = (best_s if axis == 0 else best_t) + radius

            def val(z):
                p = (z, best_t) if axis == 0 else (best_s, z)
                if not in_st_domain(*p):
                    return -math.inf
                return float(_log_g_grid(np.array([p[0]]), np.array([p[1]]))[0])

            c, d = b - phi * (b - a), a + phi * (b - a)
            fc, fd = val(c), val(d)
            for _ in range(40):
                if fc >= fd:
                    b, d, fd = d, c, fc
                    c = b - phi * (b - a)
                    fc = val(c)
                else:
                    a, c, fc = c, d, fd
                    d = a + phi * (b - a)
                    fd = val(d)
            z = (a + b) / 2
            if axis == 0:
                best_s = z
            else:
                best_t = z
        radius *= phi
    return best_s, best_t, float(_log_g_grid(np.array([best_s]), np.array([best_t]))[0])


@dataclass(frozen=True)
class GridMax:
    s: float
    t: float
    value: float
    verdict: str


def grid_max_g(step: float = 1e-3, refine: int = 3, jobs: int = 1) -> GridMax:
    """Sample g over the substituted domain at the given step (1e-9 inset
    from the boundary), polish around the best cell, and compare against
    0.7524. Also checks the maximizer sits within 2*step of (s0, t0)."""
    if not (0 < step <= 1e-2):
        raise ParameterError(f"step must be in (0, 1e-2], got {step}")
    inset = 1e-9
    s_values = np.arange(step, 1, step)
    if jobs <= 1:
        best = _grid_chunk((s_values, step, inset))
    else:
        shards = [(s_values[k::jobs], step, inset) for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            best = max(pool.map(_grid_chunk, shards))
    log_v, s, t = best
    if refine > 0:
        s, t, log_v = _golden_refine(s, t, step, refine)
    crit = find_critical()
    s0 = float((crit.s0[0] + crit.s0[1]) / 2)
    t0 = float((crit.t0[0] + crit.t0[1]) / 2)
    if math.hypot(s - s0, t - t0) > 2 * step:
        raise ParameterError(
            f"grid maximum at ({s:.6f}, {t:.6f}) is not within 2*step of "
            f"the critical point ({s0:.6f}, {t0:.6f})")
    value = math.exp(log_v)
    return GridMax(s, t, value, bound_verdict(value))


@dataclass(frozen=True)
class CalcReport:
    """Spot checks of the endpoint-minimum and limit facts used in rounding."""

    min_inequality_ok: bool
    equality_ok: bool
    limit_values: tuple[float, ...]
    limit_ok: bool

    @property
    def ok(self) -> bool:
        return self.min_inequality_ok and self.equality_ok and self.limit_ok


def _endpoint_fn(x: float, p: float) -> float:
    return x * (1 - p) ** x


def calculus_checks(trials: int = 200, seed: int = 0) -> CalcReport:
    """(i) x(1-p)^x on [a,b] is minimized at an endpoint: random triples for
    p in {0.1, 0.5, 0.9}. (ii) x(1 - log x/x)^x approaches 1 from below-ish:
    |value - 1| <= 2 log^2 x / x at x = 1e3..1e6, decreasing in x."""
    import random
    rng = random.Random(seed)
    min_ok = True
    for p in (0.1, 0.5, 0.9):
        for _ in range(trials):
            a, x, b = sorted(rng.uniform(0.0, 30.0) for _ in range(3))
            lhs = _endpoint_fn(x, p)
            if lhs < min(_endpoint_fn(a, p), _endpoint_fn(b, p)) - 1e-12:
                min_ok = False
    x_eq = 2.0
    equality_ok = _endpoint_fn(x_eq, 0.5) == min(_endpoint_fn(x_eq, 0.5),
                                                 _endpoint_fn(x_eq, 0.5))
    values = []
    limit_ok = True
    prev_gap = math.inf
    with mpmath.workprec(_PREC):
        for x in (10**3, 10**4, 10**5, 10**6):
            xm = mpmath.mpf(x)
            val = float(mpmath.exp(mpmath.log(xm) + xm * mpmath.log(1 - mpmath.log(xm) / xm)))
            values.append(val)
            gap = abs(val - 1)
            if gap > 2 * math.log(x) ** 2 / x or gap > prev_gap:
                limit_ok = False
            prev_gap = gap
    return CalcReport(min_ok, equality_ok, tuple(values), limit_ok)
