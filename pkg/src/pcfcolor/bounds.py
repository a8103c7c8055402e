"""Closed-form upper bounds on 2-associated Stirling sums, exact grid
verifications, and palette-size calculators.

Inequalities with rational right-hand sides are certified exactly with
Fraction arithmetic. Comparisons against R^(-1/2) or sqrt(Delta) are squared
into integer comparisons. Right-hand sides containing e or an irrational
power are enclosed with mpmath interval arithmetic and judged with a 1e-9
relative margin; a comparison inside the margin reports "inconclusive".
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional

import mpmath

from . import stirling
from .errors import ParameterError
from .exactmath import (FAIL, INCONCLUSIVE, PASS, as_fraction, ceil_fraction,
                        ceil_plus_sqrt, e_power_bounds, iv_to_fractions,
                        leq_verdict, mpf_to_fraction)
from .graphs import ConflictInstance

#: (eps, c, delta threshold) triples for the main palette bound's regimes
EPS_C_REGIMES = (
    (Fraction("0.8"), Fraction("0.32"), 750),
    (Fraction(2, 3), Fraction("0.3272"), 8000),
    (Fraction("0.6550826"), Fraction("0.32754"), 124811000),
)


@dataclass(frozen=True)
class BoundParams:
    """Parameters shared by the partial-sum bounds (d, R, beta, eps, c)."""

    d: int
    R: int
    beta: Fraction
    eps: Fraction
    c: Fraction
    t: int = 2

    def __post_init__(self):
        object.__setattr__(self, "beta", as_fraction(self.beta))
        object.__setattr__(self, "eps", as_fraction(self.eps))
        object.__setattr__(self, "c", as_fraction(self.c))
        if self.d < 1 or self.R < 1:
            raise ParameterError("d and R must be positive integers")
        if self.beta <= 0:
            raise ParameterError("beta must be positive")
        if not (0 < self.eps < 1):
            raise ParameterError(f"eps must be in (0,1), got {self.eps}")
        if not (0 < self.c < self.eps / 2):
            raise ParameterError(f"c must be in (0, eps/2), got {self.c}")


@dataclass(frozen=True)
class CheckResult:
    """One certified inequality: lhs <= rhs with an enclosure of rhs."""

    kind: str
    d: int
    lhs: Fraction
    rhs_lo: Fraction
    rhs_hi: Fraction
    verdict: str
    i: Optional[int] = None
    j: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.verdict == PASS


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


def _pairs_factor(j: int) -> int:
    # ways to arrange 2j labeled elements into j unordered pairs
    return factorial(2 * j) // (factorial(j) * 2**j)


def _triples_factor(k: int) -> int:
    # ways to arrange 3k labeled elements into k unordered triples
    return factorial(3 * k) // (factorial(k) * 6**k)


def two_term_bounds(d: int, i: int) -> tuple[Fraction, Fraction, Fraction]:
    """Both upper bounds on S_2(d, i) and their minimum.

    bound1 = C(d,i) * i^(d-i) * 2^(-i); bound2 decomposes partitions into j
    pairs and i-j larger parts (with the perfect-matching term whenever d is
    even, regardless of i: harmless slack when i != d/2).
    """
    _require(1 <= i <= d // 2, f"need 1 <= i <= d//2, got d={d}, i={i}")
    bound1 = Fraction(comb(d, i) * i ** (d - i), 2**i)
    bound2 = Fraction(0)
    if d % 2 == 0:
        bound2 += _pairs_factor(d // 2)
    for j in range(max(3 * i - d, 0), i):
        k = i - j
        bound2 += (comb(d, 2 * j) * _pairs_factor(j)
                   * comb(d - 2 * j, 3 * k) * _triples_factor(k)
                   * k ** (d - 2 * j - 3 * k))
    return bound1, bound2, min(bound1, bound2)


def simple_sum_bound(d: int, beta) -> Fraction:
    """beta * (d/beta)^ceil(d/2) / (1 - d/beta); requires d < beta."""
    b = as_fraction(beta)
    _require(d >= 1, f"d must be >= 1, got {d}")
    _require(d < b, f"need d < beta for a positive denominator, got d={d}, beta={b}")
    ratio = Fraction(d) / b
    return b * ratio ** ((d + 1) // 2) / (1 - ratio)


def _partial_sum(d: int, beta: Fraction, i_lo: int, i_hi: int) -> Fraction:
    row = stirling.table(2).row(d)
    total = Fraction(0)
    for i in range(max(i_lo, 1), min(i_hi, d // 2) + 1):
        if row[i]:
            total += row[i] * beta ** (i - d + 1)
    return total


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def lower_sum_exact(d: int, beta, c) -> Fraction:
    """Exact sum_{i=1}^{floor(c*d)} S_2(d, i) * beta^(i-d+1)."""
    b = as_fraction(beta)
    cc = as_fraction(c)
    _require(d >= 1 and b > 0 and cc > 0, "need d >= 1, beta > 0, c > 0")
    return _partial_sum(d, b, 1, _floor_frac(cc * d))


def upper_sum_exact(d: int, beta, c) -> Fraction:
    """Exact sum_{i=ceil(c*d)}^{floor(d/2)} S_2(d, i) * beta^(i-d+1)."""
    b = as_fraction(beta)
    cc = as_fraction(c)
    _require(d >= 1 and b > 0 and cc > 0, "need d >= 1, beta > 0, c > 0")
    return _partial_sum(d, b, ceil_fraction(cc * d), d // 2)


def _validate_lower(p: BoundParams) -> None:
    _require(p.d <= p.R, f"lower-sum bound needs d <= R, got d={p.d}, R={p.R}")
    _require(p.eps * p.R <= p.beta <= p.R,
             f"need eps*R <= beta <= R, got beta={p.beta}, eps*R={p.eps * p.R}, R={p.R}")


def _validate_upper(p: BoundParams) -> None:
    _validate_lower(p)
    _require(p.R >= 50, f"upper-sum bound needs R >= 50, got {p.R}")
    _require(Fraction(3, 5) <= p.eps, f"need eps >= 0.6, got {p.eps}")
    _require(Fraction(3, 10) <= p.c, f"need c >= 0.3, got {p.c}")


def lower_sum_bound(params: BoundParams) -> Fraction:
    """(d^2 * beta / 2) * (1/2 + c/eps)^d, exact."""
    _validate_lower(params)
    base = Fraction(1, 2) + params.c / params.eps
    return Fraction(params.d * params.d) * params.beta / 2 * base**params.d


def check_lower_sum(params: BoundParams) -> CheckResult:
    exact = lower_sum_exact(params.d, params.beta, params.c)
    rhs = lower_sum_bound(params)
    verdict = PASS if exact <= rhs else FAIL
    return CheckResult("lower", params.d, exact, rhs, rhs, verdict)


def lower_tail_threshold(R: int, eps, c) -> float:
    """Smallest d (real) after which the lower partial sum is <= R^(-1/2)/2."""
    e, cc = as_fraction(eps), as_fraction(c)
    return 3.5 * math.log(R) / math.log(float(2 * e / (e + 2 * cc)))


def check_lower_tail(params: BoundParams) -> CheckResult:
    """Exact check of sum_{i<=cd} <= R^(-1/2)/2, squared into rationals."""
    _validate_lower(params)
    s = lower_sum_exact(params.d, params.beta, params.c)
    ok = 4 * s * s * params.R <= 1
    approx = Fraction(1, 2) / Fraction(math.isqrt(params.R))
    return CheckResult("lower-tail", params.d, s, approx, approx,
                       PASS if ok else FAIL)


_UPPER_GEO = Fraction(9126, 10**4)
_UPPER_OPT = Fraction(7524, 10**4)


def upper_sum_bound_enclosure(params: BoundParams) -> tuple[Fraction, Fraction]:
    """Enclosure of R^3/4 * 0.9126^d + d^4/4 * ((1/eps)^(1-c) * 0.7524)^d.

    The first term is exact; the second has an irrational power of 1/eps and
    is enclosed with interval arithmetic.
    """
    _validate_upper(params)
    term_a = Fraction(params.R**3) / 4 * _UPPER_GEO**params.d
    exact_part = Fraction(params.d**4) / 4 * _UPPER_OPT**params.d
    expo = (1 - params.c) * params.d
    old = mpmath.iv.prec
    try:
        mpmath.iv.prec = 160
        inv_eps = mpmath.iv.mpf(params.eps.denominator) / params.eps.numerator
        power = mpmath.iv.exp(
            mpmath.iv.log(inv_eps)
            * (mpmath.iv.mpf(expo.numerator) / expo.denominator)
        )
        lo, hi = iv_to_fractions(power)
    finally:
        mpmath.iv.prec = old
    return term_a + exact_part * lo, term_a + exact_part * hi


def upper_sum_bound(params: BoundParams) -> Fraction:
    """Upper endpoint of the enclosure (a valid bound on the bound)."""
    return upper_sum_bound_enclosure(params)[1]


def check_upper_sum(params: BoundParams) -> CheckResult:
    exact = upper_sum_exact(params.d, params.beta, params.c)
    lo, hi = upper_sum_bound_enclosure(params)
    return CheckResult("upper", params.d, exact, lo, hi, leq_verdict(exact, lo, hi))


def upper_tail_threshold(R: int, eps, c) -> float:
    """Smallest d (real) after which the upper partial sum is <= R^(-1/2)/2."""
    e, cc = as_fraction(eps), as_fraction(c)
    t1 = 4.5 * math.log(R) / math.log(float(e) ** float(1 - cc) / 0.7524)
    t2 = 3.5 * math.log(R) / math.log(1.09577)
    return max(t1, t2)


def check_upper_tail(params: BoundParams) -> CheckResult:
    """Exact check of sum_{i>=cd} <= R^(-1/2)/2, squared into rationals."""
    _validate_upper(params)
    s = upper_sum_exact(params.d, params.beta, params.c)
    ok = 4 * s * s * params.R <= 1
    approx = Fraction(1, 2) / Fraction(math.isqrt(params.R))
    return CheckResult("upper-tail", params.d, s, approx, approx,
                       PASS if ok else FAIL)


_J0_CONST = Fraction(549474, 10**6)


def j0_term_check(d: int, i: int, beta) -> CheckResult:
    """Single-term estimate for partitions with no pairs:

    C(d,3i) * (3i)!/(i! 6^i) * i^(d-3i) * beta^(i-d+1)
        <= (beta*d/e) * (d/beta)^(d-i) * 0.549474^d.
    """
    b = as_fraction(beta)
    _require(i >= 1 and 3 * i <= d, f"need 1 <= i <= d/3, got d={d}, i={i}")
    _require(b > 0, "beta must be positive")
    lhs = comb(d, 3 * i) * _triples_factor(i) * Fraction(i ** (d - 3 * i)) * b ** (i - d + 1)
    rational = b * d * (Fraction(d) / b) ** (d - i) * _J0_CONST**d
    e_lo, e_hi = e_power_bounds(1)
    return CheckResult("j0-term", d, lhs, rational / e_hi, rational / e_lo,
                       leq_verdict(lhs, rational / e_hi, rational / e_lo), i=i)


def matched_term_check(d: int, i: int, j: int, beta) -> CheckResult:
    """Single-term estimate for partitions of pairs and triples only
    (d - 3i + j = 0): term < (d*beta/e) * 0.9126^d for beta >= 0.6d."""
    b = as_fraction(beta)
    _require(i > j > 0, f"need i > j > 0, got i={i}, j={j}")
    _require(d - 3 * i + j == 0, f"need d - 3i + j = 0, got d={d}, i={i}, j={j}")
    _require(b >= Fraction(3, 5) * d, f"need beta >= 0.6d, got beta={b}, d={d}")
    k = i - j
    lhs = (comb(d, 2 * j) * _pairs_factor(j) * comb(d - 2 * j, 3 * k)
           * _triples_factor(k) * b ** (i - d + 1))
    rational = Fraction(d) * b * _UPPER_GEO**d
    e_lo, e_hi = e_power_bounds(1)
    return CheckResult("matched-term", d, lhs, rational / e_hi, rational / e_lo,
                       leq_verdict(lhs, rational / e_hi, rational / e_lo), i=i, j=j)


def _floor_pow_19_20(beta: Fraction) -> int:
    """Exact floor(beta^(19/20)) for rational beta >= 1."""
    p, q = beta.numerator, beta.denominator
    m = int(float(beta) ** 0.95)
    while (m + 1) ** 20 * q**19 <= p**19:
        m += 1
    while m > 0 and m**20 * q**19 > p**19:
        m -= 1
    return m


def _power_sum_ok(d: int, beta: Fraction, R: int) -> bool:
    # sum <= R^(-1/2)  <=>  (sum_i S_2(d,i) beta^i)^2 * R <= beta^(2(d-1))
    row = stirling.table(2).row(d)
    s = Fraction(0)
    for i in range(1, len(row)):
        if row[i]:
            s += row[i] * beta**i
    return s * s * R <= beta ** (2 * (d - 1))


def _clm1_chunk(args) -> list[int]:
    r, beta, lo, hi = args
    return [d for d in range(lo, hi) if not _power_sum_ok(d, beta, r)]


@dataclass(frozen=True)
class GridReport:
    """Outcome of a d-range verification."""

    kind: str
    R: int
    beta: Fraction
    d_lo: int
    d_hi: int
    failures: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def checked(self) -> int:
        return max(self.d_hi - self.d_lo + 1, 0)


def verify_power_sum(R: int, beta, d_max: int = 500, jobs: int = 1) -> GridReport:
    """Certify sum_{i} S_2(d,i) beta^(i-d+1) <= R^(-1/2) for d in
    [3, min(d_max, floor(beta^(19/20)))] by exact integer comparison."""
    b = as_fraction(beta)
    _require(R >= 750, f"hypothesis R >= 750 violated, got R={R}")
    _require(b >= max(Fraction(3, 5) * R, 600),
             f"hypothesis beta >= max(0.6R, 600) violated, got beta={b}")
    d_hi = min(d_max, _floor_pow_19_20(b))
    if jobs <= 1 or d_hi < 20:
        failures = _clm1_chunk((R, b, 3, d_hi + 1))
    else:
        step = (d_hi - 2 + jobs - 1) // jobs
        chunks = [(R, b, lo, min(lo + step, d_hi + 1))
                  for lo in range(3, d_hi + 1, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            failures = sorted(d for part in pool.map(_clm1_chunk, chunks) for d in part)
    return GridReport("power-sum", R, b, 3, d_hi, tuple(failures))


def required_list_size(inst: ConflictInstance, beta, t: int = 1) -> Fraction:
    """Exact counting-premise list size:

    Delta(G) + beta + max_v sum_{e in H, e ni v} sum_i S_{t+1}(|e|,i) beta^(i-|e|+1).
    """
    b = as_fraction(beta)
    _require(b > 0, "beta must be positive")
    _require(t >= 1, f"t must be >= 1, got {t}")
    h = inst.hypergraph
    edge_sum = [stirling.pcf_sum_exact(len(e), b, t + 1) if len(e) > t else Fraction(0)
                for e in h.edges]
    worst = Fraction(0)
    for v in range(inst.n):
        s = sum((edge_sum[idx] for idx in h.edges_at(v)), Fraction(0))
        worst = max(worst, s)
    return inst.graph.max_degree() + b + worst


def palette_main(delta: int, beta) -> int:
    """ceil(Delta + beta + sqrt(Delta)), certified exactly.

    The calculator is total; see main_hypothesis_flags for regime membership.
    """
    _require(delta >= 0, f"delta must be >= 0, got {delta}")
    b = as_fraction(beta)
    _require(b > 0, "beta must be positive")
    return ceil_plus_sqrt(delta + b, 1, delta)


def main_hypothesis_flags(delta: int, beta) -> dict[str, bool]:
    """Which of the main palette bound's (delta, beta) regimes the pair satisfies."""
    b = as_fraction(beta)
    return {
        str(threshold): (delta >= threshold and eps * delta <= b <= delta)
        for eps, _, threshold in EPS_C_REGIMES
    }


_HYPER_BETA_LO = Fraction("0.6550826")
_HYPER_DECAY = Fraction(10**8 - 1, 10**8)  # 1 - 1e-8


def _validate_rank3(inst: ConflictInstance) -> None:
    for e in inst.hypergraph.edges:
        if len(e) < 3:
            raise ParameterError(
                f"hypothesis |f| >= 3 violated: edge {sorted(e)} has size {len(e)}")


def hyper_term_log(mr: int, deg: int, log_R, prec: int = 160) -> tuple[Fraction, Fraction]:
    """Enclosure of log of one vertex's term in the large-rank palette with
    beta = R, given log(R) directly (usable for astronomically large R).

    term = deg * max{ 2 R^(1-ceil(mr/2)) (log R)^(2 ceil(mr/2)), (1-1e-8)^((log R)^2) }
    """
    _require(mr >= 3, f"need mr >= 3, got {mr}")
    _require(deg >= 1, "need deg >= 1")
    k = (mr + 1) // 2
    old = mpmath.iv.prec
    try:
        mpmath.iv.prec = prec
        lr = mpmath.iv.mpf(str(log_R)) if not isinstance(log_R, Fraction) else (
            mpmath.iv.mpf(log_R.numerator) / log_R.denominator)
        log_a = mpmath.iv.log(2) + (1 - k) * lr + 2 * k * mpmath.iv.log(lr)
        log_b = lr * lr * mpmath.iv.log(
            mpmath.iv.mpf(_HYPER_DECAY.numerator) / _HYPER_DECAY.denominator)
        lo = max(mpf_to_fraction(log_a.a), mpf_to_fraction(log_b.a))
        hi = max(mpf_to_fraction(log_a.b), mpf_to_fraction(log_b.b))
        log_deg = mpmath.iv.log(deg)
        return lo + mpf_to_fraction(log_deg.a), hi + mpf_to_fraction(log_deg.b)
    finally:
        mpmath.iv.prec = old


def palette_hyper(inst: ConflictInstance, R: int, beta) -> int:
    """Large-rank palette size: certified ceiling of

    Delta(G) + beta + max_v deg_H(v) * max{2 beta^(1-k_v) (log R)^(2 k_v),
                                           (1-1e-8)^((log R)^2)},
    with k_v = ceil(mr_H(v)/2)."""
    _require(R >= 2, f"R must be an integer >= 2, got {R}")
    b = as_fraction(beta)
    _validate_rank3(inst)
    _require(inst.hypergraph.rank() <= R,
             f"hypothesis rank(H) <= R violated: rank={inst.hypergraph.rank()}, R={R}")
    _require(_HYPER_BETA_LO * R <= b <= R,
             f"hypothesis 0.6550826 R <= beta <= R violated, got beta={b}")
    base = inst.graph.max_degree() + b
    h = inst.hypergraph
    profile = {(h.min_rank_at(v), h.degree(v)) for v in range(inst.n) if h.degree(v)}
    if not profile:
        return ceil_fraction(base)
    prec = 160
    while prec <= 4000:
        old = mpmath.iv.prec
        try:
            mpmath.iv.prec = prec
            log_r = mpmath.iv.log(R)
            decay = mpmath.iv.exp(
                log_r * log_r
                * mpmath.iv.log(mpmath.iv.mpf(_HYPER_DECAY.numerator) / _HYPER_DECAY.denominator))
            lo = hi = Fraction(0)
            for mr, deg in profile:
                k = (mr + 1) // 2
                coeff = 2 * b ** (1 - k)  # exact rational part
                power_a = (mpmath.iv.mpf(coeff.numerator) / coeff.denominator
                           * log_r ** (2 * k))
                a_lo, a_hi = iv_to_fractions(power_a)
                d_lo, d_hi = iv_to_fractions(decay)
                lo = max(lo, deg * max(a_lo, d_lo))
                hi = max(hi, deg * max(a_hi, d_hi))
        finally:
            mpmath.iv.prec = old
        c_lo, c_hi = ceil_fraction(base + lo), ceil_fraction(base + hi)
        if c_lo == c_hi:
            return c_lo
        prec *= 2
    raise ParameterError("could not certify the ceiling; value sits on an integer")


def palette_fixed_rank(inst: ConflictInstance, R, r: int,
                       eps=None) -> int:
    """Fixed-rank palette size (two regimes).

    With eps and R >= (1 + 1/eps) r:
        ceil(Delta(G) + R + (1+eps) max_v deg_H(v) r^k_v R^(1-k_v)).
    Otherwise, for rank r <= 4:
        ceil(Delta(G) + R + Delta(H) (3/R + 1/R^2)).
    """
    _validate_rank3(inst)
    rank = inst.hypergraph.rank()
    _require(r >= max(rank, 3), f"hypothesis rank(H) <= r violated: rank={rank}, r={r}")
    rr = as_fraction(R)
    _require(rr > 0, "R must be positive")
    h = inst.hypergraph
    if eps is not None:
        e = as_fraction(eps)
        _require(e > 0, "eps must be positive")
        if rr >= (1 + 1 / e) * r:
            worst = Fraction(0)
            for v in range(inst.n):
                if h.degree(v):
                    k = (h.min_rank_at(v) + 1) // 2
                    worst = max(worst, h.degree(v) * Fraction(r) ** k * rr ** (1 - k))
            return ceil_fraction(inst.graph.max_degree() + rr + (1 + e) * worst)
    if r <= 4:
        value = (inst.graph.max_degree() + rr
                 + h.max_degree() * (3 / rr + 1 / rr**2))
        return ceil_fraction(value)
    raise ParameterError(
        "hypothesis violated: need R >= (1+1/eps) r (with eps given) or r <= 4")


def palette_fixed_rank_sqrt(delta_g: int, delta_h: int, r_squared) -> int:
    """Rank <= 4 palette with R = sqrt(r_squared), certified exactly:

    ceil(Delta_G + R + Delta_H (3/R + 1/R^2))
      = ceil_plus_sqrt(Delta_G + Delta_H/R^2, 1 + 3 Delta_H/R^2, R^2).
    """
    r2 = as_fraction(r_squared)
    _require(r2 > 0, "r_squared must be positive")
    _require(delta_g >= 0 and delta_h >= 0, "degrees must be >= 0")
    return ceil_plus_sqrt(delta_g + delta_h / r2, 1 + 3 * Fraction(delta_h) / r2, r2)


def star_linear_palette(delta: int) -> int:
    """ceil(sqrt(30) Delta^(3/2) + Delta + 1/3), certified exactly."""
    _require(delta >= 0, f"delta must be >= 0, got {delta}")
    return ceil_plus_sqrt(delta + Fraction(1, 3), 1, 30 * delta**3)


@dataclass(frozen=True)
class FactorialReport:
    n_max: int
    failures: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def factorial_bounds_check(n_max: int) -> FactorialReport:
    """Certify n^n / e^(n-1) <= n! <= n^(n+1) / e^(n-1) for 1 <= n <= n_max."""
    _require(n_max >= 1, f"n_max must be >= 1, got {n_max}")
    failures = []
    for n in range(1, n_max + 1):
        f = factorial(n)
        ok = False
        for prec in (96, 256, 1024):
            e_lo, e_hi = e_power_bounds(n - 1, prec)
            if n**n <= f * e_lo and f * e_hi <= n ** (n + 1):
                ok = True
                break
        if not ok:
            failures.append(n)
    return FactorialReport(n_max, tuple(failures))
