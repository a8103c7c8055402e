"""Fractional PCF colorings: exact stable-set LP, its duality equivalence,
randomized stable-set selection, and rounding to explicit (a:b)-colorings.

Everything LP-adjacent is exact rational arithmetic; the sampler is the only
randomized piece and it re-verifies stability of whatever it returns.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import ratlp
from .colorings import SetColoring, is_fractional_pcf
from .errors import ParameterError, PcfError
from .graphs import ConflictInstance, Graph

__all__ = [
    "StableSetSystem", "DualWeights", "LPResult", "SamplerParams",
    "SamplerResult", "DualityReport", "RoundResult", "ChernoffReport",
    "enumerate_stable_sets", "fractional_pcf_lp", "best_stable_payoff",
    "duality_check", "weighted_stable_sampler", "round_to_ab",
    "chernoff_diagnostic",
]

MAX_LP_VERTICES = 20

_ZERO = Fraction(0)
_ONE = Fraction(1)


class StableSetSystem:
    """All non-empty stable sets of G, as bitmasks, with LP incidence data.

    Column j covers vertex v iff bit v of ``sets[j]`` is set (the A1 rows);
    ``a2[j]`` has bit z set iff hyperedge z meets set j in exactly one
    vertex (the A2 rows).
    """

    __slots__ = ("n", "edge_masks", "sets", "a2")

    def __init__(self, n: int, edge_masks: tuple[int, ...],
                 sets: tuple[int, ...], a2: tuple[int, ...]):
        self.n = n
        self.edge_masks = edge_masks
        self.sets = sets
        self.a2 = a2

    def __len__(self) -> int:
        return len(self.sets)

    def vertices(self, j: int) -> frozenset[int]:
        mask = self.sets[j]
        return frozenset(v for v in range(self.n) if mask >> v & 1)

    def column(self, j: int) -> list[tuple[int, int]]:
        """Sparse LP column j: vertex rows first, then hyperedge rows."""
        mask = self.sets[j]
        entries = [(v, 1) for v in range(self.n) if mask >> v & 1]
        zmask = self.a2[j]
        entries.extend((self.n + z, 1) for z in range(len(self.edge_masks))
                       if zmask >> z & 1)
        return entries

    def __repr__(self) -> str:
        return (f"StableSetSystem(n={self.n}, sets={len(self.sets)}, "
                f"edges={len(self.edge_masks)})")


def enumerate_stable_sets(graph: Graph, hypergraph=None) -> StableSetSystem:
    """Enumerate every non-empty stable set of ``graph``.

    The optional hypergraph fills in the exactly-once incidence rows (A2);
    omitted means no hyperedge rows.  Hard cap n <= 20.
    """
    n = graph.n
    if n > MAX_LP_VERTICES:
        raise ParameterError(f"stable-set enumeration capped at n = "
                             f"{MAX_LP_VERTICES}, got {n}")
    adj = [0] * n
    for u, v in graph.edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    found: list[int] = []

    def grow(mask: int, banned: int, start: int) -> None:
        for v in range(start, n):
            if banned >> v & 1:
                continue
            nxt = mask | 1 << v
            found.append(nxt)
            grow(nxt, banned | adj[v], v + 1)

    grow(0, 0, 0)
    found.sort()

    edge_masks: tuple[int, ...] = ()
    if hypergraph is not None:
        if hypergraph.n != n:
            raise ParameterError("hypergraph vertex count differs from graph")
        edge_masks = tuple(sum(1 << v for v in e) for e in hypergraph.edges)
    a2 = []
    for mask in found:
        zbits = 0
        for z, em in enumerate(edge_masks):
            if (em & mask).bit_count() == 1:
                zbits |= 1 << z
        a2.append(zbits)
    return StableSetSystem(n, edge_masks, tuple(found), tuple(a2))


class DualWeights:
    """Nonnegative rational weights: f per vertex, g per hyperedge."""

    __slots__ = ("f", "g")

    def __init__(self, f: Sequence, g: Sequence = ()):
        self.f = tuple(Fraction(v) for v in f)
        self.g = tuple(Fraction(v) for v in g)
        for v in self.f + self.g:
            if v < 0:
                raise ParameterError("dual weights must be nonnegative")

    def total(self) -> Fraction:
        return sum(self.f, _ZERO) + sum(self.g, _ZERO)

    def normalized(self) -> "DualWeights":
        s = self.total()
        if s <= 0:
            raise ParameterError("cannot normalize all-zero weights")
        return DualWeights([v / s for v in self.f], [v / s for v in self.g])

    def __repr__(self) -> str:
        return f"DualWeights(f={self.f}, g={self.g})"


def _payoff(weights: DualWeights, vertex_mask: int, edge_masks) -> Fraction:
    """sum of f over the set plus g over hyperedges met exactly once."""
    pay = _ZERO
    for v, fv in enumerate(weights.f):
        if fv and vertex_mask >> v & 1:
            pay += fv
    for z, gz in enumerate(weights.g):
        if gz and (edge_masks[z] & vertex_mask).bit_count() == 1:
            pay += gz
    return pay


@dataclass(frozen=True)
class LPResult:
    """Exact optimum of min 1'x over A1 x >= 1, A2 x >= 1, x >= 0."""

    optimum: Fraction
    primal: tuple[Fraction, ...]
    dual: DualWeights
    system: StableSetSystem
    instance: ConflictInstance


def fractional_pcf_lp(inst: ConflictInstance) -> LPResult:
    """Solve the stable-set covering LP exactly and certify the answer.

    Both the returned primal and dual are re-checked against the LP
    constraints after the solve; the dual is unnormalized and sums to the
    optimum (strong duality, asserted).
    """
    system = enumerate_stable_sets(inst.graph, inst.hypergraph)
    ncols = len(system)
    nrows = inst.n + len(system.edge_masks)
    columns = [system.column(j) for j in range(ncols)]
    sol = ratlp.minimize([_ONE] * ncols, columns, [_ONE] * nrows)

    primal = tuple(sol.x.get(j, _ZERO) for j in range(ncols))
    covered = [_ZERO] * nrows
    for j, xj in sol.x.items():
        for row, coef in columns[j]:
            covered[row] += coef * xj
    if any(c < 1 for c in covered):
        raise PcfError("LP primal infeasible after solve")
    if sum(primal, _ZERO) != sol.value:
        raise PcfError("LP objective mismatch")
    dual = DualWeights(sol.dual[:inst.n], sol.dual[inst.n:])
    if dual.total() != sol.value:
        raise PcfError("strong duality violated by returned dual")
    for j in range(ncols):
        pay = _payoff(dual, system.sets[j], system.edge_masks)
        if pay > 1:
            raise PcfError("LP dual infeasible after solve")
    return LPResult(optimum=sol.value, primal=primal, dual=dual,
                    system=system, instance=inst)


def best_stable_payoff(inst: ConflictInstance, weights: DualWeights,
                       system: Optional[StableSetSystem] = None,
                       ) -> tuple[frozenset[int], Fraction]:
    """Exact maximizer of the payoff over all non-empty stable sets."""
    if system is None:
        system = enumerate_stable_sets(inst.graph, inst.hypergraph)
    if len(weights.f) != inst.n or len(weights.g) != len(system.edge_masks):
        raise ParameterError("weight vector shape does not match instance")
    best_mask = -1
    best_pay = None
    for mask in system.sets:
        pay = _payoff(weights, mask, system.edge_masks)
        if best_pay is None or pay > best_pay or (pay == best_pay and
                                                  mask < best_mask):
            best_pay, best_mask = pay, mask
    verts = frozenset(v for v in range(inst.n) if best_mask >> v & 1)
    return verts, best_pay


@dataclass(frozen=True)
class DualityReport:
    t_star: Fraction
    equality_ok: bool
    sampled_ok: bool
    verdict: str

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"


def duality_check(inst: ConflictInstance, trials: int = 100,
                  seed: int = 0) -> DualityReport:
    """Check both directions of the payoff/colorability equivalence.

    The normalized optimal dual must reach payoff exactly 1/t*, and every
    randomly sampled normalized weight vector must reach at least 1/t*.
    """
    lp = fractional_pcf_lp(inst)
    target = _ONE / lp.optimum
    _, pay = best_stable_payoff(inst, lp.dual.normalized(), lp.system)
    equality_ok = pay == target

    rng = random.Random(seed)
    nz = len(lp.system.edge_masks)
    sampled_ok = True
    for _ in range(trials):
        while True:
            f = [Fraction(rng.randrange(0, 10), rng.randrange(1, 10))
                 for _ in range(inst.n)]
            g = [Fraction(rng.randrange(0, 10), rng.randrange(1, 10))
                 for _ in range(nz)]
            w = DualWeights(f, g)
            if w.total() > 0:
                break
        _, p = best_stable_payoff(inst, w.normalized(), lp.system)
        if p < target:
            sampled_ok = False
            break
    verdict = "pass" if equality_ok and sampled_ok else "fail"
    return DualityReport(t_star=lp.optimum, equality_ok=equality_ok,
                         sampled_ok=sampled_ok, verdict=verdict)


class SamplerParams:
    """Knobs for the randomized stable-set selection."""

    __slots__ = ("eps", "seed", "p")

    def __init__(self, eps: float = 0.1, seed: int = 0,
                 p: Optional[float] = None):
        if not eps > 0:
            raise ParameterError(f"eps must be positive, got {eps}")
        if p is not None and not 0 < float(p) <= 1:
            raise ParameterError(f"p override must lie in (0, 1], got {p}")
        self.eps = float(eps)
        self.seed = int(seed)
        self.p = None if p is None else float(p)

    def __repr__(self) -> str:
        return f"SamplerParams(eps={self.eps}, seed={self.seed}, p={self.p})"


@dataclass(frozen=True)
class SamplerResult:
    """Chosen stable set plus the run record of the sampling stages."""

    s: frozenset[int]
    payoff: Fraction
    p: float
    picked: tuple[int, ...]     # X_v = 1
    kept: tuple[int, ...]       # picked and not pruned (the set B)
    classes: tuple[frozenset[int], ...]
    guarantee: Optional[float]  # diagnostic only, not asserted


def weighted_stable_sampler(inst: ConflictInstance, weights: DualWeights,
                            params: SamplerParams) -> SamplerResult:
    """Sample vertices at rate p, prune the locally crowded ones, properly
    color what is left, and return the color class with the best payoff.

    Default p = log(max degree)/max degree, natural log.  Deterministic for
    a fixed seed.  Stability of the returned set is always verified.
    """
    graph = inst.graph
    n = graph.n
    if len(weights.f) != n or len(weights.g) != inst.hypergraph.m:
        raise ParameterError("weight vector shape does not match instance")
    delta = graph.max_degree()
    if params.p is None:
        if delta < 2:
            raise ParameterError("default p = log(d)/d needs max degree >= 2;"
                                 " pass an explicit p")
        p = math.log(delta) / delta
    else:
        p = params.p
    if inst.hypergraph.rank() > max(delta, 1):
        warnings.warn("hypergraph rank exceeds the maximum degree; the "
                      "sampler's payoff guarantee does not apply", stacklevel=2)

    rng = random.Random(params.seed)
    x = [rng.random() < p for _ in range(n)]
    threshold = (1 + params.eps) * p * delta
    picked = [v for v in range(n) if x[v]]
    kept = [v for v in picked
            if sum(1 for w in graph.neighbors(v) if x[w]) <= threshold]

    # greedy proper coloring of G[B] in sampled-vertex order
    cap = math.floor(threshold) + 1
    color: dict[int, int] = {}
    for v in kept:
        taken = {color[w] for w in graph.neighbors(v) if w in color}
        c = 1
        while c in taken:
            c += 1
        color[v] = c
    ncolors = max(color.values(), default=0)
    if ncolors > cap:
        raise PcfError(f"greedy used {ncolors} colors, cap is {cap}")
    classes = tuple(frozenset(v for v in kept if color[v] == c)
                    for c in range(1, ncolors + 1))

    edge_masks = tuple(sum(1 << v for v in e) for e in inst.hypergraph.edges)
    best: frozenset[int] = frozenset()
    best_pay = _ZERO
    for cls in classes:
        pay = _payoff(weights, sum(1 << v for v in cls), edge_masks)
        if pay > best_pay:
            best_pay, best = pay, cls
    for u in best:
        for w in graph.neighbors(u):
            if w in best:
                raise PcfError("sampler produced a non-stable class")
    guarantee = None
    if delta >= 1:
        guarantee = (1 - params.eps) ** 2 / ((1 + 2 * params.eps) * delta)
    return SamplerResult(s=best, payoff=best_pay, p=p, picked=tuple(picked),
                         kept=tuple(kept), classes=classes,
                         guarantee=guarantee)


@dataclass(frozen=True)
class RoundResult:
    """Explicit (a:b)-coloring scaled out of an exact LP optimum."""

    psi: SetColoring
    a: int
    b: int
    fractional_ok: bool

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.a, self.b)


def round_to_ab(lp: LPResult) -> RoundResult:
    """Scale the LP primal by its least common denominator into color
    classes, then trim per-vertex coverage down to exactly b = D.

    Trimming keeps each vertex's D lowest color indices, which preserves
    stability of every class but may lower a hyperedge's exactly-once count;
    the outcome is verified and reported, not assumed.
    """
    support = [(j, xj) for j, xj in enumerate(lp.primal) if xj > 0]
    if not support:
        raise ParameterError("LP primal has empty support")
    scale = math.lcm(*(xj.denominator for _, xj in support))
    classes: list[frozenset[int]] = []
    for j, xj in support:
        copies = xj * scale
        if copies.denominator != 1:
            raise PcfError("LCD scaling left a fractional copy count")
        classes.extend([lp.system.vertices(j)] * int(copies))
    a, b = len(classes), scale

    inst = lp.instance
    per_vertex: list[list[int]] = [[] for _ in range(inst.n)]
    for ci, cls in enumerate(classes):
        for v in cls:
            per_vertex[v].append(ci)
    sets = []
    for v in range(inst.n):
        if len(per_vertex[v]) < b:
            raise PcfError(f"vertex {v} covered {len(per_vertex[v])} < {b}")
        sets.append({ci + 1 for ci in per_vertex[v][:b]})
    psi = SetColoring(sets)
    res = RoundResult(psi=psi, a=a, b=b,
                      fractional_ok=is_fractional_pcf(inst, psi))
    if res.ratio != lp.optimum:
        raise PcfError("a/b deviates from the LP optimum")
    return res


@dataclass(frozen=True)
class ChernoffReport:
    n: int
    p: float
    delta: float
    trials: int
    empirical: float
    bound: float
    margin: float

    @property
    def vacuous(self) -> bool:
        return self.bound >= 1.0

    @property
    def ok(self) -> bool:
        return self.vacuous or self.empirical <= self.bound + self.margin


def chernoff_diagnostic(n: int, p: float, delta: float, trials: int = 2000,
                        seed: int = 0) -> ChernoffReport:
    """Monte-Carlo check of P(|X - np| >= delta np) <= 2 exp(-delta^2 np/3)
    for X ~ Binomial(n, p).

    The comparison allows a 3-sigma sampling margin (worst-case variance
    1/4); a bound >= 1 makes the check vacuously true.
    """
    if not 0 < delta < 1:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    if not 0 < p < 1:
        raise ParameterError(f"p must lie in (0, 1), got {p}")
    if n < 1 or trials < 1:
        raise ParameterError("n and trials must be positive")
    mean = n * p
    bound = 2.0 * math.exp(-delta * delta * mean / 3.0)
    draws = np.random.default_rng(seed).binomial(n, p, size=trials)
    hits = int(np.count_nonzero(np.abs(draws - mean) >= delta * mean))
    empirical = hits / trials
    margin = 3.0 * math.sqrt(0.25 / trials)
    return ChernoffReport(n=n, p=p, delta=delta, trials=trials,
                          empirical=empirical, bound=bound, margin=margin)
