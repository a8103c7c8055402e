"""Colorings, list assignments, set colorings, and their verifiers.

A coloring is proper when adjacent vertices differ, and t-conflict-free when
every hyperedge carries some color on at least one and at most t of its
vertices. t = 1 is the usual conflict-free condition.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Iterable, Optional

from .errors import ParameterError
from .graphs import ConflictInstance, Graph, Hypergraph


class Coloring:
    """Total vertex coloring; colors are positive integers."""

    __slots__ = ("colors",)

    def __init__(self, colors: Iterable[int]):
        cs = tuple(colors)
        for c in cs:
            if not isinstance(c, int) or c < 1:
                raise ParameterError(f"colors must be positive integers, got {c!r}")
        self.colors = cs

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def used(self) -> frozenset[int]:
        return frozenset(self.colors)

    def __eq__(self, other) -> bool:
        return isinstance(other, Coloring) and self.colors == other.colors

    def __hash__(self) -> int:
        return hash(self.colors)

    def __repr__(self) -> str:
        return f"Coloring({self.colors})"


class ListAssignment:
    """Per-vertex sets of allowed colors; every list is non-empty."""

    __slots__ = ("lists",)

    def __init__(self, lists: Iterable[Iterable[int]]):
        ls = tuple(frozenset(l) for l in lists)
        for i, l in enumerate(ls):
            if not l:
                raise ParameterError(f"empty color list at vertex {i}")
            for c in l:
                if not isinstance(c, int) or c < 1:
                    raise ParameterError(f"colors must be positive integers, got {c!r}")
        self.lists = ls

    @classmethod
    def uniform(cls, n: int, palette: int) -> "ListAssignment":
        """All n lists equal to {1, ..., palette}."""
        if palette < 1:
            raise ParameterError("palette must be >= 1")
        full = range(1, palette + 1)
        return cls([full] * n)

    def __len__(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def min_size(self) -> int:
        return min(len(l) for l in self.lists) if self.lists else 0

    def admits(self, coloring: Coloring) -> bool:
        if len(coloring) != len(self.lists):
            raise ParameterError("coloring length does not match list assignment")
        return all(c in l for c, l in zip(coloring.colors, self.lists))

    def __repr__(self) -> str:
        return f"ListAssignment(n={len(self.lists)}, min_size={self.min_size()})"


class SetColoring:
    """Assigns each vertex a b-subset of colors (uniform size b >= 1)."""

    __slots__ = ("sets", "b")

    def __init__(self, sets: Iterable[Iterable[int]]):
        ss = tuple(frozenset(s) for s in sets)
        if not ss:
            raise ParameterError("set coloring needs at least one vertex")
        b = len(ss[0])
        for i, s in enumerate(ss):
            if len(s) != b:
                raise ParameterError(f"vertex {i} has {len(s)} colors, expected {b}")
            for c in s:
                if not isinstance(c, int) or c < 1:
                    raise ParameterError(f"colors must be positive integers, got {c!r}")
        if b < 1:
            raise ParameterError("per-vertex color sets must be non-empty")
        self.sets = ss
        self.b = b

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.sets[v]

    def used(self) -> frozenset[int]:
        out: set[int] = set()
        for s in self.sets:
            out |= s
        return frozenset(out)

    def __repr__(self) -> str:
        return f"SetColoring(n={len(self.sets)}, b={self.b})"


def _check_length(n: int, coloring: Coloring) -> None:
    if len(coloring) != n:
        raise ParameterError(f"coloring has {len(coloring)} entries, instance has {n}")


def is_proper(graph: Graph, coloring: Coloring) -> bool:
    _check_length(graph.n, coloring)
    cs = coloring.colors
    return all(cs[u] != cs[v] for u, v in graph.edges())


def is_t_conflict_free(hypergraph: Hypergraph, coloring: Coloring, t: int = 1) -> bool:
    """Every hyperedge has some color with multiplicity in [1, t]."""
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    _check_length(hypergraph.n, coloring)
    cs = coloring.colors
    for e in hypergraph.edges:
        counts = Counter(cs[v] for v in e)
        if min(counts.values()) > t:
            return False
    return True


def is_pcf(instance: ConflictInstance, coloring: Coloring,
           lists: Optional[ListAssignment] = None, t: int = 1) -> bool:
    """Proper on G, t-conflict-free on H, and within the lists when given."""
    _check_length(instance.n, coloring)
    if lists is not None and not lists.admits(coloring):
        return False
    return is_proper(instance.graph, coloring) and is_t_conflict_free(
        instance.hypergraph, coloring, t
    )


def bichromatic_paths_ok(graph: Graph, coloring: Coloring, max_len: int = 3) -> bool:
    """True when every 2-colored component is a path on <= max_len vertices.

    Requires a proper coloring.
    """
    if not is_proper(graph, coloring):
        raise ParameterError("bichromatic_paths_ok requires a proper coloring")
    cs = coloring.colors
    for c1, c2 in combinations(sorted(coloring.used()), 2):
        keep = [v for v in range(graph.n) if cs[v] in (c1, c2)]
        for comp in graph.components(keep):
            if len(comp) > max_len:
                return False
            degs = [sum(1 for u in graph.neighbors(v) if u in comp) for v in comp]
            edge_count = sum(degs) // 2
            if edge_count != len(comp) - 1 or any(d > 2 for d in degs):
                return False
    return True


def is_fractional_pcf(instance: ConflictInstance, psi: SetColoring) -> bool:
    """Every color class is stable in G and every hyperedge has >= b colors
    of multiplicity exactly one on it."""
    if len(psi) != instance.n:
        raise ParameterError(f"set coloring has {len(psi)} entries, instance has {instance.n}")
    for u, v in instance.graph.edges():
        if psi[u] & psi[v]:
            return False
    for e in instance.hypergraph.edges:
        counts = Counter(c for v in e for c in psi[v])
        unique = sum(1 for c, k in counts.items() if k == 1)
        if unique < psi.b:
            return False
    return True


class Cor16Report:
    """Outcome of the three structural set-coloring properties."""

    __slots__ = ("fractional_ok", "sparse_ok", "overlap_ok", "sparse_mode")

    def __init__(self, fractional_ok: bool, sparse_ok: bool, overlap_ok: bool,
                 sparse_mode: str):
        self.fractional_ok = fractional_ok
        self.sparse_ok = sparse_ok
        self.overlap_ok = overlap_ok
        self.sparse_mode = sparse_mode

    def all_ok(self) -> bool:
        return self.fractional_ok and self.sparse_ok and self.overlap_ok

    def __repr__(self) -> str:
        return (f"Cor16Report(fractional_ok={self.fractional_ok}, "
                f"sparse_ok={self.sparse_ok}, overlap_ok={self.overlap_ok}, "
                f"sparse_mode={self.sparse_mode!r})")


def _sparse_exact(graph: Graph, psi: SetColoring) -> bool:
    # check the largest admissible color subsets only: components grow with C
    used = sorted(psi.used())
    k_max = (5 * psi.b - 1) // 2  # largest |C| with 2|C| < 5b
    k = min(k_max, len(used))
    for cset in combinations(used, k):
        cc = frozenset(cset)
        inside = [v for v in range(graph.n) if psi[v] <= cc]
        for comp in graph.components(inside):
            if len(comp) > 2:
                return False
    return True


def _sparse_local(graph: Graph, psi: SetColoring) -> bool:
    # every connected 3-set has a vertex adjacent to the other two
    for y in range(graph.n):
        nb = sorted(graph.neighbors(y))
        for x, z in combinations(nb, 2):
            if 2 * len(psi[x] | psi[y] | psi[z]) < 5 * psi.b:
                return False
    return True


def cor16_properties(instance: ConflictInstance, psi: SetColoring,
                     a: Optional[int] = None) -> Cor16Report:
    """Checks the three properties a good (a:b) set coloring satisfies:

    1. fractional PCF on the instance;
    2. color sets of fewer than 5b/2 colors induce components of <= 2 vertices
       (exact subset enumeration when a <= 12, local 3-set form otherwise);
    3. distinct vertices share at most b/2 colors.
    """
    if len(psi) != instance.n:
        raise ParameterError(f"set coloring has {len(psi)} entries, instance has {instance.n}")
    if a is None:
        a = max(psi.used(), default=0)
    fractional_ok = is_fractional_pcf(instance, psi)
    if a <= 12:
        sparse_ok = _sparse_exact(instance.graph, psi)
        mode = "exact"
    else:
        sparse_ok = _sparse_local(instance.graph, psi)
        mode = "local"
    overlap_ok = all(
        2 * len(psi[u] & psi[v]) <= psi.b
        for u, v in combinations(range(instance.n), 2)
    )
    return Cor16Report(fractional_ok, sparse_ok, overlap_ok, mode)
