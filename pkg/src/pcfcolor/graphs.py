"""Graphs, hypergraphs, and combined conflict-coloring instances.

Vertices are 0..n-1 in memory. The text formats (see textio) are 1-based.
A conflict instance pairs a simple graph G (adjacency constraints) with a
hypergraph H on the same vertex set (conflict-freeness constraints).
"""

from __future__ import annotations

import random
from typing import Iterable, Optional, Sequence

from .errors import ParameterError


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Invariants: no loops, no parallel edges; adjacency is symmetric.
    """

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ParameterError(f"vertex count must be >= 0, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"loop at vertex {u} not allowed")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)
        self._edges: tuple[tuple[int, int], ...] = tuple(
            (u, v) for u in range(n) for v in sorted(self._adj[u]) if u < v
        )

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def components(self, vertices: Optional[Iterable[int]] = None) -> list[frozenset[int]]:
        """Connected components, optionally of the induced subgraph on `vertices`."""
        pool = set(range(self.n)) if vertices is None else set(vertices)
        comps = []
        while pool:
            root = pool.pop()
            comp = {root}
            stack = [root]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y in pool:
                        pool.remove(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Hypergraph:
    """Immutable hypergraph: non-empty edges over 0..n-1, deduplicated.

    Duplicate edges (as vertex sets) collapse to the first occurrence.
    """

    __slots__ = ("n", "edges", "_at")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise ParameterError(f"vertex count must be >= 0, got {n}")
        seen: dict[frozenset[int], None] = {}
        for e in edges:
            f = frozenset(e)
            if not f:
                raise ParameterError("empty hyperedge not allowed")
            for v in f:
                if not (0 <= v < n):
                    raise ParameterError(f"hyperedge vertex {v} out of range for n={n}")
            seen.setdefault(f, None)
        self.n = n
        self.edges: tuple[frozenset[int], ...] = tuple(seen)
        at: list[list[int]] = [[] for _ in range(n)]
        for idx, f in enumerate(self.edges):
            for v in f:
                at[v].append(idx)
        self._at: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in at)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edges_at(self, v: int) -> tuple[int, ...]:
        """Indices of the edges containing v."""
        return self._at[v]

    def degree(self, v: int) -> int:
        return len(self._at[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._at), default=0)

    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def min_rank_at(self, v: int) -> Optional[int]:
        """Size of the smallest edge containing v, or None if v is in no edge."""
        if not self._at[v]:
            return None
        return min(len(self.edges[i]) for i in self._at[v])

    def __eq__(self, other) -> bool:
        return isinstance(other, Hypergraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m})"


class ConflictInstance:
    """A graph and a hypergraph sharing one vertex set."""

    __slots__ = ("graph", "hypergraph")

    def __init__(self, graph: Graph, hypergraph: Hypergraph):
        if graph.n != hypergraph.n:
            raise ParameterError(
                f"vertex count mismatch: graph n={graph.n}, hypergraph n={hypergraph.n}"
            )
        self.graph = graph
        self.hypergraph = hypergraph

    @property
    def n(self) -> int:
        return self.graph.n

    def __repr__(self) -> str:
        return f"ConflictInstance(n={self.n}, m_G={self.graph.m}, m_H={self.hypergraph.m})"


def neighborhood_hypergraph(graph: Graph) -> Hypergraph:
    """Hyperedges are the open neighborhoods N(v) of non-isolated vertices."""
    return Hypergraph(
        graph.n, (graph.neighbors(v) for v in range(graph.n) if graph.degree(v) > 0)
    )


def star_linear_hypergraph(graph: Graph) -> Hypergraph:
    """Vertex sets of all 4-vertex paths plus all 3-subsets of neighborhoods.

    Every edge has size 3 or 4; distinct paths on the same vertex set collapse.
    """
    edges: dict[frozenset[int], None] = {}
    for v, w in graph.edges():
        # paths u - v - w - x around each middle edge
        for u in graph.neighbors(v):
            if u == w:
                continue
            for x in graph.neighbors(w):
                if x == v or x == u:
                    continue
                edges.setdefault(frozenset((u, v, w, x)), None)
    for v in range(graph.n):
        nb = sorted(graph.neighbors(v))
        k = len(nb)
        for i in range(k):
            for j in range(i + 1, k):
                for l in range(j + 1, k):
                    edges.setdefault(frozenset((nb[i], nb[j], nb[l])), None)
    return Hypergraph(graph.n, edges)


def degeneracy_ordering(graph: Graph) -> tuple[int, tuple[int, ...]]:
    """Degeneracy d and an order in which each vertex has <= d earlier neighbors.

    Repeatedly removes a minimum-degree vertex; the reverse removal order is
    the returned sequence.
    """
    n = graph.n
    deg = [graph.degree(v) for v in range(n)]
    alive = [True] * n
    removal: list[int] = []
    d = 0
    for _ in range(n):
        v = min((x for x in range(n) if alive[x]), key=lambda x: (deg[x], x))
        d = max(d, deg[v])
        alive[v] = False
        removal.append(v)
        for u in graph.neighbors(v):
            if alive[u]:
                deg[u] -= 1
    return d, tuple(reversed(removal))


_KINDS = ("gnp", "cycle", "complete", "random_regular")


def generate(kind: str, n: int, seed: Optional[int] = None,
             p: Optional[float] = None, k: Optional[int] = None) -> Graph:
    """Deterministic graph generator; identical (kind, parameters, seed) give
    identical graphs."""
    if kind not in _KINDS:
        raise ParameterError(f"unknown kind {kind!r}, expected one of {_KINDS}")
    if n < 0:
        raise ParameterError("n must be >= 0")
    if kind == "cycle":
        if n < 3:
            raise ParameterError("cycle needs n >= 3")
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "complete":
        if n < 1:
            raise ParameterError("complete needs n >= 1")
        return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if seed is None:
        raise ParameterError(f"kind {kind!r} is randomized and requires a seed")
    rng = random.Random(seed)
    if kind == "gnp":
        if p is None or not (0.0 <= p <= 1.0):
            raise ParameterError("gnp needs p in [0, 1]")
        return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)
                         if rng.random() < p])
    # random_regular: circulant start, then seeded double-edge swaps.
    # (the plain pairing model rejects essentially forever once k > 5)
    if k is None or k < 0 or k >= max(n, 1):
        raise ParameterError("random_regular needs 0 <= k < n")
    if (n * k) % 2 != 0:
        raise ParameterError("random_regular needs n*k even")
    if k == 0:
        return Graph(n)
    edges = set()
    for v in range(n):
        for off in range(1, k // 2 + 1):
            u = (v + off) % n
            edges.add((min(u, v), max(u, v)))
        if k % 2 == 1:  # n is even here
            u = (v + n // 2) % n
            edges.add((min(u, v), max(u, v)))
    elist = sorted(edges)
    for _ in range(20 * n * k):
        i, j = rng.randrange(len(elist)), rng.randrange(len(elist))
        a, b = elist[i]
        c, d = elist[j]
        if rng.random() < 0.5:
            c, d = d, c
        if len({a, b, c, d}) < 4:
            continue
        e1 = (min(a, c), max(a, c))
        e2 = (min(b, d), max(b, d))
        if e1 in edges or e2 in edges:
            continue
        edges.discard(elist[i])
        edges.discard(elist[j])
        edges.add(e1)
        edges.add(e2)
        elist[i], elist[j] = e1, e2
    return Graph(n, edges)
