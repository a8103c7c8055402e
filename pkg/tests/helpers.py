"""Shared instance builders for the test suite."""

from itertools import combinations

from pcfcolor.graphs import (ConflictInstance, Graph, Hypergraph,
                             neighborhood_hypergraph)


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def empty_h(n: int) -> Hypergraph:
    return Hypergraph(n, ())


def inst(graph: Graph, hyper: Hypergraph | None = None) -> ConflictInstance:
    return ConflictInstance(graph, hyper or empty_h(graph.n))


def nb_inst(graph: Graph) -> ConflictInstance:
    return ConflictInstance(graph, neighborhood_hypergraph(graph))


def connected_graphs(n: int):
    """All labeled connected graphs on exactly n vertices."""
    if n == 1:
        yield Graph(1)
        return
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        g = Graph(n, edges)
        if g.is_connected():
            yield g
