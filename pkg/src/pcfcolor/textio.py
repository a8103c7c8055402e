"""Text formats for graphs, hypergraphs, colorings, lists, and set colorings.

Graphs use a DIMACS-like format: optional "c" comment lines, one
"p edge <n> <m>" header, then m lines "e <u> <v>". Vertex ids are 1-based in
every file format and 0-based in memory.
"""

from __future__ import annotations

from .colorings import Coloring, ListAssignment, SetColoring
from .errors import FormatError
from .graphs import Graph, Hypergraph


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c ") or line == "c":
            continue
        yield lineno, line


def _vertex(tok: str, n: int, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: expected a vertex id, got {tok!r}") from None
    if not (1 <= v <= n):
        raise FormatError(f"line {lineno}: vertex {v} out of range 1..{n}")
    return v - 1


def parse_graph(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    for lineno, line in _lines(text):
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "edge":
                raise FormatError(f"line {lineno}: expected 'p edge <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: bad problem line counts") from None
            if n < 0 or m < 0:
                raise FormatError(f"line {lineno}: negative counts")
        elif parts[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: expected 'e <u> <v>'")
            edges.append((_vertex(parts[1], n, lineno), _vertex(parts[2], n, lineno)))
        else:
            raise FormatError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise FormatError("missing 'p edge <n> <m>' line")
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, file has {len(edges)}")
    try:
        return Graph(n, edges)
    except Exception as exc:
        raise FormatError(str(exc)) from None


def write_graph(graph: Graph) -> str:
    out = [f"p edge {graph.n} {graph.m}"]
    out.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(out) + "\n"


def parse_hypergraph(text: str, n: int) -> Hypergraph:
    edges = []
    for lineno, line in _lines(text):
        edges.append([_vertex(tok, n, lineno) for tok in line.split()])
    try:
        return Hypergraph(n, edges)
    except Exception as exc:
        raise FormatError(str(exc)) from None


def write_hypergraph(hypergraph: Hypergraph) -> str:
    out = [" ".join(str(v + 1) for v in sorted(e)) for e in hypergraph.edges]
    return "\n".join(out) + ("\n" if out else "")


def _indexed_rows(text: str, n: int, what: str) -> list[tuple[int, list[str], int]]:
    rows = []
    seen: set[int] = set()
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) < 2:
            raise FormatError(f"line {lineno}: expected '<vertex> {what}'")
        v = _vertex(parts[0], n, lineno)
        if v in seen:
            raise FormatError(f"line {lineno}: vertex {v + 1} listed twice")
        seen.add(v)
        rows.append((v, parts[1:], lineno))
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise FormatError(f"missing entries for vertices {[v + 1 for v in missing]}")
    return rows


def _color(tok: str, lineno: int) -> int:
    try:
        c = int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: expected a color, got {tok!r}") from None
    if c < 1:
        raise FormatError(f"line {lineno}: colors are positive integers, got {c}")
    return c


def parse_coloring(text: str, n: int) -> Coloring:
    colors = [0] * n
    for v, toks, lineno in _indexed_rows(text, n, "<color>"):
        if len(toks) != 1:
            raise FormatError(f"line {lineno}: expected exactly one color")
        colors[v] = _color(toks[0], lineno)
    return Coloring(colors)


def write_coloring(coloring: Coloring) -> str:
    return "\n".join(f"{v + 1} {c}" for v, c in enumerate(coloring.colors)) + "\n"


def parse_lists(text: str, n: int) -> ListAssignment:
    lists: list[list[int]] = [[] for _ in range(n)]
    for v, toks, lineno in _indexed_rows(text, n, "<c1> <c2> ..."):
        lists[v] = [_color(tok, lineno) for tok in toks]
    try:
        return ListAssignment(lists)
    except Exception as exc:
        raise FormatError(str(exc)) from None


def write_lists(lists: ListAssignment) -> str:
    out = [
        f"{v + 1} " + " ".join(str(c) for c in sorted(l))
        for v, l in enumerate(lists.lists)
    ]
    return "\n".join(out) + "\n"


def parse_set_coloring(text: str, n: int) -> SetColoring:
    sets: list[list[int]] = [[] for _ in range(n)]
    for v, toks, lineno in _indexed_rows(text, n, "<c1>,...,<cb>"):
        if len(toks) != 1:
            raise FormatError(f"line {lineno}: expected one comma-separated color set")
        sets[v] = [_color(tok, lineno) for tok in toks[0].split(",") if tok]
        if not sets[v]:
            raise FormatError(f"line {lineno}: empty color set")
    try:
        return SetColoring(sets)
    except Exception as exc:
        raise FormatError(str(exc)) from None


def write_set_coloring(psi: SetColoring) -> str:
    out = [
        f"{v + 1} " + ",".join(str(c) for c in sorted(s))
        for v, s in enumerate(psi.sets)
    ]
    return "\n".join(out) + "\n"
