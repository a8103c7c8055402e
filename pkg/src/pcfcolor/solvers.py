"""Constructive and exact PCF coloring algorithms: the degeneracy greedy,
an exact chromatic solver, exhaustive coloring counters backed by the
compiled/pure kernel pair, the counting-premise check, a randomized
sampler, and the low-degree reduction with replayable extension."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import _kernels, bounds
from .colorings import Coloring, ListAssignment, is_pcf
from .errors import ParameterError, PcfError
from .exactmath import as_fraction
from .graphs import (ConflictInstance, Graph, degeneracy_ordering,
                     neighborhood_hypergraph)

DEFAULT_NODE_CAP = 1 << 62
DEFAULT_RESTART_CAP = 20


@dataclass(frozen=True)
class SolverConfig:
    t: int = 1
    seed: Optional[int] = None
    restart_cap: int = DEFAULT_RESTART_CAP
    node_cap: int = DEFAULT_NODE_CAP
    palette: Union[int, ListAssignment, None] = None

    def __post_init__(self):
        if self.t < 1:
            raise ParameterError(f"t must be >= 1, got {self.t}")
        if self.restart_cap < 1 or self.node_cap < 1:
            raise ParameterError("caps must be positive")


@dataclass(frozen=True)
class CountResult:
    count: int
    complete: bool
    nodes: int = 0
    backend: str = "pure"


def greedy_pcf(inst: ConflictInstance) -> Coloring:
    """Greedy PCF coloring in a degeneracy order with the leader rule.

    Each hyperedge's leader (its earliest vertex in the order) keeps a
    color no later member may reuse, so the leader's color stays unique on
    the edge. Uses at most degeneracy + max_degree(H) + 1 colors.
    """
    g, h = inst.graph, inst.hypergraph
    _, order = degeneracy_ordering(g)
    pos = {v: k for k, v in enumerate(order)}
    leader = [min(e, key=pos.__getitem__) for e in h.edges]
    colors = [0] * inst.n
    for v in order:
        forbidden = {colors[w] for w in g.neighbors(v) if colors[w]}
        for idx in h.edges_at(v):
            lv = leader[idx]
            if lv != v and colors[lv]:
                forbidden.add(colors[lv])
        c = 1
        while c in forbidden:
            c += 1
        colors[v] = c
    return Coloring(colors)


def _combined_components(inst: ConflictInstance) -> list[list[int]]:
    # union-find over graph edges and hyperedge memberships, so counting
    # factorizes over parts that share no constraint
    parent = list(range(inst.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for u, v in inst.graph.edges():
        union(u, v)
    for e in inst.hypergraph.edges:
        members = sorted(e)
        for w in members[1:]:
            union(members[0], w)
    groups: dict[int, list[int]] = {}
    for v in range(inst.n):
        groups.setdefault(find(v), []).append(v)
    return [sorted(g) for g in sorted(groups.values())]


def _prepare_component(inst: ConflictInstance, lists: ListAssignment,
                       comp: list[int]):
    """Component-local kernel arrays: dense color ids, earlier-neighbor
    lists, and hyperedges keyed to the position that completes them."""
    pos = {v: k for k, v in enumerate(comp)}
    color_id: dict[int, int] = {}
    pal = []
    for v in comp:
        row = []
        for c in sorted(lists.lists[v]):
            row.append(color_id.setdefault(c, len(color_id)))
        pal.append(tuple(row))
    adj_prev = [tuple(sorted(pos[w] for w in inst.graph.neighbors(v)
                             if w in pos and pos[w] < pos[v]))
                for v in comp]
    edge_members = []
    edge_trigger: list[list[int]] = [[] for _ in comp]
    for e in inst.hypergraph.edges:
        members = sorted(e)
        if members[0] not in pos:
            continue
        positions = tuple(sorted(pos[w] for w in members))
        edge_trigger[positions[-1]].append(len(edge_members))
        edge_members.append(positions)
    return pal, adj_prev, edge_members, [tuple(x) for x in edge_trigger]


def _count_shard(args):
    pal, adj_prev, edge_members, edge_trigger, t, node_cap, prefer, first = args
    pal = [tuple(first)] + list(pal[1:])
    return _kernels.count_colorings(pal, adj_prev, edge_members, edge_trigger,
                                    t, node_cap, prefer)


def count_pcf_colorings(inst: ConflictInstance, lists: ListAssignment,
                        t: int = 1, node_cap: int = DEFAULT_NODE_CAP,
                        prefer: Optional[str] = None,
                        jobs: int = 1) -> CountResult:
    """Exact number of proper t-conflict-free list colorings of the whole
    vertex set. Factorizes over combined (graph + hypergraph) components;
    the count is only meaningful when complete is True."""
    if len(lists) != inst.n:
        raise ParameterError(f"list assignment covers {len(lists)} vertices, instance has {inst.n}")
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    total = 1
    nodes = 0
    backends = set()
    for comp in _combined_components(inst):
        pal, adj_prev, edge_members, edge_trigger = _prepare_component(
            inst, lists, comp)
        backend = _kernels.choose_backend(pal, node_cap, prefer)
        backends.add(backend.BACKEND)
        if jobs > 1 and len(pal) > 1 and len(pal[0]) >= 2:
            shards = [(pal, adj_prev, edge_members, edge_trigger, t, node_cap,
                       prefer, pal[0][k::jobs])
                      for k in range(min(jobs, len(pal[0])))]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_count_shard, shards))
            count = sum(p[0] for p in parts)
            nodes += sum(p[1] for p in parts)
            ok = all(p[2] for p in parts)
        else:
            count, comp_nodes, ok = backend.count_colorings(
                pal, adj_prev, edge_members, edge_trigger, t, node_cap)
            nodes += comp_nodes
        total *= count
        if not ok:
            return CountResult(total, False, nodes, "+".join(sorted(backends)))
    return CountResult(total, True, nodes, "+".join(sorted(backends)) or "pure")


@dataclass(frozen=True)
class RosenfeldResult:
    verdict: str  # pass / fail / premise-not-met / inconclusive
    required: Fraction
    beta: Fraction
    count: Optional[CountResult] = None

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"


def rosenfeld_check(inst: ConflictInstance, lists: ListAssignment, beta,
                    t: int = 1, node_cap: int = DEFAULT_NODE_CAP,
                    prefer: Optional[str] = None) -> RosenfeldResult:
    """Desk-scale check of the counting premise: when every list has at
    least Delta(G) + beta + (partition sum) colors, the number of proper
    t-conflict-free list colorings is at least beta^n (compared exactly)."""
    b = as_fraction(beta)
    required = bounds.required_list_size(inst, b, t)
    if lists.min_size() < required:
        return RosenfeldResult("premise-not-met", required, b)
    res = count_pcf_colorings(inst, lists, t, node_cap, prefer)
    if not res.complete:
        return RosenfeldResult("inconclusive", required, b, res)
    p, q = b.numerator, b.denominator
    ok = res.count * q**inst.n >= p**inst.n
    return RosenfeldResult("pass" if ok else "fail", required, b, res)


def _feasible(inst: ConflictInstance, comp: list[int], k: int, t: int,
              budget: list[int]) -> Optional[bool]:
    """Is there a PCF coloring of this component with k colors? None when
    the node budget runs out first. Colors are introduced smallest-first
    (symmetry breaking)."""
    uniform = ListAssignment.uniform(inst.n, k)
    pal, adj_prev, edge_members, edge_trigger = _prepare_component(
        inst, uniform, comp)
    n = len(comp)
    colors = [-1] * n
    maxused = [0] * (n + 1)

    def dfs(i: int) -> Optional[bool]:
        if i == n:
            return True
        limit = min(k, maxused[i] + 1)
        for c in range(limit):
            if any(colors[j] == c for j in adj_prev[i]):
                continue
            colors[i] = c
            ok = True
            for e in edge_trigger[i]:
                members = edge_members[e]
                if not any(sum(1 for q in members if colors[q] == colors[p]) <= t
                           for p in members):
                    ok = False
                    break
            if ok:
                if budget[0] <= 0:
                    colors[i] = -1
                    return None
                budget[0] -= 1
                maxused[i + 1] = max(maxused[i], c + 1)
                sub = dfs(i + 1)
                if sub:
                    return True
                if sub is None:
                    colors[i] = -1
                    return None
            colors[i] = -1
        return False

    return dfs(0)


def exact_chi_pcf(inst: ConflictInstance,
                  cfg: SolverConfig = SolverConfig()) -> Union[int, tuple[int, int]]:
    """Minimum number of colors in a proper t-conflict-free coloring, by
    per-component backtracking. Returns the exact value, or a (lower,
    upper) bracket when the node budget is exhausted."""
    if inst.n == 0:
        return 0
    upper_bound = max(greedy_pcf(inst).used())
    budget = [cfg.node_cap]
    answer = 1
    for comp in _combined_components(inst):
        # chi of the whole instance is the max over combined components
        for k in range(1, upper_bound + 1):
            res = _feasible(inst, comp, k, cfg.t, budget)
            if res is None:
                return (max(answer, k), upper_bound)
            if res:
                answer = max(answer, k)
                break
    return answer


@dataclass(frozen=True)
class SampleResult:
    coloring: Optional[Coloring]
    restarts: int
    nodes: int

    @property
    def ok(self) -> bool:
        return self.coloring is not None


def sample_pcf(inst: ConflictInstance, lists: ListAssignment,
               cfg: SolverConfig) -> SampleResult:
    """Randomized backtracking sampler: random vertex order, shuffled
    per-vertex palettes, per-restart node budget, up to restart_cap
    restarts. Any returned coloring is verified t-conflict-free."""
    if cfg.seed is None:
        raise ParameterError("sample_pcf needs a seeded config (seed is None)")
    if len(lists) != inst.n:
        raise ParameterError(f"list assignment covers {len(lists)} vertices, instance has {inst.n}")
    rng = random.Random(cfg.seed)
    h = inst.hypergraph
    total_nodes = 0
    for restart in range(cfg.restart_cap):
        order = list(range(inst.n))
        rng.shuffle(order)
        pos = {v: i for i, v in enumerate(order)}
        pal = []
        for v in order:
            row = sorted(lists.lists[v])
            rng.shuffle(row)
            pal.append(row)
        trigger: list[list[int]] = [[] for _ in range(inst.n)]
        for idx, e in enumerate(h.edges):
            trigger[max(pos[w] for w in e)].append(idx)
        colors = [0] * inst.n
        nodes = 0
        choice = [0] * inst.n
        i = 0
        aborted = False
        while 0 <= i < inst.n:
            v = order[i]
            advanced = False
            ci = choice[i]
            while ci < len(pal[i]):
                c = pal[i][ci]
                ci += 1
                if any(colors[w] == c for w in inst.graph.neighbors(v)):
                    continue
                colors[v] = c
                bad = False
                for idx in trigger[i]:
                    e = h.edges[idx]
                    if not any(sum(1 for w in e if colors[w] == colors[u]) <= cfg.t
                               for u in e):
                        bad = True
                        break
                if bad:
                    colors[v] = 0
                    continue
                nodes += 1
                if nodes > cfg.node_cap:
                    aborted = True
                    break
                choice[i] = ci
                i += 1
                if i < inst.n:
                    choice[i] = 0
                advanced = True
                break
            if aborted:
                break
            if not advanced:
                colors[v] = 0
                choice[i] = 0
                i -= 1
                if i >= 0:
                    colors[order[i]] = 0
        total_nodes += nodes
        if not aborted and i == inst.n:
            out = Coloring(colors)
            if not is_pcf(inst, out, lists=lists, t=cfg.t):
                raise PcfError("sampler produced an invalid coloring (internal bug)")
            return SampleResult(out, restart + 1, total_nodes)
    return SampleResult(None, cfg.restart_cap, total_nodes)


@dataclass(frozen=True)
class ReductionStep:
    vertex: int
    neighbors: tuple[int, ...]
    added_edge: Optional[tuple[int, int]]


@dataclass(frozen=True)
class ReductionTrace:
    n: int
    steps: tuple[ReductionStep, ...]
    kernel_vertices: tuple[int, ...]
    kernel_edges: tuple[tuple[int, int], ...] = field(repr=False)

    def kernel_index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.kernel_vertices)}


class ExtensionError(PcfError):
    def __init__(self, vertex: int, msg: str):
        super().__init__(msg)
        self.vertex = vertex


def reduce_low_degree(graph: Graph) -> tuple[Graph, ReductionTrace]:
    """Repeatedly delete a vertex of degree 1 or 2; when its two neighbors
    are distinct and non-adjacent, join them. Returns the kernel (relabeled
    to 0..k-1) and a trace that extend_reduced_coloring can replay."""
    adj = {v: set(graph.neighbors(v)) for v in range(graph.n)}
    present = set(range(graph.n))
    steps = []
    while True:
        candidates = [v for v in present if 1 <= len(adj[v]) <= 2]
        if not candidates:
            break
        v = min(candidates, key=lambda u: (len(adj[u]), u))
        nbrs = sorted(adj[v])
        added = None
        if len(nbrs) == 2:
            x, y = nbrs
            if y not in adj[x]:
                adj[x].add(y)
                adj[y].add(x)
                added = (x, y)
        for w in nbrs:
            adj[w].discard(v)
        del adj[v]
        present.discard(v)
        steps.append(ReductionStep(v, tuple(nbrs), added))
    kernel_vertices = tuple(sorted(present))
    index = {v: i for i, v in enumerate(kernel_vertices)}
    kernel_edges = tuple(sorted((min(u, w), max(u, w))
                                for u in present for w in adj[u] if u < w))
    kernel = Graph(len(kernel_vertices),
                   [(index[u], index[w]) for u, w in kernel_edges])
    return kernel, ReductionTrace(graph.n, tuple(steps), kernel_vertices,
                                  kernel_edges)


def _unique_colors(colors: dict[int, int], vertices) -> list[int]:
    seen: dict[int, int] = {}
    for w in vertices:
        seen[colors[w]] = seen.get(colors[w], 0) + 1
    return sorted(c for c, m in seen.items() if m == 1)


def extend_reduced_coloring(trace: ReductionTrace, kernel_coloring: Coloring,
                            lists: ListAssignment,
                            verify: bool = True) -> Coloring:
    """Replay a reduction trace backwards, extending a PCF coloring of the
    kernel (neighborhood-hypergraph sense, t=1) to the original graph.

    Each reinserted vertex picks the smallest list color that keeps the
    coloring proper and preserves a uniquely-used color in each affected
    neighborhood; with lists of size >= Delta + beta + sqrt(Delta) this
    never fails, and at any scale failure raises ExtensionError naming the
    blocking vertex."""
    if len(lists) != trace.n:
        raise ParameterError(f"list assignment covers {len(lists)} vertices, trace has {trace.n}")
    colors: dict[int, int] = {}
    for i, v in enumerate(trace.kernel_vertices):
        colors[v] = kernel_coloring.colors[i]
    adj: dict[int, set[int]] = {v: set() for v in trace.kernel_vertices}
    for u, w in trace.kernel_edges:
        adj[u].add(w)
        adj[w].add(u)
    for step in reversed(trace.steps):
        v, nbrs = step.vertex, step.neighbors
        forbidden = {colors[w] for w in nbrs}
        if step.added_edge is None:
            # G' = G - v: keep each neighbor's unique color intact
            for u in nbrs:
                others = [w for w in nbrs if w != u]
                uniq = _unique_colors(colors, adj[u]) if adj[u] else []
                preferred = [c for c in uniq
                             if not others or c != colors[others[0]]]
                if preferred:
                    forbidden.add(preferred[0])
                elif uniq:
                    forbidden.add(uniq[0])
        else:
            x, y = step.added_edge
            adj[x].discard(y)
            adj[y].discard(x)
            for u, other in ((x, y), (y, x)):
                uniq = _unique_colors(colors, adj[u] | {other})
                preferred = [c for c in uniq if c != colors[other]]
                if preferred:
                    forbidden.add(preferred[0])
                else:
                    # forced case: v's own color must become the unique one
                    forbidden.update(colors[w] for w in adj[u])
        choice = sorted(lists.lists[v] - forbidden)
        if not choice:
            raise ExtensionError(
                v, f"no admissible color for vertex {v}: list exhausted by "
                   f"{len(forbidden)} forbidden colors")
        colors[v] = choice[0]
        adj[v] = set(nbrs)
        for w in nbrs:
            adj[w].add(v)
        if verify:
            sub_vertices = sorted(adj)
            index = {u: i for i, u in enumerate(sub_vertices)}
            sub = Graph(len(sub_vertices),
                        [(index[a], index[b]) for a in sub_vertices
                         for b in adj[a] if a < b])
            phi = Coloring([colors[u] for u in sub_vertices])
            inst = ConflictInstance(sub, neighborhood_hypergraph(sub))
            if not is_pcf(inst, phi):
                raise ExtensionError(
                    v, f"extension at vertex {v} broke the coloring (internal bug)")
    return Coloring([colors[v] for v in range(trace.n)])
