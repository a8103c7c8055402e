import random

import pytest

from pcfcolor.colorings import ListAssignment, is_pcf, is_proper
from pcfcolor.errors import ParameterError
from pcfcolor.graphs import (
    ConflictInstance,
    Graph,
    Hypergraph,
    degeneracy_ordering,
    generate,
    neighborhood_hypergraph,
)
from pcfcolor.solvers import (
    SolverConfig,
    count_pcf_colorings,
    exact_chi_pcf,
    extend_reduced_coloring,
    greedy_pcf,
    reduce_low_degree,
    rosenfeld_check,
    sample_pcf,
)

from helpers import complete, cycle, inst, nb_inst, path


def test_greedy_edgeless():
    ci = ConflictInstance(Graph(4, []), Hypergraph(4, []))
    assert greedy_pcf(ci).colors == (1, 1, 1, 1)


def test_greedy_examples():
    for g in (complete(4), cycle(5)):
        ci = nb_inst(g)
        col = greedy_pcf(ci)
        assert is_pcf(ci, col)
        d, _ = degeneracy_ordering(g)
        assert max(col.used()) <= d + ci.hypergraph.max_degree() + 1


def test_greedy_bound_random():
    rng = random.Random(31)
    for _ in range(150):
        g = generate("gnp", rng.randrange(1, 25), seed=rng.randrange(10**6), p=0.25)
        ci = nb_inst(g)
        col = greedy_pcf(ci)
        assert is_pcf(ci, col)
        d, _ = degeneracy_ordering(g)
        assert max(col.used()) <= d + ci.hypergraph.max_degree() + 1


def test_exact_examples():
    assert exact_chi_pcf(nb_inst(cycle(5))) == 5
    assert exact_chi_pcf(nb_inst(path(3))) == 3
    assert exact_chi_pcf(nb_inst(complete(2))) == 2
    assert exact_chi_pcf(inst(Graph(0, []))) == 0
    assert exact_chi_pcf(inst(Graph(1, []))) == 1


def test_exact_budget_bracket():
    res = exact_chi_pcf(nb_inst(cycle(5)), SolverConfig(node_cap=2))
    assert isinstance(res, tuple)
    lo, hi = res
    assert lo <= 5 <= hi


def test_exact_below_greedy():
    rng = random.Random(8)
    for _ in range(25):
        g = generate("gnp", rng.randrange(1, 8), seed=rng.randrange(10**6), p=0.4)
        ci = nb_inst(g)
        assert exact_chi_pcf(ci) <= max(greedy_pcf(ci).used())


def test_count_examples():
    iso3 = ConflictInstance(Graph(3, []), Hypergraph(3, [[0, 1, 2]]))
    assert count_pcf_colorings(iso3, ListAssignment.uniform(3, 3)).count == 24
    assert count_pcf_colorings(inst(complete(3)), ListAssignment.uniform(3, 3)).count == 6
    assert count_pcf_colorings(inst(Graph(1, [])), ListAssignment.uniform(1, 2)).count == 2


def test_count_t2_relaxes():
    # monochromatic pairs use a color twice: invalid at t=1, fine at t=2
    iso2 = ConflictInstance(Graph(2, []), Hypergraph(2, [[0, 1]]))
    assert count_pcf_colorings(iso2, ListAssignment.uniform(2, 2), t=1).count == 2
    assert count_pcf_colorings(iso2, ListAssignment.uniform(2, 2), t=2).count == 4
    # a size-3 edge colored monochromatically exceeds t=2 too
    iso3 = ConflictInstance(Graph(3, []), Hypergraph(3, [[0, 1, 2]]))
    assert count_pcf_colorings(iso3, ListAssignment.uniform(3, 3), t=2).count == 24


def test_count_backend_and_jobs_agree():
    rng = random.Random(17)
    for _ in range(20):
        g = generate("gnp", rng.randrange(2, 8), seed=rng.randrange(10**6), p=0.35)
        ci = nb_inst(g)
        lists = ListAssignment.uniform(g.n, rng.randrange(2, 5))
        base = count_pcf_colorings(ci, lists, prefer="pure")
        fast = count_pcf_colorings(ci, lists)
        sharded = count_pcf_colorings(ci, lists, jobs=2)
        assert base.count == fast.count == sharded.count


def test_count_incomplete_flag():
    ci = inst(complete(3))
    res = count_pcf_colorings(ci, ListAssignment.uniform(3, 3), node_cap=2)
    assert not res.complete


def test_count_validation():
    with pytest.raises(ParameterError):
        count_pcf_colorings(inst(complete(3)), ListAssignment.uniform(2, 3))
    with pytest.raises(ParameterError):
        count_pcf_colorings(inst(complete(3)), ListAssignment.uniform(3, 3), t=0)


def test_rosenfeld_examples():
    iso3 = ConflictInstance(Graph(3, []), Hypergraph(3, [[0, 1, 2]]))
    res = rosenfeld_check(iso3, ListAssignment.uniform(3, 3), 2)
    assert res.ok and res.required == 5 / 2 and res.count.count == 24
    res = rosenfeld_check(inst(complete(3)), ListAssignment.uniform(3, 3), 1)
    assert res.ok and res.required == 3
    res = rosenfeld_check(inst(complete(3)), ListAssignment.uniform(3, 2), 1)
    assert res.verdict == "premise-not-met" and res.count is None


def test_sample_c5():
    cfg = SolverConfig(seed=42)
    ci = nb_inst(cycle(5))
    res = sample_pcf(ci, ListAssignment.uniform(5, 5), cfg)
    assert res.ok and is_pcf(ci, res.coloring)
    again = sample_pcf(ci, ListAssignment.uniform(5, 5), cfg)
    assert again.coloring.colors == res.coloring.colors  # same seed, same run


def test_sample_needs_seed():
    with pytest.raises(ParameterError):
        sample_pcf(nb_inst(cycle(5)), ListAssignment.uniform(5, 5), SolverConfig())


def test_sample_exhaustion():
    res = sample_pcf(inst(complete(3)), ListAssignment.uniform(3, 2),
                     SolverConfig(seed=1, restart_cap=3))
    assert not res.ok and res.coloring is None and res.restarts == 3


def test_reduce_p3():
    kernel, trace = reduce_low_degree(path(3))
    assert kernel.n == 1 and kernel.m == 0 and len(trace.steps) == 2


def test_reduce_c5_trace():
    kernel, trace = reduce_low_degree(cycle(5))
    assert kernel.n == 1
    first = trace.steps[0]
    assert first.vertex == 0 and first.neighbors == (1, 4)
    assert first.added_edge == (1, 4)  # C5 - v + xy = C4
    # the triangle stage removes a vertex whose neighbors are already adjacent
    assert trace.steps[2].added_edge is None


def test_reduce_three_regular_untouched():
    kernel, trace = reduce_low_degree(complete(4))
    assert kernel.n == 4 and kernel.m == 6 and not trace.steps


def test_extend_c5():
    kernel, trace = reduce_low_degree(cycle(5))
    kcol = greedy_pcf(ConflictInstance(kernel, neighborhood_hypergraph(kernel)))
    ext = extend_reduced_coloring(trace, kcol, ListAssignment.uniform(5, 7))
    assert is_pcf(nb_inst(cycle(5)), ext)


def test_reduce_extend_round_trip_random():
    rng = random.Random(23)
    done = 0
    while done < 40:
        g = generate("gnp", rng.randrange(3, 13), seed=rng.randrange(10**6), p=0.3)
        kernel, trace = reduce_low_degree(g)
        ci_k = ConflictInstance(kernel, neighborhood_hypergraph(kernel))
        kcol = greedy_pcf(ci_k)
        # palette 2*Delta + 3 always suffices for the replay rule
        width = 2 * max(g.max_degree(), 1) + 3
        ext = extend_reduced_coloring(trace, kcol, ListAssignment.uniform(g.n, width))
        ci = nb_inst(g)
        assert is_proper(g, ext) and is_pcf(ci, ext)
        done += 1


def test_extend_validation():
    kernel, trace = reduce_low_degree(path(3))
    kcol = greedy_pcf(ConflictInstance(kernel, neighborhood_hypergraph(kernel)))
    with pytest.raises(ParameterError):
        extend_reduced_coloring(trace, kcol, ListAssignment.uniform(2, 5))


def test_config_validation():
    with pytest.raises(ParameterError):
        SolverConfig(t=0)
    with pytest.raises(ParameterError):
        SolverConfig(node_cap=0)
