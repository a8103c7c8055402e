import random
import warnings
from fractions import Fraction

import pytest

from pcfcolor import fractional as fr
from pcfcolor.colorings import is_fractional_pcf
from pcfcolor.errors import ParameterError
from pcfcolor.graphs import ConflictInstance, Graph, Hypergraph, generate, neighborhood_hypergraph
from pcfcolor.solvers import exact_chi_pcf

from helpers import complete, cycle, inst, nb_inst


def test_enumeration_counts():
    assert len(fr.enumerate_stable_sets(complete(3)).sets) == 3
    # C5: 5 singletons + 5 non-adjacent pairs, nothing larger
    assert len(fr.enumerate_stable_sets(cycle(5)).sets) == 10
    assert len(fr.enumerate_stable_sets(Graph(3, [])).sets) == 7
    with pytest.raises(ParameterError):
        fr.enumerate_stable_sets(Graph(21, []))


def test_enumeration_a2_definition():
    rng = random.Random(3)
    for _ in range(15):
        g = generate("gnp", rng.randrange(2, 8), seed=rng.randrange(10**6), p=0.35)
        h = neighborhood_hypergraph(g)
        system = fr.enumerate_stable_sets(g, h)
        for j, mask in enumerate(system.sets):
            verts = system.vertices(j)
            assert all(u not in g.neighbors(v) for u in verts for v in verts if u < v)
            for z, emask in enumerate(system.edge_masks):
                expected = bin(emask & mask).count("1") == 1
                assert bool(system.a2[j] >> z & 1) == expected


def test_lp_cliques_and_odd_cycles():
    for n in range(1, 6):
        assert fr.fractional_pcf_lp(inst(complete(n))).optimum == n
    for k in range(1, 5):
        assert fr.fractional_pcf_lp(inst(cycle(2 * k + 1))).optimum == 2 + Fraction(1, k)


def test_lp_c5_regression():
    lp = fr.fractional_pcf_lp(nb_inst(cycle(5)))
    assert lp.optimum == Fraction(5, 2)
    assert sum(lp.primal) == lp.optimum
    assert lp.dual.total() == lp.optimum  # strong duality, unnormalized


def test_lp_below_integral_chi():
    rng = random.Random(10)
    for _ in range(15):
        g = generate("gnp", rng.randrange(1, 6), seed=rng.randrange(10**6), p=0.4)
        ci = nb_inst(g)
        assert fr.fractional_pcf_lp(ci).optimum <= exact_chi_pcf(ci)


def test_payoff_examples():
    w = fr.DualWeights(f=(Fraction(1), Fraction(0), Fraction(0), Fraction(0), Fraction(0)))
    s, pay = fr.best_stable_payoff(inst(cycle(5)), w)
    assert s == frozenset({0}) and pay == 1
    uniform = fr.DualWeights(f=(Fraction(1, 5),) * 5)
    assert fr.best_stable_payoff(inst(cycle(5)), uniform)[1] == Fraction(2, 5)
    # all weight on one hyperedge: any stable set meeting it once pays 1
    ci = ConflictInstance(Graph(3, []), Hypergraph(3, [[0, 1, 2]]))
    w = fr.DualWeights(f=(Fraction(0),) * 3, g=(Fraction(1),))
    s, pay = fr.best_stable_payoff(ci, w)
    assert pay == 1 and len(s & {0, 1, 2}) == 1


def test_payoff_validation():
    with pytest.raises(ParameterError):
        fr.best_stable_payoff(inst(cycle(5)), fr.DualWeights(f=(Fraction(1),) * 3))
    with pytest.raises(ParameterError):
        fr.DualWeights(f=(Fraction(-1),))


def test_duality_examples():
    assert fr.duality_check(nb_inst(cycle(5))).ok
    rep = fr.duality_check(inst(Graph(1, [])))
    assert rep.ok and rep.t_star == 1
    lp = fr.fractional_pcf_lp(inst(complete(3)))
    norm = lp.dual.normalized()
    assert norm.f == (Fraction(1, 3),) * 3
    _, pay = fr.best_stable_payoff(inst(complete(3)), norm)
    assert pay == Fraction(1, 3)


def test_duality_random_instances():
    rng = random.Random(77)
    for _ in range(10):
        g = generate("gnp", rng.randrange(1, 7), seed=rng.randrange(10**6), p=0.35)
        assert fr.duality_check(nb_inst(g), trials=25, seed=rng.randrange(999)).ok


def test_sampler_edgeless_full_set():
    g = Graph(4, [])
    w = fr.DualWeights(f=(Fraction(1, 4),) * 4)
    res = fr.weighted_stable_sampler(
        inst(g), w, fr.SamplerParams(eps=Fraction(1, 10), seed=5, p=Fraction(1)))
    assert res.s == frozenset(range(4)) and res.payoff == 1


def test_sampler_deterministic():
    g = generate("random_regular", 30, seed=4, k=6)
    ci = ConflictInstance(g, neighborhood_hypergraph(g))
    m = ci.hypergraph.m
    w = fr.DualWeights(f=(Fraction(1, 30 + m),) * 30, g=(Fraction(1, 30 + m),) * m)
    p = fr.SamplerParams(eps=Fraction(1, 4), seed=9)
    a = fr.weighted_stable_sampler(ci, w, p)
    b = fr.weighted_stable_sampler(ci, w, p)
    assert a.s == b.s and a.payoff == b.payoff


def test_sampler_regression_50_vertices():
    import math

    g = generate("random_regular", 50, seed=11, k=10)
    ci = ConflictInstance(g, neighborhood_hypergraph(g))
    w = fr.DualWeights(f=(Fraction(1, 100),) * 50,
                       g=(Fraction(1, 100),) * ci.hypergraph.m)
    res = fr.weighted_stable_sampler(
        ci, w, fr.SamplerParams(eps=Fraction(1, 4), seed=123))
    assert len(res.s) == 4 and res.payoff == Fraction(1, 4)
    assert abs(float(res.p) - math.log(10) / 10) < 1e-12
    assert res.guarantee == pytest.approx(0.0375)


def test_sampler_rank_warning():
    ci = ConflictInstance(cycle(3), Hypergraph(3, [[0, 1, 2]]))
    w = fr.DualWeights(f=(Fraction(1, 4),) * 3, g=(Fraction(1, 4),))
    with warnings.catch_warnings(record=True) as wl:
        warnings.simplefilter("always")
        res = fr.weighted_stable_sampler(ci, w, fr.SamplerParams(seed=3))
    assert len(wl) == 1 and "rank" in str(wl[0].message)
    assert res.s  # still produces a stable set


def test_sampler_validation():
    with pytest.raises(ParameterError):
        fr.SamplerParams(eps=0)
    with pytest.raises(ParameterError):
        fr.SamplerParams(p=Fraction(3, 2))
    with pytest.raises(ParameterError):
        fr.weighted_stable_sampler(
            inst(Graph(2, [(0, 1)])), fr.DualWeights(f=(Fraction(1, 2),) * 2),
            fr.SamplerParams(seed=1))  # max degree 1, no default p


def test_round_c5_proper_only():
    lp = fr.fractional_pcf_lp(inst(cycle(5)))
    rr = fr.round_to_ab(lp)
    assert (rr.a, rr.b) == (5, 2) and rr.fractional_ok
    assert rr.ratio == lp.optimum
    assert is_fractional_pcf(inst(cycle(5)), rr.psi)


def test_round_c5_neighborhood():
    lp = fr.fractional_pcf_lp(nb_inst(cycle(5)))
    rr = fr.round_to_ab(lp)
    assert (rr.a, rr.b) == (5, 2) and rr.fractional_ok


def test_round_integral_k3():
    rr = fr.round_to_ab(fr.fractional_pcf_lp(inst(complete(3))))
    assert (rr.a, rr.b) == (3, 1) and rr.fractional_ok
    assert all(len(s) == 1 for s in rr.psi.sets)
    assert len({next(iter(s)) for s in rr.psi.sets}) == 3  # rainbow


def test_chernoff_examples():
    rep = fr.chernoff_diagnostic(1000, 0.5, 0.5)
    assert rep.ok and rep.empirical <= rep.bound + rep.margin
    vac = fr.chernoff_diagnostic(100, 0.1, 0.3)
    assert vac.vacuous and vac.ok and vac.bound > 1
    with pytest.raises(ParameterError):
        fr.chernoff_diagnostic(100, 0.5, 1.0)
    with pytest.raises(ParameterError):
        fr.chernoff_diagnostic(100, 0.0, 0.5)
