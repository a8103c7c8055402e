"""End-to-end acceptance checks, one test per shipped guarantee.

Every test pins its tolerance and wall-clock budget; nothing here is
statistical except where explicitly labelled a diagnostic.
"""

import math
import random
import time
from fractions import Fraction
from statistics import mean

from helpers import complete, connected_graphs, cycle, nb_inst

from pcfcolor import bounds, fractional, optcheck, stirling
from pcfcolor.colorings import ListAssignment, bichromatic_paths_ok, is_pcf
from pcfcolor.exactmath import ceil_fraction, floor_rational_power
from pcfcolor.graphs import (
    ConflictInstance,
    Hypergraph,
    degeneracy_ordering,
    generate,
    neighborhood_hypergraph,
    star_linear_hypergraph,
)
from pcfcolor.solvers import (
    SolverConfig,
    exact_chi_pcf,
    greedy_pcf,
    rosenfeld_check,
    sample_pcf,
)


def test_five_cycle_needs_five_colors():
    start = time.perf_counter()
    assert exact_chi_pcf(nb_inst(cycle(5))) == 5
    assert time.perf_counter() - start < 1.0


def test_stirling_recurrence_matches_brute_force():
    start = time.perf_counter()
    for t in (1, 2, 3):
        for d in range(0, 13):
            for i in range(0, d + 1):
                assert (stirling.stirling_assoc(t, d, i)
                        == stirling.brute_force_stirling(t, d, i))
    assert time.perf_counter() - start < 30.0


def test_power_sum_grid_certifies_three_parameter_pairs():
    start = time.perf_counter()
    for R, beta in ((750, 600), (750, 750), (1000, 800)):
        report = bounds.verify_power_sum(R, beta, d_max=10**9)
        assert report.ok
        assert report.d_lo == 3
        assert report.d_hi == floor_rational_power(beta, 19, 20)
    assert time.perf_counter() - start < 300.0


def test_two_term_bounds_dominate_exact_stirling():
    start = time.perf_counter()
    for d in range(2, 41):
        for i in range(1, d // 2 + 1):
            _, _, best = bounds.two_term_bounds(d, i)
            assert best >= stirling.stirling_assoc(2, d, i)
    assert time.perf_counter() - start < 60.0


def test_partial_sums_within_closed_form_bounds():
    start = time.perf_counter()
    grid = [
        (Fraction(4, 5), Fraction("0.32")),
        (Fraction(2, 3), Fraction("0.3272")),
        (Fraction("0.6550826"), Fraction("0.32754")),
    ]
    checked = 0
    for R in (50, 100, 200):
        for eps, c in grid:
            beta = eps * R
            for d in range(10, min(60, R) + 1):
                p = bounds.BoundParams(d=d, R=R, beta=beta, eps=eps, c=c)
                assert bounds.check_lower_sum(p).verdict == "pass"
                assert bounds.check_upper_sum(p).verdict == "pass"
                checked += 1
    assert checked == 3 * (41 + 51 + 51)
    assert time.perf_counter() - start < 120.0


def test_critical_point_certification():
    start = time.perf_counter()
    crit = optcheck.find_critical()
    assert Fraction("1.72153083") < crit.r0[0] <= crit.r0[1] < Fraction("1.72153084")
    assert Fraction("0.1288161367") < crit.t0[0] <= crit.t0[1] < Fraction("0.1288161525")
    assert Fraction("0.22176095") < crit.s0[0] <= crit.s0[1] < Fraction("0.22176098")
    assert crit.log_g_hi <= Fraction("-0.2845001") + Fraction(1, 10**7)

    gm = optcheck.grid_max_g(step=1e-3, refine=3)
    assert gm.verdict == "pass"
    assert 0.7524 - gm.value >= 1e-6

    rng = random.Random(11)
    checked = 0
    while checked < 30:
        s = rng.uniform(0.05, 0.9)
        t = rng.uniform(0.01, 0.3)
        h = 1e-7
        if not (optcheck.in_st_domain(s - h, t - h)
                and optcheck.in_st_domain(s + h, t + h)):
            continue
        gs, gt = optcheck.grad_log_g(s, t)
        f = lambda a, b: math.log(optcheck.summand_base_st(a, b))
        fd_s = (f(s + h, t) - f(s - h, t)) / (2 * h)
        fd_t = (f(s, t + h) - f(s, t - h)) / (2 * h)
        assert abs(gs - fd_s) <= 1e-6 * max(1, abs(gs))
        assert abs(gt - fd_t) <= 1e-6 * max(1, abs(gt))
        checked += 1
    assert time.perf_counter() - start < 120.0


def test_counting_bound_holds_on_random_instances():
    start = time.perf_counter()
    rng = random.Random(2024)
    betas = [Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3), Fraction(4, 3)]
    found = 0
    while found < 50:
        n = rng.randrange(4, 9)
        g = generate("gnp", n, seed=rng.randrange(10**6), p=rng.choice([0.2, 0.35]))
        ci = ConflictInstance(g, neighborhood_hypergraph(g))
        beta = rng.choice(betas)
        t = rng.choice([1, 2])
        a = ceil_fraction(bounds.required_list_size(ci, beta, t))
        if a**n > 3 * 10**8:   # keep the exact count tractable
            continue
        rep = rosenfeld_check(ci, ListAssignment.uniform(n, a), beta, t=t)
        assert rep.ok
        p, q = beta.numerator, beta.denominator
        assert rep.count.count * q**n >= p**n
        found += 1
    assert time.perf_counter() - start < 300.0


def test_greedy_palette_bound_holds():
    start = time.perf_counter()
    rng = random.Random(88)
    for _ in range(1000):
        n = rng.randrange(1, 61)
        g = generate("gnp", n, seed=rng.randrange(10**7), p=rng.uniform(0.03, 0.3))
        ci = ConflictInstance(g, neighborhood_hypergraph(g))
        col = greedy_pcf(ci)
        degen, _ = degeneracy_ordering(g)
        assert is_pcf(ci, col)
        assert max(col.used()) <= degen + ci.hypergraph.max_degree() + 1
    assert time.perf_counter() - start < 60.0


def test_sampler_output_has_short_bichromatic_paths():
    start = time.perf_counter()
    rng = random.Random(14)
    cfg_cap = SolverConfig().restart_cap
    failures = 0
    for _ in range(50):
        n = rng.randrange(8, 26)
        while True:
            g = generate("gnp", n, seed=rng.randrange(10**7),
                         p=rng.uniform(0.08, 5.0 / n))
            delta = g.max_degree()
            if 2 <= delta <= 5:
                break
        ci = ConflictInstance(g, star_linear_hypergraph(g))
        lists = ListAssignment.uniform(n, bounds.star_linear_palette(delta))
        res = sample_pcf(ci, lists, SolverConfig(seed=rng.randrange(10**6)))
        if res.ok:
            assert is_pcf(ci, res.coloring, lists)
            assert bichromatic_paths_ok(g, res.coloring, 3)
        else:
            assert res.restarts == cfg_cap   # only cap exhaustion may fail
            failures += 1
    assert failures / 50 < 0.10
    assert time.perf_counter() - start < 300.0


def test_lp_duality_on_all_small_connected_graphs():
    start = time.perf_counter()
    total = 0
    for n in range(1, 6):
        for g in connected_graphs(n):
            ci = ConflictInstance(g, neighborhood_hypergraph(g))
            lp = fractional.fractional_pcf_lp(ci)
            _, payoff = fractional.best_stable_payoff(
                ci, lp.dual.normalized(), lp.system)
            assert payoff == 1 / lp.optimum
            assert lp.optimum <= exact_chi_pcf(ci)
            total += 1
    assert total == 1 + 1 + 4 + 38 + 728

    for n in range(1, 6):
        empty = ConflictInstance(complete(n), Hypergraph(n, []))
        assert fractional.fractional_pcf_lp(empty).optimum == n
    for k in range(1, 5):
        odd = ConflictInstance(cycle(2 * k + 1), Hypergraph(2 * k + 1, []))
        assert fractional.fractional_pcf_lp(odd).optimum == 2 + Fraction(1, k)
    assert time.perf_counter() - start < 300.0


def test_stable_sampler_always_returns_stable_sets():
    start = time.perf_counter()
    rng = random.Random(55)
    pool = []
    for _ in range(20):
        n = rng.randrange(10, 41)
        k = rng.choice([4, 6, 8])
        g = generate("random_regular", n, seed=rng.randrange(10**6), k=k)
        ci = ConflictInstance(g, neighborhood_hypergraph(g))
        m = len(ci.hypergraph.edges)
        w = fractional.DualWeights(f=[Fraction(1, n + m)] * n,
                                   g=[Fraction(1, n + m)] * m)
        pool.append((ci, w))
    ratios = []
    for i in range(10_000):
        ci, w = pool[i % len(pool)]
        res = fractional.weighted_stable_sampler(
            ci, w, fractional.SamplerParams(eps=0.25, seed=i))
        s = res.s
        for u, v in ci.graph.edges():
            assert not (u in s and v in s)
        if res.guarantee:
            ratios.append(float(res.payoff) / res.guarantee)
    # diagnostic only: the asymptotic payoff floor is not binding here
    print(f"\npayoff/guarantee over {len(ratios)} guaranteed runs: "
          f"mean {mean(ratios):.2f}, min {min(ratios):.2f}")
    assert time.perf_counter() - start < 120.0


def test_palette_calculators_agree():
    start = time.perf_counter()
    assert bounds.palette_main(750, 600) == 1378
    for delta in (4, 9, 16):
        assert (bounds.palette_fixed_rank_sqrt(
            delta, Fraction(5, 2) * delta**3, Fraction(15, 2) * delta**3)
            == bounds.star_linear_palette(delta))
    assert time.perf_counter() - start < 5.0
