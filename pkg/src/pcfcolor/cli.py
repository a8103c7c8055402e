"""Command-line front end: verification, solving, grid certification, LP,
sampling, generation, and a small benchmark harness.

Every subcommand prints one JSON run record (stdout or --out) tagged with
"schema": 1, the input file hashes, the seed, and the wall time, so a record
is enough to reproduce the run.  Exit codes: 0 pass, 1 verification failure,
2 usage error.  Exact rationals appear as {"num": ..., "den": ...} string
pairs; grid subcommands write CSV side files.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import shlex
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import bounds, fractional, optcheck, solvers, stirling, textio
from .colorings import (Coloring, ListAssignment, is_proper,
                        is_t_conflict_free, is_pcf, bichromatic_paths_ok,
                        is_fractional_pcf)
from .errors import FormatError, ParameterError, PcfError
from .exactmath import PASS, e_power_bounds
from .graphs import (ConflictInstance, Graph, Hypergraph, generate,
                     degeneracy_ordering, neighborhood_hypergraph,
                     star_linear_hypergraph)

__all__ = ["main"]


class _Run:
    """Collects the provenance that goes into the run record."""

    def __init__(self):
        self.inputs: dict[str, str] = {}
        self.outputs: list[str] = []

    def read(self, path: str) -> str:
        data = Path(path).read_bytes()
        self.inputs[path] = "sha256:" + hashlib.sha256(data).hexdigest()
        return data.decode("utf-8")

    def write(self, path: str, text: str) -> None:
        Path(path).write_text(text)
        self.outputs.append(path)


def _pair(value) -> dict[str, str]:
    f = Fraction(value)
    return {"num": str(f.numerator), "den": str(f.denominator)}


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"not a rational: {text!r} ({exc})") from None


def _load_graph(run: _Run, args) -> Graph:
    return textio.parse_graph(run.read(args.graph))


def _load_instance(run: _Run, args) -> ConflictInstance:
    graph = _load_graph(run, args)
    spec = args.hypergraph
    if spec == "auto-neighborhood":
        hyper = neighborhood_hypergraph(graph)
    elif spec == "auto-star-linear":
        hyper = star_linear_hypergraph(graph)
    else:
        hyper = textio.parse_hypergraph(run.read(spec), graph.n)
    return ConflictInstance(graph, hyper)


def _load_lists(run: _Run, args, n: int) -> ListAssignment:
    if getattr(args, "lists", None):
        return textio.parse_lists(run.read(args.lists), n)
    if getattr(args, "palette", None):
        return ListAssignment.uniform(n, args.palette)
    raise ParameterError("need --lists FILE or --palette K")


def _default_jobs() -> int:
    return int(os.environ.get("JOBS", "1"))


# ---------------------------------------------------------------- handlers

def cmd_verify(args, run):
    graph = _load_graph(run, args)
    checks: dict[str, bool] = {}
    checks["graph_roundtrip"] = textio.parse_graph(textio.write_graph(graph)) == graph
    spec = args.hypergraph
    if spec == "auto-neighborhood":
        hyper = neighborhood_hypergraph(graph)
    elif spec == "auto-star-linear":
        hyper = star_linear_hypergraph(graph)
    else:
        hyper = textio.parse_hypergraph(run.read(spec), graph.n)
        checks["hypergraph_roundtrip"] = textio.parse_hypergraph(
            textio.write_hypergraph(hyper), graph.n) == hyper
    inst = ConflictInstance(graph, hyper)
    if args.coloring:
        col = textio.parse_coloring(run.read(args.coloring), graph.n)
        checks["proper"] = is_proper(graph, col)
        checks["conflict_free"] = is_t_conflict_free(inst.hypergraph, col, args.t)
        if args.t == 1:
            checks["pcf"] = is_pcf(inst, col)
        if args.paths_max and checks["proper"]:
            checks["paths_ok"] = bichromatic_paths_ok(graph, col, args.paths_max)
    if args.set_coloring:
        psi = textio.parse_set_coloring(run.read(args.set_coloring), graph.n)
        checks["fractional_pcf"] = is_fractional_pcf(inst, psi)
    ok = all(checks.values())
    return ok, {"n": graph.n, "m": graph.m, "checks": checks}


def cmd_greedy(args, run):
    inst = _load_instance(run, args)
    col = solvers.greedy_pcf(inst)
    degen, _ = degeneracy_ordering(inst.graph)
    cap = degen + inst.hypergraph.max_degree() + 1
    used = len(col.used())
    valid = is_pcf(inst, col)
    if args.coloring_out:
        run.write(args.coloring_out, textio.write_coloring(col))
    return valid and used <= cap, {
        "colors_used": used, "bound": cap, "pcf": valid}


def cmd_exact(args, run):
    inst = _load_instance(run, args)
    cfg = solvers.SolverConfig(t=args.t, node_cap=args.node_cap)
    chi = solvers.exact_chi_pcf(inst, cfg)
    return True, {"chi_pcf": chi, "t": args.t}


def cmd_count(args, run):
    inst = _load_instance(run, args)
    lists = _load_lists(run, args, inst.n)
    res = solvers.count_pcf_colorings(inst, lists, t=args.t,
                                      node_cap=args.node_cap,
                                      prefer=args.backend, jobs=args.jobs)
    return True, {"count": str(res.count), "nodes": res.nodes,
                  "complete": res.complete, "backend": res.backend,
                  "t": args.t}


def cmd_rosenfeld_check(args, run):
    inst = _load_instance(run, args)
    lists = _load_lists(run, args, inst.n)
    res = solvers.rosenfeld_check(inst, lists, _rat(args.beta), t=args.t,
                                  node_cap=args.node_cap,
                                  prefer=None if args.backend == "auto"
                                  else args.backend)
    payload = {"verdict": res.verdict, "beta": _pair(res.beta),
               "required": _pair(res.required), "t": args.t}
    if res.count is not None:
        payload["count"] = str(res.count.count)
    return res.ok, payload


def cmd_sample(args, run):
    inst = _load_instance(run, args)
    lists = _load_lists(run, args, inst.n)
    cfg = solvers.SolverConfig(t=args.t, seed=args.seed,
                               restart_cap=args.restart_cap,
                               node_cap=args.node_cap)
    res = solvers.sample_pcf(inst, lists, cfg)
    payload = {"ok": res.ok, "restarts": res.restarts, "nodes": res.nodes,
               "t": args.t}
    ok = res.ok
    if res.ok:
        if args.paths_max:
            payload["paths_ok"] = bichromatic_paths_ok(
                inst.graph, res.coloring, args.paths_max)
            ok = ok and payload["paths_ok"]
        if args.coloring_out:
            run.write(args.coloring_out, textio.write_coloring(res.coloring))
    return ok, payload


def cmd_reduce(args, run):
    graph = _load_graph(run, args)
    kernel, trace = solvers.reduce_low_degree(graph)
    if args.kernel_out:
        run.write(args.kernel_out, textio.write_graph(kernel))
    steps = [{"vertex": s.vertex, "neighbors": list(s.neighbors),
              "added_edge": list(s.added_edge) if s.added_edge else None}
             for s in trace.steps]
    return True, {"kernel_n": kernel.n, "kernel_m": kernel.m, "steps": steps}


def _knuth_row(n: int):
    # certify n^n <= n! e^(n-1) <= n^(n+1) via rational enclosures of e^(n-1)
    fact = math.factorial(n)
    for prec in (96, 256, 1024):
        lo, hi = e_power_bounds(n - 1, prec)
        if fact * lo >= n ** n and fact * hi <= n ** (n + 1):
            ratio_hi = fact * hi / Fraction(n ** (n + 1))
            return fact, float(ratio_hi), "pass"
        if fact * hi < n ** n or fact * lo > n ** (n + 1):
            return fact, float(fact * hi / Fraction(n ** (n + 1))), "fail"
    return fact, float("nan"), "inconclusive"


def _stirling_rows(args):
    lemma = args.lemma
    dmax = args.dmax
    if lemma in ("clm1", "lower", "upper") and args.R is None:
        raise ParameterError(f"--lemma {lemma} needs --R")
    if lemma in ("clm1", "lower", "upper", "simple") and args.beta is None:
        raise ParameterError(f"--lemma {lemma} needs --beta")
    beta = _rat(args.beta) if args.beta is not None else None
    if dmax is None:
        if lemma == "clm1":
            dmax = bounds._floor_pow_19_20(beta)
        else:
            dmax = 60
    eps, c = _rat(args.eps), _rat(args.c)
    for d in range(args.dmin, dmax + 1):
        try:
            if lemma == "clm1":
                s = stirling.pcf_sum_exact(d, beta)
                verdict = PASS if s * s * args.R <= 1 else "fail"
                yield d, s, args.R ** -0.5, verdict
            elif lemma == "lower":
                res = bounds.check_lower_sum(
                    bounds.BoundParams(d, args.R, beta, eps, c))
                yield d, res.lhs, float(res.rhs_hi), res.verdict
            elif lemma == "upper":
                res = bounds.check_upper_sum(
                    bounds.BoundParams(d, args.R, beta, eps, c))
                yield d, res.lhs, float(res.rhs_hi), res.verdict
            elif lemma == "simple":
                s = stirling.pcf_sum_exact(d, beta)
                cap = bounds.simple_sum_bound(d, beta)
                yield d, s, float(cap), PASS if s <= cap else "fail"
            elif lemma == "two-basic":
                row = stirling.table(2).row(d)
                total = Fraction(sum(row))
                capsum = Fraction(0)
                good = True
                for i in range(1, d // 2 + 1):
                    _, _, best = bounds.two_term_bounds(d, i)
                    capsum += best
                    good = good and best >= row[i]
                yield d, total, float(capsum), PASS if good else "fail"
            else:  # knuth
                fact, ratio, verdict = _knuth_row(d)
                yield d, Fraction(fact), ratio, verdict
        except ParameterError as exc:
            yield d, Fraction(0), float("nan"), f"error: {exc}"


def cmd_stirling_check(args, run):
    rows = 0
    failures = 0
    csv_path = args.csv or f"stirling-{args.lemma}.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["d", "exact_sum_num", "exact_sum_den", "bound",
                         "verdict"])
        for d, exact, bound, verdict in _stirling_rows(args):
            writer.writerow([d, exact.numerator, exact.denominator,
                             repr(bound), verdict])
            rows += 1
            if verdict != PASS:
                failures += 1
    run.outputs.append(csv_path)
    ok = rows > 0 and failures == 0
    return ok, {"lemma": args.lemma, "rows": rows, "failures": failures,
                "csv": csv_path, "verdict": "pass" if ok else "fail"}


def cmd_opt_check(args, run):
    crit = optcheck.find_critical()
    grid = optcheck.grid_max_g(step=args.step, refine=args.refine,
                               jobs=args.jobs)
    calc = optcheck.calculus_checks()
    mid_s = (crit.s0[0] + crit.s0[1]) / 2
    mid_t = (crit.t0[0] + crit.t0[1]) / 2
    negdef = optcheck.hessian_negdef(float(mid_s), float(mid_t))
    crit_verdict = optcheck.bound_verdict(crit.g_max_hi)
    payload = {
        "critical": {
            "r0": [_pair(crit.r0[0]), _pair(crit.r0[1])],
            "t0": [_pair(crit.t0[0]), _pair(crit.t0[1])],
            "s0": [_pair(crit.s0[0]), _pair(crit.s0[1])],
            "log_g": [float(crit.log_g_lo), float(crit.log_g_hi)],
            "g_max_hi": crit.g_max_hi,
            "verdict": crit_verdict,
        },
        "grid": {"s": grid.s, "t": grid.t, "value": grid.value,
                 "verdict": grid.verdict, "step": args.step,
                 "refine": args.refine},
        "hessian_negdef": negdef,
        "calculus": {"ok": calc.ok, "limits": list(calc.limit_values)},
    }
    ok = (crit_verdict == PASS and grid.verdict == PASS and negdef
          and calc.ok)
    return ok, payload


def cmd_frac_lp(args, run):
    inst = _load_instance(run, args)
    lp = fractional.fractional_pcf_lp(inst)
    support = [{"set": sorted(lp.system.vertices(j)), "x": _pair(xj)}
               for j, xj in enumerate(lp.primal) if xj > 0]
    return True, {
        "t_star": _pair(lp.optimum), "t_star_float": float(lp.optimum),
        "stable_sets": len(lp.system),
        "primal": support,
        "dual": {"f": [_pair(v) for v in lp.dual.f],
                 "g": [_pair(v) for v in lp.dual.g]},
    }


def cmd_frac_dual_check(args, run):
    inst = _load_instance(run, args)
    rep = fractional.duality_check(inst, trials=args.trials, seed=args.seed)
    return rep.ok, {"t_star": _pair(rep.t_star),
                    "equality_ok": rep.equality_ok,
                    "sampled_ok": rep.sampled_ok, "verdict": rep.verdict,
                    "trials": args.trials}


def _uniform_weights(inst: ConflictInstance) -> fractional.DualWeights:
    total = inst.n + inst.hypergraph.m
    w = Fraction(1, total)
    return fractional.DualWeights([w] * inst.n, [w] * inst.hypergraph.m)


def cmd_frac_sample(args, run):
    inst = _load_instance(run, args)
    if args.from_lp:
        weights = fractional.fractional_pcf_lp(inst).dual.normalized()
    else:
        weights = _uniform_weights(inst)
    params = fractional.SamplerParams(eps=args.eps, seed=args.seed, p=args.p)
    res = fractional.weighted_stable_sampler(inst, weights, params)
    return True, {
        "s": sorted(res.s), "payoff": _pair(res.payoff),
        "payoff_float": float(res.payoff), "p": res.p,
        "picked": len(res.picked), "kept": len(res.kept),
        "classes": len(res.classes), "guarantee": res.guarantee}


def cmd_frac_round(args, run):
    inst = _load_instance(run, args)
    lp = fractional.fractional_pcf_lp(inst)
    res = fractional.round_to_ab(lp)
    if args.psi_out:
        run.write(args.psi_out, textio.write_set_coloring(res.psi))
    return res.fractional_ok, {
        "a": res.a, "b": res.b, "ratio": _pair(res.ratio),
        "fractional_ok": res.fractional_ok}


def cmd_gen(args, run):
    graph = generate(args.kind, args.n, seed=args.seed, p=args.p, k=args.k)
    run.write(args.gen_out, textio.write_graph(graph))
    return True, {"kind": args.kind, "n": graph.n, "m": graph.m,
                  "out": args.gen_out}


def _bench_row(index: int, argv: list[str]):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pcfcolor.cli"] + argv,
                          capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    verdict = {0: "pass", 1: "fail"}.get(proc.returncode, "error")
    return index, " ".join(argv), proc.returncode, verdict, elapsed


def cmd_bench(args, run):
    lines = [ln.strip() for ln in run.read(args.suite).splitlines()]
    rows = [shlex.split(ln) for ln in lines if ln and not ln.startswith("#")]
    results = []
    if args.jobs > 1 and rows:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(lambda p: _bench_row(*p),
                                    enumerate(rows)))
    else:
        results = [_bench_row(i, argv) for i, argv in enumerate(rows)]
    results.sort()
    csv_path = args.csv
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row", "command", "exit_code", "verdict", "seconds"])
        for index, cmd, code, verdict, elapsed in results:
            writer.writerow([index, cmd, code, verdict, f"{elapsed:.6f}"])
    run.outputs.append(csv_path)
    tally = {"pass": 0, "fail": 0, "error": 0}
    for _, _, _, verdict, _ in results:
        tally[verdict] += 1
    ok = tally["fail"] == 0 and tally["error"] == 0
    return ok, {"rows": len(results), **tally, "csv": csv_path}


# ---------------------------------------------------------------- parser

def _add_instance_flags(sub):
    sub.add_argument("--graph", required=True, help="graph file (DIMACS-like)")
    sub.add_argument("--hypergraph", default="auto-neighborhood",
                     help="auto-neighborhood | auto-star-linear | FILE")


def _add_count_flags(sub):
    sub.add_argument("--lists", help="list-assignment file")
    sub.add_argument("--palette", type=int, help="uniform palette size")
    sub.add_argument("--t", type=int, default=1)
    sub.add_argument("--node-cap", type=int,
                     default=solvers.DEFAULT_NODE_CAP)
    sub.add_argument("--jobs", type=int, default=_default_jobs())
    sub.add_argument("--backend", choices=["auto", "pure", "compiled"],
                     default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcfcolor",
        description="proper conflict-free coloring toolkit")
    parser.add_argument("--out", help="write the JSON run record here")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("verify", help="validate files and colorings")
    _add_instance_flags(p)
    p.add_argument("--coloring")
    p.add_argument("--set-coloring")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--paths-max", type=int)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("greedy", help="degeneracy greedy PCF coloring")
    _add_instance_flags(p)
    p.add_argument("--coloring-out")
    p.set_defaults(func=cmd_greedy)

    p = subs.add_parser("exact", help="exact PCF chromatic number")
    _add_instance_flags(p)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--node-cap", type=int, default=solvers.DEFAULT_NODE_CAP)
    p.set_defaults(func=cmd_exact)

    p = subs.add_parser("count", help="count list colorings")
    _add_instance_flags(p)
    _add_count_flags(p)
    p.set_defaults(func=cmd_count)

    p = subs.add_parser("rosenfeld-check",
                        help="certify count >= beta^n from list sizes")
    _add_instance_flags(p)
    _add_count_flags(p)
    p.add_argument("--beta", required=True, help="rational, e.g. 5/2")
    p.set_defaults(func=cmd_rosenfeld_check)

    p = subs.add_parser("sample", help="randomized PCF list coloring")
    _add_instance_flags(p)
    p.add_argument("--lists")
    p.add_argument("--palette", type=int)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--restart-cap", type=int,
                   default=solvers.DEFAULT_RESTART_CAP)
    p.add_argument("--node-cap", type=int, default=1 << 20)
    p.add_argument("--paths-max", type=int)
    p.add_argument("--coloring-out")
    p.set_defaults(func=cmd_sample)

    p = subs.add_parser("reduce", help="strip degree <= 2 vertices")
    p.add_argument("--graph", required=True)
    p.add_argument("--kernel-out")
    p.set_defaults(func=cmd_reduce)

    p = subs.add_parser("stirling-check", help="sum-bound grid CSV")
    p.add_argument("--lemma", required=True,
                   choices=["clm1", "lower", "upper", "simple", "two-basic",
                            "knuth"])
    p.add_argument("--R", type=int)
    p.add_argument("--beta")
    p.add_argument("--dmin", type=int, default=3)
    p.add_argument("--dmax", type=int)
    p.add_argument("--eps", default="4/5")
    p.add_argument("--c", default="8/25")
    p.add_argument("--csv")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.set_defaults(func=cmd_stirling_check)

    p = subs.add_parser("opt-check", help="certify the summand maximum")
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--refine", type=int, default=3)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.set_defaults(func=cmd_opt_check)

    p = subs.add_parser("frac-lp", help="exact fractional PCF optimum")
    _add_instance_flags(p)
    p.set_defaults(func=cmd_frac_lp)

    p = subs.add_parser("frac-dual-check", help="payoff duality check")
    _add_instance_flags(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_frac_dual_check)

    p = subs.add_parser("frac-sample", help="randomized stable-set payoff")
    _add_instance_flags(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--p", type=float)
    p.add_argument("--from-lp", action="store_true",
                   help="use the normalized LP dual as weights (n <= 20)")
    p.set_defaults(func=cmd_frac_sample)

    p = subs.add_parser("frac-round", help="scale the LP into an (a:b)-coloring")
    _add_instance_flags(p)
    p.add_argument("--psi-out")
    p.set_defaults(func=cmd_frac_round)

    p = subs.add_parser("gen", help="write a generated graph")
    p.add_argument("--kind", required=True,
                   choices=["gnp", "cycle", "complete", "random_regular"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True, dest="gen_out")
    p.set_defaults(func=cmd_gen)

    p = subs.add_parser("bench", help="run a suite file, write timings CSV")
    p.add_argument("--suite", required=True)
    p.add_argument("--csv", default="bench.csv")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    run = _Run()
    started = time.perf_counter()
    try:
        ok, payload = args.func(args, run)
    except (ParameterError, FormatError, FileNotFoundError, IsADirectoryError,
            NotADirectoryError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PcfError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    record = {
        "schema": 1,
        "subcommand": args.subcommand,
        "inputs": run.inputs,
        "outputs": run.outputs,
        "seed": getattr(args, "seed", None),
        "wall_time_s": round(time.perf_counter() - started, 6),
        "verdict": "pass" if ok else "fail",
    }
    record.update(payload)
    text = json.dumps(record, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
