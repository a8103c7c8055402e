"""Compare the pure-Python and compiled counting kernels.

Runs the same capped counting workloads through both backends and prints a
CSV of node throughput.  Counts and node totals must agree exactly; a
mismatch is a bug, so the script asserts it.

Usage: python benchmarks/kernel_bench.py [--cap N] [--csv PATH]
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from pcfcolor._kernels import HAVE_COMPILED
from pcfcolor.colorings import ListAssignment
from pcfcolor.graphs import ConflictInstance, generate, neighborhood_hypergraph
from pcfcolor.solvers import count_pcf_colorings


def workloads(cap: int):
    for name, graph, palette in [
        ("cycle18_p5", generate("cycle", 18), 5),
        ("cycle24_p4", generate("cycle", 24), 4),
        ("gnp12_p6", generate("gnp", 12, seed=7, p=0.3), 6),
        ("regular14_k4_p6", generate("random_regular", 14, seed=3, k=4), 6),
    ]:
        inst = ConflictInstance(graph, neighborhood_hypergraph(graph))
        lists = ListAssignment.uniform(graph.n, palette)
        yield name, inst, lists, cap


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cap", type=int, default=2_000_000,
                    help="node budget per run (default 2e6)")
    ap.add_argument("--csv", help="also write rows here")
    args = ap.parse_args(argv)

    backends = ["pure"] + (["compiled"] if HAVE_COMPILED else [])
    if not HAVE_COMPILED:
        print("note: compiled kernel unavailable, benchmarking pure only",
              file=sys.stderr)
    rows = [["workload", "backend", "nodes", "seconds", "mnodes_per_s",
             "count", "complete"]]
    for name, inst, lists, cap in workloads(args.cap):
        seen = {}
        for backend in backends:
            t0 = time.perf_counter()
            res = count_pcf_colorings(inst, lists, node_cap=cap,
                                      prefer=backend)
            dt = time.perf_counter() - t0
            seen[backend] = (res.count, res.nodes, res.complete)
            rows.append([name, backend, res.nodes, f"{dt:.4f}",
                         f"{res.nodes / dt / 1e6:.2f}", res.count,
                         res.complete])
        if len(seen) == 2:
            assert seen["pure"] == seen["compiled"], (name, seen)

    writer = csv.writer(sys.stdout)
    writer.writerows(rows)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            csv.writer(fh).writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
