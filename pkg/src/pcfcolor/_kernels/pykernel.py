"""Pure-Python counting kernel: exhaustive enumeration of proper
t-conflict-free list colorings over a prepared, component-local instance.

Shares its calling convention with the compiled kernel so the two are
interchangeable (and testable against each other):

    count_colorings(lists, adj_prev, edge_members, edge_trigger, t, node_cap)
        -> (count, nodes, complete)

* lists[k]: tuple of color ids (ints >= 0) allowed at position k
* adj_prev[k]: positions j < k adjacent to k in the graph
* edge_members[e]: positions of hyperedge e; edge_trigger[k]: edges whose
  last member (max position) is k, checked once fully colored
* a node is one accepted vertex assignment; when nodes would exceed
  node_cap the search stops with complete=False and the partial count
"""

from __future__ import annotations

BACKEND = "pure"


def count_colorings(lists, adj_prev, edge_members, edge_trigger, t, node_cap):
    n = len(lists)
    if n == 0:
        return 1, 0, True
    colors = [0] * n
    count = 0
    nodes = 0

    # iterative DFS with an explicit choice-index stack; avoids recursion
    # overhead and the recursion limit
    choice = [0] * n
    k = 0
    while k >= 0:
        pal = lists[k]
        advanced = False
        ci = choice[k]
        while ci < len(pal):
            c = pal[ci]
            ci += 1
            ok = True
            for j in adj_prev[k]:
                if colors[j] == c:
                    ok = False
                    break
            if ok and edge_trigger[k]:
                colors[k] = c
                for e in edge_trigger[k]:
                    members = edge_members[e]
                    good = False
                    for p in members:
                        cp = colors[p]
                        mult = 0
                        for q in members:
                            if colors[q] == cp:
                                mult += 1
                                if mult > t:
                                    break
                        if mult <= t:
                            good = True
                            break
                    if not good:
                        ok = False
                        break
            if not ok:
                continue
            if nodes >= node_cap:
                return count, nodes, False
            colors[k] = c
            nodes += 1
            choice[k] = ci
            if k == n - 1:
                count += 1
                continue
            k += 1
            choice[k] = 0
            advanced = True
            break
        if advanced:
            continue
        choice[k] = 0
        k -= 1
    return count, nodes, True
