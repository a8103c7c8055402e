# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernel. Mirrors pykernel.count_colorings exactly:
same signature, same node accounting, same results. The caller guarantees
the node count fits in 64 bits (see the dispatch overflow guard)."""

import numpy as np

BACKEND = "compiled"


def count_colorings(lists, adj_prev, edge_members, edge_trigger, t, node_cap):
    cdef Py_ssize_t n = len(lists)
    if n == 0:
        return 1, 0, True

    def _flatten(seqs):
        starts = np.zeros(len(seqs) + 1, dtype=np.int32)
        for idx, s in enumerate(seqs):
            starts[idx + 1] = starts[idx] + len(s)
        flat = np.fromiter((x for s in seqs for x in s), dtype=np.int32,
                           count=int(starts[len(seqs)]))
        return flat, starts

    pal_flat_a, pal_start_a = _flatten(lists)
    adj_flat_a, adj_start_a = _flatten(adj_prev)
    edge_flat_a, edge_start_a = _flatten(edge_members)
    trig_flat_a, trig_start_a = _flatten(edge_trigger)

    cdef int[:] pal_flat = pal_flat_a
    cdef int[:] pal_start = pal_start_a
    cdef int[:] adj_flat = adj_flat_a
    cdef int[:] adj_start = adj_start_a
    cdef int[:] edge_flat = edge_flat_a
    cdef int[:] edge_start = edge_start_a
    cdef int[:] trig_flat = trig_flat_a
    cdef int[:] trig_start = trig_start_a

    colors_a = np.full(n, -1, dtype=np.int32)
    choice_a = np.zeros(n, dtype=np.int32)
    cdef int[:] colors = colors_a
    cdef int[:] choice = choice_a

    cdef unsigned long long count = 0
    cdef unsigned long long nodes = 0
    cdef unsigned long long cap = min(int(node_cap), (1 << 63) - 1)
    cdef int tt = t
    cdef Py_ssize_t k = 0
    cdef int ci, npal, c, ok, good, mult, cp, e
    cdef Py_ssize_t jj, ee, pp, qq
    cdef int advanced

    while k >= 0:
        npal = pal_start[k + 1] - pal_start[k]
        advanced = 0
        ci = choice[k]
        while ci < npal:
            c = pal_flat[pal_start[k] + ci]
            ci += 1
            ok = 1
            for jj in range(adj_start[k], adj_start[k + 1]):
                if colors[adj_flat[jj]] == c:
                    ok = 0
                    break
            if ok and trig_start[k] < trig_start[k + 1]:
                colors[k] = c
                for ee in range(trig_start[k], trig_start[k + 1]):
                    e = trig_flat[ee]
                    good = 0
                    for pp in range(edge_start[e], edge_start[e + 1]):
                        cp = colors[edge_flat[pp]]
                        mult = 0
                        for qq in range(edge_start[e], edge_start[e + 1]):
                            if colors[edge_flat[qq]] == cp:
                                mult += 1
                                if mult > tt:
                                    break
                        if mult <= tt:
                            good = 1
                            break
                    if not good:
                        ok = 0
                        break
            if not ok:
                continue
            if nodes >= cap:
                return int(count), int(nodes), False
            colors[k] = c
            nodes += 1
            choice[k] = ci
            if k == n - 1:
                count += 1
                continue
            k += 1
            choice[k] = 0
            advanced = 1
            break
        if advanced:
            continue
        choice[k] = 0
        k -= 1
    return int(count), int(nodes), True
