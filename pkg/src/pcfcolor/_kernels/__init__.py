"""Counting-kernel backend selection.

The compiled (Cython) kernel is used when it built successfully, the
PCFCOLOR_PURE environment variable is unset, and the search cannot
overflow its 64-bit counters; otherwise the pure-Python kernel (big
integers, no limits) takes over. Both share one calling convention and
return identical results on the same input.
"""

from __future__ import annotations

import os

from ..errors import ParameterError
from . import pykernel

_compiled = None
if not os.environ.get("PCFCOLOR_PURE"):
    try:
        from . import ckernel as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

HAVE_COMPILED = _compiled is not None

_NODE_BUDGET_BITS = 62


def _fits_compiled(lists, node_cap) -> bool:
    # nodes <= n * prod |L(v)|; keep that and node_cap within 64-bit range
    product = 1
    for pal in lists:
        product *= max(len(pal), 1)
        if product >= 1 << _NODE_BUDGET_BITS:
            return False
    return max(len(lists), 1) * product < 1 << _NODE_BUDGET_BITS


def choose_backend(lists, node_cap, prefer: str | None = None):
    """Return the kernel module handling this instance.

    prefer: None/"auto" picks compiled when safe, "pure"/"compiled" force
    a backend ("compiled" raises if unavailable or unsafe on this input).
    """
    if prefer in (None, "auto"):
        if _compiled is not None and _fits_compiled(lists, node_cap):
            return _compiled
        return pykernel
    if prefer == "pure":
        return pykernel
    if prefer == "compiled":
        if _compiled is None:
            raise ParameterError("compiled kernel is not available in this install")
        if not _fits_compiled(lists, node_cap):
            raise ParameterError(
                "instance too large for the compiled kernel's 64-bit counters")
        return _compiled
    raise ParameterError(f"unknown kernel preference {prefer!r}")


def count_colorings(lists, adj_prev, edge_members, edge_trigger, t, node_cap,
                    prefer: str | None = None):
    mod = choose_backend(lists, node_cap, prefer)
    return mod.count_colorings(lists, adj_prev, edge_members, edge_trigger,
                               t, node_cap)
