"""Exact rational LP: min c^T x subject to A x >= b, x >= 0.

Revised two-phase simplex over `fractions.Fraction`, entering and leaving
variables chosen by Bland's rule, so the method terminates without any
anti-cycling perturbation.  Columns are supplied sparsely because the
intended use (stable-set LPs) has far more columns than rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParameterError, PcfError

__all__ = ["LPSolution", "minimize"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPSolution:
    """Optimal primal/dual pair with exact rational entries.

    ``x`` holds only the nonzero structural values; ``dual`` has one
    multiplier per constraint row (nonnegative at optimality).
    """

    value: Fraction
    x: dict[int, Fraction]
    dual: tuple[Fraction, ...]
    iterations: int


class _Tableau:
    """Basis inverse plus bookkeeping for one phase of the simplex.

    Column ids: 0..N-1 structural, N..N+m-1 surplus, N+m..N+2m-1 artificial.
    """

    def __init__(self, columns, rhs):
        self.cols = columns
        self.m = len(rhs)
        self.nstruct = len(columns)
        self.binv = [[_ONE if i == j else _ZERO for j in range(self.m)]
                     for i in range(self.m)]
        self.xb = [Fraction(v) for v in rhs]
        self.basis = [self.nstruct + self.m + i for i in range(self.m)]
        self.iterations = 0

    def col_dense(self, cid):
        m, n = self.m, self.nstruct
        vec = [_ZERO] * m
        if cid < n:
            for row, coef in self.cols[cid]:
                vec[row] += coef
        elif cid < n + m:
            vec[cid - n] = -_ONE
        else:
            vec[cid - n - m] = _ONE
        return vec

    def _reduced_cost(self, cid, y, costs):
        n = self.nstruct
        if cid < n:
            return costs(cid) - sum(y[row] * coef for row, coef in self.cols[cid])
        if cid < n + self.m:
            return costs(cid) + y[cid - n]
        return costs(cid) - y[cid - n - self.m]

    def dual_row(self, costs):
        cb = [costs(cid) for cid in self.basis]
        return [sum(cb[i] * self.binv[i][k] for i in range(self.m))
                for k in range(self.m)]

    def solve_phase(self, costs, candidates):
        """Run simplex iterations until no candidate column improves."""
        in_basis = set(self.basis)
        while True:
            y = self.dual_row(costs)
            entering = -1
            for cid in candidates:
                if cid in in_basis:
                    continue
                if self._reduced_cost(cid, y, costs) < 0:
                    entering = cid
                    break
            if entering < 0:
                return
            self._pivot_in(entering, in_basis)

    def _pivot_in(self, entering, in_basis):
        m = self.m
        a = self.col_dense(entering)
        d = [sum(self.binv[i][k] * a[k] for k in range(m) if a[k]) for i in range(m)]
        row = -1
        best = None
        for i in range(m):
            if d[i] > 0:
                ratio = self.xb[i] / d[i]
                # Bland tie-break: smallest leaving column id
                if best is None or ratio < best or (ratio == best and
                                                    self.basis[i] < self.basis[row]):
                    best, row = ratio, i
        if row < 0:
            raise PcfError("LP unbounded; the stable-set LP cannot reach this")
        self.pivot(row, entering, d, in_basis)

    def pivot(self, row, entering, d, in_basis):
        m = self.m
        piv = d[row]
        inv_row = self.binv[row]
        self.binv[row] = [v / piv for v in inv_row]
        self.xb[row] /= piv
        for i in range(m):
            if i == row or not d[i]:
                continue
            di = d[i]
            ri, rr = self.binv[i], self.binv[row]
            self.binv[i] = [ri[k] - di * rr[k] for k in range(m)]
            self.xb[i] -= di * self.xb[row]
        in_basis.discard(self.basis[row])
        in_basis.add(entering)
        self.basis[row] = entering
        self.iterations += 1


def minimize(costs: Sequence, columns: Sequence[Sequence[tuple[int, Fraction]]],
             rhs: Sequence) -> LPSolution:
    """Solve min c^T x, A x >= b, x >= 0 exactly.

    ``columns[j]`` lists the nonzero (row, coefficient) entries of column j.
    Requires b >= 0 so the all-artificial basis is primal feasible.
    """
    m = len(rhs)
    n = len(columns)
    if m < 1 or n < 1:
        raise ParameterError("LP needs at least one row and one column")
    if len(costs) != n:
        raise ParameterError(f"{n} columns but {len(costs)} costs")
    b = [Fraction(v) for v in rhs]
    if any(v < 0 for v in b):
        raise ParameterError("right-hand side must be nonnegative")
    cols = [tuple((int(r), Fraction(c)) for r, c in col) for col in columns]
    for j, col in enumerate(cols):
        for r, _ in col:
            if not 0 <= r < m:
                raise ParameterError(f"column {j} references row {r} of {m}")
    cvec = [Fraction(v) for v in costs]
    if any(v < 0 for v in cvec):
        # phase 2 relies on bounded objective over Ax >= b, x >= 0
        raise ParameterError("costs must be nonnegative")

    tab = _Tableau(cols, b)
    art0 = n + m

    def phase1_cost(cid):
        return _ONE if cid >= art0 else _ZERO

    tab.solve_phase(phase1_cost, range(art0))
    if sum(tab.xb[i] for i in range(m) if tab.basis[i] >= art0) != 0:
        raise PcfError("LP infeasible; rainbow columns should prevent this")
    _drive_out_artificials(tab, art0)

    def phase2_cost(cid):
        return cvec[cid] if cid < n else _ZERO

    tab.solve_phase(phase2_cost, range(art0))

    x: dict[int, Fraction] = {}
    for i, cid in enumerate(tab.basis):
        if cid < n and tab.xb[i]:
            x[cid] = x.get(cid, _ZERO) + tab.xb[i]
    value = sum((cvec[j] * v for j, v in x.items()), _ZERO)
    dual = tuple(tab.dual_row(phase2_cost))
    return LPSolution(value=value, x=x, dual=dual, iterations=tab.iterations)


def _drive_out_artificials(tab, art0):
    # zero-level artificials must leave so phase 2 never moves them;
    # binv is nonsingular, so every row meets some surplus column at least
    in_basis = set(tab.basis)
    for row in range(tab.m):
        if tab.basis[row] < art0:
            continue
        for cid in range(art0):
            if cid in in_basis:
                continue
            a = tab.col_dense(cid)
            d = [sum(tab.binv[i][k] * a[k] for k in range(tab.m) if a[k])
                 for i in range(tab.m)]
            if d[row]:
                tab.pivot(row, cid, d, in_basis)
                break
        else:
            raise PcfError("singular basis while removing artificial variables")
