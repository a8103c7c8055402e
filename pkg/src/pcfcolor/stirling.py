"""t-associated Stirling set numbers S_t(d, i) and exact partition sums.

S_t(d, i) counts partitions of a d-element set into exactly i parts, each of
size at least t. The table is built from the recurrence

    S_t(d, i) = i * S_t(d-1, i) + C(d-1, t-1) * S_t(d-t, i-1),

with S_t(0, 0) = 1 and S_t(d, i) = 0 whenever i <= 0 < d or i*t > d. The
recurrence is cross-validated in the test suite against brute-force partition
enumeration before anything downstream relies on it.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import ParameterError
from .exactmath import as_fraction

BRUTE_FORCE_LIMIT = 12


class StirlingTable:
    """Grow-on-demand table of S_t(d, i) for one fixed t.

    Rows are immutable tuples indexed by i (0 <= i <= d // t); construction is
    synchronized so shared tables are safe to grow from several threads.
    """

    def __init__(self, t: int):
        if t < 1:
            raise ParameterError(f"t must be >= 1, got {t}")
        self.t = t
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()

    def _grow(self, d: int) -> None:
        with self._lock:
            t = self.t
            rows = self._rows
            while len(rows) <= d:
                dd = len(rows)
                prev = rows[dd - 1]
                older = rows[dd - t] if dd >= t else None
                binom = comb(dd - 1, t - 1)
                row = [0] * (dd // t + 1)
                for i in range(1, dd // t + 1):
                    v = i * prev[i] if i < len(prev) else 0
                    if older is not None and 0 <= i - 1 < len(older):
                        v += binom * older[i - 1]
                    row[i] = v
                rows.append(tuple(row))

    def value(self, d: int, i: int) -> int:
        if d < 0:
            raise ParameterError(f"d must be >= 0, got {d}")
        if i < 0:
            return 0
        if i == 0:
            return 1 if d == 0 else 0
        if i * self.t > d:
            return 0
        if d >= len(self._rows):
            self._grow(d)
        return self._rows[d][i]

    def row(self, d: int) -> tuple[int, ...]:
        """(S_t(d, 0), ..., S_t(d, d // t))."""
        if d < 0:
            raise ParameterError(f"d must be >= 0, got {d}")
        if d >= len(self._rows):
            self._grow(d)
        return self._rows[d]


_tables: dict[int, StirlingTable] = {}
_tables_lock = threading.Lock()


def table(t: int) -> StirlingTable:
    with _tables_lock:
        if t not in _tables:
            _tables[t] = StirlingTable(t)
        return _tables[t]


def stirling_assoc(t: int, d: int, i: int) -> int:
    """S_t(d, i) via the recurrence table."""
    return table(t).value(d, i)


@lru_cache(maxsize=None)
def _brute_force_hist(t: int, d: int) -> tuple[int, ...]:
    # explicit enumeration of set partitions with all parts of size >= t,
    # counting by number of parts; element k joins an existing part or opens
    # a new one, pruning when the remaining elements cannot fill every part
    counts = [0] * (d // t + 1 if t else 1)
    sizes: list[int] = []

    def rec(k: int, deficit: int) -> None:
        if d - k < deficit:
            return  # prune: remaining elements cannot top up short parts
        if k == d:
            counts[len(sizes)] += 1
            return
        for j in range(len(sizes)):
            s = sizes[j]
            sizes[j] = s + 1
            rec(k + 1, deficit - 1 if s < t else deficit)
            sizes[j] = s
        sizes.append(1)
        rec(k + 1, deficit + t - 1)
        sizes.pop()

    if d == 0:
        counts[0] = 1
    else:
        rec(0, 0)
    return tuple(counts)


def brute_force_stirling(t: int, d: int, i: int) -> int:
    """Independent oracle for S_t(d, i): enumerate partitions outright.

    Guarded to d <= 12; beyond that the enumeration is not desk-scale.
    """
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    if d < 0 or d > BRUTE_FORCE_LIMIT:
        raise ParameterError(f"brute force supports 0 <= d <= {BRUTE_FORCE_LIMIT}, got {d}")
    if i < 0:
        return 0
    hist = _brute_force_hist(t, d)
    return hist[i] if i < len(hist) else 0


def brute_force_row(t: int, d: int) -> tuple[int, ...]:
    """All of (S_t(d, 0), ..., S_t(d, d // t)) from one enumeration pass."""
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    if d < 0 or d > BRUTE_FORCE_LIMIT:
        raise ParameterError(f"brute force supports 0 <= d <= {BRUTE_FORCE_LIMIT}, got {d}")
    return _brute_force_hist(t, d)


def pcf_sum_exact(d: int, beta, t: int = 2) -> Fraction:
    """Exact sum_{i=1}^{floor(d/t)} S_t(d, i) * beta^(i-d+1) as a rational.

    t is the minimum part size (t = 2 gives the 2-associated sum used by the
    conflict-free counting condition).
    """
    if d < 0:
        raise ParameterError(f"d must be >= 0, got {d}")
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    b = as_fraction(beta)
    if b <= 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    row = table(t).row(d)
    total = Fraction(0)
    for i in range(1, len(row)):
        if row[i]:
            total += row[i] * b ** (i - d + 1)
    return total
