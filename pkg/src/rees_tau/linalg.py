"""Exact linear algebra over Q and F_p on sparse rows.

Rows are dicts ``{column: value}`` with nonzero values only.  Column
indices are plain ints; the caller chooses the column order, and the
pivot of a row is always its smallest column.  All routines are exact.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


def _reduce_row(row: dict, basis: dict, field) -> dict:
    # top-reduction: eliminate the leading column while it is a known pivot
    r = dict(row)
    norm = field.norm
    while r:
        c = min(r)
        piv = basis.get(c)
        if piv is None:
            return r
        coef = r[c]
        for k, v in piv.items():
            val = norm(r.get(k, 0) - coef * v)
            if val:
                r[k] = val
            else:
                r.pop(k, None)
    return r


class Echelon:
    """Incrementally maintained row-echelon basis.

    Every stored row has leading coefficient 1 at its pivot, and pivots
    are distinct.  ``add`` returns whether the row enlarged the span.
    """

    def __init__(self, field, rows: Iterable[dict] = ()):
        self.field = field
        self.rows: dict[int, dict] = {}
        for r in rows:
            self.add(r)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        return _reduce_row(row, self.rows, self.field)

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def add(self, row: dict) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = self.field.inv(r[c])
        norm = self.field.norm
        self.rows[c] = {k: norm(v * inv) for k, v in r.items()}
        return True

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduced_rows(self) -> list[dict]:
        """Fully reduced echelon rows (RREF), ordered by pivot."""
        out: dict[int, dict] = {}
        norm = self.field.norm
        for c in sorted(self.rows, reverse=True):
            r = dict(self.rows[c])
            for k in sorted(k for k in r if k != c and k in out):
                coef = r.get(k)
                if not coef:
                    continue
                for kk, vv in out[k].items():
                    val = norm(r.get(kk, 0) - coef * vv)
                    if val:
                        r[kk] = val
                    else:
                        r.pop(kk, None)
            out[c] = r
        return [out[c] for c in sorted(out)]


def rank(rows: Iterable[dict], field) -> int:
    return len(Echelon(field, rows))


def nullspace(rows: Sequence[dict], ncols: int, field) -> list[list]:
    """Basis of ``{x : row . x = 0 for every row}`` as dense vectors."""
    rref = Echelon(field, rows).reduced_rows()
    pivots = {min(r): r for r in rref}
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [0] * ncols
        v[free] = 1
        for c, r in pivots.items():
            coef = r.get(free)
            if coef:
                v[c] = field.norm(-coef)
        basis.append(v)
    return basis


def solve(columns: Sequence[dict], target: dict, field) -> list | None:
    """Find ``x`` with ``sum_j x_j * columns[j] == target``, or None.

    Free unknowns are set to zero, so the answer is deterministic.
    """
    m = len(columns)
    # transpose into equations: one row per coordinate, unknowns are 0..m-1,
    # the right-hand side sits in column m
    eqs: dict = {}
    for j, col in enumerate(columns):
        for k, v in col.items():
            eqs.setdefault(k, {})[j] = v
    for k, v in target.items():
        eqs.setdefault(k, {})[m] = v
    rref = Echelon(field, eqs.values()).reduced_rows()
    x = [0] * m
    for r in rref:
        c = min(r)
        if c == m:
            return None
        x[c] = r.get(m, 0)
    return x


def rref_mod_p(m: np.ndarray, p: int) -> np.ndarray:
    """Reduced row echelon form of a dense integer matrix over F_p.

    Zero rows are dropped.  Entries are kept in ``[0, p)``; with int64 and
    the primes used here the products cannot overflow.
    """
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        r += 1
    return a[:r]
