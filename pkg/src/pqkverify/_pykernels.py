"""Pure-Python incremental Gauss-Jordan reduction over the integers.

Rows are kept as sparse ``{column: int}`` dicts.  Every stored row is
primitive (content 1) with a positive pivot, so the reduced basis is the
unique integer-normalised RREF of the row space for the chosen column
order.  The compiled kernel in ``_ckernels`` produces the identical basis.
"""

from math import gcd

BACKEND = "python"


def _normalise(row, pivot):
    g = gcd(*row.values())
    if row[pivot] < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _combine(a, r, b, p):
    """Return a*r - b*p with zero entries dropped."""
    out = {c: a * v for c, v in r.items()}
    for c, v in p.items():
        w = out.get(c, 0) - b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


class EchelonReducer:
    """Streamed row reduction; feed rows, read back pivots and RREF rows."""

    def __init__(self, ncols, col_order=None):
        self.ncols = int(ncols)
        order = list(range(self.ncols)) if col_order is None else [int(c) for c in col_order]
        if sorted(order) != list(range(self.ncols)):
            raise ValueError("col_order must be a permutation of range(ncols)")
        self._rank_of = [0] * self.ncols
        for pos, c in enumerate(order):
            self._rank_of[c] = pos
        self._rows = {}  # pivot column -> sparse row

    @property
    def rank(self):
        return len(self._rows)

    def add_rows(self, rows):
        for row in rows:
            if len(row) != self.ncols:
                raise ValueError(f"row length {len(row)} != {self.ncols}")
            self._add({c: int(v) for c, v in enumerate(row) if v})

    def _add(self, r):
        for c in [c for c in r if c in self._rows]:
            b = r.get(c, 0)
            if not b:
                continue
            p = self._rows[c]
            a = p[c]
            g = gcd(a, b)
            r = _combine(a // g, r, b // g, p)
        if not r:
            return
        pivot = min(r, key=self._rank_of.__getitem__)
        r = _normalise(r, pivot)
        a = r[pivot]
        for c, p in self._rows.items():
            b = p.get(pivot, 0)
            if b:
                g = gcd(a, b)
                self._rows[c] = _normalise(_combine(a // g, p, b // g, r), c)
        self._rows[pivot] = r

    def result(self):
        """Pivot columns (in column-order position) and dense integer rows."""
        pivots = sorted(self._rows, key=self._rank_of.__getitem__)
        dense = []
        for c in pivots:
            row = [0] * self.ncols
            for k, v in self._rows[c].items():
                row[k] = v
            dense.append(row)
        return pivots, dense
