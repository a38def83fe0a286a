"""Backend selection for the exact row-reduction kernel.

The compiled extension is used when it imports and ``PQ_PURE_PYTHON`` is
unset.  Rows that overflow int64 inside the compiled kernel are replayed
through the arbitrary-precision Python reducer, so results are always exact.
"""

import operator
import os
from fractions import Fraction

import numpy as np

from . import _pykernels

try:
    if os.environ.get("PQ_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = _ckernels.BACKEND if _ckernels is not None else _pykernels.BACKEND

_INT64_SAFE = 2**62


def available_backends():
    return ["python"] + (["cython"] if _ckernels is not None else [])


class EchelonReducer:
    """Incremental integer RREF with automatic fallback on overflow."""

    def __init__(self, ncols, col_order=None, backend=None):
        backend = backend or BACKEND
        if backend not in available_backends():
            raise ValueError(f"backend {backend!r} not available")
        self.ncols = int(ncols)
        self._col_order = None if col_order is None else list(col_order)
        self.backend = backend
        self._seen = []
        if backend == "cython":
            self._impl = _ckernels.EchelonReducer(self.ncols, self._col_order)
        else:
            self._impl = _pykernels.EchelonReducer(self.ncols, self._col_order)

    @property
    def rank(self):
        return self._impl.rank

    def add_rows(self, rows):
        arr = _as_int64(rows, self.ncols)
        if self.backend == "cython":
            if arr is not None:
                self._seen.append(arr)
                try:
                    self._impl.add_rows(arr)
                    return
                except OverflowError:
                    pass
            else:
                self._seen.append(_as_int_rows(rows))
            self._fall_back()
            return
        self._impl.add_rows(arr if arr is not None else _as_int_rows(rows))

    def _fall_back(self):
        impl = _pykernels.EchelonReducer(self.ncols, self._col_order)
        for chunk in self._seen:
            impl.add_rows(chunk)
        self._impl = impl
        self.backend = "python"
        self._seen = []

    def result(self):
        return self._impl.result()


def _to_int(v):
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise ValueError(f"non-integer entry {v}")
        return v.numerator
    return operator.index(v)


def _as_int_rows(rows):
    return [[_to_int(v) for v in row] for row in rows]


def _as_int64(rows, ncols):
    """int64 view of ``rows`` if every entry fits comfortably, else None."""
    if isinstance(rows, np.ndarray) and rows.dtype.kind in "iu":
        arr = rows.astype(np.int64, copy=False)
    elif isinstance(rows, np.ndarray) and rows.dtype == object and \
            {type(v) for v in rows.reshape(-1)} <= {int}:
        try:
            arr = rows.astype(np.int64)
        except OverflowError:
            return None
    else:
        ints = _as_int_rows(rows)
        if any(abs(v) >= _INT64_SAFE for row in ints for v in row):
            return None
        arr = np.array(ints, dtype=np.int64)
    arr = arr.reshape(-1, ncols) if arr.size else np.zeros((0, ncols), dtype=np.int64)
    if arr.size and np.abs(arr).max() >= _INT64_SAFE:
        return None
    return arr


def rref(rows, ncols, col_order=None, backend=None):
    """One-shot integer RREF: ``(pivot_columns, rows)``."""
    red = EchelonReducer(ncols, col_order, backend=backend)
    red.add_rows(rows)
    return red.result()
