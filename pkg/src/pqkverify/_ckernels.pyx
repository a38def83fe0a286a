# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled incremental Gauss-Jordan reduction on int64 rows.

Same contract as ``_pykernels.EchelonReducer``.  Arithmetic is checked:
any int64 overflow raises ``OverflowError`` and leaves the caller to
replay the input through the arbitrary-precision fallback.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

cdef extern from *:
    """
    static inline int pq_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int pq_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    bint pq_mul_ovf(long long a, long long b, long long *r) nogil
    bint pq_sub_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _combine(long long[::1] out, long long a, long long[::1] r,
                  long long b, long long[::1] p, Py_ssize_t n) nogil:
    """out = a*r - b*p; returns 1 on overflow."""
    cdef Py_ssize_t k
    cdef long long x, y
    for k in range(n):
        if pq_mul_ovf(a, r[k], &x):
            return 1
        if p[k] != 0:
            if pq_mul_ovf(b, p[k], &y):
                return 1
            if pq_sub_ovf(x, y, &x):
                return 1
        out[k] = x
    return 0


cdef void _normalise(long long[::1] r, Py_ssize_t pivot, Py_ssize_t n) nogil:
    cdef long long g = 0
    cdef Py_ssize_t k
    for k in range(n):
        if r[k] != 0:
            g = _gcd(g, r[k])
            if g == 1:
                break
    if r[pivot] < 0:
        g = -g
    if g != 1 and g != 0:
        for k in range(n):
            r[k] = r[k] // g


cdef class EchelonReducer:
    cdef readonly Py_ssize_t ncols
    cdef Py_ssize_t _rank
    cdef long long[:, ::1] _basis
    cdef Py_ssize_t[::1] _pivot_of_row
    cdef Py_ssize_t[::1] _row_of_col
    cdef Py_ssize_t[::1] _order
    cdef long long[::1] _work
    cdef long long[::1] _tmp

    def __init__(self, ncols, col_order=None):
        self.ncols = int(ncols)
        order = list(range(self.ncols)) if col_order is None else [int(c) for c in col_order]
        if sorted(order) != list(range(self.ncols)):
            raise ValueError("col_order must be a permutation of range(ncols)")
        self._order = np.asarray(order, dtype=np.intp)
        self._basis = np.zeros((max(self.ncols, 1), max(self.ncols, 1)), dtype=np.int64)
        self._pivot_of_row = np.full(max(self.ncols, 1), -1, dtype=np.intp)
        self._row_of_col = np.full(max(self.ncols, 1), -1, dtype=np.intp)
        self._work = np.zeros(max(self.ncols, 1), dtype=np.int64)
        self._tmp = np.zeros(max(self.ncols, 1), dtype=np.int64)
        self._rank = 0

    @property
    def rank(self):
        return self._rank

    def add_rows(self, rows):
        cdef cnp.ndarray arr = np.ascontiguousarray(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.shape[0] and arr.shape[1] != self.ncols:
            raise ValueError(f"row length {arr.shape[1]} != {self.ncols}")
        cdef long long[:, ::1] view = arr
        cdef Py_ssize_t i
        for i in range(view.shape[0]):
            if self._add(view[i]):
                raise OverflowError("int64 overflow in echelon reduction")

    cdef int _add(self, long long[::1] row) nogil:
        cdef Py_ssize_t n = self.ncols
        cdef Py_ssize_t k, c, j, pivot = -1
        cdef long long a, b, g
        cdef long long[::1] r = self._work
        cdef long long[::1] tmp = self._tmp
        for k in range(n):
            r[k] = row[k]
        for j in range(self._rank):
            c = self._pivot_of_row[j]
            b = r[c]
            if b == 0:
                continue
            a = self._basis[j, c]
            g = _gcd(a, b)
            if _combine(tmp, a // g, r, b // g, self._basis[j], n):
                return 1
            for k in range(n):
                r[k] = tmp[k]
        for k in range(n):
            c = self._order[k]
            if r[c] != 0:
                pivot = c
                break
        if pivot < 0:
            return 0
        _normalise(r, pivot, n)
        a = r[pivot]
        for j in range(self._rank):
            b = self._basis[j, pivot]
            if b == 0:
                continue
            g = _gcd(a, b)
            if _combine(tmp, a // g, self._basis[j], b // g, r, n):
                return 1
            _normalise(tmp, self._pivot_of_row[j], n)
            for k in range(n):
                self._basis[j, k] = tmp[k]
        j = self._rank
        for k in range(n):
            self._basis[j, k] = r[k]
        self._pivot_of_row[j] = pivot
        self._row_of_col[pivot] = j
        self._rank += 1
        return 0

    def result(self):
        cdef Py_ssize_t k, c
        pivots = []
        dense = []
        for k in range(self.ncols):
            c = self._order[k]
            if self._row_of_col[c] >= 0:
                pivots.append(int(c))
                dense.append([int(v) for v in self._basis[self._row_of_col[c]]])
        return pivots, dense
