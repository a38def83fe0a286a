"""Exact (rational) and float linear algebra on a neutral-signature space.

Matrices and vectors are numpy arrays.  In exact mode they hold Python
``int``/``Fraction`` objects (``dtype=object``) or plain integer dtypes;
in float mode they are ``float64``.  Every rank, nullspace and membership
decision that gates a verification goes through the exact integer
row-reduction kernel in :mod:`pqkverify.kernels`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .kernels import EchelonReducer


class Mode(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


class UsageError(ValueError):
    """A decision was requested that the arithmetic mode cannot make."""


class DimensionError(ValueError):
    pass


# -- spaces -----------------------------------------------------------------


@dataclass(frozen=True)
class NeutralSpace:
    """R^{4m} with the diagonal metric (+1, +1, -1, -1) repeated per block."""

    m: int
    metric_diag: tuple = field(init=False)

    def __post_init__(self):
        if int(self.m) < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        object.__setattr__(self, "metric_diag", (1, 1, -1, -1) * int(self.m))

    @property
    def dim(self) -> int:
        return 4 * self.m

    @property
    def signature(self) -> tuple[int, int]:
        return (self.metric_diag.count(1), self.metric_diag.count(-1))

    @property
    def G(self) -> np.ndarray:
        return exact(np.diag(self.metric_diag))

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=object)
        e[:] = 0
        e[i] = 1
        return e


def _check_vec(s: NeutralSpace, *vs):
    for v in vs:
        if np.shape(v) != (s.dim,):
            raise DimensionError(f"expected vector of length {s.dim}, got shape {np.shape(v)}")


def _check_square(s: NeutralSpace, A):
    if np.shape(A) != (s.dim, s.dim):
        raise DimensionError(f"expected {s.dim}x{s.dim} matrix, got shape {np.shape(A)}")


def inner(s: NeutralSpace, x, y):
    _check_vec(s, x, y)
    return sum(d * a * b for d, a, b in zip(s.metric_diag, x, y))


def norm_sq(s: NeutralSpace, x):
    return inner(s, x, x)


def g_adjoint(s: NeutralSpace, A):
    """The metric adjoint G A^T G."""
    _check_square(s, A)
    A = np.asarray(A)
    d = _diag_like(s, A)
    return (A.T * d[:, None]) * d[None, :]


def _diag_like(s: NeutralSpace, A) -> np.ndarray:
    return np.array(s.metric_diag, dtype=object if A.dtype == object else A.dtype)


def is_g_skew(s: NeutralSpace, A) -> bool:
    return is_zero(g_adjoint(s, A) + A)


# -- exact helpers ----------------------------------------------------------


def exact(a) -> np.ndarray:
    """Copy to an object array so arithmetic stays in int/Fraction."""
    arr = np.asarray(a)
    out = np.empty(arr.shape, dtype=object)
    flat = out.reshape(-1)
    for k, v in enumerate(arr.reshape(-1)):
        if isinstance(v, (int, Fraction)):
            flat[k] = v
        elif isinstance(v, np.integer):
            flat[k] = int(v)
        elif isinstance(v, (float, np.floating)):
            flat[k] = Fraction(float(v))
        else:
            flat[k] = v
    return out


def is_zero(a, tol=None) -> bool:
    arr = np.asarray(a)
    if tol is None:
        if arr.dtype.kind == "f":
            raise UsageError("float comparison requires an explicit tolerance")
        return all(v == 0 for v in arr.reshape(-1))
    return bool(np.all(np.abs(arr.astype(float)) <= tol))


def max_abs(a):
    arr = np.asarray(a).reshape(-1)
    if arr.size == 0:
        return 0
    return max(abs(v) for v in arr)


def integer_row(v) -> list[int]:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    raw = np.asarray(v).reshape(-1)
    if raw.dtype.kind in "iu" or all(isinstance(x, (int, np.integer)) for x in raw):
        ints = [int(x) for x in raw]
    else:
        vals = [Fraction(x) for x in raw]
        den = reduce(lcm, (x.denominator for x in vals), 1)
        ints = [int(x * den) for x in vals]
    g = reduce(gcd, ints, 0)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _integer_rows(M) -> list[list[int]]:
    arr = np.asarray(M)
    if arr.ndim != 2:
        raise DimensionError("expected a 2-D matrix")
    if arr.dtype.kind in "iu":
        return arr.tolist()
    if arr.dtype.kind == "f":
        raise UsageError("exact elimination on float data; pass mode=Mode.FLOAT with a tolerance")
    return [integer_row(r) for r in arr]


def inverse(A) -> np.ndarray:
    """Exact inverse by Gauss-Jordan over Fractions."""
    A = exact(A)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionError("inverse of a non-square matrix")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            x = aug[i][n + j]
            out[i, j] = x.numerator if x.denominator == 1 else x
    return out


def cayley(S) -> np.ndarray:
    """(Id - S)^-1 (Id + S); g-orthogonal whenever S is g-skew."""
    S = exact(S)
    n = S.shape[0]
    Id = exact(np.eye(n, dtype=np.int64))
    return inverse(Id - S) @ (Id + S)


# -- rank / nullspace -------------------------------------------------------


def echelon(M, col_order: Sequence[int] | None = None, row_order: Sequence[int] | None = None):
    """Exact integer RREF of ``M`` (rows scaled to integers first)."""
    ncols = np.shape(M)[1]
    arr = np.asarray(M)
    if arr.dtype.kind in "iu":
        rows = arr if row_order is None else arr[list(row_order)]
    else:
        rows = _integer_rows(M)
        if row_order is not None:
            rows = [rows[i] for i in row_order]
    red = EchelonReducer(ncols, col_order)
    red.add_rows(rows)
    return red.result()


def rank(M, *, mode: Mode = Mode.EXACT, tol: float | None = None,
         col_order: Sequence[int] | None = None, row_order: Sequence[int] | None = None) -> int:
    if Mode(mode) is Mode.FLOAT:
        if tol is None:
            raise UsageError("float-mode rank requires a tolerance")
        arr = np.asarray(M, dtype=float)
        if arr.size == 0:
            return 0
        return int(np.linalg.matrix_rank(arr, tol=tol))
    if np.shape(M)[0] == 0:
        return 0
    return len(echelon(M, col_order, row_order)[0])


def nullspace_from_rref(pivots, rows, ncols) -> list[list[int]]:
    """Primitive integer basis of the kernel, one vector per free column."""
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        L = 1
        for p, r in zip(pivots, rows):
            if r[f]:
                L = lcm(L, r[p])
        v = [0] * ncols
        v[f] = L
        for p, r in zip(pivots, rows):
            if r[f]:
                v[p] = -r[f] * (L // r[p])
        g = reduce(gcd, v, 0)
        basis.append([x // g for x in v])
    return basis


def nullspace(M, *, mode: Mode = Mode.EXACT, tol: float | None = None,
              col_order: Sequence[int] | None = None,
              row_order: Sequence[int] | None = None) -> "SubspaceBasis":
    ncols = np.shape(M)[1]
    if Mode(mode) is Mode.FLOAT:
        if tol is None:
            raise UsageError("float-mode nullspace requires a tolerance")
        arr = np.asarray(M, dtype=float)
        if arr.shape[0] == 0:
            return SubspaceBasis(ncols, [np.eye(ncols)[i] for i in range(ncols)], mode=Mode.FLOAT, tol=tol)
        _, s, vt = np.linalg.svd(arr)
        r = int(np.sum(s > tol))
        return SubspaceBasis(ncols, list(vt[r:]), mode=Mode.FLOAT, tol=tol)
    if np.shape(M)[0] == 0:
        pivots, rows = [], []
    else:
        pivots, rows = echelon(M, col_order, row_order)
    vecs = nullspace_from_rref(pivots, rows, ncols)
    return SubspaceBasis(ncols, [np.array(v, dtype=object) for v in vecs], check=False)


# -- subspaces --------------------------------------------------------------


class SubspaceBasis:
    """Independent spanning vectors of a subspace of an ambient coordinate space."""

    def __init__(self, ambient_dim: int, vectors, *, mode: Mode = Mode.EXACT,
                 tol: float | None = None, check: bool = True):
        self.ambient_dim = int(ambient_dim)
        self.mode = Mode(mode)
        self.tol = tol
        vecs = []
        for v in vectors:
            v = np.asarray(v) if self.mode is Mode.FLOAT else exact(v)
            if v.shape != (self.ambient_dim,):
                raise DimensionError(f"vector of shape {v.shape} in ambient dim {self.ambient_dim}")
            vecs.append(v)
        self.vectors = tuple(vecs)
        if check and vecs and rank(self.matrix(), mode=self.mode, tol=tol) != len(vecs):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def spanned_by(cls, ambient_dim: int, vectors) -> "SubspaceBasis":
        """Extract an independent subset (exact mode) of a spanning list."""
        vectors = [exact(v) for v in vectors]
        if not vectors:
            return cls(ambient_dim, [])
        M = np.array(vectors, dtype=object).T
        pivots, _ = echelon(M)
        return cls(ambient_dim, [vectors[p] for p in pivots], check=False)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        """Vectors as rows."""
        if not self.vectors:
            return np.zeros((0, self.ambient_dim), dtype=object)
        return np.array(self.vectors, dtype=object if self.mode is Mode.EXACT else float)

    def integer_matrix(self) -> np.ndarray:
        """Rows rescaled to primitive integers (same span)."""
        return np.array([integer_row(v) for v in self.vectors], dtype=object).reshape(-1, self.ambient_dim)

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"SubspaceBasis(ambient_dim={self.ambient_dim}, dim={self.dim})"


def _require_same_ambient(*bs):
    dims = {b.ambient_dim for b in bs}
    if len(dims) != 1:
        raise DimensionError(f"ambient dimensions differ: {sorted(dims)}")


def span_membership(B: SubspaceBasis, v, *, tol: float | None = None) -> bool:
    if np.shape(v) != (B.ambient_dim,):
        raise DimensionError(f"vector of shape {np.shape(v)} in ambient dim {B.ambient_dim}")
    if B.mode is Mode.FLOAT or np.asarray(v).dtype.kind == "f":
        tol = tol if tol is not None else B.tol
        if tol is None:
            raise UsageError("float membership requires a tolerance")
        M = np.vstack([B.matrix().astype(float).reshape(-1, B.ambient_dim), np.asarray(v, dtype=float)])
        return rank(M, mode=Mode.FLOAT, tol=tol) == B.dim
    if is_zero(v):
        return True
    M = np.vstack([B.matrix().reshape(-1, B.ambient_dim), exact(v)[None, :]])
    return rank(M) == B.dim


def subspace_equal(B1: SubspaceBasis, B2: SubspaceBasis) -> bool:
    _require_same_ambient(B1, B2)
    if B1.dim != B2.dim:
        return False
    if B1.dim == 0:
        return True
    # mutual membership of all basis vectors <=> the stacked rank equals both dims
    return rank(np.vstack([B1.matrix(), B2.matrix()])) == B1.dim


def subspace_contains(big: SubspaceBasis, small: SubspaceBasis) -> bool:
    _require_same_ambient(big, small)
    if not small.vectors:
        return True
    M = np.vstack([big.matrix().reshape(-1, big.ambient_dim), small.matrix()])
    return rank(M) == big.dim


# -- seeded sampling --------------------------------------------------------


def rng_for(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_int_vector(rng: np.random.Generator, n: int, low: int = -5, high: int = 5) -> np.ndarray:
    return exact(rng.integers(low, high + 1, size=n))


def random_int_matrix(rng: np.random.Generator, rows: int, cols: int, low: int = -5, high: int = 5) -> np.ndarray:
    return exact(rng.integers(low, high + 1, size=(rows, cols)))


def random_nonnull_vector(s: NeutralSpace, rng: np.random.Generator, low: int = -5, high: int = 5,
                          max_tries: int = 1000) -> np.ndarray:
    for _ in range(max_tries):
        x = random_int_vector(rng, s.dim, low, high)
        if norm_sq(s, x) != 0:
            return x
    raise RuntimeError("could not sample a non-null vector")


def skew_basis(s: NeutralSpace) -> list[np.ndarray]:
    """Integer basis G (e_a e_b^T - e_b e_a^T), a < b, of the g-skew matrices."""
    n = s.dim
    d = s.metric_diag
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            E = np.zeros((n, n), dtype=np.int64)
            E[a, b] = d[a]
            E[b, a] = -d[b]
            out.append(E)
    return out


def skew_coords(s: NeutralSpace, A) -> np.ndarray:
    """Coordinates of a g-skew matrix in :func:`skew_basis` order."""
    n = s.dim
    A = np.asarray(A)
    GA = A * _diag_like(s, A)[:, None]
    return np.array([GA[a, b] for a in range(n) for b in range(a + 1, n)], dtype=object)


def random_g_skew(s: NeutralSpace, rng: np.random.Generator, low: int = -5, high: int = 5) -> np.ndarray:
    coords = rng.integers(low, high + 1, size=s.dim * (s.dim - 1) // 2)
    return exact(sum(int(c) * E for c, E in zip(coords, skew_basis(s))))
