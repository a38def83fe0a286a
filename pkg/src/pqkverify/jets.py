"""First-order jets (M_I, M_J, M_K) of a para-quaternion Hermitian structure.

A jet stores, for each unit A and each basis direction e_i, the g-skew
endomorphism M_A(e_i); M_A(X, Y) = M_A(X) Y with M_A(X) linear in X.  Jets
are coordinatised by their slices in the integer g-skew basis of
:func:`pqkverify.exactla.skew_basis`, so skewness holds by construction and
the remaining identities (anticommutation with A, and the six product-rule
relations from the unit products) are linear rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .exactla import (
    DimensionError,
    SubspaceBasis,
    exact,
    inner,
    integer_row,
    is_zero,
    nullspace,
    random_int_vector,
    rng_for,
    skew_basis,
    skew_coords,
)
from .pqalg import UNITS, PQTriple, two_form_eval, wedge22_eval

PRINTED_PRODUCTS = ("IJ", "JI")
DERIVED_PRODUCTS = ("JK", "KJ", "KI", "IK")


class MJet:
    """Directional derivative data of the structure at one point."""

    def __init__(self, triple: PQTriple, slices):
        n = triple.space.dim
        slices = exact(slices)
        if slices.shape != (3, n, n, n):
            raise DimensionError(f"jet slices must have shape (3, {n}, {n}, {n})")
        self.triple = triple
        self.slices = slices

    @classmethod
    def zero(cls, t: PQTriple) -> "MJet":
        n = t.space.dim
        return cls(t, np.zeros((3, n, n, n), dtype=np.int64))

    @classmethod
    def from_coords(cls, t: PQTriple, coords) -> "MJet":
        n = t.space.dim
        s = n * (n - 1) // 2
        coords = exact(coords)
        if coords.shape != (3 * n * s,):
            raise DimensionError(f"expected {3 * n * s} jet coordinates")
        iu = np.triu_indices(n, 1)
        d = np.array(t.space.metric_diag, dtype=object)
        slices = np.empty((3, n, n, n), dtype=object)
        for a in range(3):
            for i in range(n):
                S = np.zeros((n, n), dtype=object)
                S[:] = 0
                c = coords[(a * n + i) * s:(a * n + i + 1) * s]
                S[iu] = c
                S[(iu[1], iu[0])] = -c
                slices[a, i] = S * d[:, None]
        return cls(t, slices)

    def coords(self) -> np.ndarray:
        n = self.triple.space.dim
        return np.concatenate([skew_coords(self.triple.space, self.slices[a, i])
                               for a in range(3) for i in range(n)])

    def slice(self, A: str, U) -> np.ndarray:
        """M_A(U) for an arbitrary direction U."""
        a = UNITS.index(A)
        U = exact(U)
        if U.shape != (self.triple.space.dim,):
            raise DimensionError("direction has wrong dimension")
        return np.tensordot(U, self.slices[a], axes=(0, 0))

    def apply(self, A: str, U, Y) -> np.ndarray:
        """M_A(U, Y)."""
        return self.slice(A, U) @ exact(Y)

    def is_zero(self) -> bool:
        return is_zero(self.slices)

    def __add__(self, other: "MJet") -> "MJet":
        return MJet(self.triple, self.slices + other.slices)

    def __mul__(self, c) -> "MJet":
        return MJet(self.triple, self.slices * c)

    __rmul__ = __mul__


# -- constraint systems -----------------------------------------------------


@dataclass
class ConstraintSystem:
    """Integer rows over named variables; ``rows @ x = 0`` defines the solutions."""

    rows: np.ndarray
    row_labels: list = field(repr=False)
    var_labels: list = field(repr=False)

    @property
    def shape(self):
        return self.rows.shape

    def residual(self, x) -> np.ndarray:
        return apply_rows(self.rows, x)

    def is_satisfied(self, x) -> bool:
        return is_zero(self.residual(x))

    def without(self, predicate) -> "ConstraintSystem":
        keep = [k for k, lab in enumerate(self.row_labels) if not predicate(lab)]
        return ConstraintSystem(self.rows[keep], [self.row_labels[k] for k in keep], self.var_labels)


def apply_rows(rows: np.ndarray, x) -> np.ndarray:
    """Exact ``rows @ x`` up to a positive rescaling of ``x``."""
    xi = integer_row(x)
    bound = max((abs(v) for v in xi), default=0)
    rbound = int(np.abs(rows).max()) if rows.size else 0
    if bound * rbound * rows.shape[1] < 2**62:
        return rows.astype(np.int64) @ np.array(xi, dtype=np.int64)
    return exact(rows) @ np.array(xi, dtype=object)


def identity_names() -> list[str]:
    return [f"L1c:{a}" for a in UNITS] + [f"L1e:{p}" for p in PRINTED_PRODUCTS + DERIVED_PRODUCTS]


def relation_residuals(t: PQTriple, MI, MJ, MK, exclude=()) -> dict[str, np.ndarray]:
    """Endomorphism-level residuals of the admissibility identities at one direction.

    ``L1c:A`` is M_A A + A M_A (so that M_A(X, AY) = -A M_A(X, Y)); ``L1e:AB``
    is M_A B + A M_B - sigma M_C where AB = sigma C, obtained by
    differentiating the unit product with the product rule.
    """
    M = {"I": MI, "J": MJ, "K": MK}
    out = {}
    for a in UNITS:
        name = f"L1c:{a}"
        if name not in exclude:
            A = t.unit(a)
            out[name] = M[a] @ A + A @ M[a]
    for p in PRINTED_PRODUCTS + DERIVED_PRODUCTS:
        name = f"L1e:{p}"
        if name in exclude:
            continue
        a, b = p
        sigma, c = t.product(a, b)
        out[name] = M[a] @ t.unit(b) + t.unit(a) @ M[b] - sigma * M[c]
    return out


def _scaled_unit(A) -> tuple[np.ndarray, int]:
    """(integer matrix, d) with A = matrix / d."""
    flat = exact(A).reshape(-1)
    d = 1
    for v in flat:
        d = lcm(d, getattr(v, "denominator", 1))
    ints = np.array([int(v * d) for v in flat], dtype=object).reshape(np.shape(A))
    return ints, d


def _direction_block(t: PQTriple, exclude=()):
    """Rows acting on the 3*s skew coordinates of a single direction.

    Each identity is multiplied through by the common denominator of the
    units it involves, so the block is integral for any rational triple.
    """
    n = t.space.dim
    E = np.array([exact(e) for e in skew_basis(t.space)], dtype=object)  # (s, n, n)
    s = len(E)
    scaled = {a: _scaled_unit(t.unit(a)) for a in UNITS}
    names, parts = [], []
    for a in UNITS:
        name = f"L1c:{a}"
        if name in exclude:
            continue
        At, _ = scaled[a]
        part = np.zeros((n * n, 3 * s), dtype=object)
        part[:] = 0
        ia = UNITS.index(a)
        part[:, ia * s:(ia + 1) * s] = (E @ At + At @ E).reshape(s, -1).T
        names.append(name)
        parts.append(part)
    for p in PRINTED_PRODUCTS + DERIVED_PRODUCTS:
        name = f"L1e:{p}"
        if name in exclude:
            continue
        a, b = p
        sigma, c = t.product(a, b)
        (At, da), (Bt, db) = scaled[a], scaled[b]
        L = lcm(da, db)
        part = np.zeros((n * n, 3 * s), dtype=object)
        part[:] = 0
        for unit, contrib in ((a, E @ Bt * (L // db)), (b, At @ E * (L // da)), (c, -sigma * L * E)):
            iu = UNITS.index(unit)
            part[:, iu * s:(iu + 1) * s] += contrib.reshape(s, -1).T
        names.append(name)
        parts.append(part)
    block = np.concatenate(parts) if parts else np.zeros((0, 3 * s), dtype=object)
    return block, names


def _as_int(M) -> np.ndarray:
    """Integral object/int array as int64 when it fits, else Python ints."""
    arr = np.asarray(M)
    if arr.dtype.kind in "iu":
        return arr.astype(np.int64, copy=False)
    flat = arr.reshape(-1)
    if {type(v) for v in flat} <= {int} and \
            max((abs(v) for v in flat), default=0) < 2**31:
        return arr.astype(np.int64)
    vals = []
    for v in np.asarray(M).reshape(-1):
        if not _is_integral(v):
            raise ValueError(f"non-integral entry {v}")
        vals.append(int(v))
    if max((abs(v) for v in vals), default=0) < 2**31:
        return np.array(vals, dtype=np.int64).reshape(np.shape(M))
    out = np.empty(len(vals), dtype=object)
    out[:] = vals
    return out.reshape(np.shape(M))


def admissible_system(t: PQTriple, exclude=()) -> ConstraintSystem:
    """Anticommutation and product-rule rows for every (direction, argument) pair.

    Row label: (identity, direction i, argument j, component k), meaning
    component k of the identity applied to M(e_i) and e_j.  ``exclude``
    drops whole identities by name (fault injection).
    """
    n = t.space.dim
    s = n * (n - 1) // 2
    block, names = _direction_block(t, exclude)
    block = _as_int(block)
    R = block.shape[0]
    rows = np.zeros((n * R, 3 * n * s), dtype=block.dtype)
    rows[...] = 0
    for i in range(n):
        for a in range(3):
            rows[i * R:(i + 1) * R, (a * n + i) * s:(a * n + i + 1) * s] = block[:, a * s:(a + 1) * s]
    row_labels = [(name, i, j, k) for i in range(n) for name in names for k in range(n) for j in range(n)]
    var_labels = [(A, i, (p, q)) for A in UNITS for i in range(n) for p in range(n) for q in range(p + 1, n)]
    return ConstraintSystem(rows, row_labels, var_labels)


def _is_integral(v) -> bool:
    return isinstance(v, (int, np.integer)) or getattr(v, "denominator", 1) == 1


def jet_basis(t: PQTriple, col_order=None, row_order=None, exclude=()) -> SubspaceBasis:
    """Integer basis of the admissible jet space, in jet coordinates."""
    sys_ = admissible_system(t, exclude=exclude)
    return nullspace(sys_.rows, col_order=col_order, row_order=row_order)


def random_jet(t: PQTriple, seed, basis: SubspaceBasis | None = None) -> MJet:
    basis = basis if basis is not None else jet_basis(t)
    rng = rng_for(seed)
    coeffs = random_int_vector(rng, basis.dim)
    v = np.zeros(basis.ambient_dim, dtype=object)
    v[:] = 0
    for c, b in zip(coeffs, basis.vectors):
        v = v + c * b
    return MJet.from_coords(t, v)


def pqk_ansatz_map(t: PQTriple) -> np.ndarray:
    """Integer matrix taking c[a, b, i] (M_a(e_i) = sum_b c B) to jet coordinates."""
    n = t.space.dim
    s = n * (n - 1) // 2
    P = np.zeros((3 * n * s, 9 * n), dtype=object)
    P[:] = 0
    for a in range(3):
        for i in range(n):
            for b in range(3):
                col = (a * 3 + b) * n + i
                P[(a * n + i) * s:(a * n + i + 1) * s, col] = exact(skew_coords(t.space, t.unit(UNITS[b])))
    return P


def pqk_family(t: PQTriple, col_order=None) -> SubspaceBasis:
    """Admissible jets whose slices all lie in span{I, J, K}."""
    P = pqk_ansatz_map(t)
    restricted = _int_matmul(admissible_system(t).rows, P)
    sol = nullspace(restricted, col_order=col_order)
    jets = [P @ c for c in sol.vectors]
    return SubspaceBasis(P.shape[0], [np.array(integer_row(v), dtype=object) for v in jets])


def _int_matmul(A, B) -> np.ndarray:
    """Exact product of integral matrices, in int64 when magnitudes allow."""
    Ai, Bi = _as_int(A), _as_int(B)
    if Ai.dtype == np.int64 and Bi.dtype == np.int64:
        bound = int(np.abs(Ai).max(initial=0)) * int(np.abs(Bi).max(initial=0)) * max(Ai.shape[1], 1)
        if bound < 2**62:
            return Ai @ Bi
    return exact(Ai) @ exact(Bi)


def commutator_jets(t: PQTriple) -> list[MJet]:
    """Explicit PQK jets M_A(e_i) = [P, A] for P in {I, J, K} along one direction."""
    n = t.space.dim
    out = []
    for i in range(n):
        for P in t.units():
            slices = exact(np.zeros((3, n, n, n), dtype=np.int64))
            for a, A in enumerate(t.units()):
                slices[a, i] = P @ A - A @ P
            out.append(MJet(t, slices))
    return out


# -- covariant derivatives of the forms --------------------------------------


def nabla_two_form(jet: MJet, A: str, U, X, Y):
    """(nabla_U Omega_A)(X, Y) = g(X, M_A(U, Y))."""
    return inner(jet.triple.space, exact(X), jet.apply(A, U, Y))


def nabla_wedge22(jet: MJet, A: str, U, X, Y, Z, W):
    """nabla_U (Omega_A ^ Omega_A)(X, Y, Z, W) as the six-term cyclic sum."""
    t = jet.triple

    def om(P, Q):
        return two_form_eval(t, A, P, Q)

    def dom(P, Q):
        return nabla_two_form(jet, A, U, P, Q)

    total = 0
    for y, z, w in ((Y, Z, W), (Z, W, Y), (W, Y, Z)):
        total += dom(X, y) * om(z, w) + om(X, y) * dom(z, w)
    return 2 * total


def nabla_wedge22_product_rule(jet: MJet, A: str, U, X, Y, Z, W):
    """Same quantity by differentiating each factor of the wedge formula in turn."""
    t = jet.triple

    def om(P, Q):
        return two_form_eval(t, A, P, Q)

    def dom(P, Q):
        return nabla_two_form(jet, A, U, P, Q)

    pairs = (((X, Y), (Z, W)), ((X, Z), (W, Y)), ((X, W), (Y, Z)))
    return 2 * sum(dom(*p) * om(*q) + om(*p) * dom(*q) for p, q in pairs)


def nabla_omega(jet: MJet, U, X, Y, Z, W):
    for v in (U, X, Y, Z, W):
        if np.shape(v) != (jet.triple.space.dim,):
            raise DimensionError("vector dimension does not match the jet")
    return (nabla_wedge22(jet, "I", U, X, Y, Z, W)
            - nabla_wedge22(jet, "J", U, X, Y, Z, W)
            - nabla_wedge22(jet, "K", U, X, Y, Z, W))


def nabla_omega_basis_tensor(t: PQTriple, slices_int: np.ndarray, directions=None) -> np.ndarray:
    """(nabla_{e_u} Omega)(e_x, e_y, e_z, e_w) for a batch of integer jets.

    ``slices_int`` has shape (d, 3, n, n, n).  The result is indexed
    [jet, u, x, y, z, w] with u running over ``directions`` (default: all).
    """
    G = np.diag(np.array(t.space.metric_diag, dtype=np.int64))
    dirs = list(range(t.space.dim)) if directions is None else list(directions)
    out = 0
    for a, sign in enumerate((1, -1, -1)):
        O = G @ np.asarray(t.units()[a], dtype=np.int64)
        D = np.einsum("xk,dukw->duxw", G, slices_int[:, a][:, dirs])
        w = (np.einsum("duxy,zw->duxyzw", D, O) + np.einsum("xy,duzw->duxyzw", O, D)
             + np.einsum("duxz,wy->duxyzw", D, O) + np.einsum("xz,duwy->duxyzw", O, D)
             + np.einsum("duxw,yz->duxyzw", D, O) + np.einsum("xw,duyz->duxyzw", O, D))
        out = out + sign * 2 * w
    return out


def jets_as_int_slices(t: PQTriple, basis: SubspaceBasis) -> np.ndarray:
    """Stack basis jets (integer coordinates) as an int64 slice array."""
    return np.array([_as_int(MJet.from_coords(t, v).slices) for v in basis.integer_matrix()],
                    dtype=np.int64).reshape(-1, 3, *(t.space.dim,) * 3)
