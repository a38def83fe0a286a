"""Para-quaternion Hermitian triples (I, J, K), their 2-forms and the 4-form.

The canonical triple is left multiplication by the para-quaternion units on
R^4 = span{1, i, j, k} (i^2 = -1, j^2 = k^2 = +1, ij = k), repeated
block-diagonally.  The block metric (+, +, -, -) is the para-quaternion norm
a^2 + b^2 - c^2 - d^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .exactla import (
    DimensionError,
    NeutralSpace,
    SubspaceBasis,
    exact,
    g_adjoint,
    inner,
    inverse,
    is_zero,
    norm_sq,
    nullspace,
    random_int_vector,
    random_nonnull_vector,
    rng_for,
)

UNITS = ("I", "J", "K")

# unit products on the basis (1, i, j, k): (a, b) -> (sign, c)
_TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (1, 0), (2, 3): (-1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (1, 1), (3, 3): (1, 0),
}


def _left_mult(unit: int) -> np.ndarray:
    L = np.zeros((4, 4), dtype=np.int64)
    for b in range(4):
        sign, c = _TABLE[(unit, b)]
        L[c, b] = sign
    return L


class StructureError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PQTriple:
    space: NeutralSpace
    I: np.ndarray
    J: np.ndarray
    K: np.ndarray

    def unit(self, name: str) -> np.ndarray:
        return {"I": self.I, "J": self.J, "K": self.K}[name]

    def units(self):
        return (self.I, self.J, self.K)

    def relations(self) -> dict[str, np.ndarray]:
        """Residual matrices of the nine algebra and three skewness relations."""
        I, J, K = self.I, self.J, self.K
        Id = exact(np.eye(self.space.dim, dtype=np.int64))
        s = self.space
        return {
            "I^2=-Id": I @ I + Id,
            "J^2=Id": J @ J - Id,
            "K^2=Id": K @ K - Id,
            "IJ=K": I @ J - K,
            "JI=-K": J @ I + K,
            "JK=-I": J @ K + I,
            "KJ=I": K @ J - I,
            "KI=J": K @ I - J,
            "IK=-J": I @ K + J,
            "I skew": g_adjoint(s, I) + I,
            "J skew": g_adjoint(s, J) + J,
            "K skew": g_adjoint(s, K) + K,
        }

    def failed_relations(self, tol: float | None = None) -> list[str]:
        return [name for name, res in self.relations().items() if not is_zero(res, tol)]

    def product(self, a: str, b: str) -> tuple[int, str]:
        """(sign, C) with A B = sign * C, read off the actual matrices."""
        AB = self.unit(a) @ self.unit(b)
        for c in UNITS:
            C = self.unit(c)
            if is_zero(AB - C):
                return 1, c
            if is_zero(AB + C):
                return -1, c
        raise StructureError(f"{a}{b} is not +/- a unit")

    def square_sign(self, a: str) -> int:
        A = self.unit(a)
        Id = exact(np.eye(self.space.dim, dtype=np.int64))
        if is_zero(A @ A - Id):
            return 1
        if is_zero(A @ A + Id):
            return -1
        raise StructureError(f"{a}^2 is not +/- Id")


def canonical_triple(m: int) -> PQTriple:
    s = NeutralSpace(m)
    blocks = [_left_mult(u) for u in (1, 2, 3)]
    mats = []
    for L in blocks:
        M = np.zeros((s.dim, s.dim), dtype=np.int64)
        for k in range(m):
            M[4 * k:4 * k + 4, 4 * k:4 * k + 4] = L
        mats.append(exact(M))
    return PQTriple(s, *mats)


def is_g_orthogonal(s: NeutralSpace, T) -> bool:
    Id = exact(np.eye(s.dim, dtype=np.int64))
    return is_zero(g_adjoint(s, exact(T)) @ exact(T) - Id)


def conjugate_triple(t: PQTriple, T) -> PQTriple:
    T = exact(T)
    if not is_g_orthogonal(t.space, T):
        raise StructureError("conjugating matrix is not g-orthogonal")
    Tinv = inverse(T)
    return PQTriple(t.space, T @ t.I @ Tinv, T @ t.J @ Tinv, T @ t.K @ Tinv)


def rotate_frame(t: PQTriple, swap: bool = False, boost=None) -> PQTriple:
    """Admissible change of frame inside span{I, J, K}.

    ``swap`` maps (I, J, K) -> (I, K, -J); ``boost=(c, s)`` with
    c^2 - s^2 = 1 maps (I, J, K) -> (cI + sJ, sI + cJ, K).  Both may be
    given; the swap is applied first.
    """
    I, J, K = t.I, t.J, t.K
    if swap:
        I, J, K = I, K, -J
    if boost is not None:
        c, s = (Fraction(x) for x in boost)
        if c * c - s * s != 1:
            raise StructureError(f"boost parameters violate c^2 - s^2 = 1: ({c}, {s})")
        I, J = c * I + s * J, s * I + c * J
        I, J = _simplify(I), _simplify(J)
    return PQTriple(t.space, I, J, K)


def _simplify(A):
    out = exact(A)
    for idx, v in np.ndenumerate(out):
        if isinstance(v, Fraction) and v.denominator == 1:
            out[idx] = v.numerator
    return out


def rational_boost(k: int) -> tuple[Fraction, Fraction]:
    """(cosh, sinh) pair from the Pythagorean parametrisation, k >= 2."""
    c = Fraction(k * k + 1, 2 * k)
    s = Fraction(k * k - 1, 2 * k)
    return c, s


# -- forms ------------------------------------------------------------------


def two_form_eval(t: PQTriple, A: str, X, Y):
    return inner(t.space, X, t.unit(A) @ Y)


def two_form(t: PQTriple, A: str):
    """Evaluator (X, Y) -> g(X, A Y)."""
    return lambda X, Y: two_form_eval(t, A, X, Y)


def wedge22_eval(omega, X, Y, Z, W):
    """(omega ^ omega)(X, Y, Z, W), normalised as twice the cyclic sum over (Y, Z, W)."""
    return 2 * (omega(X, Y) * omega(Z, W) + omega(X, Z) * omega(W, Y) + omega(X, W) * omega(Y, Z))


def _perm_sign(p) -> int:
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def wedge22_s4(omega, X, Y, Z, W):
    """Consistency oracle: a quarter of the signed sum over all 24 permutations."""
    vs = (X, Y, Z, W)
    total = 0
    for p in permutations(range(4)):
        total += _perm_sign(p) * omega(vs[p[0]], vs[p[1]]) * omega(vs[p[2]], vs[p[3]])
    return Fraction(total, 4) if not isinstance(total, float) else total / 4


def four_form_eval(t: PQTriple, X, Y, Z, W):
    for v in (X, Y, Z, W):
        if np.shape(v) != (t.space.dim,):
            raise DimensionError("vector dimension does not match the triple")
    return (wedge22_eval(two_form(t, "I"), X, Y, Z, W)
            - wedge22_eval(two_form(t, "J"), X, Y, Z, W)
            - wedge22_eval(two_form(t, "K"), X, Y, Z, W))


def four_form_tensor(t: PQTriple) -> np.ndarray:
    """All basis values Omega[x, y, z, w] at once (integer triples only)."""
    G = np.diag(np.array(t.space.metric_diag, dtype=np.int64))
    out = None
    for sign, A in ((1, t.I), (-1, t.J), (-1, t.K)):
        O = G @ np.asarray(A, dtype=np.int64)
        w = 2 * (np.einsum("xy,zw->xyzw", O, O) + np.einsum("xz,wy->xyzw", O, O)
                 + np.einsum("xw,yz->xyzw", O, O))
        out = sign * w if out is None else out + sign * w
    return out


# -- quaternionic spans and totally real vectors ----------------------------


def quaternionic_span(t: PQTriple, X) -> SubspaceBasis:
    X = exact(X)
    if is_zero(X):
        raise ValueError("Q(X) undefined for X = 0")
    return SubspaceBasis.spanned_by(t.space.dim, [X, t.I @ X, t.J @ X, t.K @ X])


def quaternionic_sum(t: PQTriple, *vectors) -> SubspaceBasis:
    vecs = []
    for X in vectors:
        X = exact(X)
        vecs += [X, t.I @ X, t.J @ X, t.K @ X]
    return SubspaceBasis.spanned_by(t.space.dim, vecs)


def orthogonal_complement(t: PQTriple, vectors) -> SubspaceBasis:
    """Basis of {Z : g(v, Z) = 0 for all v}."""
    s = t.space
    G = s.G
    rows = [G @ exact(v) for v in vectors]
    if not rows:
        return SubspaceBasis(s.dim, [exact(np.eye(s.dim, dtype=np.int64)[i]) for i in range(s.dim)])
    return nullspace(np.array(rows, dtype=object))


def is_totally_real(t: PQTriple, X, Y) -> bool:
    return all(inner(t.space, X, v) == 0 for v in (Y, t.I @ Y, t.J @ Y, t.K @ Y))


def _combo(rng, basis: SubspaceBasis):
    coeffs = random_int_vector(rng, basis.dim)
    out = exact(np.zeros(basis.ambient_dim, dtype=np.int64))
    for c, v in zip(coeffs, basis.vectors):
        out = out + c * v
    return out


def sample_totally_real_pair(t: PQTriple, seed, max_tries: int = 1000):
    """Non-null X, Y with Y orthogonal to Q(X)."""
    s = t.space
    if s.dim < 8:
        raise DimensionError("totally real pairs need dim >= 8 (Q(X) fills a 4-dim space)")
    rng = rng_for(seed)
    for _ in range(max_tries):
        X = random_nonnull_vector(s, rng)
        comp = orthogonal_complement(t, [X, t.I @ X, t.J @ X, t.K @ X])
        Y = _combo(rng, comp)
        if norm_sq(s, Y) != 0:
            assert is_totally_real(t, X, Y)
            return X, Y
    raise RuntimeError("failed to sample a totally real pair")


def sample_totally_real_triple(t: PQTriple, seed, max_tries: int = 1000):
    """Pairwise totally real X, Y, Z, all nonzero, X non-null.

    For dim >= 12, Y is non-null and Z is drawn from (Q(X) + Q(Y))^perp.
    At dim 8 that complement is zero whenever Y is non-null, so Y is taken
    isotropic, Y = (Id + J) W with W orthogonal to Q(X), which makes Q(Y)
    totally null, and Z is a nonzero element of Q(Y).
    """
    s = t.space
    if s.dim < 8:
        raise DimensionError("totally real triples need dim >= 8")
    rng = rng_for(seed)
    for _ in range(max_tries):
        X = random_nonnull_vector(s, rng)
        compX = orthogonal_complement(t, [X, t.I @ X, t.J @ X, t.K @ X])
        if s.dim >= 12:
            Y = _combo(rng, compX)
            if norm_sq(s, Y) == 0:
                continue
            comp = orthogonal_complement(t, [X, t.I @ X, t.J @ X, t.K @ X, Y, t.I @ Y, t.J @ Y, t.K @ Y])
            Z = _combo(rng, comp)
        else:
            W = _combo(rng, compX)
            Y = W + t.J @ W
            if is_zero(Y):
                continue
            a, b = (int(v) for v in rng.integers(-5, 6, size=2))
            Z = a * Y + b * (t.I @ Y)
        if is_zero(Z):
            continue
        if is_totally_real(t, X, Y) and is_totally_real(t, X, Z) and is_totally_real(t, Y, Z):
            return X, Y, Z
    raise RuntimeError("failed to sample a totally real triple")
