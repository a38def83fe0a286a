"""Point-dependent para-quaternionic structures on flat neutral R^{4m}.

A field is the base triple conjugated by the Cayley transform of an affine
family of g-skew matrices, S(p) = S0 + sum_i p_i S_i.  With a constant
metric the Levi-Civita derivative is the directional derivative, so the
derivative of the field at p = 0 is a jet realised by actual geometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactla import (
    Mode,
    NeutralSpace,
    exact,
    inverse,
    is_g_skew,
    random_g_skew,
    random_int_vector,
    rng_for,
    skew_basis,
)
from .jets import DERIVED_PRODUCTS, PRINTED_PRODUCTS, MJet, admissible_system
from .pqalg import UNITS, PQTriple, canonical_triple, wedge22_eval
from .reports import FAIL, PASS, VerificationReport

DEFAULT_STEP = 1e-4
DEFAULT_FD_TOL = 1e-6


class SingularCayley(ZeroDivisionError):
    pass


@dataclass(frozen=True, eq=False)
class StructureField:
    base: PQTriple
    S0: np.ndarray
    generators: tuple  # one g-skew matrix per basis direction

    @property
    def space(self) -> NeutralSpace:
        return self.base.space

    def generator(self, X) -> np.ndarray:
        """S1 for the line p(tau) = tau X."""
        out = exact(np.zeros_like(self.S0, dtype=np.int64))
        for x, S in zip(exact(X), self.generators):
            if x:
                out = out + x * S
        return out

    def _cayley_parts(self, S):
        n = self.space.dim
        Id = exact(np.eye(n, dtype=np.int64))
        try:
            R = inverse(Id - S)
        except ZeroDivisionError as exc:
            raise SingularCayley("Id - S(p) is singular") from exc
        T = R @ (Id + S)
        return R, T, inverse(T)

    def triple_at(self, p=None) -> PQTriple:
        S = exact(self.S0)
        if p is not None:
            S = S + sum((x * G for x, G in zip(exact(p), self.generators) if x), exact(np.zeros_like(S)))
        _, T, Tinv = self._cayley_parts(S)
        b = self.base
        return PQTriple(b.space, T @ b.I @ Tinv, T @ b.J @ Tinv, T @ b.K @ Tinv)

    def triple_at_float(self, p) -> tuple[np.ndarray, ...]:
        n = self.space.dim
        S = np.asarray(self.S0, dtype=float) + sum(float(x) * np.asarray(G, dtype=float)
                                                   for x, G in zip(p, self.generators))
        Id = np.eye(n)
        T = np.linalg.solve(Id - S, Id + S)
        Tinv = np.linalg.inv(T)
        return tuple(T @ np.asarray(A, dtype=float) @ Tinv for A in self.base.units())

    @property
    def point_triple(self) -> PQTriple:
        return self.triple_at(None)


def sparse_g_skew(s: NeutralSpace, rng, terms: int) -> np.ndarray:
    """Signed sum of ``terms`` distinct elementary g-skew matrices."""
    basis = skew_basis(s)
    idx = rng.choice(len(basis), size=terms, replace=False)
    return exact(sum(int(rng.choice([-1, 1])) * basis[i] for i in idx))


def random_field(m: int, seed, s0_terms: int = 2, generator_terms: int = 1,
                 base: PQTriple | None = None, max_tries: int = 100) -> StructureField:
    """Seeded field with sparse integer g-skew S0 and one generator per basis direction.

    Sparse generators keep the third derivative of the Cayley family small,
    so h = 1e-4 central differences land well inside 1e-6 while the
    truncation error still dominates round-off.  S0 is redrawn until
    Id - S0 is invertible.
    """
    base = base if base is not None else canonical_triple(m)
    s = base.space
    rng = rng_for(seed)
    Id = exact(np.eye(s.dim, dtype=np.int64))
    for _ in range(max_tries):
        S0 = sparse_g_skew(s, rng, s0_terms)
        try:
            inverse(Id - S0)
        except ZeroDivisionError:
            continue
        gens = tuple(sparse_g_skew(s, rng, generator_terms) for _ in range(s.dim))
        return StructureField(base, S0, gens)
    raise SingularCayley("could not draw an invertible Cayley denominator")


def dense_field(m: int, seed, low: int = -1, high: int = 1, base: PQTriple | None = None,
                max_tries: int = 100) -> StructureField:
    """Dense variant: every skew coordinate drawn from [low, high].  Exact checks only."""
    base = base if base is not None else canonical_triple(m)
    s = base.space
    rng = rng_for(seed)
    Id = exact(np.eye(s.dim, dtype=np.int64))
    for _ in range(max_tries):
        S0 = random_g_skew(s, rng, low, high)
        try:
            inverse(Id - S0)
        except ZeroDivisionError:
            continue
        return StructureField(base, S0, tuple(random_g_skew(s, rng, low, high) for _ in range(s.dim)))
    raise SingularCayley("could not draw an invertible Cayley denominator")


def constant_field(base: PQTriple, S0=None) -> StructureField:
    n = base.space.dim
    zero = exact(np.zeros((n, n), dtype=np.int64))
    return StructureField(base, zero if S0 is None else exact(S0), tuple(zero for _ in range(n)))


# -- derivatives -------------------------------------------------------------------


def derivative_slice(f: StructureField, X, mode: Mode = Mode.EXACT, h: float = DEFAULT_STEP):
    """(M_I(X), M_J(X), M_K(X)) at p = 0.

    Exact mode differentiates the Cayley conjugation with the product rule,
    d/dtau (Id - S)^-1 = (Id - S)^-1 S1 (Id - S)^-1; float mode takes the
    central difference (A(hX) - A(-hX)) / 2h.
    """
    if Mode(mode) is Mode.FLOAT:
        X = np.asarray(X, dtype=float)
        plus = f.triple_at_float(h * X)
        minus = f.triple_at_float(-h * X)
        return tuple((a - b) / (2 * h) for a, b in zip(plus, minus))
    S0 = exact(f.S0)
    S1 = f.generator(X)
    R, T, Tinv = f._cayley_parts(S0)
    n = f.space.dim
    Id = exact(np.eye(n, dtype=np.int64))
    dT = R @ S1 @ R @ (Id + S0) + R @ S1
    dTinv = -(Tinv @ dT @ Tinv)
    out = []
    for A in f.base.units():
        out.append(dT @ A @ Tinv + T @ A @ dTinv)
    return tuple(out)


def field_jet(f: StructureField) -> MJet:
    """Exact jet at p = 0 over the basis directions."""
    t0 = f.point_triple
    n = f.space.dim
    slices = np.empty((3, n, n, n), dtype=object)
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        for a, M in enumerate(derivative_slice(f, e)):
            slices[a, i] = M
    return MJet(t0, slices)


def field_jet_float(f: StructureField, h: float = DEFAULT_STEP) -> np.ndarray:
    n = f.space.dim
    slices = np.zeros((3, n, n, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        for a, M in enumerate(derivative_slice(f, e, Mode.FLOAT, h)):
            slices[a, i] = M
    return slices


def fd_max_error(f: StructureField, h: float, exact_slices=None) -> float:
    exact_slices = exact_slices if exact_slices is not None else field_jet(f).slices
    approx = field_jet_float(f, h)
    return float(np.max(np.abs(approx - np.asarray(exact_slices, dtype=float))))


def in_admissible_space(f: StructureField) -> bool:
    jet = field_jet(f)
    return admissible_system(jet.triple).is_satisfied(jet.coords())


# -- dual numbers for an independent derivative of the 4-form factor ---------------


class _Dual:
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b

    def __add__(self, o):
        o = _lift(o)
        return _Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = _lift(o)
        return _Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return _lift(o) - self

    def __mul__(self, o):
        o = _lift(o)
        return _Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__


def _lift(x):
    return x if isinstance(x, _Dual) else _Dual(x, 0)


def _dual_unit(f: StructureField, U, unit: str):
    """Value and tau-derivative of the unit along p = tau U via dual-number matrices."""
    S0 = exact(f.S0)
    S1 = f.generator(U)
    n = f.space.dim
    Id = exact(np.eye(n, dtype=np.int64))
    R0 = inverse(Id - S0)
    # (Id - S0 - eps S1)^-1 = R0 + eps R0 S1 R0
    R = (R0, R0 @ S1 @ R0)
    P = (Id + S0, S1)
    T = (R[0] @ P[0], R[0] @ P[1] + R[1] @ P[0])
    Ti0 = inverse(T[0])
    Ti = (Ti0, -(Ti0 @ T[1] @ Ti0))
    A = exact(f.base.unit(unit))
    TA = (T[0] @ A, T[1] @ A)
    return TA[0] @ Ti[0], TA[0] @ Ti[1] + TA[1] @ Ti[0]


def _g(s: NeutralSpace, x, y):
    return sum(d * a * b for d, a, b in zip(s.metric_diag, x, y))


# -- first-order identities at a point ---------------------------------------------


def _unit_max_norm(v):
    # every identity is multilinear in the vectors, so rescaling is free and
    # keeps float residuals on the scale of the slice error
    v = np.asarray(v, dtype=float)
    top = np.abs(v).max()
    return v / top if top else v


def lemma1_terms(f: StructureField, U, X, Y, Z, W, mode: Mode = Mode.EXACT,
                 h: float = DEFAULT_STEP) -> dict[str, list]:
    """Every first-order structure identity at p = 0, written as a list of terms summing to zero."""
    mode = Mode(mode)
    s = f.space
    t0 = f.point_triple
    if mode is Mode.FLOAT:
        units = {a: np.asarray(t0.unit(a), dtype=float) for a in UNITS}
        vec = _unit_max_norm
    else:
        units = {a: t0.unit(a) for a in UNITS}
        vec = exact
    U, X, Y, Z, W = (vec(v) for v in (U, X, Y, Z, W))
    slices_X = dict(zip(UNITS, derivative_slice(f, X, mode, h)))
    slices_U = dict(zip(UNITS, derivative_slice(f, U, mode, h)))

    def M(A, V):
        return slices_X[A] @ V

    def g_terms(x, y):
        return [d * a * b for d, a, b in zip(s.metric_diag, x, y)]

    out = {}

    # the nabla (Omega_I ^ Omega_I) display against an independent derivative
    om = lambda P, Q: _g(s, P, units["I"] @ Q)  # noqa: E731
    dom = lambda P, Q: _g(s, P, slices_U["I"] @ Q)  # noqa: E731
    display = [-2 * term for y, z, w in ((Y, Z, W), (Z, W, Y), (W, Y, Z))
               for term in (dom(X, y) * om(z, w), om(X, y) * dom(z, w))]
    if mode is Mode.FLOAT:
        Ip = f.triple_at_float(h * U)[0]
        Im = f.triple_at_float(-h * U)[0]
        wp = wedge22_eval(lambda P, Q: _g(s, P, Ip @ Q), X, Y, Z, W)
        wm = wedge22_eval(lambda P, Q: _g(s, P, Im @ Q), X, Y, Z, W)
        lhs = (wp - wm) / (2 * h)
    else:
        I0, I1 = _dual_unit(f, U, "I")
        lhs = wedge22_eval(lambda P, Q: _Dual(_g(s, P, I0 @ Q), _g(s, P, I1 @ Q)), X, Y, Z, W).b
    out["nabla(Omega_I^Omega_I) display"] = [lhs] + display

    for A in UNITS:
        Au = units[A]
        out[f"L1b[{A}]"] = g_terms(M(A, Y), Z) + g_terms(M(A, Z), Y)
        out[f"L1c[{A}]"] = [M(A, Au @ Y), Au @ M(A, Y)]
        out[f"L1c[{A}] g(M(X,Y),AY)"] = g_terms(M(A, Y), Au @ Y)
        out[f"L1c[{A}] g(M(X,Y),Y)"] = g_terms(M(A, Y), Y)
    I, J = units["I"], units["J"]
    out["L1e:IJ printed"] = [M("I", J @ Y), -M("K", Y), I @ M("J", Y)]
    out["L1e:JI printed"] = [M("J", I @ Y), M("K", Y), J @ M("I", Y)]
    for p in DERIVED_PRODUCTS:
        a, b = p
        sigma, c = t0.product(a, b)
        out[f"L1e:{p} derived"] = [M(a, units[b] @ Y), -sigma * M(c, Y), units[a] @ M(b, Y)]
    return out


def _abs_max(v):
    if isinstance(v, np.ndarray):
        return max((abs(x) for x in v.reshape(-1)), default=0)
    return abs(v)


def lemma1_residuals(f: StructureField, U, X, Y, Z, W, mode: Mode = Mode.EXACT,
                     h: float = DEFAULT_STEP) -> dict[str, object]:
    """Raw residual (sum of terms) per identity."""
    return {k: sum(v[1:], v[0]) for k, v in lemma1_terms(f, U, X, Y, Z, W, mode, h).items()}


def scaled_residuals(f: StructureField, U, X, Y, Z, W, mode: Mode = Mode.EXACT,
                     h: float = DEFAULT_STEP) -> dict[str, object]:
    """Exact mode: |residual|.  Float mode: |residual| / max(1, sum of |term|).

    Float vectors are rescaled to unit max-norm first.  Each term carries the
    relative error of the finite-difference slices, so large terms (the
    4-form display reaches the hundreds) are compared relatively.
    """
    out = {}
    for k, terms in lemma1_terms(f, U, X, Y, Z, W, mode, h).items():
        res = _abs_max(sum(terms[1:], terms[0]))
        if Mode(mode) is Mode.FLOAT:
            res = float(res) / max(1.0, float(sum(_abs_max(t) for t in terms)))
        out[k] = res
    return out


def verify_lemma1_at(f: StructureField, U, X, Y, Z, W, mode: Mode = Mode.EXACT,
                     h: float = DEFAULT_STEP, tol: float = DEFAULT_FD_TOL, seed=None) -> VerificationReport:
    mode = Mode(mode)
    per = scaled_residuals(f, U, X, Y, Z, W, mode, h)
    worst = max(per.values())
    ok = worst == 0 if mode is Mode.EXACT else worst <= tol
    counter = None
    if not ok:
        bad = sorted(k for k, v in per.items() if (v != 0 if mode is Mode.EXACT else v > tol))
        counter = {"identities": bad, "vectors": [U, X, Y, Z, W]}
    extra = {"identities": sorted(per)}
    if mode is Mode.FLOAT:
        extra.update(tolerance=tol, step=h, residual_scaling="relative to sum of |terms|")
    return VerificationReport("lemma1_field", f.space.dim, mode.value, PASS if ok else FAIL, seed=seed,
                              max_residual=Fraction(worst) if mode is Mode.EXACT else float(worst),
                              counterexample=counter, extra=extra)


def random_vectors(s: NeutralSpace, seed, count: int = 5):
    rng = rng_for(seed)
    return [random_int_vector(rng, s.dim) for _ in range(count)]


def field_is_valid(f: StructureField, p=None) -> bool:
    t = f.triple_at(p)
    return not t.failed_relations() and all(is_g_skew(t.space, A) for A in t.units())


# -- suites ------------------------------------------------------------------------


def halving_ratio(f: StructureField, h: float = DEFAULT_STEP, exact_slices=None) -> float:
    """max FD error at 2h divided by max FD error at h (about 4 for central differences)."""
    exact_slices = exact_slices if exact_slices is not None else field_jet(f).slices
    return fd_max_error(f, 2 * h, exact_slices) / fd_max_error(f, h, exact_slices)


def verify_field_suite(m: int, seed: int = 0, fields: int = 10, tuples: int = 20,
                       mode: Mode = Mode.EXACT, tol: float = DEFAULT_FD_TOL,
                       h: float = DEFAULT_STEP) -> list[VerificationReport]:
    """Admissibility, first-order identities and finite-difference agreement on seeded fields."""
    mode = Mode(mode)
    dim = 4 * m
    not_admissible, fd_errors, ratios = [], [], []
    lemma_worst, lemma_fail = 0, None
    for i in range(fields):
        f = random_field(m, [seed, i])
        jet = field_jet(f)
        if not admissible_system(jet.triple).is_satisfied(jet.coords()):
            not_admissible.append(i)
        err = fd_max_error(f, h, jet.slices)
        fd_errors.append(err)
        ratios.append(fd_max_error(f, 2 * h, jet.slices) / err if err else float("inf"))
        for k in range(tuples):
            r = verify_lemma1_at(f, *random_vectors(f.space, [seed, i, k]), mode=mode, h=h, tol=tol)
            res = Fraction(r.max_residual) if mode is Mode.EXACT else r.max_residual
            lemma_worst = max(lemma_worst, res)
            if not r.passed and lemma_fail is None:
                lemma_fail = {**r.counterexample, "field_seed": [seed, i]}

    admissible = VerificationReport(
        "field_admissible", dim, Mode.EXACT.value, FAIL if not_admissible else PASS, seed=seed,
        counterexample={"field_seeds": [[seed, i] for i in not_admissible]} if not_admissible else None,
        extra={"fields": fields})
    lemma = VerificationReport(
        "lemma1_field", dim, mode.value, FAIL if lemma_fail else PASS, seed=seed,
        max_residual=lemma_worst, counterexample=lemma_fail,
        extra={"fields": fields, "tuples_per_field": tuples,
               **({"tolerance": tol, "step": h} if mode is Mode.FLOAT else {})})
    fd_ok = max(fd_errors) <= tol and all(3.5 <= q <= 4.5 for q in ratios)
    fd = VerificationReport(
        "fd_slices", dim, Mode.FLOAT.value, PASS if fd_ok else FAIL, seed=seed,
        max_residual=max(fd_errors),
        counterexample=None if fd_ok else {"errors": fd_errors, "halving_ratios": ratios},
        extra={"step": h, "tolerance": tol, "halving_ratio_range": [min(ratios), max(ratios)]})
    return [admissible, lemma, fd]
