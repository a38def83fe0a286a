from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqkverify.exactla import (
    DimensionError,
    Mode,
    NeutralSpace,
    SubspaceBasis,
    UsageError,
    cayley,
    exact,
    g_adjoint,
    inner,
    inverse,
    is_g_skew,
    is_zero,
    nullspace,
    random_g_skew,
    random_int_matrix,
    random_nonnull_vector,
    rank,
    rng_for,
    skew_basis,
    skew_coords,
    span_membership,
    subspace_contains,
    subspace_equal,
)

seeds = st.integers(0, 2**32 - 1)


def test_metric_layout():
    s = NeutralSpace(2)
    assert s.metric_diag == (1, 1, -1, -1, 1, 1, -1, -1)
    assert s.dim == 8
    assert inner(s, s.basis_vector(2), s.basis_vector(2)) == -1


def test_dimension_mismatch():
    s = NeutralSpace(1)
    with pytest.raises(DimensionError):
        inner(s, np.ones(4), np.ones(8))


def test_float_decision_needs_tolerance():
    with pytest.raises(UsageError):
        is_zero(np.array([1e-20]))
    with pytest.raises(UsageError):
        rank(np.eye(3), mode=Mode.FLOAT)
    assert is_zero(np.array([1e-20]), tol=1e-12)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 6), st.integers(1, 6), st.integers(0, 6))
def test_rank_of_factored_product(seed, n, k, r):
    # A = B C with B (n x r) and C (r x k) random integer: rank = min(r, n, k) almost surely,
    # and never more; compared against the float SVD rank as an independent oracle
    rng = rng_for(seed)
    B = random_int_matrix(rng, n, r)
    C = random_int_matrix(rng, r, k)
    A = B @ C if r else np.zeros((n, k), dtype=np.int64)
    exact_rank = rank(A)
    assert exact_rank <= min(r, n, k)
    assert exact_rank == np.linalg.matrix_rank(A.astype(float))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 7), st.integers(1, 9))
def test_nullspace_annihilates_and_has_right_dimension(seed, n, k):
    rng = rng_for(seed)
    A = random_int_matrix(rng, n, k, -2, 2)
    ns = nullspace(A)
    assert ns.dim == k - rank(A)
    for v in ns.vectors:
        assert all(x == 0 for x in exact(A) @ v)
        assert all(isinstance(x, int) for x in v)


def test_rank_is_independent_of_elimination_order():
    rng = rng_for(3)
    A = random_int_matrix(rng, 6, 6) @ random_int_matrix(rng, 6, 9)
    A[2] = A[0] + A[1]
    assert rank(A) == rank(A, col_order=range(8, -1, -1), row_order=range(5, -1, -1)) == 5


def test_rational_entries():
    A = exact([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert rank(A) == 1
    assert nullspace(A).vectors[0].tolist() == [-2, 3]


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(1, 2))
def test_g_adjoint_is_involution_and_cayley_is_orthogonal(seed, m):
    s = NeutralSpace(m)
    rng = rng_for(seed)
    A = exact(random_int_matrix(rng, s.dim, s.dim))
    assert is_zero(g_adjoint(s, g_adjoint(s, A)) - A)
    X, Y = random_nonnull_vector(s, rng), random_nonnull_vector(s, rng)
    assert inner(s, A @ X, Y) == inner(s, X, g_adjoint(s, A) @ Y)
    S = random_g_skew(s, rng, -1, 1)
    assert is_g_skew(s, S)
    try:
        T = cayley(S)
    except ZeroDivisionError:
        return
    assert is_zero(g_adjoint(s, T) @ T - exact(np.eye(s.dim, dtype=np.int64)))


def test_inverse_roundtrip():
    rng = rng_for(11)
    A = exact(random_int_matrix(rng, 5, 5))
    assert is_zero(A @ inverse(A) - exact(np.eye(5, dtype=np.int64)))
    with pytest.raises(ZeroDivisionError):
        inverse(exact(np.ones((3, 3), dtype=np.int64)))


def test_skew_basis_coordinates_roundtrip():
    s = NeutralSpace(1)
    basis = skew_basis(s)
    assert len(basis) == 6
    rng = rng_for(0)
    S = random_g_skew(s, rng)
    c = skew_coords(s, S)
    assert is_zero(sum(int(x) * E for x, E in zip(c, basis)) - S)


def test_subspace_relations():
    e = np.eye(4, dtype=np.int64)
    A = SubspaceBasis(4, [e[0], e[1]])
    B = SubspaceBasis(4, [e[0] + e[1], e[0] - e[1]])
    C = SubspaceBasis(4, [e[0]])
    assert subspace_equal(A, B)
    assert subspace_contains(A, C) and not subspace_contains(C, A)
    assert span_membership(A, 3 * e[0] - 2 * e[1])
    assert not span_membership(A, e[2])
    with pytest.raises(ValueError):
        SubspaceBasis(4, [e[0], 2 * e[0]])
    with pytest.raises(UsageError):
        span_membership(A, np.array([1.0, 0, 0, 0]))
    assert span_membership(A, np.array([1.0, 1e-14, 0, 0]), tol=1e-9)


def test_float_nullspace_matches_exact():
    rng = rng_for(5)
    A = random_int_matrix(rng, 3, 6)
    assert nullspace(A, mode=Mode.FLOAT, tol=1e-9).dim == nullspace(A).dim
