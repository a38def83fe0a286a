import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqkverify import kernels
from pqkverify.kernels import EchelonReducer, available_backends, rref

needs_cython = pytest.mark.skipif("cython" not in available_backends(), reason="extension not built")


def _reduce(rows, ncols, backend, order=None):
    red = EchelonReducer(ncols, order, backend=backend)
    red.add_rows(rows)
    return red.result()


@needs_cython
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(1, 10), st.integers(0, 2**32 - 1), st.booleans())
def test_backends_agree(n, k, seed, reverse):
    rng = np.random.default_rng(seed)
    A = rng.integers(-3, 4, size=(n, k))
    order = list(range(k - 1, -1, -1)) if reverse else None
    assert _reduce(A, k, "python", order) == _reduce(A, k, "cython", order)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_rref_is_canonical_under_row_shuffles(seed):
    # the normalised RREF depends only on the row space
    rng = np.random.default_rng(seed)
    A = rng.integers(-4, 5, size=(5, 7))
    A[4] = A[0] - 2 * A[3]
    perm = rng.permutation(5)
    assert rref(A, 7) == rref(A[perm], 7)


def test_rref_rows_are_primitive_with_positive_pivots():
    A = np.array([[2, 4, 6], [1, 1, 1]])
    pivots, rows = rref(A, 3)
    assert pivots == [0, 1]
    for p, r in zip(pivots, rows):
        assert r[p] > 0
        assert np.gcd.reduce(np.abs(r)) == 1


@needs_cython
def test_overflow_falls_back_to_python():
    big = 2**40
    A = [[big, 1, 3], [1, big, 5], [7, 11, big]]
    red = EchelonReducer(3, backend="cython")
    red.add_rows(np.array(A, dtype=np.int64))
    assert red.rank == 3
    assert red.result() == _reduce(A, 3, "python")


def test_huge_python_ints_are_exact():
    A = [[10**30, 1], [10**30 + 1, 1]]
    assert rref(A, 2)[0] == [0, 1]


def test_unknown_backend():
    with pytest.raises(ValueError):
        EchelonReducer(3, backend="fortran")


def test_non_integral_rows_are_rejected():
    from fractions import Fraction

    with pytest.raises((ValueError, TypeError)):
        EchelonReducer(2, backend="python").add_rows([[Fraction(1, 2), 1]])


def test_default_backend_reported():
    assert kernels.BACKEND in available_backends()


def test_env_forces_pure_python():
    import os
    import subprocess
    import sys

    env = dict(os.environ, PQ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import pqkverify; print(pqkverify.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
