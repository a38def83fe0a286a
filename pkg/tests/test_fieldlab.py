import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqkverify.exactla import Mode, exact, is_g_skew, is_zero
from pqkverify.fieldlab import (
    StructureField,
    constant_field,
    dense_field,
    derivative_slice,
    fd_max_error,
    field_is_valid,
    field_jet,
    halving_ratio,
    in_admissible_space,
    lemma1_residuals,
    random_field,
    random_vectors,
    verify_field_suite,
    verify_lemma1_at,
)
from pqkverify.jets import MJet
from pqkverify.pqalg import canonical_triple
from pqkverify.reports import FAIL, PASS


@pytest.mark.parametrize("m", [1, 2])
def test_constant_field_has_zero_slices(m):
    f = constant_field(canonical_triple(m))
    e = np.zeros(4 * m, dtype=np.int64)
    e[0] = 1
    assert all(is_zero(M) for M in derivative_slice(f, e))
    assert verify_lemma1_at(f, *random_vectors(f.space, 0)).status == PASS


@pytest.mark.parametrize("m", [1, 2])
def test_field_values_are_structures(m):
    f = random_field(m, 3)
    assert field_is_valid(f)
    p = exact([1 if i == 2 else 0 for i in range(4 * m)])
    assert field_is_valid(f, p)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 2))
def test_field_jets_are_admissible(seed, m):
    assert in_admissible_space(random_field(m, seed))


def test_dense_field_jet_is_admissible():
    assert in_admissible_space(dense_field(2, 0))


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("seed", range(3))
def test_finite_differences_converge_quadratically(m, seed):
    f = random_field(m, seed)
    exact_slices = field_jet(f).slices
    assert fd_max_error(f, 1e-4, exact_slices) <= 1e-6
    assert 3.5 <= halving_ratio(f, 1e-4, exact_slices) <= 4.5


def test_slices_are_g_skew():
    f = random_field(2, 1)
    t0 = f.point_triple
    for M in field_jet(f).slices.reshape(-1, 8, 8):
        assert is_g_skew(t0.space, M)


@pytest.mark.parametrize("seed", range(4))
def test_identities_exact(seed):
    f = random_field(2, seed)
    for k in range(3):
        r = verify_lemma1_at(f, *random_vectors(f.space, [seed, k]))
        assert r.status == PASS and r.max_residual == 0


@pytest.mark.parametrize("seed", range(3))
def test_identities_float(seed):
    f = random_field(2, seed)
    r = verify_lemma1_at(f, *random_vectors(f.space, [seed]), mode=Mode.FLOAT)
    assert r.status == PASS
    assert r.max_residual <= 1e-6


def test_float_and_exact_residual_names_agree():
    f = random_field(1, 0)
    vs = random_vectors(f.space, 0)
    assert set(lemma1_residuals(f, *vs)) == set(lemma1_residuals(f, *vs, mode=Mode.FLOAT))


def test_wrong_sign_is_caught():
    # swap the roles of I and J in the slices: the product relations must notice
    f = random_field(2, 5)
    good = field_jet(f)
    bad = MJet(good.triple, good.slices[[1, 0, 2]])
    from pqkverify.jets import admissible_system

    assert not admissible_system(good.triple).is_satisfied(bad.coords())


def test_singular_denominator():
    t = canonical_triple(1)
    S0 = np.zeros((4, 4), dtype=np.int64)
    S0[0, 2], S0[2, 0] = 1, 1  # g-skew, eigenvalue 1
    from pqkverify.fieldlab import SingularCayley

    with pytest.raises(SingularCayley):
        StructureField(t, exact(S0), tuple(exact(np.zeros((4, 4), dtype=np.int64)) for _ in range(4))).point_triple


def test_suite_reports():
    reports = verify_field_suite(1, seed=2, fields=2, tuples=2)
    assert [r.check for r in reports] == ["field_admissible", "lemma1_field", "fd_slices"]
    assert all(r.status == PASS for r in reports)


def test_suite_fails_on_impossible_tolerance():
    reports = verify_field_suite(1, seed=2, fields=1, tuples=1, tol=1e-30)
    assert reports[2].status == FAIL and reports[2].counterexample is not None
