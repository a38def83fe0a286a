from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqkverify.exactla import (
    DimensionError,
    exact,
    inner,
    is_zero,
    norm_sq,
    random_int_vector,
    rng_for,
)
from pqkverify.pqalg import (
    StructureError,
    canonical_triple,
    four_form_eval,
    four_form_tensor,
    is_totally_real,
    quaternionic_span,
    rational_boost,
    rotate_frame,
    sample_totally_real_pair,
    sample_totally_real_triple,
    two_form,
    two_form_eval,
    wedge22_eval,
    wedge22_s4,
)
from pqkverify.suites import sample_triples

seeds = st.integers(0, 2**32 - 1)


def _sign(p):
    return round(np.linalg.det(np.eye(4)[list(p)]))


def _s4_wedge(om, vs):
    # independent copy of the antisymmetrisation: permutation sign via determinant
    total = sum(_sign(p) * om(vs[p[0]], vs[p[1]]) * om(vs[p[2]], vs[p[3]]) for p in permutations(range(4)))
    return Fraction(total, 4)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_triples_satisfy_all_relations(m):
    for label, t in sample_triples(m, seed=m).items():
        assert t.failed_relations() == [], label


def test_product_table_matches_matrices(t1):
    expected = {("I", "J"): (1, "K"), ("J", "I"): (-1, "K"), ("J", "K"): (-1, "I"),
                ("K", "J"): (1, "I"), ("K", "I"): (1, "J"), ("I", "K"): (-1, "J")}
    for (a, b), want in expected.items():
        assert t1.product(a, b) == want
    assert [t1.square_sign(a) for a in "IJK"] == [-1, 1, 1]


def test_canonical_block_is_para_quaternion_multiplication():
    t = canonical_triple(1)
    # i * j = k on basis (1, i, j, k)
    assert t.I[:, 2].tolist() == [0, 0, 0, 1]
    assert norm_sq(t.space, exact([1, 1, 1, 1])) == 0


def test_invalid_boost_rejected(t1):
    with pytest.raises(StructureError):
        rotate_frame(t1, boost=(2, 1))


def test_perturbed_triple_fails():
    t = canonical_triple(1)
    bad = type(t)(t.space, t.I, t.J, -t.K)
    assert "IJ=K" in bad.failed_relations()


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 2), st.sampled_from("IJK"))
def test_wedge_matches_antisymmetrisation(seed, m, A):
    t = canonical_triple(m)
    rng = rng_for(seed)
    vs = [random_int_vector(rng, t.space.dim) for _ in range(4)]
    om = two_form(t, A)
    assert wedge22_eval(om, *vs) == _s4_wedge(om, vs) == wedge22_s4(om, *vs)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_wedge_is_alternating(seed):
    t = canonical_triple(2)
    rng = rng_for(seed)
    X, Y, Z, W = (random_int_vector(rng, 8) for _ in range(4))
    om = two_form(t, "J")
    v = wedge22_eval(om, X, Y, Z, W)
    assert wedge22_eval(om, Y, X, Z, W) == -v
    assert wedge22_eval(om, X, Z, Y, W) == -v
    assert wedge22_eval(om, X, Y, W, Z) == -v
    assert wedge22_eval(om, X, X, Z, W) == 0


def test_two_forms_are_skew(t2):
    rng = rng_for(1)
    X, Y = random_int_vector(rng, 8), random_int_vector(rng, 8)
    for A in "IJK":
        assert two_form_eval(t2, A, X, Y) == -two_form_eval(t2, A, Y, X)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 9))
def test_four_form_frame_invariant(seed, k):
    t = canonical_triple(2)
    rng = rng_for(seed)
    vs = [random_int_vector(rng, 8) for _ in range(4)]
    ref = four_form_eval(t, *vs)
    assert four_form_eval(rotate_frame(t, swap=True), *vs) == ref
    assert four_form_eval(rotate_frame(t, boost=rational_boost(k)), *vs) == ref
    assert four_form_eval(rotate_frame(t, swap=True, boost=rational_boost(k)), *vs) == ref


def test_single_wedge_is_not_frame_invariant(t2):
    # the combination matters: Omega_I ^ Omega_I alone changes under a boost
    b = rotate_frame(t2, boost=rational_boost(2))
    rng = rng_for(4)
    vs = [random_int_vector(rng, 8) for _ in range(4)]
    assert wedge22_eval(two_form(t2, "I"), *vs) != wedge22_eval(two_form(b, "I"), *vs)


def test_four_form_tensor_matches_evaluation(t1):
    T = four_form_tensor(t1)
    e = np.eye(4, dtype=np.int64)
    for idx in [(0, 1, 2, 3), (0, 1, 0, 1), (1, 3, 0, 2), (2, 3, 0, 1)]:
        assert T[idx] == four_form_eval(t1, *(e[i] for i in idx))


def test_four_form_rejects_wrong_dimension(t1):
    with pytest.raises(DimensionError):
        four_form_eval(t1, np.ones(8), np.ones(4), np.ones(4), np.ones(4))


def test_quaternionic_span(t2):
    X = exact([1, 2, 0, 0, 0, 0, 0, 0])
    assert quaternionic_span(t2, X).dim == 4
    with pytest.raises(ValueError):
        quaternionic_span(t2, np.zeros(8, dtype=np.int64))


@pytest.mark.parametrize("seed", range(10))
def test_totally_real_samples(t2, seed):
    X, Y = sample_totally_real_pair(t2, seed)
    assert norm_sq(t2.space, X) != 0 and norm_sq(t2.space, Y) != 0
    assert is_totally_real(t2, X, Y)
    X, Y, Z = sample_totally_real_triple(t2, seed)
    assert is_totally_real(t2, X, Y) and is_totally_real(t2, X, Z) and is_totally_real(t2, Y, Z)
    assert not is_zero(Z)


def test_totally_real_triple_generic_in_dim_12():
    t = canonical_triple(3)
    X, Y, Z = sample_totally_real_triple(t, 0)
    assert norm_sq(t.space, Y) != 0
    assert is_totally_real(t, Y, Z)


def test_dim_8_triples_are_isotropic(t2):
    # no nonzero Z is totally real to two non-null totally real vectors in dim 8
    X, Y, Z = sample_totally_real_triple(t2, 3)
    assert norm_sq(t2.space, Y) == 0
    assert all(inner(t2.space, Y, v) == 0 for v in (t2.I @ Y, t2.J @ Y, t2.K @ Y))


def test_totally_real_needs_dim_8(t1):
    with pytest.raises(DimensionError):
        sample_totally_real_pair(t1, 0)
