from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqkverify.exactla import (
    cayley,
    exact,
    is_zero,
    random_g_skew,
    random_int_vector,
    rank,
    rng_for,
    span_membership,
    subspace_contains,
)
from pqkverify.jets import (
    MJet,
    admissible_system,
    commutator_jets,
    identity_names,
    jet_basis,
    nabla_omega,
    nabla_omega_basis_tensor,
    nabla_two_form,
    nabla_wedge22,
    pqk_family,
    random_jet,
    relation_residuals,
)
from pqkverify.pqalg import canonical_triple, conjugate_triple, rational_boost, rotate_frame, two_form_eval


@pytest.fixture(scope="module")
def basis2(t2):
    return jet_basis(t2)


@pytest.mark.parametrize("m, per_direction", [(1, 3), (2, 18)])
def test_admissible_dimension(m, per_direction):
    # 6m^2 - 3m free components per direction
    t = canonical_triple(m)
    assert jet_basis(t).dim == 4 * m * per_direction


def test_dimension_is_frame_and_conjugation_invariant():
    t = canonical_triple(2)
    rng = rng_for(2)
    T = cayley(random_g_skew(t.space, rng, -1, 1))
    assert jet_basis(conjugate_triple(t, T)).dim == 144
    assert jet_basis(rotate_frame(t, swap=True, boost=rational_boost(3))).dim == 144


def test_basis_jets_satisfy_every_identity(t2, basis2):
    for v in basis2.vectors[:20]:
        jet = MJet.from_coords(t2, v)
        for i in range(8):
            res = relation_residuals(t2, *(jet.slices[a, i] for a in range(3)))
            assert all(is_zero(r) for r in res.values())


def test_coordinates_roundtrip(t2, basis2):
    jet = random_jet(t2, 0, basis2)
    again = MJet.from_coords(t2, jet.coords())
    assert is_zero(again.slices - jet.slices)


def test_slices_are_g_skew(t2, basis2):
    from pqkverify.exactla import is_g_skew

    jet = random_jet(t2, 1, basis2)
    X = random_int_vector(rng_for(0), 8)
    for A in "IJK":
        assert is_g_skew(t2.space, jet.slice(A, X))


def test_commutator_jets_are_pqk(t2):
    jets = commutator_jets(t2)
    coords = np.array([j.coords() for j in jets], dtype=object)
    assert rank(coords) == 24
    system = admissible_system(t2)
    family = pqk_family(t2)
    assert family.dim == 24
    for j in jets:
        assert system.is_satisfied(j.coords())
        assert span_membership(family, j.coords())


def test_derived_relations_are_implied_by_printed_ones(t2, basis2):
    derived = [n for n in identity_names() if n in ("L1e:JK", "L1e:KJ", "L1e:KI", "L1e:IK")]
    assert jet_basis(t2, exclude=derived).dim == basis2.dim


def test_dropping_all_product_relations_enlarges_space(t2, basis2):
    dropped = [n for n in identity_names() if n.startswith("L1e")]
    loose = jet_basis(t2, exclude=dropped)
    assert loose.dim > basis2.dim
    assert subspace_contains(loose, basis2)


def _nabla_wedge_s4(jet, A, U, vs):
    t = jet.triple

    def sgn(p):
        return round(np.linalg.det(np.eye(4)[list(p)]))

    total = 0
    for p in permutations(range(4)):
        a, b, c, d = (vs[i] for i in p)
        total += sgn(p) * (nabla_two_form(jet, A, U, a, b) * two_form_eval(t, A, c, d)
                           + two_form_eval(t, A, a, b) * nabla_two_form(jet, A, U, c, d))
    return Fraction(total, 4)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from("IJK"))
def test_nabla_wedge_matches_antisymmetrisation(seed, A):
    t = canonical_triple(2)
    jet = random_jet(t, seed, _basis_cache(t))
    rng = rng_for(seed)
    U, *vs = (random_int_vector(rng, 8) for _ in range(5))
    assert nabla_wedge22(jet, A, U, *vs) == _nabla_wedge_s4(jet, A, U, vs)


_CACHE = {}


def _basis_cache(t):
    return _CACHE.setdefault(t.space.dim, jet_basis(t))


def test_pqk_jets_have_parallel_four_form(t2):
    # a jet valued in span{I, J, K} leaves Omega parallel
    rng = rng_for(9)
    for jet in commutator_jets(t2)[:6]:
        vs = [random_int_vector(rng, 8) for _ in range(5)]
        assert nabla_omega(jet, *vs) == 0


def test_basis_tensor_matches_pointwise(t2, basis2):
    ints = np.array([np.asarray(MJet.from_coords(t2, v).slices, dtype=np.int64)
                     for v in basis2.integer_matrix()[:2]])
    T = nabla_omega_basis_tensor(t2, ints, directions=[3])
    jet = MJet(t2, ints[1])
    e = np.eye(8, dtype=np.int64)
    for idx in [(0, 1, 2, 3), (1, 4, 5, 6), (7, 2, 0, 5)]:
        assert T[1, 0][idx] == nabla_omega(jet, e[3], *(e[i] for i in idx))


def test_zero_jet(t1):
    z = MJet.zero(t1)
    assert z.is_zero() and (2 * z + z).is_zero()
    with pytest.raises(Exception):
        MJet(t1, np.zeros((3, 4, 4)))
