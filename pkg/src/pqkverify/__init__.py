"""Exact verification that nearly para-quaternion-Kähler jets are para-quaternion-Kähler.

Everything is pointwise linear algebra over the rationals on R^{4m} with the
neutral metric; the compiled elimination kernel is used when available.
"""

from .exactla import Mode, NeutralSpace, SubspaceBasis, UsageError, DimensionError
from .kernels import BACKEND, EchelonReducer, available_backends, rref
from .pqalg import PQTriple, canonical_triple, conjugate_triple, four_form_eval, rotate_frame
from .jets import MJet, admissible_system, jet_basis, pqk_family
from .reports import VerificationReport
from .rigidity import nearly_pqk_space, verify_claims, verify_lemma1d, verify_theorem
from .fieldlab import StructureField, derivative_slice, random_field, verify_lemma1_at

__all__ = [
    "BACKEND", "DimensionError", "EchelonReducer", "MJet", "Mode", "NeutralSpace", "PQTriple",
    "StructureField", "SubspaceBasis", "UsageError", "VerificationReport", "admissible_system",
    "available_backends", "canonical_triple", "conjugate_triple", "derivative_slice", "four_form_eval",
    "jet_basis", "nearly_pqk_space", "pqk_family", "random_field", "rotate_frame", "rref",
    "verify_claims", "verify_lemma1_at", "verify_lemma1d", "verify_theorem",
]
