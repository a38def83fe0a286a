"""Report-producing checks for the structure algebra and the 4-form."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np

from .exactla import Mode, cayley, exact, random_g_skew, random_int_vector, rng_for
from .pqalg import (
    UNITS,
    canonical_triple,
    conjugate_triple,
    four_form_eval,
    rational_boost,
    rotate_frame,
    two_form,
    wedge22_eval,
    wedge22_s4,
)
from .reports import FAIL, PASS, VerificationReport

BOOST_PARAMETERS = (2, 3, 4, 5, 7)


def sample_triples(m: int, seed=0):
    """Canonical, Cayley-conjugated and frame-rotated triples, by label."""
    t = canonical_triple(m)
    rng = rng_for(seed)
    while True:
        try:
            T = cayley(random_g_skew(t.space, rng, -1, 1))
            break
        except ZeroDivisionError:
            continue
    out = {"canonical": t, "conjugated": conjugate_triple(t, T), "swap": rotate_frame(t, swap=True)}
    for k in BOOST_PARAMETERS[:2]:
        out[f"boost{k}"] = rotate_frame(t, boost=rational_boost(k))
    out["swap+boost2"] = rotate_frame(t, swap=True, boost=rational_boost(2))
    return out


def verify_structure(m: int, seed=0) -> VerificationReport:
    bad = {}
    triples = sample_triples(m, seed)
    for label, t in triples.items():
        failed = t.failed_relations()
        if failed:
            bad[label] = failed
    return VerificationReport("structure_algebra", 4 * m, Mode.EXACT.value, FAIL if bad else PASS, seed=seed,
                              max_residual=0 if not bad else None, counterexample=bad or None,
                              extra={"relations": 12, "triples": sorted(triples)})


def _float_or_exact(x, mode):
    return np.asarray(x, dtype=float) if mode is Mode.FLOAT else exact(x)


def verify_wedge(m: int, samples: int = 1000, seed=0, mode: Mode = Mode.EXACT,
                 tol: float = 1e-9) -> VerificationReport:
    """Six-term wedge display against the 24-term antisymmetrisation."""
    mode = Mode(mode)
    t = canonical_triple(m)
    rng = rng_for([seed, 101])
    worst, counter = 0, None
    for k in range(samples):
        vs = [_float_or_exact(random_int_vector(rng, t.space.dim), mode) for _ in range(4)]
        for A in UNITS:
            om = two_form(t, A)
            diff = abs(wedge22_eval(om, *vs) - wedge22_s4(om, *vs))
            worst = max(worst, diff)
            bad = diff != 0 if mode is Mode.EXACT else diff > tol
            if bad and counter is None:
                counter = {"unit": A, "vectors": vs, "sample": k}
    return VerificationReport("wedge_normalisation", t.space.dim, mode.value, FAIL if counter else PASS,
                              seed=seed, max_residual=Fraction(worst) if mode is Mode.EXACT else float(worst),
                              counterexample=counter, extra={"samples": samples})


def _basis_tuples(n):
    eye = np.eye(n, dtype=np.int64)
    for idx in product(range(n), repeat=4):
        yield idx, [exact(eye[i]) for i in idx]


def verify_frame_invariance(m: int, samples: int = 500, seed=0, exhaustive: bool | None = None) -> VerificationReport:
    """Omega unchanged under the swap and rational boosts of the frame."""
    t = canonical_triple(m)
    n = t.space.dim
    frames = {"swap": rotate_frame(t, swap=True)}
    for k in BOOST_PARAMETERS:
        frames[f"boost{k}"] = rotate_frame(t, boost=rational_boost(k))
    exhaustive = n <= 4 if exhaustive is None else exhaustive
    if exhaustive:
        tuples = _basis_tuples(n)
    else:
        rng = rng_for([seed, 202])
        tuples = ((k, [exact(random_int_vector(rng, n)) for _ in range(4)]) for k in range(samples))
    worst, counter, count = 0, None, 0
    for key, vs in tuples:
        count += 1
        ref = four_form_eval(t, *vs)
        for label, rot in frames.items():
            diff = abs(four_form_eval(rot, *vs) - ref)
            worst = max(worst, diff)
            if diff and counter is None:
                counter = {"frame": label, "tuple": key, "vectors": vs}
    return VerificationReport("four_form_frame_invariance", n, Mode.EXACT.value, FAIL if counter else PASS,
                              seed=seed, max_residual=Fraction(worst), counterexample=counter,
                              extra={"tuples": count, "exhaustive": exhaustive, "frames": sorted(frames)})
