"""One test per acceptance criterion; each records a PASS/FAIL line with its pinned
tolerance and runtime budget, printed in the terminal summary."""

import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from pqkverify.exactla import Mode
from pqkverify.fieldlab import verify_field_suite
from pqkverify.pqalg import canonical_triple
from pqkverify.rigidity import verify_claim_identities, verify_claims, verify_lemma1d, verify_theorem
from pqkverify.suites import verify_frame_invariance, verify_structure, verify_wedge

FD_TOL = 1e-6
FD_STEP = 1e-4
HALVING_RANGE = (3.5, 4.5)


def record(num, title, ok, elapsed, budget, detail=""):
    within = elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] criterion {num}: {title} ({elapsed:.2f}s / budget {budget:g}s) {detail}".rstrip())
    print(ACCEPTANCE_LINES[-1])
    assert ok, detail
    assert within, f"runtime {elapsed:.2f}s exceeds budget {budget}s"


def test_1_structure_algebra():
    t0 = time.perf_counter()
    reports = [verify_structure(m, seed=m) for m in (1, 2, 3)]
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in reports)
    record(1, "structure algebra m=1,2,3 (12 relations, exact)", ok, elapsed, 1.0,
           f"triples={reports[0].extra['triples']}")


def test_2_wedge_normalisation():
    t0 = time.perf_counter()
    reports = [verify_wedge(m, samples=1000, seed=0, mode=Mode.EXACT) for m in (1, 2)]
    elapsed = time.perf_counter() - t0
    ok = all(r.passed and r.max_residual == 0 for r in reports)
    record(2, "wedge = 24-term antisymmetrisation, 1000 tuples m=1,2, exact", ok, elapsed, 5.0)


def test_3_four_form_well_defined():
    t0 = time.perf_counter()
    r1 = verify_frame_invariance(1, exhaustive=True)
    r2 = verify_frame_invariance(2, samples=500, seed=0, exhaustive=False)
    elapsed = time.perf_counter() - t0
    ok = r1.passed and r2.passed and r1.extra["tuples"] == 256 and r2.extra["tuples"] == 500
    record(3, "Omega invariant under swap + 5 boosts (all 256 basis tuples m=1, 500 tuples m=2)",
           ok, elapsed, 10.0, f"frames={r1.extra['frames']}")


def test_4_lemma1_ground_truth():
    t0 = time.perf_counter()
    admissible, lemma, fd = verify_field_suite(2, seed=0, fields=10, tuples=20, mode=Mode.EXACT,
                                               tol=FD_TOL, h=FD_STEP)
    elapsed = time.perf_counter() - t0
    lo, hi = fd.extra["halving_ratio_range"]
    ok = (admissible.passed and lemma.passed and lemma.max_residual == 0 and fd.passed
          and fd.max_residual <= FD_TOL and HALVING_RANGE[0] <= lo and hi <= HALVING_RANGE[1])
    record(4, f"10 fields m=2: admissible, identities exact, FD <= {FD_TOL:g} at h={FD_STEP:g}, "
              f"halving ratio in {list(HALVING_RANGE)}", ok, elapsed, 30.0,
           f"fd_max={fd.max_residual:.2e} ratios=[{lo:.4f}, {hi:.4f}]")


def test_5_lemma1d():
    t0 = time.perf_counter()
    r = verify_lemma1d(canonical_triple(2))
    elapsed = time.perf_counter() - t0
    ok = r.passed and r.dims == [0, 0]
    record(5, "M_I = 0 forced on totally real pairs, m=2, two elimination orders", ok, elapsed, 60.0,
           f"nullities={r.dims} samples_used={r.extra['samples_used']}")


def test_6_claim_identities():
    t0 = time.perf_counter()
    c1, c2 = verify_claim_identities(2, samples=100, seed=0)
    elapsed = time.perf_counter() - t0
    ok = c1.passed and c2.passed and c1.max_residual == 0 and c2.max_residual == 0
    record(6, "contraction identities exact on 100 admissible jets x 100 totally real pairs, m=2",
           ok, elapsed, 60.0)


def test_7_theorem():
    t0 = time.perf_counter()
    thm = verify_theorem(2)
    claims = verify_claims(2, samples=100, seed=0)
    elapsed = time.perf_counter() - t0
    ok = (thm.passed and thm.extra["nearly_pqk_dim"] == thm.extra["pqk_family_dim"] == 24
          and thm.extra["explicit_pqk_rank"] == 24 and all(r.passed for r in claims))
    record(7, "nearly-PQK = PQK at m=2 (dim 24, 24 explicit jets); claims on 100 nearly-PQK jets",
           ok, elapsed, 300.0, f"dims={thm.dims} claims={[r.status for r in claims]}")


@pytest.mark.slow
def test_7_stretch_theorem_m3():
    t0 = time.perf_counter()
    thm = verify_theorem(3)
    elapsed = time.perf_counter() - t0
    ok = thm.passed and thm.extra["nearly_pqk_dim"] == thm.extra["pqk_family_dim"] == 36
    record("7 (stretch)", "nearly-PQK = PQK at m=3 (dim 36)", ok, elapsed, 1800.0, f"dims={thm.dims}")


def test_8_determinism():
    cmd = [sys.executable, "-m", "pqkverify", "verify", "theorem", "--m", "2", "--output", "json"]
    t0 = time.perf_counter()
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    elapsed = time.perf_counter() - t0
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    record(8, "`verify theorem --m 2` twice gives byte-identical JSON", ok, elapsed, 600.0)
