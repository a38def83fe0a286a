"""Compiled vs pure-Python exact row reduction on the systems the verifier builds.

    python benchmarks/bench_kernels.py [--repeat N] [--m3]
"""

import argparse
import time

import numpy as np

from pqkverify.jets import admissible_system, jet_basis
from pqkverify.kernels import EchelonReducer, available_backends
from pqkverify.pqalg import canonical_triple
from pqkverify.rigidity import nearly_pqk_system


def _time(rows, ncols, backend, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        red = EchelonReducer(ncols, backend=backend)
        red.add_rows(rows)
        result = red.result()
        best = min(best, time.perf_counter() - t0)
    return best, result


def workloads(include_m3):
    for m in (2, 3) if include_m3 else (2,):
        t = canonical_triple(m)
        system = admissible_system(t)
        yield f"admissible system m={m}", np.asarray(system.rows, dtype=np.int64)
        if m == 2:
            basis = jet_basis(t)
            yield f"nearly-PQK system m={m}", np.asarray(nearly_pqk_system(t, basis).rows)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--m3", action="store_true", help="also reduce the m=3 admissible system")
    args = p.parse_args(argv)
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'workload':<28}{'shape':>14}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, rows in workloads(args.m3):
        times, results = {}, {}
        for b in backends:
            times[b], results[b] = _time(rows, rows.shape[1], b, args.repeat)
        if len(backends) > 1:
            assert results["python"] == results["cython"], "backends disagree"
        speed = f"{times['python'] / times['cython']:.1f}x" if "cython" in times else "-"
        shape = f"{rows.shape[0]}x{rows.shape[1]}"
        print(f"{name:<28}{shape:>14}" + "".join(f"{times[b]:>11.3f}s" for b in backends) + f"{speed:>10}")


if __name__ == "__main__":
    main()
