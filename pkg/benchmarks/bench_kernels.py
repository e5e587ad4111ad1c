"""Benchmark the integer pairing kernels: numba JIT vs pure numpy.

Runs every workload in-process, then re-runs itself in a subprocess with
``LINKFORMS_PURE_NUMPY=1`` and prints a side-by-side table.  Checksums of
every result are compared across backends, so the benchmark doubles as a
cross-backend equivalence check.

    python3 benchmarks/bench_kernels.py            # table for both backends
    python3 benchmarks/bench_kernels.py --json     # this backend only
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from linkforms import _kernels, direct_sum, standard_w
from linkforms.forms import morphisms_from_w

REPEATS = 3


def complex_arrays():
    """The real adjacency workload: vertex arrays of the rank-2 complex."""
    form = direct_sum(standard_w(3), standard_w(3))
    morphs = morphisms_from_w(form, 3, cap=3000)
    X = np.array([m.x.coeffs for m in morphs], dtype=np.int64)
    Y = np.array([m.y.coeffs for m in morphs], dtype=np.int64)
    return X, Y, form._np_numerators, form.denominator


def workloads():
    rng = np.random.default_rng(20260825)
    X2, Y2, N2, D2 = complex_arrays()

    def rand_instance(m, r, D):
        X = rng.integers(0, D, size=(m, r), dtype=np.int64)
        N = rng.integers(0, D, size=(r, r), dtype=np.int64)
        return X, N, D

    X3, N3, D3 = rand_instance(2000, 8, 16)
    Y3 = rng.integers(0, D3, size=(2000, 8), dtype=np.int64)
    X4, N4, D4 = rand_instance(3000, 6, 9)

    return [
        (
            "orth_adjacency 2160x2160 (real)",
            lambda: _kernels.orth_adjacency(X2, Y2, N2, D2),
            lambda out: int(out.sum()),
        ),
        (
            "pair_table 2000x2000 r=8 D=16",
            lambda: _kernels.pair_table(X3, N3, Y3, D3),
            lambda out: int(out.sum()),
        ),
        (
            "pairs_hitting 3000^2 limit=1e5",
            lambda: _kernels.pairs_hitting(X4, N4, D4, 1, 0, 100_000),
            # lists, not tuples: checksums must survive a JSON round trip
            lambda out: [int(out[1]), int(out[0].sum())],
        ),
        (
            "first_pair full scan (miss)",
            lambda: _kernels.first_pair(X4, N4, D4, D4),  # impossible target
            lambda out: [int(v) for v in out],
        ),
    ]


def run_backend():
    results = {}
    for name, fn, digest in workloads():
        fn()  # warm-up: JIT compilation / cache effects stay out of timing
        best = float("inf")
        for _ in range(REPEATS):
            t0 = time.perf_counter()
            out = fn()
            best = min(best, time.perf_counter() - t0)
        results[name] = {"seconds": best, "checksum": digest(out)}
    return {"backend": "numba" if _kernels.USING_NUMBA else "numpy", "results": results}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--json", action="store_true",
                        help="print this backend's numbers as JSON and exit")
    args = parser.parse_args()

    mine = run_backend()
    if args.json:
        print(json.dumps(mine))
        return 0

    env = dict(os.environ)
    env[_kernels.ENV_FLAG] = "0" if _kernels.pure_numpy_requested() else "1"
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--json"],
        env=env, capture_output=True, text=True, check=True,
    )
    other = json.loads(proc.stdout)

    columns = {mine["backend"]: mine["results"], other["backend"]: other["results"]}
    if set(columns) != {"numba", "numpy"}:
        print("note: numba unavailable; both columns ran the numpy path")
        nb, np_ = mine["results"], other["results"]
    else:
        nb, np_ = columns["numba"], columns["numpy"]

    width = max(len(n) for n, _, _ in workloads())
    print(f"{'workload':<{width}}  {'numba':>9}  {'numpy':>9}  {'speedup':>8}")
    for name, _, _ in workloads():
        a, b = nb[name], np_[name]
        if a["checksum"] != b["checksum"]:
            raise SystemExit(f"checksum mismatch on {name!r}: backends disagree")
        ratio = b["seconds"] / a["seconds"] if a["seconds"] else float("inf")
        print(f"{name:<{width}}  {a['seconds']:>8.4f}s  {b['seconds']:>8.4f}s  {ratio:>7.1f}x")
    print("checksums agree across backends")
    return 0


if __name__ == "__main__":
    sys.exit(main())
