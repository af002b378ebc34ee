#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Run without arguments to spawn both backends in subprocesses and print a
comparison table; run with --backend {numba,numpy} to time one backend in
the current process (used by the parent run).
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _timings():
    import besovlab
    from besovlab import _kernels
    from besovlab.grid import SpaceParams, sample
    from besovlab.maps import U_functional, sin_drift_map
    from besovlab.norms import besov_norm_diff

    _kernels.warm_up()
    results = {"backend": "numba" if besovlab.USING_NUMBA else "numpy"}

    f = sample("gaussian")
    offsets = np.unique(np.round(np.geomspace(1, 256, 72))).astype(np.int64)
    t0 = time.perf_counter()
    for _ in range(50):
        _kernels.shift_difference_batch(f.samples, 0.0, 0.0, offsets, 2)
    results["difference_batch_50x"] = time.perf_counter() - t0

    phi = sin_drift_map(0.5)
    seg = phi.segments()
    targets = np.linspace(-17.0, 16.0, 4096)
    t0 = time.perf_counter()
    _kernels.preimage_lengths(seg, targets, targets + 1.0)
    results["preimage_lengths_4096"] = time.perf_counter() - t0

    rng = np.random.default_rng(0)
    lefts = rng.uniform(0, 60, (500, 200))
    widths = rng.uniform(0, 1.5, (500, 200))
    t0 = time.perf_counter()
    for i in range(500):
        _kernels.greedy_classes(lefts[i], widths[i] + lefts[i])
    results["greedy_classes_500x200"] = time.perf_counter() - t0

    sp = SpaceParams(1.5, 2.0, 2.0, 2)
    t0 = time.perf_counter()
    for _ in range(10):
        besov_norm_diff(f, sp)
    results["besov_norm_10x"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    U_functional(phi)
    results["U_functional"] = time.perf_counter() - t0
    return results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--backend", choices=("numba", "numpy"), default=None)
    args = ap.parse_args()

    if args.backend:
        env_flag = os.environ.get("BESOVLAB_DISABLE_NUMBA", "")
        want_numpy = args.backend == "numpy"
        if want_numpy != (env_flag == "1"):
            print("backend/env mismatch; run via the parent mode", file=sys.stderr)
            return 1
        print(json.dumps(_timings()))
        return 0

    rows = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ)
        env["BESOVLAB_DISABLE_NUMBA"] = "1" if backend == "numpy" else "0"
        out = subprocess.run(
            [sys.executable, __file__, "--backend", backend],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        rows[backend] = json.loads(out.stdout.strip().splitlines()[-1])

    keys = [k for k in rows["numba"] if k != "backend"]
    width = max(len(k) for k in keys) + 2
    print(f"{'kernel':<{width}} {'numba [s]':>12} {'numpy [s]':>12} {'speedup':>9}")
    for k in keys:
        a, b = rows["numba"][k], rows["numpy"][k]
        print(f"{k:<{width}} {a:>12.4f} {b:>12.4f} {b / a:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
