#!/usr/bin/env python3
"""Throughput comparison: compiled extension vs pure-Python fallback.

Times the two hot paths behind the experiment harness - the seeded random
stream and the benchmark function kernels - on both backends, and a whole
optimizer run end to end. Run from the repo root:

    python benchmarks/bench_backends.py [--n 200000] [--d 5]

The compiled backend must be importable for the comparison; otherwise only
the pure path is reported.
"""

import argparse
import time

import numpy as np

from iurlab import _backend
from iurlab._rng_py import RngCore as PyRng
from iurlab.benchmarks.kernels import KERNEL_NAMES, PY_KERNELS, evaluate_kernel


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_rng(n):
    rows = []
    native = _backend.native_module()
    variants = [("python", PyRng)]
    if native is not None:
        variants.insert(0, ("native", native.RngCore))
    for label, cls in variants:
        rng = cls(7)
        uni = _time(lambda: rng.uniforms(n))
        nrm = _time(lambda: rng.normals(n))
        rows.append((f"rng.uniforms({n})", label, uni, n / uni / 1e6))
        rows.append((f"rng.normals({n})", label, nrm, n / nrm / 1e6))
    return rows


def bench_kernels(n, d):
    rng = PyRng(11)
    Z = 10.0 * (2.0 * np.asarray(rng.uniforms(n * d)).reshape(n, d) - 1.0)
    rows = []
    native = _backend.native_module()
    for name in KERNEL_NAMES:
        if native is not None:
            t = _time(lambda: evaluate_kernel(name, Z))
            rows.append((f"kernel {name}", "native", t, n / t / 1e6))
        t = _time(lambda: evaluate_kernel(name, Z, kernels=PY_KERNELS))
        rows.append((f"kernel {name}", "python", t, n / t / 1e6))
    return rows


def bench_run():
    import os

    from iurlab.algorithms import OptimizerConfig, run
    from iurlab.benchmarks import make_suite, suite_subset

    problem = suite_subset(make_suite(5, 2013), ["f11"])[0]
    cfg = OptimizerConfig(algorithm="es", lam=10, mu=5)
    t = _time(lambda: run(cfg, problem, 20_000, seed=1), repeat=2)
    label = _backend.backend_name()
    return [(f"es run (20000 evals, d=5) [{label}]", label, t, 20_000 / t / 1e6)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200_000, help="draws / points per trial")
    parser.add_argument("--d", type=int, default=5)
    args = parser.parse_args()

    print(f"selected backend: {_backend.backend_name()}")
    print(f"{'operation':38s} {'backend':8s} {'seconds':>10s} {'M ops/s':>9s}")
    rows = bench_rng(args.n) + bench_kernels(args.n, args.d) + bench_run()
    for op, label, seconds, mops in rows:
        print(f"{op:38s} {label:8s} {seconds:10.4f} {mops:9.2f}")

    if _backend.native_module() is None:
        print("\ncompiled backend unavailable; set up with: pip install -e . "
              "--no-build-isolation")


if __name__ == "__main__":
    main()
