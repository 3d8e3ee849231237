#!/usr/bin/env python3
"""Benchmark the shooting kernel: compiled extension vs pure-Python fallback.

The two backends execute the same IEEE-double operation sequence, so their
outputs must agree bit for bit; this script asserts that before timing.

Run:  python3 benchmarks/bench_shoot.py [--steps 20000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from qes_nbody import ScalarMode, SexticRecursion, problem_for_recursion, shoot
from qes_nbody import kernels
from qes_nbody.kernels import available_backends


def build_problem():
    mode = ScalarMode.floating(128)
    rec = SexticRecursion(
        mode.scalar(1), mode.scalar("1/64"), mode.scalar(2), 1
    )
    return problem_for_recursion(rec, 0, 1)


def bench_kernel(fn, n_steps, repeats):
    problem = build_problem()
    rho0, rho_max = 1e-4, 5.0
    h = (rho_max - rho0) / n_steps
    rho_half = rho0 + np.arange(2 * n_steps + 1) * (h / 2.0)
    v_half = np.asarray(problem.potential.v(rho_half), dtype=np.float64)
    args = (rho0, h, n_steps, v_half, 3.0, 8.0, 1.0, 0.0)
    fn(*args)  # warm-up
    best = min(
        _timed(fn, args)
        for _ in range(repeats)
    )
    return best, fn(*args)


def _timed(fn, args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def bench_shoot(backend_fn, monkeyed_name):
    problem = build_problem()
    kernels.integrate = backend_fn
    t0 = time.perf_counter()
    energy = shoot(problem, (7.0, 9.0))
    return time.perf_counter() - t0, energy


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=200_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("note: compiled kernel not built; only the pure backend is timed")

    results = {}
    outputs = {}
    for name, fn in sorted(backends.items()):
        elapsed, out = bench_kernel(fn, args.steps, args.repeats)
        results[name] = elapsed
        outputs[name] = out

    reference = next(iter(outputs.values()))
    for name, out in outputs.items():
        assert out == reference, f"backend {name} diverged: {out} != {reference}"

    print(f"\nradial RK4 kernel, {args.steps} steps (best of {args.repeats}):")
    print(f"{'backend':<10} {'time':>10} {'ns/step':>10} {'speedup':>9}")
    slowest = max(results.values())
    original = kernels.integrate
    shoot_times = {}
    for name in sorted(results):
        t = results[name]
        print(
            f"{name:<10} {t * 1e3:>8.2f}ms {t / args.steps * 1e9:>9.1f} "
            f"{slowest / t:>8.1f}x"
        )
    print("\nend-to-end shooting eigensolve (bracket bisection):")
    energies = {}
    try:
        for name, fn in sorted(backends.items()):
            t, e = bench_shoot(fn, name)
            shoot_times[name] = t
            energies[name] = e
            print(f"{name:<10} {t * 1e3:>8.2f}ms  E = {e!r}")
    finally:
        kernels.integrate = original
    assert len(set(energies.values())) == 1, "backends found different eigenvalues"
    print("\nbackends agree bit-for-bit on kernel output and eigenvalue")


if __name__ == "__main__":
    main()
