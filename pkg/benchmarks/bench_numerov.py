#!/usr/bin/env python3
"""Benchmark the compiled Numerov kernel against the pure-Python fallback.

Two views:
  * kernel microbenchmark -- raw outward sweeps on a deuteron-sized mesh,
    both implementations imported side by side;
  * end-to-end -- a bound-state solve plus a 200-point phase sweep, run in
    subprocesses so the import-time backend selection is exercised
    (SUSYPEP_PURE_PYTHON=1 forces the fallback).

Usage: python benchmarks/bench_numerov.py [--quick]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from susypep._kernels import _numerov_py

try:
    from susypep._kernels import _numerov_cy
except ImportError:
    _numerov_cy = None

N_POINTS = 3500
STEP = 0.01

_END_TO_END = r"""
import time
import numpy as np
from susypep import (ChannelConstants, SechSquared, default_grid, phase_shift,
                     solve_bound_state)
from susypep._kernels import BACKEND

channel = ChannelConstants(41.47, "n-p")
potential = SechSquared(3.146, 1.587, channel.hbar2_over_2mu)
grid = default_grid()

start = time.perf_counter()
solve_bound_state(potential, channel, target_nodes=0, grid=grid)
solve_bound_state(potential, channel, target_nodes=1, grid=grid)
t_solve = time.perf_counter() - start

start = time.perf_counter()
for energy in 0.1 + 0.1 * np.arange(200):
    phase_shift(potential, channel, float(energy), grid=grid)
t_phase = time.perf_counter() - start

print(f"{BACKEND} {t_solve:.4f} {t_phase:.4f}")
"""


def deuteron_f(energy=5.0):
    r = STEP * np.arange(1, N_POINTS + 1)
    c = 41.47
    v0 = c * 3.146 * 4.146 * 1.587**2
    v = -v0 / np.cosh(1.587 * r) ** 2
    return (v - energy) / c


def bench_kernel(module, f, repeats):
    run = lambda: module.sweep_outward(f, STEP, 0.01, 0.02, N_POINTS - 1)
    run()   # warm up
    total = timeit.timeit(run, number=repeats)
    return repeats * (N_POINTS - 1) / total / 1e6   # million recurrence steps / s


def bench_end_to_end(pure_python):
    env = dict(os.environ)
    if pure_python:
        env["SUSYPEP_PURE_PYTHON"] = "1"
    else:
        env.pop("SUSYPEP_PURE_PYTHON", None)
    out = subprocess.run(
        [sys.executable, "-c", _END_TO_END], env=env, capture_output=True, text=True,
        check=True,
    )
    backend, t_solve, t_phase = out.stdout.split()
    return backend, float(t_solve), float(t_phase)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="fewer repeats")
    args = parser.parse_args()
    repeats = 30 if args.quick else 200

    f = deuteron_f()
    print(f"kernel microbenchmark: {repeats} outward sweeps of {N_POINTS} points")
    rows = [("python", bench_kernel(_numerov_py, f, max(repeats // 10, 3)))]
    if _numerov_cy is not None:
        rows.append(("cython", bench_kernel(_numerov_cy, f, repeats)))
    for name, msteps in rows:
        print(f"  {name:7s} {msteps:10.1f} Msteps/s")
    if len(rows) == 2:
        print(f"  speedup {rows[1][1] / rows[0][1]:10.1f} x")

    print("\nend-to-end (subprocess per backend): two bound solves + 200-point phase sweep")
    for pure in (False, True):
        try:
            backend, t_solve, t_phase = bench_end_to_end(pure)
        except subprocess.CalledProcessError as exc:
            print(f"  run failed: {exc.stderr.strip()}")
            continue
        print(f"  {backend:7s} solves {t_solve * 1e3:8.1f} ms   phase sweep {t_phase * 1e3:8.1f} ms")


if __name__ == "__main__":
    main()
