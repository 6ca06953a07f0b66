"""Benchmark the fused evolution step: numba kernel vs pure-numpy fallback.

Usage: python benchmarks/bench_step.py [--sides 32,64,128] [--steps 2000]
"""

import argparse
import time

import numpy as np

from lackwalk import GridGeometry, Oracle, WalkConfig, build_start_state, coin_vector
from lackwalk import kernels
from lackwalk.core import oracle_code, shift_permutation


def time_steps(step_fn, config, n_steps, repeats=3):
    coin = coin_vector(config.loop_weight)
    perm = shift_permutation(config.geometry)
    code = oracle_code(config.oracle)
    best = float("inf")
    for _ in range(repeats):
        amps = build_start_state(config).amplitudes
        out = np.empty_like(amps)
        scratch = np.empty_like(amps)
        start = time.perf_counter()
        for _ in range(n_steps):
            step_fn(amps, out, scratch, coin, config.marked, code, perm)
            amps, out = out, amps
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sides", default="32,64,128")
    parser.add_argument("--steps", type=int, default=2000)
    args = parser.parse_args()
    sides = [int(s) for s in args.sides.split(",")]

    backends = [("numpy", kernels.step_numpy)]
    if kernels.step_numba is not None:
        backends.append(("numba", kernels.step_numba))
        # trigger JIT compilation outside the timed region
        warm = WalkConfig(GridGeometry(4), 0.1, Oracle.GROVER)
        time_steps(kernels.step_numba, warm, 10, repeats=1)
    else:
        print("numba not importable; benchmarking the numpy path only")

    print(f"{args.steps} steps per measurement, best of 3")
    print(f"{'side':>6} {'amps':>8} " + " ".join(f"{name:>12}" for name, _ in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for side in sides:
        config = WalkConfig(GridGeometry(side), 4.0 / side**2, Oracle.GROVER)
        times = [time_steps(fn, config, args.steps) for _, fn in backends]
        rates = [args.steps / t for t in times]
        row = f"{side:>6} {5 * side * side:>8} " + " ".join(
            f"{rate:>9.0f}/s" for rate in rates
        )
        if len(times) == 2:
            row += f"   {times[0] / times[1]:.1f}x"
        print(row)


if __name__ == "__main__":
    main()
