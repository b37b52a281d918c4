"""Benchmark the hot kernels on both backends.

Runs the Fock-lift construction and the protocol theta sweep through the
active dispatch (numba unless RINGCAT_DISABLE_NUMBA=1) and through the pure
numpy reference, and prints a small timing table.  The first numba call
includes JIT compilation, so every kernel is warmed up before timing.

Usage: python benchmarks/bench_kernels.py [--n 30] [--thetas 20000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from ringcat import _kernels
from ringcat.basis import multinomial_amplitudes, pair_counts
from ringcat.modes import dft_mode_matrix, extremal_columns


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=30, help="particle number for the lift")
    parser.add_argument("--thetas", type=int, default=20000, help="sweep grid size")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    fc = dft_mode_matrix().conj()
    ground = multinomial_amplitudes(args.n)
    counts = pair_counts(args.n)
    wconj = np.ascontiguousarray(extremal_columns(args.n).conj())
    thetas = np.linspace(0.0, 2.0 * np.pi, args.thetas)

    print(f"active backend: {_kernels.BACKEND}")
    rows = []

    # warm-up (JIT compilation and cache effects)
    _kernels.lift_columns(fc, args.n)
    _kernels.protocol_sweep(ground, counts, wconj, thetas[:32])

    t = best_of(args.repeat, _kernels.lift_columns, fc, args.n)
    rows.append((f"lift n={args.n}", _kernels.BACKEND, t))
    t = best_of(args.repeat, _kernels.lift_columns_numpy, fc, args.n)
    rows.append((f"lift n={args.n}", "numpy", t))

    t = best_of(args.repeat, _kernels.protocol_sweep, ground, counts, wconj, thetas)
    rows.append((f"sweep {args.thetas} thetas n={args.n}", _kernels.BACKEND, t))
    t = best_of(args.repeat, _kernels.protocol_sweep_numpy, ground, counts, wconj, thetas)
    rows.append((f"sweep {args.thetas} thetas n={args.n}", "numpy", t))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'backend':<8}  best (s)")
    for name, backend, seconds in rows:
        print(f"{name:<{width}}  {backend:<8}  {seconds:.4f}")

    if _kernels.HAVE_NUMBA:
        fast = _kernels.lift_columns(fc, args.n)
        ref = _kernels.lift_columns_numpy(fc, args.n)
        print(f"backend agreement (lift): {np.max(np.abs(fast - ref)):.2e}")


if __name__ == "__main__":
    main()
