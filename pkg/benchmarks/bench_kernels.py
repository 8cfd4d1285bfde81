"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py [--reps 5]

Requires the numba backend (leave EPPSKIT_NUMBA unset). Both implementations
are imported explicitly, so this compares the real code paths the package
ships, including numba compile-once warmup.
"""

import argparse
import time

import numpy as np

from eppskit import _kernels


def bench(label, fn_np, fn_nb, args, reps):
    fn_nb(*args)  # warm up JIT
    rows = []
    for name, fn in (("numpy", fn_np), ("numba", fn_nb)):
        best = min(_time(fn, args) for _ in range(reps))
        rows.append((name, best))
    base = rows[0][1]
    print(f"{label}:")
    for name, t in rows:
        print(f"  {name:<6} {t * 1e3:9.2f} ms   x{base / t:5.2f}")


def _time(fn, args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()

    if not _kernels.USE_NUMBA:
        raise SystemExit("numba backend disabled; unset EPPSKIT_NUMBA to benchmark")

    rng = np.random.default_rng(0)

    a = rng.standard_normal(1_000_000)
    b = rng.standard_normal(1_000_000)
    bench("lagged_cross_sums (n=1e6, 600 lags)",
          _kernels.lagged_cross_sums_np, _kernels.lagged_cross_sums_nb,
          (a, b, 300, 1), args.reps)

    ages = rng.exponential(60.0, size=(4, 5_000_000))
    bench("overlap_lengths (5e6 trials)",
          _kernels.overlap_lengths_np, _kernels.overlap_lengths_nb,
          (ages[0], ages[1], ages[2], ages[3], 60.0), args.reps)

    times = np.sort(rng.uniform(0, 1e6, 20_000))
    values = rng.standard_normal(20_000)
    grid = np.arange(times[0] + 1.0, 1e6, 1.0)
    bench("previous_tick_values (1e6 grid points)",
          _kernels.previous_tick_values_np, _kernels.previous_tick_values_nb,
          (times, values, grid), args.reps)

    logp = np.cumsum(rng.normal(0, 0.01, 1_000_000))
    bench("split_filter_mask (n=1e6)",
          _kernels.split_filter_mask_np, _kernels.split_filter_mask_nb,
          (logp, np.log(1.05)), args.reps)


if __name__ == "__main__":
    main()
