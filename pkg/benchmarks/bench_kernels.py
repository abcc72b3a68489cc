#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernel backends.

Runs each public kernel on representative random inputs under both
backends and prints a timing table.  The numba column is skipped (with a
note) when numba is not importable.

Usage:
    python benchmarks/bench_kernels.py [--repeats N] [--seed S]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from tabgrid import kernels


def _lev_inputs(rng: np.random.Generator) -> tuple:
    a = rng.integers(97, 123, size=400, dtype=np.int64)
    b = rng.integers(97, 123, size=380, dtype=np.int64)
    return (a, b)


def _hungarian_inputs(rng: np.random.Generator) -> tuple:
    return (rng.random((60, 60)),)


def _profile_inputs(rng: np.random.Generator) -> tuple:
    n, length = 5000, 2000
    starts = rng.integers(0, length - 1, size=n, dtype=np.int64)
    ends = starts + rng.integers(1, 40, size=n, dtype=np.int64)
    np.minimum(ends, length, out=ends)
    weights = rng.integers(1, 30, size=n, dtype=np.int64)
    return (starts, ends, weights, length)


def _iou_inputs(rng: np.random.Generator) -> tuple:
    def boxes(n: int) -> np.ndarray:
        lt = rng.integers(0, 900, size=(n, 2), dtype=np.int64)
        wh = rng.integers(1, 120, size=(n, 2), dtype=np.int64)
        return np.hstack([lt, lt + wh])

    return (boxes(300), boxes(300))


CASES = [
    ("levenshtein_codes", kernels.levenshtein_codes, _lev_inputs, "2 strings, ~400 chars"),
    ("hungarian_min", kernels.hungarian_min, _hungarian_inputs, "60x60 cost matrix"),
    ("interval_profile", kernels.interval_profile, _profile_inputs, "5000 intervals / 2000 bins"),
    ("iou_matrix", kernels.iou_matrix, _iou_inputs, "300x300 box pairs"),
]


def _time_call(fn, args, repeats: int) -> float:
    """Best-of-N wall time for one call, in seconds."""
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=20, help="timing repeats per case")
    parser.add_argument("--seed", type=int, default=12345, help="input-generation seed")
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    inputs = {name: make(rng) for name, _, make, _ in CASES}

    modes = ["numpy"]
    if kernels.HAS_NUMBA:
        modes.append("numba")
    else:
        print("numba is not importable; timing the numpy backend only\n")

    timings: dict[str, dict[str, float]] = {name: {} for name, *_ in CASES}
    for mode in modes:
        kernels.select_backend(mode)
        for name, fn, _, _ in CASES:
            fn(*inputs[name])  # warm-up: absorbs JIT compilation / cache effects
            timings[name][mode] = _time_call(fn, inputs[name], args.repeats)
    kernels.select_backend(kernels._env_mode())

    header = f"{'kernel':<20} {'workload':<28} " + " ".join(f"{m:>12}" for m in modes)
    if len(modes) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, _, _, workload in CASES:
        row = f"{name:<20} {workload:<28} "
        row += " ".join(f"{timings[name][m] * 1e3:>10.3f}ms" for m in modes)
        if len(modes) == 2:
            ratio = timings[name]["numpy"] / timings[name]["numba"]
            row += f" {ratio:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
