#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends.

Run with ``python benchmarks/bench_kernels.py [--repeat N] [--size N]``.
Both backends are timed in-process by toggling ``_kernels.USE_NUMBA``; the
first numba call (compilation or cache load) is reported separately.
"""

import argparse
import math
import timeit

import numpy as np

from limacon import _kernels


def cases(size):
    rng = np.random.default_rng(0)
    t = np.tan(np.linspace(-0.5 * math.pi, 0.5 * math.pi, size + 2)[1:-1])
    w = np.linspace(0.0, 2.0, size)
    pts = rng.normal(size=(size, 2))
    circle = np.column_stack([np.cos(np.linspace(0, 2 * math.pi, 2048)), np.sin(np.linspace(0, 2 * math.pi, 2048))])
    poly = rng.normal(size=(2048, 2))
    return {
        "rational_jets": lambda: _kernels.rational_jets(3.0, 1.0, t),
        "arc_curvature": lambda: _kernels.arc_curvature(3.0, 1.0, w),
        "implicit_residual": lambda: _kernels.implicit_residual(3.0, 1.0, pts[:, 0], pts[:, 1]),
        "segment_lengths": lambda: _kernels.segment_lengths(3.0, 1.0, w),
        "directed_hausdorff": lambda: _kernels.directed_hausdorff(circle, poly),
    }


def max_diff(a, b):
    # kernels return an array, a tuple of arrays, or a float
    a = a if isinstance(a, tuple) else (a,)
    b = b if isinstance(b, tuple) else (b,)
    return max(float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) for x, y in zip(a, b))


def timed(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=7)
    ap.add_argument("--size", type=int, default=100_000)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return

    print(f"size={args.size} repeat={args.repeat} (best of)")
    print(f"{'kernel':<20} {'first numba':>12} {'numba':>10} {'numpy':>10} {'speedup':>8} {'max diff':>10}")
    for name, fn in cases(args.size).items():
        _kernels.USE_NUMBA = True
        start = timeit.default_timer()
        ref_jit = fn()
        first = timeit.default_timer() - start
        t_jit = timed(fn, args.repeat)
        _kernels.USE_NUMBA = False
        ref_np = fn()
        t_np = timed(fn, args.repeat)
        diff = max_diff(ref_jit, ref_np)
        print(f"{name:<20} {first:>11.4f}s {t_jit:>9.4f}s {t_np:>9.4f}s {t_np / t_jit:>7.1f}x {diff:>10.1e}")
    _kernels.USE_NUMBA = _kernels.HAVE_NUMBA and not _kernels._env_disables_jit()


if __name__ == "__main__":
    main()
