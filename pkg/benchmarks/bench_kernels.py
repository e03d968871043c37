"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import math
import timeit

import numpy as np

from swb import _kernels_py as py

try:
    from swb import _kernels as cy
except ImportError:  # compiled extension not built
    cy = None


def _cases():
    rng = np.random.default_rng(7)
    x = rng.uniform(-0.5, 0.5, 4000)
    y = rng.uniform(0.9, 6.0, 4000)
    coeff = (4.0 * np.arange(1, 33) ** 1.5 / 7.0).astype(complex)
    h = 0.05
    t = np.arange(200) * h
    w = np.full(t.shape, h)
    w[0] = 0.5 * h
    yield "log_delta (4000 pts)", lambda m: m.log_delta(x, y)
    yield "eis_fourier (4000 pts, 32 modes)", lambda m: m.eis_fourier(
        x, y, coeff, np.cosh(1.5 * t).astype(complex), np.cosh(t), w)
    bound = 41.5 / (math.pi * 0.8)
    yield "siegel_sum (tau = 0.1+0.8i)", lambda m: m.siegel_sum(0.2, 1.3, 0.1, 0.8, 0.0, 1.0, bound, 6.0, 6.0)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':<36s} {'numpy [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, call in _cases():
        t_py = min(timeit.repeat(lambda: call(py), number=1, repeat=args.repeat)) * 1e3
        if cy is None:
            print(f"{name:<36s} {t_py:12.3f} {'n/a':>12s}")
            continue
        t_cy = min(timeit.repeat(lambda: call(cy), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<36s} {t_py:12.3f} {t_cy:12.3f} {t_py / t_cy:8.1f}x")


if __name__ == "__main__":
    main()
