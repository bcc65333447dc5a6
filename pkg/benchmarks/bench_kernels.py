"""Compare the compiled and NumPy inner loops.

Run with ``python3 benchmarks/bench_kernels.py [--max-s 12] [--repeat 5]``.
Prints a CSV table of best-of-``repeat`` wall times in seconds and the
speedup of the compiled backend. Without the extension only the NumPy
columns are filled.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import timeit

import numpy as np

from partition_harmonics import _pykernels
from partition_harmonics.kernel_series import build_kernel

try:
    from partition_harmonics import _ckernels
except ImportError:
    _ckernels = None


def _best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def cases(max_s: int):
    """(name, s, callable taking a backend module) triples."""
    for s in range(2, max_s + 1, 2):
        num = np.arange(s + 1, 2 * s + 1)
        den = np.arange(1, s + 1)
        nodes = s * s // 2 + 8
        x = np.arange(nodes // 2 + 1) * (math.pi / nodes)
        coeffs = build_kernel(s).coefficients
        freqs = np.fromiter(coeffs.keys(), dtype=np.int64)
        values = np.array([float(c) for c in coeffs.values()])
        yield "sine_ratio_product", s, lambda m, a=num, b=den, x=x: m.sine_ratio_product(a, b, x, 1e-9)
        yield "cosine_series", s, lambda m, f=freqs, c=values, x=x: m.cosine_series(f, c, x)
    samples = np.random.default_rng(0).normal(size=100_000)
    yield "pairwise_sum", 0, lambda m: m.pairwise_sum(samples)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-s", type=int, default=12)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["kernel", "s", "numpy_s", "cython_s", "speedup"])
    for name, s, fn in cases(args.max_s):
        py = _best(lambda: fn(_pykernels), args.repeat)
        if _ckernels is None:
            w.writerow([name, s, f"{py:.6f}", "", ""])
            continue
        cy = _best(lambda: fn(_ckernels), args.repeat)
        w.writerow([name, s, f"{py:.6f}", f"{cy:.6f}", f"{py / cy:.1f}"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
