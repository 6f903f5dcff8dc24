#!/usr/bin/env python3
"""Benchmark the compiled elimination kernel against the pure-Python twin.

Times fraction-free row echelon on banded integer matrices shaped like the
assembled weight-zero differentials, plus the quadratic-cyclotomic variant,
and one end-to-end oracle run under each implementation.

Usage: python benchmarks/bench_rank.py [--sizes 60,120,200] [--repeats 3]
"""

import argparse
import random
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gwa import _rankcore_py  # noqa: E402

try:
    from gwa import _rankcore as _compiled
except ImportError:
    _compiled = None


def banded_int_matrix(rng, size, band=24, lo=-9, hi=9):
    rows = []
    for i in range(size):
        row = [0] * size
        for j in range(max(0, i - band), min(size, i + band)):
            row[j] = rng.randint(lo, hi)
        rows.append(row)
    return rows


def banded_quad_matrix(rng, size, band=24, lo=-4, hi=4):
    rows = []
    for i in range(size):
        row = [(0, 0)] * size
        for j in range(max(0, i - band), min(size, i + band)):
            row[j] = (rng.randint(lo, hi), rng.randint(lo, hi))
        rows.append(row)
    return rows


def timed(fn, repeats):
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return min(samples), statistics.mean(samples)


def bench_kernels(sizes, repeats):
    rng = random.Random(2024)
    print(f"{'kernel':<26} {'size':>5} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for size in sizes:
        rows = banded_int_matrix(rng, size)
        pure_best, _ = timed(lambda: _rankcore_py.echelon_int(rows, size), repeats)
        line = f"{'echelon_int':<26} {size:>5} {pure_best:>10.4f}"
        if _compiled is not None:
            fast_best, _ = timed(lambda: _compiled.echelon_int(rows, size), repeats)
            line += f" {fast_best:>13.4f} {pure_best / fast_best:>7.1f}x"
        else:
            line += f" {'-':>13} {'-':>8}"
        print(line)

        qrows = banded_quad_matrix(rng, size)
        pure_best, _ = timed(lambda: _rankcore_py.echelon_quad(qrows, size, 0, 1), repeats)
        line = f"{'echelon_quad (zeta4)':<26} {size:>5} {pure_best:>10.4f}"
        if _compiled is not None:
            fast_best, _ = timed(lambda: _compiled.echelon_quad(qrows, size, 0, 1), repeats)
            line += f" {fast_best:>13.4f} {pure_best / fast_best:>7.1f}x"
        else:
            line += f" {'-':>13} {'-':>8}"
        print(line)


def bench_oracle(repeats):
    # End to end: the deg-three multiple-root case, homology degrees 0..4.
    import importlib

    import gwa.linalg as linalg
    from gwa.algebra import GWASpec
    from gwa.complexes import HOMOLOGY, oracle_dims
    from gwa.poly import Poly, ShiftSigma

    spec = GWASpec(Poly([0, 0, 0, 1]), ShiftSigma(1))

    def run():
        return [int(v) for v in oracle_dims(spec, HOMOLOGY, 4)]

    print()
    print(f"oracle run (a=h^3), kernel = {linalg.KERNEL_IMPLEMENTATION}:")
    best, mean = timed(run, repeats)
    print(f"  best {best:.3f}s  mean {mean:.3f}s  dims {run()}")
    if _compiled is not None and linalg.KERNEL_IMPLEMENTATION == "cython":
        import os

        os.environ["GWA_PURE_LINALG"] = "1"
        importlib.reload(linalg)
        importlib.reload(sys.modules["gwa.complexes"])
        from gwa.complexes import HOMOLOGY as hom2, oracle_dims as oracle2

        def run_pure():
            return [int(v) for v in oracle2(spec, hom2, 4)]

        print(f"oracle run (a=h^3), kernel = {linalg.KERNEL_IMPLEMENTATION}:")
        best, mean = timed(run_pure, repeats)
        print(f"  best {best:.3f}s  mean {mean:.3f}s  dims {run_pure()}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="60,120,200")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    if _compiled is None:
        print("compiled kernel not available; pure-Python timings only")
    bench_kernels(sizes, args.repeats)
    bench_oracle(args.repeats)


if __name__ == "__main__":
    main()
