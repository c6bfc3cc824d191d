"""Compiled vs numpy timings for the hot kernels, with an agreement check.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from wga import _ckernels, _pykernels

CASES = {
    "jn_array n=3, 20k points": lambda m: m.jn_array(3, np.linspace(0.0, 60.0, 20000)),
    "jn_array n=40, 2k points": lambda m: m.jn_array(40, np.linspace(0.0, 30.0, 2000)),
    "jn_band n<=300, x=150": lambda m: m.jn_band(300, 150.0),
    "rk4_tridiag 129 sites, 1000 steps": lambda m: m.rk4_tridiag(
        np.eye(129, 1, -64).ravel().astype(complex), 1e-3, 1000, 1j, 1j
    ),
}


def bench(fn, repeat):
    fn()
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':<36}{'cython [ms]':>12}{'numpy [ms]':>12}{'speedup':>9}{'max |diff|':>12}")
    for name, case in CASES.items():
        tc = bench(lambda: case(_ckernels), args.repeat)
        tp = bench(lambda: case(_pykernels), args.repeat)
        diff = np.abs(np.asarray(case(_ckernels)) - np.asarray(case(_pykernels))).max()
        print(f"{name:<36}{tc * 1e3:>12.3f}{tp * 1e3:>12.3f}{tp / tc:>9.1f}{diff:>12.1e}")


if __name__ == "__main__":
    main()
