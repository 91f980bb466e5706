"""Compiled vs pure-Python kernels on identical inputs.

    python3 benchmarks/bench_kernels.py [--size 400] [--repeat 3]

Prints best-of-``repeat`` wall time per kernel and the speed-up. Both
backends are imported directly, so the environment switch is not needed.
"""

import argparse
import time

import numpy as np

from cauchy_well import _kernels_py as python_kernels
from cauchy_well.galerkin import assemble

try:
    from cauchy_well import _kernels as compiled_kernels
except ImportError:
    compiled_kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(size):
    a = assemble("even", size).entries
    d, e, _ = python_kernels.tridiagonalize(a, False)
    x = np.linspace(0.01, 2000.0, 20000)
    return {
        "sici_array (20000 pts)": lambda k: k.sici_array(x, 4.0),
        f"tridiagonalize ({size}x{size}, Q)": lambda k: k.tridiagonalize(a, True),
        f"tql_implicit ({size}, values)": lambda k: k.tql_implicit(d, e, None, 30, np.finfo(float).eps),
        f"bisect_lowest ({size}, 10 values)": lambda k: k.bisect_lowest(d, e, 10, 200),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=400)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled_kernels is None:
        raise SystemExit("compiled extension not built; run `python3 setup.py build_ext --inplace`")
    print(f"{'kernel':36s} {'compiled s':>11s} {'python s':>10s} {'speed-up':>9s}")
    for name, fn in cases(args.size).items():
        tc = best_of(lambda: fn(compiled_kernels), args.repeat)
        tp = best_of(lambda: fn(python_kernels), args.repeat)
        print(f"{name:36s} {tc:11.4f} {tp:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
