"""Time the compiled enumeration kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import sys
import time

from stweak import _kernels_py, kernels


def _cases():
    # lattice points of Euclidean balls: phi[k] = k^2 over all of Z^d
    phi = [float(k * k) for k in range(400)]
    yield "count_separable d=3 T=1e4", lambda impl: kernels.count_separable(
        phi, 3, 1e4, impl=impl)
    yield "count_separable d=6 T=100", lambda impl: kernels.count_separable(
        phi, 6, 100.0, impl=impl)
    yield "collect_separable d=3 T=2500", lambda impl: kernels.collect_separable(
        phi, 3, 2500.0, impl=impl)
    # tensor products of log-decaying eigenvalues
    logl = [-2 * math.log(math.log(j + 2)) for j in range(4000)]
    yield "count_products_log d=3", lambda impl: kernels.count_products_log(
        logl, 3, -2 * math.log(5.0), impl=impl)
    yield "count_products_log d=5", lambda impl: kernels.count_products_log(
        logl, 5, -2 * math.log(9.0), impl=impl)


def _time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'case':34s} {'compiled s':>11s} {'python s':>10s} {'speedup':>8s}")
    for name, fn in _cases():
        tc, rc = _time(lambda: fn(kernels.compiled), args.repeat)
        tp, rp = _time(lambda: fn(_kernels_py), max(1, args.repeat // 3))
        same = "" if _same(rc, rp) else "  MISMATCH"
        print(f"{name:34s} {tc:11.4f} {tp:10.4f} {tp / tc:8.1f}{same}")
    return 0


def _same(a, b):
    if isinstance(a[0], int):
        return a[0] == b[0]
    return list(a[0]) == list(b[0]) and list(a[1]) == list(b[1])


if __name__ == "__main__":
    sys.exit(main())
