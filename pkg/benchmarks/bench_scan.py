"""Time the secular scan with the jitted kernel against plain numpy.

Runs the same k-grid through both paths on the largest bundled example
and on one of its quotients, then prints per-point timings and the
speedup.  The jitted path is skipped when numba is unavailable or
disabled through QUOGRAPH_NO_NUMBA.
"""

import argparse
import time

import numpy as np

from quograph import examples, kernels
from quograph.quotient import build_quotient, make_recipe


def time_path(fn, tables, ks, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(tables, ks)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(name, graph, k_max, points, repeats):
    tables = kernels.build_tables(graph)
    ks = np.linspace(1e-6, k_max, points)
    rows = [("numpy", time_path(kernels.scan_sigma_numpy, tables, ks, repeats))]
    if kernels.USE_NUMBA:
        kernels.scan_sigma(tables, ks[:2])  # compile before timing
        rows.append(("numba", time_path(kernels.scan_sigma, tables, ks, repeats)))
    print(f"{name}: {tables.nrows}x{tables.ncols} secular matrix, {points} grid points")
    for label, t in rows:
        print(f"  {label:>6}: {t:8.4f} s total, {1e6 * t / points:8.1f} us per point")
    if len(rows) == 2:
        print(f"  speedup: {rows[0][1] / rows[1][1]:.2f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=float, default=20.0)
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    if not kernels.USE_NUMBA:
        print("note: jitted path disabled, timing numpy only")

    ex = examples.bundle("square-d4")
    bench("square-d4 full graph", ex.graph, args.kmax, args.points, args.repeats)
    res = build_quotient(make_recipe(ex.action, ex.reps["R1"]))
    bench("square-d4 quotient", res.graph, args.kmax, args.points, args.repeats)


if __name__ == "__main__":
    main()
