"""Compare the compiled and pure-Python simplex kernels.

Two workloads:
  lp    -- the MAXMIN allocation LP over a DF region (9 variables, 8 rows),
           solved repeatedly for random MI tables
  cell  -- one sweep cell (121 beta/gamma samples x 2 bounds at bg_step 0.1)

Usage: python benchmarks/bench_lp.py [--repeat N]
"""

import argparse
import time

import numpy as np

from hdtwrc import CoherenceParams, PlaneNetwork, PowerConstraints, df_phase_mi, inner_region_df, outer_region, ub_phase_mi
from hdtwrc.allocator import rate_objective_lp
from hdtwrc.lp import KERNELS, solve_lp


def bench_lp(backend, lps, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        for lp in lps:
            solve_lp(lp, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best / len(lps)


def cell_lps(bg_step=0.1):
    g = PlaneNetwork((0.5, 0.0), alpha=3.0).gains()
    p = PowerConstraints.uniform(10.0)
    grid = np.arange(round(1 / bg_step) + 1) * bg_step
    out = []
    for b in grid:
        for c in grid:
            cp = CoherenceParams(min(b, 1.0), min(c, 1.0))
            out.append(rate_objective_lp(inner_region_df(df_phase_mi(g, p, cp)), "maxmin"))
            out.append(rate_objective_lp(outer_region(ub_phase_mi(g, p, cp)), "maxmin"))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    g = PlaneNetwork((0.5, 0.0), alpha=3.0).gains()
    random_lps = []
    for _ in range(500):
        cp = CoherenceParams(*rng.uniform(0, 1, 2))
        p = PowerConstraints(*rng.uniform(1, 20, 3))
        random_lps.append(rate_objective_lp(inner_region_df(df_phase_mi(g, p, cp)), "maxmin"))
    cell = cell_lps()

    print(f"{'backend':<8} {'per LP [us]':>12} {'per cell [ms]':>14}")
    results = {}
    for name in sorted(KERNELS):
        per_lp = bench_lp(name, random_lps, args.repeat)
        per_cell = bench_lp(name, cell, args.repeat) * len(cell)
        results[name] = per_lp
        print(f"{name:<8} {per_lp * 1e6:12.1f} {per_cell * 1e3:14.1f}")
    if len(results) == 2:
        print(f"speedup (python / cython): {results['python'] / results['cython']:.2f}x")
    else:
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
