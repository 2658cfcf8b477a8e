"""Benchmark the census kernels: compiled extension vs pure Python.

Both backends evaluate the same reduced coefficient data over the same
block of points; results are compared for equality before timing is
reported.

    python benchmarks/bench_census.py [--q 3] [--m 6] [--points 3000]
                                      [--rank-kind at-infinity|at-one]
"""

import argparse
import time

from carlitz import kernels
from carlitz.census import compiled_kernel_available
from carlitz.fields import Field
from carlitz.kernels import RANK_AT_INFINITY, RANK_AT_ONE, build_plan
from carlitz.lfun import schur_provider


def run(q, m, rank_kind, points):
    field = Field.of(q)
    provider = schur_provider(m)
    plan = build_plan(provider, field)
    total = min(points, q ** (m + 1))
    mode = RANK_AT_INFINITY if rank_kind == "at-infinity" else RANK_AT_ONE
    print(f"q={q} m={m} rank={rank_kind}: {total} points, "
          f"{len(plan.betas)} coefficient terms")

    t0 = time.perf_counter()
    hist_pure, _ = kernels.eval_block(plan, 0, total, mode, False, -1)
    pure_s = time.perf_counter() - t0
    print(f"  pure      {total / pure_s:10.0f} points/s   ({pure_s:.3f}s)")

    if not compiled_kernel_available() or field.e != 1:
        print("  compiled  unavailable (build the extension or use a prime q)")
        return

    from carlitz import _censuskernel

    t0 = time.perf_counter()
    hist_fast, _ = _censuskernel.eval_block(
        field.p, plan.nvars, plan.k, plan.alpha_max, plan.max_exp,
        plan.betas, plan.alphas, plan.coeffs, plan.exps,
        0, total, mode, False, -1)
    fast_s = time.perf_counter() - t0
    if list(hist_fast) != list(hist_pure):
        raise AssertionError(
            f"backends disagree: {list(hist_fast)} vs {list(hist_pure)}")
    print(f"  compiled  {total / fast_s:10.0f} points/s   ({fast_s:.3f}s)")
    print(f"  speedup   {pure_s / fast_s:10.1f}x   (histograms identical)")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--m", type=int, default=6)
    ap.add_argument("--points", type=int, default=3000)
    ap.add_argument("--rank-kind", default="at-infinity",
                    choices=["at-infinity", "at-one"])
    args = ap.parse_args()
    run(args.q, args.m, args.rank_kind, args.points)


if __name__ == "__main__":
    main()
