"""Nontrivial multiply-adds of the factorized transform against the direct sum."""
from __future__ import annotations

import argparse

import numpy as np

from fourierlab.transforms import DftPlan, OpCounter, direct_ops, fft_gauss


def count(N: int, factors=None) -> int:
    plan = DftPlan(N, tuple(factors)) if factors else DftPlan.auto(N)
    c = OpCounter()
    fft_gauss(np.random.default_rng(N).normal(size=N) + 0j, plan, c)
    return c.multiply_adds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[12, 60, 64, 256, 360, 1024, 4096])
    args = ap.parse_args()
    print(f"{'N':>6} {'factors':>22} {'fft ops':>10} {'direct':>10} {'N^2/ops':>9} {'N log2 N':>9}")
    for N in args.sizes:
        plan = DftPlan.auto(N)
        ops = count(N)
        print(f"{N:>6} {str(plan.factors):>22} {ops:>10} {direct_ops(N):>10} {N * N / ops:9.1f} {N * np.log2(N):9.0f}")
    # the same length split in different orders
    N = 360
    print(f"\nN = {N}, different factor orders")
    for f in [(2, 2, 2, 3, 3, 5), (5, 3, 3, 2, 2, 2), (8, 45), (360,)]:
        print(f"{str(f):>22} {count(N, f):>10}")


if __name__ == "__main__":
    main()
