"""Approach of the square's harmonic function to 2 theta / pi near the corner (0, 1)."""
from __future__ import annotations

import argparse
import math

import numpy as np

from fourierlab.pde import corner_asymptotic


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta", type=float, nargs="+", default=[math.pi / 8, math.pi / 4, 3 * math.pi / 8])
    args = ap.parse_args()
    rs = 10.0 ** -np.arange(1, 5.5, 0.5)
    for th in args.theta:
        res = np.array([abs(corner_asymptotic(r, th).residual) for r in rs])
        slope = np.polyfit(np.log(rs[2:]), np.log(res[2:]), 1)[0]
        print(f"theta = {th:.4f}: log-log slope {slope:.3f}")
        for r, e in zip(rs, res):
            print(f"   r = {r:8.1e}   |u - 2 theta/pi| = {e:9.3e}   / r^2 = {e / r**2:8.4f}")


if __name__ == "__main__":
    main()
