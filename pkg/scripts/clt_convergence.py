"""Sup distance between the law of N^{-1/2} sum X_j mod 1 and the wrapped Gaussian, against N."""
from __future__ import annotations

import argparse

from fourierlab.geometry import SAMPLERS, circle_clt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--draws", type=int, default=10**5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    Ns = [1, 2, 4, 8, 16, 32, 64]
    print(f"{'sampler':>9} " + " ".join(f"{'N=' + str(n):>8}" for n in Ns))
    for name in sorted(SAMPLERS):
        d = [circle_clt(name, n, args.draws, args.seed).distance for n in Ns]
        print(f"{name:>9} " + " ".join(f"{v:8.4f}" for v in d))
    # sampling noise alone is about 1 / sqrt(draws)
    print(f"\nreference noise level 1/sqrt(draws) = {args.draws ** -0.5:.4f}")


if __name__ == "__main__":
    main()
