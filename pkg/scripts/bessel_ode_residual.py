"""Central-difference residual of Bessel's equation: step size against arithmetic precision."""
from __future__ import annotations

import argparse

import numpy as np

from fourierlab.special import bessel_j, bessel_ode_residual


def double_precision_residual(k: int, x: np.ndarray, h: float) -> np.ndarray:
    J = lambda t: bessel_j(k, t)
    d2 = (J(x + h) - 2 * J(x) + J(x - h)) / h**2
    d1 = (J(x + h) - J(x - h)) / (2 * h)
    return x * x * d2 + x * d1 + (x * x - k * k) * J(x)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=[0, 1, 2])
    args = ap.parse_args()
    x = np.linspace(0, 10, 41)
    print(f"{'k':>2} {'h':>7} {'double':>10} {'extended':>10} {'ext / x^2':>10}")
    for k in args.orders:
        for h in (1e-3, 1e-4, 1e-5):
            dp = np.max(np.abs(double_precision_residual(k, x, h)))
            ext = np.max(np.abs(bessel_ode_residual(k, x, h=h)))
            scaled = np.max(np.abs(bessel_ode_residual(k, x[1:], h=h, normalized=True)))
            print(f"{k:>2} {h:7.0e} {dp:10.2e} {ext:10.2e} {scaled:10.2e}")


if __name__ == "__main__":
    main()
