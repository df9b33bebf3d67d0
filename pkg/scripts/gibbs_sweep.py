"""Overshoot of S_N next to a jump as N grows, for the square wave and the sawtooth."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from fourierlab.summation import gibbs_constants, gibbs_measure


@dataclass
class Config:
    orders: tuple = (50, 100, 200, 400, 800, 1600)
    waveforms: tuple = ("square", "sawtooth")
    probes: int = 10_000


def run(cfg: Config) -> list[dict]:
    rows = []
    for name in cfg.waveforms:
        for N in cfg.orders:
            rep = gibbs_measure(name, N, 0, cfg.probes)
            rows.append({"waveform": name, "N": N, "overshoot": rep.measured_overshoot, "reference": rep.reference_overshoot})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=list(Config.orders))
    args = ap.parse_args()
    cfg = Config(orders=tuple(args.orders))
    g = gibbs_constants()
    print(f"G = {g.G:.16f}   lambda = {g.lam:.10f}")
    print(f"{'waveform':>9} {'N':>6} {'overshoot':>12} {'reference':>12} {'gap':>10}")
    for r in run(cfg):
        # the sawtooth has a jump of size 1, so its relative overshoot is half the square's
        print(f"{r['waveform']:>9} {r['N']:>6} {r['overshoot']:12.6f} {r['reference']:12.6f} {r['overshoot'] - r['reference']:10.2e}")


if __name__ == "__main__":
    main()
