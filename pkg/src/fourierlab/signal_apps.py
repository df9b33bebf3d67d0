"""Filtering, denoising, edge detection and FM sidebands on coefficient tables."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import gauss_weierstrass
from .periodic import CoefficientTable, to_trig
from .special import bessel_j
from .summation import IMAG_TOL
from .transforms import HarmonicModel


def lowpass(t: CoefficientTable, k0: int) -> CoefficientTable:
    """Ideal low-pass: keep ``|k| <= k0``, zero the rest (shape of the table is kept)."""
    if k0 < 0:
        raise ValueError("cut-off must be nonnegative")
    return t.map(lambda k: (np.abs(k) <= k0).astype(float))


def threshold_denoise(t: CoefficientTable, alpha0: float) -> CoefficientTable:
    """Amplitude thresholding: keep ``c_k`` iff ``|c_k| >= alpha0``."""
    if alpha0 < 0:
        raise ValueError("threshold must be nonnegative")
    keep = np.abs(t.values) >= alpha0
    return CoefficientTable(t.kmax, np.where(keep, t.values, 0), t.real_signal)


def gw_smooth(t: CoefficientTable, eps: float) -> CoefficientTable:
    """Convolution with the periodised Gauss-Weierstrass kernel, as a multiplier."""
    return t.map(gauss_weierstrass(eps).multiplier)


# --------------------------------------------------------------------------
# edges
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeProfile:
    locations: tuple
    sizes: tuple
    order: int

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.locations, self.locations[1:])):
            raise ValueError("jump locations must be strictly increasing")
        if any(s == 0 for s in self.sizes):
            raise ValueError("jump sizes must be nonzero")


def _edge_weights(N: int) -> np.ndarray:
    k = np.arange(-N, N + 1)
    return 1j * np.pi / N * k


def edge_values(t: CoefficientTable, N: int, x) -> np.ndarray:
    """``E_N(x) = (i pi / N) sum_{|k|<=N} k c_k exp(2 pi i k x)``, real part."""
    if N < 1 or N > t.kmax:
        raise ValueError(f"detector order N={N} outside 1..{t.kmax}")
    v = t.synthesize(x, N, weights=_edge_weights(N))
    scale = max(1.0, float(np.sum(np.abs(t.values[t.kmax - N : t.kmax + N + 1] * _edge_weights(N)))))
    if np.max(np.abs(v.imag), initial=0.0) > IMAG_TOL * scale:
        raise ValueError("edge detector is not real; table is not a real signal")
    return v.real


def edge_detect(t: CoefficientTable, N: int, grid: int) -> list[tuple[float, float]]:
    """``(x, E_N(x))`` on ``grid`` uniform points of ``[0, 1)``."""
    x = np.arange(grid) / grid
    return list(zip(x.tolist(), edge_values(t, N, x).tolist()))


def edge_values_trig(t: CoefficientTable, N: int, x) -> np.ndarray:
    """Same detector written with the trigonometric coefficients.

    ``E_N(x) = (pi / N) sum_{k=1}^N k (b_k cos(2 pi k x) - a_k sin(2 pi k x))``.
    """
    tt = to_trig(t.truncate(N))
    k = np.arange(1, N + 1)
    arg = 2 * np.pi * np.multiply.outer(np.asarray(x, dtype=float), k)
    return np.pi / N * (np.cos(arg) @ (k * tt.b) - np.sin(arg) @ (k * tt.a[1:]))


def locate_edges(t: CoefficientTable, N: int, grid: int = 4096, threshold: float = 0.5) -> EdgeProfile:
    """Local extrema of ``|E_N|`` above ``threshold``, reported as an ``EdgeProfile``."""
    x = np.arange(grid) / grid
    e = edge_values(t, N, x)
    a = np.abs(e)
    left, right = np.roll(a, 1), np.roll(a, -1)
    peaks = np.nonzero((a >= left) & (a > right) & (a > threshold))[0]
    return EdgeProfile(tuple(x[peaks].tolist()), tuple(e[peaks].tolist()), N)


# --------------------------------------------------------------------------
# frequency modulation
# --------------------------------------------------------------------------


def fm_signal(t, eps: float, omega: float, omega_p: float):
    """``sin(2 pi omega t + eps sin(2 pi omega' t))``."""
    t = np.asarray(t, dtype=float)
    return np.sin(2 * np.pi * omega * t + eps * np.sin(2 * np.pi * omega_p * t))


def fm_sidebands(eps: float, omega: float, omega_p: float, kmax: int) -> HarmonicModel:
    """Sideband expansion ``sum_{|k|<=kmax} J_k(eps) sin(2 pi (omega + k omega') t)``."""
    if eps < 0:
        raise ValueError("modulation index must be nonnegative")
    if omega_p == 0:
        raise ValueError("modulating frequency must be nonzero")
    ks = np.arange(-kmax, kmax + 1)
    amps = np.array([bessel_j(int(k), eps) for k in ks])
    return HarmonicModel(omega + ks * omega_p, amps, None, "sin")
