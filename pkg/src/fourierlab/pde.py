"""Separation-of-variables solvers: heated rod, wine cellar, disk and square, drum membrane."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .periodic import CoefficientTable, PeriodicSignal
from .special import bessel_j
from .summation import abel_truncation

# --------------------------------------------------------------------------
# heat equation on a rod with zero end temperatures
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HeatProblem:
    """``u_t = u_xx`` on ``(0, length)``, ``u = 0`` at the ends, initial sine coefficients ``b_1..b_K``."""

    length: float
    b: np.ndarray
    horizon: float = math.inf

    def __post_init__(self):
        if not self.length > 0 or not self.horizon > 0:
            raise ValueError("length and horizon must be positive")
        b = np.asarray(self.b, dtype=float)
        if b.ndim != 1 or b.size == 0:
            raise ValueError("need at least one sine coefficient")
        object.__setattr__(self, "b", b)

    @property
    def K(self) -> int:
        return self.b.size

    @property
    def truncation_limited(self) -> bool:
        """True when the last kept coefficient is not negligible."""
        return abs(self.b[-1]) >= 1e-12

    @classmethod
    def from_datum(cls, f: Callable, length: float, K: int, nodes: int = 4096, horizon: float = math.inf):
        """Sine coefficients of sampled initial data by quadrature of the odd ``2 length``-periodic extension."""
        if nodes < 2 * K + 2:
            raise ValueError("too few quadrature nodes for K")
        j = np.arange(1, nodes)
        fx = np.asarray(f(j * length / nodes), dtype=float)
        k = np.arange(1, K + 1)
        b = 2.0 / nodes * np.sin(np.pi * np.outer(k, j) / nodes) @ fx
        return cls(length, b, horizon)

    def initial(self, x):
        x = np.asarray(x, dtype=float)
        k = np.arange(1, self.K + 1)
        return np.sin(np.pi * np.multiply.outer(x, k) / self.length) @ self.b


def heat_solve(p: HeatProblem, x, t):
    """``sum b_k exp(-pi^2 k^2 t / l^2) sin(pi k x / l)``; ``x``, ``t`` broadcast."""
    xa, ta = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    if np.any((xa < 0) | (xa > p.length)):
        raise ValueError("x outside [0, length]")
    if np.any((ta < 0) | (ta > p.horizon)):
        raise ValueError("t outside [0, horizon]")
    k = np.arange(1, p.K + 1)
    lam = (np.pi * k / p.length) ** 2
    modes = np.exp(-np.multiply.outer(ta, lam)) * np.sin(np.pi * np.multiply.outer(xa, k) / p.length)
    out = modes @ p.b
    return float(out) if out.ndim == 0 else out


def heat_energy(p: HeatProblem, t: float) -> float:
    """``int_0^l u(x, t)^2 dx = (l/2) sum b_k^2 exp(-2 pi^2 k^2 t / l^2)``."""
    k = np.arange(1, p.K + 1)
    return float(p.length / 2 * np.sum(p.b**2 * np.exp(-2 * (np.pi * k / p.length) ** 2 * t)))


# --------------------------------------------------------------------------
# cellar depth from the annual temperature wave
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CellarSpec:
    diffusivity: float  # cm^2 / s
    period: float  # s
    surface_amplitude: float  # degrees C
    phase_shift: float = math.pi

    def __post_init__(self):
        if min(self.diffusivity, self.period, self.surface_amplitude) <= 0:
            raise ValueError("diffusivity, period and amplitude must be positive")
        if not self.phase_shift > 0:
            raise ValueError("phase shift must be positive")


@dataclass(frozen=True)
class CellarDesign:
    depth: float
    damping: float
    annual_oscillation: float


YEAR_SECONDS = 3600 * 24 * 365
SOIL_DIFFUSIVITY = 2e-3


def cellar_design(s: CellarSpec) -> CellarDesign:
    """Depth where the surface wave arrives ``phase_shift`` late, and its damping there.

    The wave ``exp(-q y) cos(2 pi t / P - q y)`` with ``q = sqrt(pi / (c P))``
    is delayed by ``q y``; half a period (``pi``) gives ``y = sqrt(pi c P)``.
    """
    q = math.sqrt(math.pi / (s.diffusivity * s.period))
    depth = s.phase_shift / q
    damping = math.exp(-q * depth)
    return CellarDesign(depth, damping, s.surface_amplitude * damping)


# --------------------------------------------------------------------------
# Dirichlet problem in the unit disk
# --------------------------------------------------------------------------


def _boundary_table(f: Union[PeriodicSignal, CoefficientTable], K: int, nodes: Optional[int]) -> CoefficientTable:
    if isinstance(f, CoefficientTable):
        return f.pad(K) if f.kmax < K else f
    if f.period != 1.0:
        raise ValueError("boundary datum must have unit period (angle measured in turns)")
    return f.coefficients(K, nodes)


def disk_dirichlet(f, r, theta, nodes: Optional[int] = None):
    """Harmonic extension ``sum r^|k| c_k exp(2 pi i k theta)`` of a boundary datum.

    ``theta`` is measured in turns (unit period). ``f`` may be a signal or a
    coefficient table. The series stops where ``r^k < 1e-16``.
    """
    ra, ta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    if np.any(ra >= 1) or np.any(ra < 0):
        raise ValueError("radius must lie in [0, 1)")
    rmax = float(np.max(ra)) if ra.size else 0.0
    K = max(1, abel_truncation(rmax))
    table = _boundary_table(f, K, nodes)
    K = min(K, table.kmax)
    c = table.values[table.kmax : table.kmax + K + 1]
    z = (ra * np.exp(2j * np.pi * ta)).ravel()
    k = np.arange(1, K + 1)
    out = np.empty(z.size)
    step = max(1, (1 << 20) // K)
    for s in range(0, z.size, step):
        zs = z[s : s + step]
        out[s : s + step] = c[0].real + 2 * (np.power.outer(zs, k) @ c[1:]).real
    out = out.reshape(ra.shape)
    return float(out) if out.ndim == 0 else out


def disk_dirichlet_xy(f, x, y, nodes: Optional[int] = None):
    """``disk_dirichlet`` at Cartesian points of the unit disk."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return disk_dirichlet(f, np.hypot(x, y), np.arctan2(y, x) / (2 * np.pi), nodes)


# --------------------------------------------------------------------------
# unit square, u = 1 on the top side and 0 on the others
# --------------------------------------------------------------------------


def _square_terms_needed(y: float) -> int:
    # terms decay like exp(-(2k+1) pi (1 - y)); stop once that is below 1e-16
    gap = max(1.0 - y, 1e-12)
    return max(1, int(math.ceil((37.0 / (math.pi * gap) - 1) / 2)) + 1)


def square_dirichlet(x, y, K: Optional[int] = None):
    """``(4/pi) sum_{k<K} sinh((2k+1) pi y) / sinh((2k+1) pi) sin((2k+1) pi x) / (2k+1)``.

    The hyperbolic ratio is rewritten as
    ``exp((2k+1) pi (y-1)) (1 - exp(-2(2k+1) pi y)) / (1 - exp(-2(2k+1) pi))``
    so large ``k`` does not overflow. ``K=None`` picks enough terms for the
    largest ``y`` requested. ``y = 1`` is rejected (the series does not
    converge at the top corners).
    """
    xa, ya = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any((xa < 0) | (xa > 1) | (ya < 0)):
        raise ValueError("point outside the unit square")
    if np.any(ya >= 1):
        raise ValueError("y = 1 is not allowed; probe the top side at y = 1 - delta")
    if K is None:
        K = _square_terms_needed(float(np.max(ya)) if ya.size else 0.0)
    n = 2 * np.arange(K) + 1
    xf, yf = xa.ravel(), ya.ravel()
    out = np.empty(xf.size)
    step = max(1, (1 << 20) // K)
    for s in range(0, xf.size, step):
        xs, ys = xf[s : s + step, None], yf[s : s + step, None]
        ratio = np.exp(n * np.pi * (ys - 1)) * (-np.expm1(-2 * n * np.pi * ys)) / (-np.expm1(-2 * n * np.pi))
        out[s : s + step] = 4 / np.pi * np.sum(ratio * np.sin(n * np.pi * xs) / n, axis=1)
    out = out.reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class CornerSample:
    u: float
    angular: float
    residual: float


def corner_asymptotic(r: float, theta: float, K: Optional[int] = None) -> CornerSample:
    """Compare the series near the corner ``(0, 1)`` with ``2 theta / pi``.

    Polar coordinates there are ``x = r sin(theta)``, ``y = 1 - r cos(theta)``.
    """
    if not (r > 0 and 0 < theta < math.pi / 2):
        raise ValueError("need r > 0 and theta in (0, pi/2)")
    x = r * math.sin(theta)
    y = 1 - r * math.cos(theta)
    u = square_dirichlet(x, y, K)
    ang = 2 * theta / math.pi
    return CornerSample(u, ang, u - ang)


# --------------------------------------------------------------------------
# radially symmetric drum
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MembraneMode:
    elasticity: float
    lambda_zero: float

    def __post_init__(self):
        if not self.elasticity > 0 or not self.lambda_zero > 0:
            raise ValueError("elasticity and lambda_zero must be positive")
        if abs(bessel_j(0, self.lambda_zero)) >= 1e-10:
            raise ValueError(f"{self.lambda_zero} is not a zero of J0")


def membrane_mode(m: MembraneMode, r, t):
    """``J0(lambda r) cos(sqrt(c) lambda t)``."""
    ra, ta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(t, dtype=float))
    if np.any((ra < 0) | (ra > 1)):
        raise ValueError("r outside [0, 1]")
    out = bessel_j(0, m.lambda_zero * ra) * np.cos(math.sqrt(m.elasticity) * m.lambda_zero * ta)
    return float(out) if np.ndim(out) == 0 else out
