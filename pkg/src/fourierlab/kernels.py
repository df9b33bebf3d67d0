"""Summation kernels on the unit circle and periodic convolution."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .periodic import PeriodicSignal

KINDS = ("dirichlet", "fejer", "poisson", "conjugate_poisson", "gauss_weierstrass")

# below this |sin(pi x)| the closed ratio forms are replaced by their series
_SING = 1e-9


@dataclass(frozen=True)
class KernelSpec:
    """A kernel family and its parameter (order ``N``, radius ``r`` or width ``eps``)."""

    kind: str
    param: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        p = self.param
        if self.kind == "dirichlet" and not (p >= 0 and float(p).is_integer()):
            raise ValueError("dirichlet order must be a nonnegative integer")
        if self.kind == "fejer" and not (p >= 1 and float(p).is_integer()):
            raise ValueError("fejer order must be an integer >= 1")
        if self.kind in ("poisson", "conjugate_poisson") and not (0 <= p < 1):
            raise ValueError("poisson radius must lie in [0, 1)")
        if self.kind == "gauss_weierstrass" and not p > 0:
            raise ValueError("gauss_weierstrass width must be positive")

    def multiplier(self, k):
        """Fourier coefficients of the kernel at integer frequencies ``k``."""
        k = np.asarray(k)
        p = self.param
        if self.kind == "dirichlet":
            return (np.abs(k) <= p).astype(float)
        if self.kind == "fejer":
            return np.clip(1 - np.abs(k) / p, 0.0, None)
        if self.kind == "poisson":
            return float(p) ** np.abs(k)
        if self.kind == "conjugate_poisson":
            return -1j * np.sign(k) * float(p) ** np.abs(k)
        return np.exp(-(np.pi**2) * k * k * p)


def dirichlet(N: int) -> KernelSpec:
    return KernelSpec("dirichlet", int(N))


def fejer(N: int) -> KernelSpec:
    return KernelSpec("fejer", int(N))


def poisson(r: float) -> KernelSpec:
    return KernelSpec("poisson", float(r))


def conjugate_poisson(r: float) -> KernelSpec:
    return KernelSpec("conjugate_poisson", float(r))


def gauss_weierstrass(eps: float) -> KernelSpec:
    return KernelSpec("gauss_weierstrass", float(eps))


def _cos_series(x, weights):
    # weights[k] multiplies 2 cos(2 pi k x) for k >= 1, weights[0] the constant
    k = np.arange(1, len(weights))
    return weights[0] + 2 * np.cos(2 * np.pi * np.multiply.outer(x, k)) @ weights[1:]


def kernel_eval(spec: KernelSpec, x):
    """Evaluate the kernel at ``x`` (scalar or array)."""
    xa = np.asarray(x, dtype=float)
    s = np.sin(np.pi * xa)
    kind, p = spec.kind, spec.param

    if kind == "dirichlet":
        N = int(p)
        near = np.abs(s) < _SING
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.sin((2 * N + 1) * np.pi * xa) / s
        if np.any(near):
            out = np.where(near, _cos_series(xa, np.ones(N + 1)), out)
    elif kind == "fejer":
        N = int(p)
        near = np.abs(s) < _SING
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (np.sin(N * np.pi * xa) / s) ** 2 / N
        if np.any(near):
            out = np.where(near, _cos_series(xa, 1 - np.arange(N) / N), out)
    elif kind == "poisson":
        out = (1 - p * p) / ((1 - p) ** 2 + 4 * p * s * s)
    elif kind == "conjugate_poisson":
        out = 2 * p * np.sin(2 * np.pi * xa) / ((1 - p) ** 2 + 4 * p * s * s)
    else:
        eps = p
        kk = math.ceil(6 * math.sqrt(eps)) + 3
        y = xa - np.rint(xa)
        shifts = np.arange(-kk, kk + 1)
        out = np.exp(-((np.add.outer(y, shifts)) ** 2) / eps).sum(axis=-1) / math.sqrt(math.pi * eps)
    return float(out) if np.ndim(out) == 0 else out


def periodic_convolution(f: PeriodicSignal, g: PeriodicSignal, M: int) -> PeriodicSignal:
    """``(f * g)(x) = int_0^1 f(x - y) g(y) dy`` by an M-node trapezoid rule."""
    if M < 16:
        raise ValueError("convolution grid needs M >= 16")
    if f.period != 1.0 or g.period != 1.0:
        raise ValueError("convolution is defined here for unit-period signals")
    y = np.arange(M) / M
    gy = np.asarray(g(y), dtype=float)

    def ev(x):
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        vals = np.asarray(f(np.subtract.outer(flat, y)), dtype=float) @ gy / M
        return vals.reshape(x.shape)

    return PeriodicSignal(1.0, "function", ev, (f, g))


def kernel_signal(spec: KernelSpec) -> PeriodicSignal:
    """The kernel as a unit-period signal."""
    return PeriodicSignal(1.0, "function", lambda x: np.asarray(kernel_eval(spec, x)), spec)


def lebesgue_constant(N: int, nodes: int = 1 << 15) -> float:
    """``int_{-1/2}^{1/2} |D_N|`` by the midpoint rule."""
    x = (np.arange(nodes) + 0.5) / nodes - 0.5
    return float(np.mean(np.abs(kernel_eval(dirichlet(N), x))))
