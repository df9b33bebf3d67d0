"""Reconstruction of signals from coefficient tables, and the Gibbs phenomenon."""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Sequence

import numpy as np
from scipy import integrate

from .periodic import CoefficientTable, PeriodicSignal, WaveformCatalogEntry, catalog_entry, exact_table

#: sums of conjugate-symmetric tables are real; a larger imaginary part means a corrupt table
IMAG_TOL = 1e-12
NORM_GRID = 4096


def _real(values: np.ndarray, t: CoefficientTable, weights=None) -> np.ndarray:
    scale = max(1.0, float(np.sum(np.abs(t.values if weights is None else weights))))
    resid = float(np.max(np.abs(values.imag), initial=0.0))
    if resid > IMAG_TOL * scale:
        raise ValueError(f"imaginary residue {resid:.3g} exceeds tolerance; table is not real")
    return values.real


def _out(v, x):
    return float(v.reshape(-1)[0]) if np.ndim(x) == 0 else v.reshape(np.shape(x))


def partial_sum(t: CoefficientTable, N: int, x):
    """``S_N(x) = sum_{|k|<=N} c_k exp(2 pi i k x)``."""
    if N < 0 or N > t.kmax:
        raise ValueError(f"order N={N} outside table range 0..{t.kmax}")
    v = t.synthesize(x, N)
    return _out(_real(v, t), x)


def cesaro_mean(t: CoefficientTable, N: int, x):
    """Fejér (Cesàro) mean ``sum_{|k|<N} (1 - |k|/N) c_k exp(2 pi i k x)``."""
    if N < 1:
        raise ValueError("Cesaro order must be >= 1")
    if N > t.kmax + 1:
        raise ValueError(f"Cesaro order N={N} needs kmax >= {N - 1}")
    w = 1 - np.abs(np.arange(-(N - 1), N)) / N
    v = t.synthesize(x, N - 1, weights=w)
    return _out(_real(v, t), x)


def abel_truncation(r: float) -> int:
    """Smallest ``k`` with ``r^k < 1e-16``."""
    if r <= 0:
        return 0
    return int(math.ceil(math.log(1e-16) / math.log(r)))


def abel_mean(t: CoefficientTable, r: float, x):
    """Abel-Poisson mean ``sum r^|k| c_k exp(2 pi i k x)``.

    Summation stops where ``r^k`` drops below 1e-16 or at the end of the table,
    whichever comes first.
    """
    if not 0 <= r < 1:
        raise ValueError("Abel radius must lie in [0, 1)")
    N = min(t.kmax, abel_truncation(r))
    w = float(r) ** np.abs(np.arange(-N, N + 1))
    v = t.synthesize(x, N, weights=w)
    return _out(_real(v, t), x)


def conjugate_sum(t: CoefficientTable, N: int, x):
    """Conjugate trigonometric polynomial ``-i sum sign(k) c_k exp(2 pi i k x)``."""
    if N < 0 or N > t.kmax:
        raise ValueError(f"order N={N} outside table range 0..{t.kmax}")
    w = -1j * np.sign(np.arange(-N, N + 1))
    v = t.synthesize(x, N, weights=w)
    return _out(_real(v, t), x)


def fejer_is_average(t: CoefficientTable, N: int, x) -> np.ndarray:
    """Average of ``S_0..S_{N-1}`` (used to cross-check ``cesaro_mean``)."""
    return np.mean([np.atleast_1d(partial_sum(t, n, x)) for n in range(N)], axis=0)


# --------------------------------------------------------------------------
# convergence diagnostics
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SummationReport:
    method: str
    orders: tuple
    sup_error: tuple
    l2_error: tuple

    def sup_non_increasing(self, tol: float = 1e-6) -> bool:
        e = np.asarray(self.sup_error)
        return bool(np.all(np.diff(e) <= tol))


METHODS = ("partial", "cesaro", "abel")


def error_norms(
    signal: PeriodicSignal,
    method: str,
    orders: Sequence,
    window: tuple[float, float] | None = None,
    grid: int = NORM_GRID,
    nodes: int | None = None,
) -> SummationReport:
    """Sup and L2 errors of a summation method on a uniform grid.

    ``window`` restricts the grid to ``[a, b]`` (fractions of the period),
    which is how errors away from jumps are measured. For Abel means the
    orders are radii.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    P = signal.period
    if window is None:
        u = np.arange(grid) / grid
    else:
        u = np.linspace(window[0], window[1], grid)
    x = u * P
    fx = np.asarray(signal(x), dtype=float)
    if method == "abel":
        K = max(abel_truncation(float(r)) for r in orders)
    elif method == "cesaro":
        K = max(int(n) for n in orders) - 1
    else:
        K = max(int(n) for n in orders)
    table = signal.coefficients(max(K, 0), nodes)
    sups, l2s = [], []
    for n in orders:
        if method == "partial":
            s = partial_sum(table, int(n), u)
        elif method == "cesaro":
            s = cesaro_mean(table, int(n), u)
        else:
            s = abel_mean(table, float(n), u)
        err = np.asarray(s) - fx
        sups.append(float(np.max(np.abs(err))))
        l2s.append(float(np.sqrt(np.mean(err**2))))
    return SummationReport(method, tuple(orders), tuple(sups), tuple(l2s))


# --------------------------------------------------------------------------
# Gibbs phenomenon
# --------------------------------------------------------------------------


def _sinc_integrand(t):
    return np.sinc(np.asarray(t) / np.pi)


def sine_integral_pi() -> float:
    """``int_0^pi sin(t)/t dt`` by adaptive quadrature."""
    val, _ = integrate.quad(_sinc_integrand, 0.0, math.pi, epsabs=0.0, epsrel=1e-13, limit=200)
    return val


def _simpson(n: int = 2000) -> float:
    t = np.linspace(0, math.pi, 2 * n + 1)
    y = _sinc_integrand(t)
    h = math.pi / (2 * n)
    return float(h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum()))


def _gauss_legendre(n: int = 40) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    t = (nodes + 1) * math.pi / 2
    return float(math.pi / 2 * weights @ _sinc_integrand(t))


@dataclass(frozen=True)
class GibbsConstants:
    G: float
    lam: float
    G_simpson: float
    G_gauss: float


def gibbs_constants() -> GibbsConstants:
    """``G = (2/pi) int_0^pi sinc`` and ``lambda = G/2 - 1/2``.

    Also returns ``G`` by a composite Simpson rule and by Gauss-Legendre so
    the two can be compared.
    """
    si = sine_integral_pi()
    G = 2 / math.pi * si
    return GibbsConstants(
        G=G,
        lam=G / 2 - 0.5,
        G_simpson=2 / math.pi * _simpson(),
        G_gauss=2 / math.pi * _gauss_legendre(),
    )


@dataclass(frozen=True)
class GibbsReport:
    jump_location: float
    jump_size: float
    measured_overshoot: float
    reference_overshoot: float
    probe_value: float

    def to_dict(self) -> dict:
        return asdict(self)


def gibbs_measure(entry, N: int, jump_index: int = 0, probes: int = 10_000) -> GibbsReport:
    """Measure the overshoot of ``S_N`` just to the right of a jump.

    The search covers ``(x0, x0 + 5/(2N))`` with ``probes`` points. For a
    downward jump the excursion is measured on ``-f`` so the result is
    always the size of the overshoot past the one-sided limit.
    """
    if isinstance(entry, str):
        entry = catalog_entry(entry)
    if not entry.jumps:
        raise ValueError(f"{entry.id!r} has no jump discontinuity")
    if N < 50:
        raise ValueError("Gibbs measurement needs N >= 50")
    x0, sigma = entry.jumps[jump_index]
    table = exact_table(entry, N)
    x = x0 + np.linspace(0, 5 / (2 * N), probes + 2)[1:-1]
    excess = np.sign(sigma) * (partial_sum(table, N, x) - entry(x))
    si = sine_integral_pi()
    jump = abs(sigma)
    return GibbsReport(
        jump_location=float(x0),
        jump_size=float(sigma),
        measured_overshoot=float(np.max(excess)),
        reference_overshoot=jump / math.pi * si - jump / 2,
        probe_value=float(partial_sum(table, N, x0 + 1 / (2 * N))),
    )


def gibbs_probe_reference(entry, jump_index: int = 0) -> float:
    """Limit of ``S_N(x0 + 1/(2N))``: ``(l+ + l-)/2 + (sigma/pi) int_0^pi sinc``."""
    if isinstance(entry, str):
        entry = catalog_entry(entry)
    x0, sigma = entry.jumps[jump_index]
    left, right = entry.side_limits(x0)
    return (left + right) / 2 + sigma / math.pi * sine_integral_pi()


# --------------------------------------------------------------------------
# Fejer's divergence example, truncated to two terms
# --------------------------------------------------------------------------


def fejer_example_cosine_coeff(k: int, terms: int = 2) -> float:
    """``a_k`` of the even, unit-period extension of ``sum_l l^-2 sin((2^{l^3}+1) pi x)`` from ``[0, 1/2]``."""
    total = 0.0
    for l in range(1, terms + 1):
        m = 2 ** (l**3)
        total += 2 / (math.pi * l * l) * (1 / (1 + m - 2 * k) + 1 / (1 + m + 2 * k))
    return total


def fejer_example_partial_at_zero(N: int, terms: int = 2) -> float:
    """``S_N(0) = a_0/2 + sum_{k=1}^N a_k``."""
    a = [fejer_example_cosine_coeff(k, terms) for k in range(N + 1)]
    return a[0] / 2 + math.fsum(a[1:])


def fejer_sigma(N: int, m: int) -> float:
    """``sigma_{N,m} = sum_{k=0}^N 1/(1+2m-2k) + 1/(1+2m+2k)``; nonnegative, ``~ ln m`` at ``N = m``."""
    return math.fsum(1 / (1 + 2 * m - 2 * k) + 1 / (1 + 2 * m + 2 * k) for k in range(N + 1))
