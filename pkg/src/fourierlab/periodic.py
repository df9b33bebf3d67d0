"""Periodic signals and their Fourier coefficients.

Everything here works with the exponential convention

    c_k = (1/P) * integral_0^P f(x) exp(-2 pi i k x / P) dx

and the trigonometric form ``a_0/2 + sum a_k cos + b_k sin`` linked to it by
``a_k = 2 Re c_k`` and ``b_k = -2 Im c_k``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

#: evaluations are chunked so that the (x, k) phase matrix stays below this many entries
_CHUNK = 1 << 21


def frac_part(x):
    """Fractional part ``x - floor(x)``, always in ``[0, 1)``.

    Accepts scalars or arrays. Non-finite input raises ``ValueError``.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("frac_part requires finite input")
    out = arr - np.floor(arr)
    # x slightly below an integer can round up to exactly 1.0
    out = np.where(out >= 1.0, 0.0, out)
    if np.ndim(x) == 0:
        return float(out)
    return out


# --------------------------------------------------------------------------
# coefficient tables
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientTable:
    """Dense table of complex coefficients ``c_k`` for ``-kmax <= k <= kmax``.

    ``values[k + kmax]`` holds ``c_k``. When ``real_signal`` is set the table
    must satisfy ``c_{-k} = conj(c_k)``.
    """

    kmax: int
    values: np.ndarray
    real_signal: bool = True

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        if self.kmax < 0:
            raise ValueError("kmax must be nonnegative")
        if vals.shape != (2 * self.kmax + 1,):
            raise ValueError(
                f"expected {2 * self.kmax + 1} coefficients, got shape {vals.shape}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.real_signal:
            scale = max(1.0, float(np.max(np.abs(vals))))
            if np.max(np.abs(vals - np.conj(vals[::-1]))) > 1e-12 * scale:
                raise ValueError("real_signal table violates c_{-k} = conj(c_k)")

    @property
    def ks(self) -> np.ndarray:
        return np.arange(-self.kmax, self.kmax + 1)

    def coeff(self, k: int) -> complex:
        """``c_k``, zero outside the stored range."""
        if abs(k) > self.kmax:
            return 0j
        return complex(self.values[k + self.kmax])

    def __getitem__(self, k: int) -> complex:
        return self.coeff(k)

    def truncate(self, K: int) -> "CoefficientTable":
        if K > self.kmax:
            raise ValueError(f"cannot truncate kmax={self.kmax} table to {K}")
        lo = self.kmax - K
        return CoefficientTable(K, self.values[lo : lo + 2 * K + 1], self.real_signal)

    def pad(self, K: int) -> "CoefficientTable":
        """Zero-extend to a larger ``kmax``."""
        if K < self.kmax:
            return self.truncate(K)
        vals = np.zeros(2 * K + 1, dtype=complex)
        vals[K - self.kmax : K + self.kmax + 1] = self.values
        return CoefficientTable(K, vals, self.real_signal)

    def energy(self) -> float:
        """``sum |c_k|^2``."""
        return float(np.sum(np.abs(self.values) ** 2))

    def map(self, multiplier, real_signal: Optional[bool] = None) -> "CoefficientTable":
        """Multiply coefficient-wise by ``multiplier(ks)`` (a Fourier multiplier)."""
        m = np.asarray(multiplier(self.ks))
        rs = self.real_signal if real_signal is None else real_signal
        return CoefficientTable(self.kmax, self.values * m, rs)

    def linear_combination(self, alpha, other: "CoefficientTable", beta) -> "CoefficientTable":
        K = max(self.kmax, other.kmax)
        a, b = self.pad(K), other.pad(K)
        real = a.real_signal and b.real_signal and np.isreal(alpha) and np.isreal(beta)
        return CoefficientTable(K, alpha * a.values + beta * b.values, bool(real))

    @classmethod
    def from_function(cls, coeff: Callable[[int], complex], kmax: int, real_signal: bool = True):
        """Build from ``k -> c_k``. For real signals only ``k >= 0`` is evaluated."""
        vals = np.zeros(2 * kmax + 1, dtype=complex)
        if real_signal:
            for k in range(0, kmax + 1):
                c = complex(coeff(k))
                vals[kmax + k] = c
                vals[kmax - k] = c.conjugate()
            vals[kmax] = vals[kmax].real
        else:
            for k in range(-kmax, kmax + 1):
                vals[kmax + k] = coeff(k)
        return cls(kmax, vals, real_signal)

    @classmethod
    def zeros(cls, kmax: int) -> "CoefficientTable":
        return cls(kmax, np.zeros(2 * kmax + 1, dtype=complex), True)

    def synthesize(self, x, N: Optional[int] = None, weights=None) -> np.ndarray:
        """Complex ``sum_{|k|<=N} w_k c_k exp(2 pi i k x)`` on an array of points."""
        N = self.kmax if N is None else N
        ks = np.arange(-N, N + 1)
        c = self.values[self.kmax - N : self.kmax + N + 1]
        if weights is not None:
            c = c * weights
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty(xs.shape, dtype=complex)
        flat = xs.ravel()
        res = out.reshape(-1)
        step = max(1, _CHUNK // len(ks))
        for s in range(0, flat.size, step):
            ph = np.exp(2j * np.pi * np.outer(flat[s : s + step], ks))
            res[s : s + step] = ph @ c
        return out


@dataclass(frozen=True)
class TrigCoefficientTable:
    """``a_0..a_K`` and ``b_1..b_K`` (``b[0]`` is ``b_1``)."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.ndim != 1 or b.shape != (a.size - 1,):
            raise ValueError("need a_0..a_K and b_1..b_K")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def kmax(self) -> int:
        return self.a.size - 1

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        k = np.arange(1, self.kmax + 1)
        arg = 2 * np.pi * np.multiply.outer(x, k)
        return self.a[0] / 2 + np.cos(arg) @ self.a[1:] + np.sin(arg) @ self.b


def to_trig(t: CoefficientTable) -> TrigCoefficientTable:
    """Exponential -> trigonometric form (real signals only)."""
    if not t.real_signal:
        raise ValueError("trigonometric form needs a real-signal table")
    pos = t.values[t.kmax :]
    return TrigCoefficientTable(2 * pos.real, -2 * pos[1:].imag)


def from_trig(tt: TrigCoefficientTable) -> CoefficientTable:
    K = tt.kmax
    pos = np.empty(K + 1, dtype=complex)
    pos[0] = tt.a[0] / 2
    pos[1:] = (tt.a[1:] - 1j * tt.b) / 2
    vals = np.concatenate([np.conj(pos[:0:-1]), pos])
    return CoefficientTable(K, vals, True)


def convert_trig_exp(t):
    """Convert between the two coefficient forms, in whichever direction applies."""
    if isinstance(t, CoefficientTable):
        return to_trig(t)
    if isinstance(t, TrigCoefficientTable):
        return from_trig(t)
    raise TypeError(f"cannot convert {type(t).__name__}")


# --------------------------------------------------------------------------
# waveform catalog
# --------------------------------------------------------------------------


def _square(x):
    return np.where(x < 0.5, 1.0, -1.0)


def _square_c(k):
    return -2j / (np.pi * k) if k % 2 else 0j


def _sawtooth_c(k):
    return 1j / (2 * np.pi * k) if k else 0j


def _triangular_c(k):
    return -1.0 / (np.pi**2 * k * k) + 0j if k % 2 else 0j


def _parabola_c(k):
    return -1.0 / (2 * np.pi**2 * k * k) + 0j if k else 1 / 6 + 0j


@dataclass(frozen=True)
class WaveformCatalogEntry:
    """Unit-period waveform with closed-form coefficients.

    ``profile`` is the waveform on ``[0, 1)``; ``jumps`` lists
    ``(location, right_limit - left_limit)`` pairs inside one period.
    """

    id: str
    profile: Callable[[np.ndarray], np.ndarray]
    exact_coefficient: Callable[[int], complex]
    jumps: tuple = ()

    def __call__(self, x):
        return self.profile(frac_part(np.asarray(x, dtype=float)))

    @property
    def smooth(self) -> bool:
        return not self.jumps and self.id not in ("triangular", "parabola_x1mx")

    def side_limits(self, x0: float) -> tuple[float, float]:
        """(left, right) limits at ``x0``, read off the profile."""
        eps = 1e-12
        return float(self(x0 - eps)), float(self(x0 + eps))


CATALOG: dict[str, WaveformCatalogEntry] = {
    e.id: e
    for e in (
        WaveformCatalogEntry("square", _square, _square_c, ((0.0, 2.0), (0.5, -2.0))),
        WaveformCatalogEntry("sawtooth", lambda x: x - 0.5, _sawtooth_c, ((0.0, -1.0),)),
        WaveformCatalogEntry(
            "triangular", lambda x: np.minimum(x, 1 - x) - 0.25, _triangular_c
        ),
        WaveformCatalogEntry("parabola_x1mx", lambda x: x * (1 - x), _parabola_c),
        WaveformCatalogEntry(
            "sine",
            lambda x: np.sin(2 * np.pi * x),
            lambda k: (-0.5j if k == 1 else 0.5j if k == -1 else 0j),
        ),
        WaveformCatalogEntry(
            "cosine",
            lambda x: np.cos(2 * np.pi * x),
            lambda k: (0.5 + 0j if abs(k) == 1 else 0j),
        ),
        WaveformCatalogEntry(
            "constant", lambda x: np.ones_like(x), lambda k: (1 + 0j if k == 0 else 0j)
        ),
    )
}


def catalog_entry(name: str) -> WaveformCatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown waveform {name!r}; known: {sorted(CATALOG)}") from None


def coeff_exact(entry, k: int) -> complex:
    """Closed-form ``c_k`` of a catalog waveform (entry or its id)."""
    if isinstance(entry, str):
        entry = catalog_entry(entry)
    return complex(entry.exact_coefficient(int(k)))


def exact_table(entry, K: int) -> CoefficientTable:
    if isinstance(entry, str):
        entry = catalog_entry(entry)
    return CoefficientTable.from_function(entry.exact_coefficient, K, real_signal=True)


# --------------------------------------------------------------------------
# periodic signals
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicSignal:
    """Real-valued periodic map with a declared period.

    ``backing`` is one of ``"catalog"``, ``"grid"``, ``"table"`` or
    ``"function"``; ``source`` holds the catalog entry, the sample array or
    the coefficient table accordingly.
    """

    period: float
    backing: str
    evaluator: Callable = field(repr=False)
    source: object = field(default=None, repr=False)

    def __post_init__(self):
        if not self.period > 0:
            raise ValueError("period must be positive")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.asarray(self.evaluator(x), dtype=float)
        return float(out) if out.ndim == 0 else out

    # constructors -------------------------------------------------------

    @classmethod
    def from_catalog(cls, name: str, period: float = 1.0) -> "PeriodicSignal":
        entry = catalog_entry(name)
        return cls(period, "catalog", lambda x: entry(np.asarray(x) / period), entry)

    @classmethod
    def from_samples(cls, samples, period: float = 1.0) -> "PeriodicSignal":
        """Samples ``f(j P / M)``, ``j = 0..M-1``; evaluation picks the nearest node."""
        vals = np.asarray(samples, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("a sample grid needs at least 2 nodes")
        M = vals.size

        def ev(x):
            idx = np.rint(np.asarray(x) / period * M).astype(np.int64) % M
            return vals[idx]

        return cls(period, "grid", ev, vals)

    @classmethod
    def from_table(cls, table: CoefficientTable, period: float = 1.0) -> "PeriodicSignal":
        if not table.real_signal:
            raise ValueError("PeriodicSignal is real-valued; table must be real_signal")

        def ev(x):
            x = np.asarray(x, dtype=float)
            return table.synthesize(x / period).real.reshape(x.shape)

        return cls(period, "table", ev, table)

    # helpers ------------------------------------------------------------

    @property
    def catalog(self) -> Optional[WaveformCatalogEntry]:
        return self.source if self.backing == "catalog" else None

    def coefficients(self, K: int, nodes: Optional[int] = None) -> CoefficientTable:
        """Coefficient table up to ``K``.

        Catalog signals use closed forms; table signals return their own
        table; anything else goes through trapezoidal quadrature.
        """
        if self.backing == "catalog":
            return exact_table(self.source, K)
        if self.backing == "table":
            return self.source.pad(K)
        return numeric_table(self, K, nodes)


def periodic_extend(f: Callable, P: float) -> PeriodicSignal:
    """Periodic extension of ``f`` given on ``[0, P)``."""
    if not P > 0:
        raise ValueError("period must be positive")
    return PeriodicSignal(P, "function", lambda x: f(frac_part(np.asarray(x) / P) * P), f)


def _min_nodes(k: int) -> int:
    return max(16, 4 * (abs(k) + 1))


def coeff_numeric(signal: PeriodicSignal, k: int, nodes: int) -> complex:
    """Trapezoidal estimate of ``c_k`` on ``nodes`` equispaced points."""
    if nodes < _min_nodes(k):
        raise ValueError(f"need at least {_min_nodes(k)} nodes for k={k}, got {nodes}")
    P = signal.period
    x = np.arange(nodes) * (P / nodes)
    fx = np.asarray(signal(x), dtype=float)
    # periodic trapezoid: endpoint weights merge into uniform 1/M
    return complex(np.mean(fx * np.exp(-2j * np.pi * k * np.arange(nodes) / nodes)))


def numeric_table(signal: PeriodicSignal, K: int, nodes: Optional[int] = None) -> CoefficientTable:
    """Quadrature coefficients for ``0..K``, mirrored by conjugation."""
    M = nodes if nodes is not None else max(4096, _min_nodes(K))
    if M < _min_nodes(K):
        raise ValueError(f"need at least {_min_nodes(K)} nodes for K={K}, got {M}")
    fx = np.asarray(signal(np.arange(M) * (signal.period / M)), dtype=float)
    j = np.arange(M)
    pos = np.empty(K + 1, dtype=complex)
    step = max(1, _CHUNK // M)
    for s in range(0, K + 1, step):
        ks = np.arange(s, min(K + 1, s + step))
        pos[ks] = np.exp(-2j * np.pi * np.outer(ks, j) / M) @ fx / M
    pos[0] = pos[0].real
    return CoefficientTable(K, np.concatenate([np.conj(pos[:0:-1]), pos]), True)


def rescale_period(signal: PeriodicSignal, new_period: float) -> PeriodicSignal:
    """``g(x) = f(x P / P')``; coefficients are unchanged index by index."""
    if not new_period > 0:
        raise ValueError("period must be positive")
    ratio = signal.period / new_period
    backing = "table" if signal.backing == "table" else "function"
    source = signal.source if backing == "table" else signal
    return PeriodicSignal(new_period, backing, lambda x: signal.evaluator(np.asarray(x) * ratio), source)


# --------------------------------------------------------------------------
# coefficient algebra
# --------------------------------------------------------------------------


def translate(t: CoefficientTable, a: float) -> CoefficientTable:
    """Coefficients of ``x -> f(x + a)``."""
    return t.map(lambda k: np.exp(2j * np.pi * k * a))


def convolve(t: CoefficientTable, other: CoefficientTable) -> CoefficientTable:
    """Coefficients of the periodic convolution: ``c_k d_k``."""
    K = min(t.kmax, other.kmax)
    a, b = t.truncate(K), other.truncate(K)
    return CoefficientTable(K, a.values * b.values, a.real_signal and b.real_signal)


def differentiate(t: CoefficientTable, m: int = 1, entry: Optional[WaveformCatalogEntry] = None):
    """Coefficients of the ``m``-th derivative: ``(2 pi i k)^m c_k``.

    Termwise differentiation needs a continuous periodic signal; when the
    originating catalog entry has jumps a warning is issued.
    """
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    if entry is not None and entry.jumps:
        warnings.warn(
            f"{entry.id!r} has jump discontinuities; termwise derivative is not "
            "the coefficient sequence of a function",
            stacklevel=2,
        )
    return t.map(lambda k: (2j * np.pi * k) ** m)


def coefficient_algebra(rule: str, t: CoefficientTable, arg=None) -> CoefficientTable:
    """Dispatch ``translate``/``convolve``/``differentiate`` by name."""
    if rule == "translate":
        return translate(t, float(arg))
    if rule == "convolve":
        return convolve(t, arg)
    if rule == "differentiate":
        return differentiate(t, 1 if arg is None else int(arg))
    raise ValueError(f"unknown rule {rule!r}")


# --------------------------------------------------------------------------
# diagnostics
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ParsevalReport:
    lhs: float
    rhs: float
    defect: float

    def bessel_holds(self, tol: float = 1e-12) -> bool:
        return self.defect >= -tol


def parseval_report(t: CoefficientTable, signal: PeriodicSignal, nodes: int = 1 << 16) -> ParsevalReport:
    """Compare ``sum |c_k|^2`` against the mean square of the signal."""
    x = np.arange(nodes) * (signal.period / nodes)
    rhs = float(np.mean(np.asarray(signal(x), dtype=float) ** 2))
    lhs = t.energy()
    return ParsevalReport(lhs, rhs, rhs - lhs)


@dataclass(frozen=True)
class DecayFit:
    alpha: float
    C: float
    superpolynomial: bool


def decay_fit(t: CoefficientTable, floor: float = 1e-300) -> DecayFit:
    """Least-squares fit of ``|c_k| ~ C k^{-alpha}`` over ``k >= 1``.

    Structural zeros (``|c_k| <= floor``) are left out of the fit. A fitted
    exponent above 4 is reported as super-polynomial decay.
    """
    if t.kmax < 16:
        raise ValueError("decay_fit needs kmax >= 16")
    k = np.arange(1, t.kmax + 1)
    mag = np.abs(t.values[t.kmax + 1 :])
    keep = mag > floor
    if keep.sum() < 2:
        raise ValueError("not enough nonzero coefficients to fit")
    slope, intercept = np.polyfit(np.log(k[keep]), np.log(mag[keep]), 1)
    alpha = -float(slope)
    return DecayFit(alpha, math.exp(intercept), alpha > 4)
