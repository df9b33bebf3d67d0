"""Bessel, Chebyshev, Legendre and Haar functions, the wrapped Gaussian, and classical constants."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

BESSEL_MAX_X = 50.0
_TAIL = 1e-16
# below this |x| the double-precision series loses < 1e-14 to cancellation
_FLOAT_SERIES_MAX = 8.0


# --------------------------------------------------------------------------
# Bessel functions of the first kind, integer order
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BesselEval:
    order: int
    truncation: int
    value: float


def _tail_term(x: float, k: int, J: int) -> float:
    # |x|^{2J+k} / (2^{2J+k} J! (J+k)!) in log space
    if x == 0:
        return 0.0
    lg = (2 * J + k) * math.log(abs(x) / 2) - math.lgamma(J + 1) - math.lgamma(J + k + 1)
    return math.exp(lg) if lg > -745 else 0.0


def bessel_truncation(k: int, x: float) -> int:
    """Smallest J whose first omitted series term is below 1e-16."""
    k = abs(k)
    J = 0
    while _tail_term(x, k, J) >= _TAIL:
        J += 1
    return J


def _series_float(k: int, x: float, J: int) -> float:
    term = (x / 2) ** k / math.factorial(k)
    total = term
    q = -(x * x) / 4
    for j in range(1, J):
        term *= q / (j * (j + k))
        total += term
    return total


def _series_mp(k: int, x, J: int, dps: int = 30):
    # the largest term is about exp(|x|); carry enough digits to absorb the cancellation
    with mpmath.workdps(dps + int(abs(float(x)) / math.log(10)) + 5):
        xm = mpmath.mpf(x)
        term = (xm / 2) ** k / mpmath.factorial(k)
        total = term
        q = -(xm * xm) / 4
        for j in range(1, J):
            term *= q / (j * (j + k))
            total += term
        return +total


def bessel_eval(k: int, x: float) -> BesselEval:
    """``J_k(x)`` from its power series, with the truncation that was used."""
    k = int(k)
    x = float(x)
    if abs(x) > BESSEL_MAX_X:
        raise ValueError(f"|x| = {abs(x)} beyond the series regime |x| <= {BESSEL_MAX_X}")
    n = abs(k)
    J = bessel_truncation(n, x)
    if J == 0:
        val = 1.0 if n == 0 else 0.0
    elif abs(x) <= _FLOAT_SERIES_MAX:
        val = _series_float(n, x, J)
    else:
        val = float(_series_mp(n, x, J))
    if k < 0 and n % 2:
        val = -val
    return BesselEval(k, J, val)


def bessel_j(k: int, x):
    """Bessel function ``J_k`` of integer order; ``x`` may be an array."""
    if np.ndim(x) == 0:
        return bessel_eval(k, x).value
    xa = np.asarray(x, dtype=float)
    return np.array([bessel_eval(k, v).value for v in xa.ravel()]).reshape(xa.shape)


def bessel_j_extended(k: int, x, dps: int = 40):
    """``J_k(x)`` from the same series in ``dps``-digit arithmetic (an ``mpmath.mpf``).

    The truncation is pushed to a tail below ``10^-dps``.
    """
    k = int(k)
    n = abs(k)
    xf = float(x)
    if abs(xf) > BESSEL_MAX_X:
        raise ValueError(f"|x| = {abs(xf)} beyond the series regime |x| <= {BESSEL_MAX_X}")
    J = 1
    while _tail_term(xf, n, J) >= 10.0 ** (-dps) and J < 10_000:
        J += 1
    with mpmath.workdps(dps):
        val = _series_mp(n, mpmath.mpf(x), J + 1, dps)
        return -val if (k < 0 and n % 2) else val


def bessel_ode_residual(k: int, x, h: float = 1e-4, dps: int = 40, normalized: bool = False) -> np.ndarray:
    """``x^2 J'' + x J' + (x^2 - k^2) J`` with central differences of step ``h``.

    Function values come from ``bessel_j_extended`` so that the result shows
    the differencing error rather than double-precision cancellation. With
    ``normalized`` the residual is divided by ``x^2``.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(xs.size)
    with mpmath.workdps(dps):
        hm = mpmath.mpf(h)
        for i, xv in enumerate(xs):
            xm = mpmath.mpf(xv)
            f0 = bessel_j_extended(k, xm, dps)
            fp = bessel_j_extended(k, xm + hm, dps)
            fm = bessel_j_extended(k, xm - hm, dps)
            d2 = (fp - 2 * f0 + fm) / hm**2
            d1 = (fp - fm) / (2 * hm)
            r = xm * xm * d2 + xm * d1 + (xm * xm - k * k) * f0
            out[i] = float(r / (xm * xm)) if normalized else float(r)
    return out


def j0_zeros(count: int, tol: float = 1e-13) -> np.ndarray:
    """First ``count`` positive zeros of ``J_0`` by bisection on ``(m pi, (m+1) pi)``."""
    if not 0 <= count <= 10:
        raise ValueError("count must be between 0 and 10")
    out = []
    for m in range(count):
        a, b = m * math.pi, (m + 1) * math.pi
        fa = bessel_j(0, a)
        fb = bessel_j(0, b)
        if fa * fb > 0:
            raise RuntimeError(f"J0 does not change sign on ({a}, {b})")
        while b - a > tol:
            mid = 0.5 * (a + b)
            fm = bessel_j(0, mid)
            if fm == 0:
                a = b = mid
                break
            if fa * fm < 0:
                b = mid
            else:
                a, fa = mid, fm
        out.append(0.5 * (a + b))
    return np.array(out)


# --------------------------------------------------------------------------
# orthogonal systems
# --------------------------------------------------------------------------


def chebyshev_t(m: int, x):
    """``T_m`` through its cosh/cos/cosh definition on the three ranges."""
    if m < 0:
        raise ValueError("Chebyshev degree must be nonnegative")
    xa = np.asarray(x, dtype=float)
    out = np.empty_like(xa)
    lo, hi = xa <= -1, xa >= 1
    mid = ~(lo | hi)
    out[mid] = np.cos(m * np.arccos(xa[mid]))
    out[hi] = np.cosh(m * np.arccosh(xa[hi]))
    out[lo] = (-1) ** m * np.cosh(m * np.arccosh(-xa[lo]))
    return float(out) if out.ndim == 0 else out


def chebyshev_t_recurrence(m: int, x):
    """``T_m`` via ``T_{n+1} = 2x T_n - T_{n-1}``."""
    xa = np.asarray(x, dtype=float)
    t0, t1 = np.ones_like(xa), xa.copy()
    if m == 0:
        return t0
    for _ in range(m - 1):
        t0, t1 = t1, 2 * xa * t1 - t0
    return t1


def chebyshev_coefficients(m: int) -> list[int]:
    """Integer power-basis coefficients of ``T_m``, lowest degree first."""
    a, b = [1], [0, 1]
    if m == 0:
        return a
    for _ in range(m - 1):
        nxt = [0] + [2 * c for c in b]
        for i, c in enumerate(a):
            nxt[i] -= c
        a, b = b, nxt
    return b


@lru_cache(maxsize=None)
def legendre_coefficients(k: int) -> tuple:
    """Exact power-basis coefficients of ``(d/dx)^k (x^2 - 1)^k / (2^k k!)``."""
    poly = [Fraction(0)] * (2 * k + 1)
    for j in range(k + 1):
        poly[2 * j] = Fraction(math.comb(k, j) * (-1) ** (k - j))
    for _ in range(k):
        poly = [poly[i] * i for i in range(1, len(poly))]
    scale = Fraction(1, 2**k * math.factorial(k))
    return tuple(c * scale for c in poly)


def legendre(k: int, x):
    """Orthonormal Legendre polynomial on ``[-1, 1]`` (Rodrigues form times ``sqrt((2k+1)/2)``)."""
    if k < 0:
        raise ValueError("Legendre degree must be nonnegative")
    xa = np.asarray(x, dtype=float)
    coeffs = [float(c) for c in legendre_coefficients(k)]
    val = np.polynomial.polynomial.polyval(xa, coeffs) * math.sqrt((2 * k + 1) / 2)
    return float(val) if np.ndim(val) == 0 else val


def haar(k: int, n: int, x):
    """Haar function ``h_{k,n}``, ``1 <= k <= 2^n``: ``+-2^{n/2}`` on the two halves of its cell."""
    if n < 0 or not 1 <= k <= 2**n:
        raise ValueError(f"Haar index out of range: k={k}, n={n}")
    xa = np.asarray(x, dtype=float)
    s = xa * 2**n
    amp = 2 ** (n / 2)
    out = np.where((s > k - 1) & (s < k - 0.5), amp, 0.0)
    out = np.where((s > k - 0.5) & (s < k), -amp, out)
    return float(out) if out.ndim == 0 else out


def orthonormal_system_eval(system: str, x, k: int, n: int = 0):
    """Evaluate ``legendre(k)`` or ``haar(k, n)`` by name."""
    if system == "legendre":
        return legendre(k, x)
    if system == "haar":
        return haar(k, n, x)
    raise ValueError(f"unknown system {system!r}")


# --------------------------------------------------------------------------
# wrapped Gaussian
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class WrappedGaussian:
    """Standard Gaussian wrapped on the unit circle, with both series truncations."""

    space_terms: int = 12
    freq_terms: int = 12

    def pdf(self, x):
        """Lattice sum ``(2 pi)^{-1/2} sum_k exp(-(x + k)^2 / 2)``."""
        xa = np.asarray(x, dtype=float)
        y = xa - np.floor(xa)
        k = np.arange(-self.space_terms, self.space_terms + 1)
        val = np.exp(-np.add.outer(y, k) ** 2 / 2).sum(axis=-1) / math.sqrt(2 * math.pi)
        return float(val) if np.ndim(val) == 0 else val

    def pdf_frequency(self, x):
        """``sum_k exp(-2 pi i k x - 2 pi^2 k^2)``, real part."""
        xa = np.asarray(x, dtype=float)
        k = np.arange(1, self.freq_terms + 1)
        val = 1 + 2 * np.cos(2 * np.pi * np.multiply.outer(xa, k)) @ np.exp(-2 * np.pi**2 * k * k)
        return float(val) if np.ndim(val) == 0 else val

    def cdf(self, x):
        """``int_0^x W`` for ``x`` in ``[0, 1]``, from the frequency series."""
        xa = np.asarray(x, dtype=float)
        k = np.arange(1, self.freq_terms + 1)
        w = np.exp(-2 * np.pi**2 * k * k) / (np.pi * k)
        val = xa + np.sin(2 * np.pi * np.multiply.outer(xa, k)) @ w
        return float(val) if np.ndim(val) == 0 else val

    @staticmethod
    def coefficient(m: int) -> float:
        return math.exp(-2 * math.pi**2 * m * m)


def wrapped_gaussian_pdf(x):
    return WrappedGaussian().pdf(x)


# --------------------------------------------------------------------------
# classical constants
# --------------------------------------------------------------------------


def zeta2_partial(K: int) -> float:
    return math.fsum(1.0 / (k * k) for k in range(K, 0, -1))


def zeta4_partial(K: int) -> float:
    return math.fsum(1.0 / k**4 for k in range(K, 0, -1))


def wallis_partial(n: int) -> float:
    """``prod_{j<=n} 4j^2 / (4j^2 - 1)``, accumulated in log space."""
    j = np.arange(1, n + 1, dtype=float)
    return math.exp(math.fsum(np.log1p(1.0 / (4 * j * j - 1))))


def sine_product_partial(z: float, n: int) -> float:
    """``prod_{j<=n} (1 - z^2 / j^2)``, which tends to ``sin(pi z) / (pi z)``."""
    j = np.arange(1, n + 1, dtype=float)
    return float(np.prod(1 - z * z / (j * j)))


def stirling_ratio(n: int) -> float:
    """``sqrt(2 pi n) (n/e)^n / n!``."""
    return math.exp(0.5 * math.log(2 * math.pi * n) + n * (math.log(n) - 1) - math.lgamma(n + 1))


@dataclass(frozen=True)
class ConstantsReport:
    zeta2_partial: float
    zeta2_target: float
    zeta4_partial: float
    zeta4_target: float
    wallis_partial: float
    wallis_target: float
    sine_product_partial: float
    sine_product_target: float
    stirling_ratio: float
    stirling_target: float = 1.0
    # historical approximations of pi^2/6, for display only
    zeta2_reference_strings: tuple = ("1.645", "1.64493406684822643647")


def constants_suite(K: int = 10**6, K4: int = 10**4, n: int = 1000, z: float = 0.5, n_stirling: int = 20) -> ConstantsReport:
    if min(K, K4, n, n_stirling) < 1:
        raise ValueError("all truncations must be >= 1")
    return ConstantsReport(
        zeta2_partial=zeta2_partial(K),
        zeta2_target=math.pi**2 / 6,
        zeta4_partial=zeta4_partial(K4),
        zeta4_target=math.pi**4 / 90,
        wallis_partial=wallis_partial(n),
        wallis_target=math.pi / 2,
        sine_product_partial=sine_product_partial(z, n),
        sine_product_target=math.sin(math.pi * z) / (math.pi * z),
        stirling_ratio=stirling_ratio(n_stirling),
    )
