"""Radon transform, integral geometry, epicycles, equidistribution and the circle CLT."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.interpolate import CubicSpline

from ._parallel import ordered_map
from .periodic import frac_part
from .special import WrappedGaussian
from .transforms import DftPlan, fft_gauss

# --------------------------------------------------------------------------
# Radon transform
# --------------------------------------------------------------------------


def line_points(p, phi, t):
    """Points ``(-sin phi, cos phi) t + (cos phi, sin phi) p`` of the line at offset ``p``, normal angle ``phi``."""
    c, s = np.cos(phi), np.sin(phi)
    return -s * t + c * p, c * t + s * p


def radon_forward(density: Callable, p, phi, half_length: float = 1.0, nodes: int = 256):
    """Trapezoid rule for ``int_{-L}^{L} f(r_{p,phi}(t)) dt``.

    ``density(x, y)`` must accept arrays. ``p`` and ``phi`` broadcast together.
    """
    if nodes < 32:
        raise ValueError("radon_forward needs at least 32 nodes")
    if not half_length > 0:
        raise ValueError("half-length must be positive")
    pa, fa = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(phi, dtype=float))
    t = np.linspace(-half_length, half_length, nodes + 1)
    w = np.full(nodes + 1, 2 * half_length / nodes)
    w[0] = w[-1] = half_length / nodes
    x, y = line_points(pa[..., None], fa[..., None], t)
    out = np.asarray(density(x, y), dtype=float) @ w
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Sinogram:
    """Line integrals on a uniform ``p`` grid of ``[0, 1]`` and a uniform ``phi`` grid of ``[0, 2 pi)``.

    ``values[i, j]`` is ``R_f(p[i], phi[j])``.
    """

    p: np.ndarray
    phi: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        phi = np.asarray(self.phi, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if p.size < 2 or phi.size < 1:
            raise ValueError("sinogram grids must be non-empty")
        if v.shape != (p.size, phi.size):
            raise ValueError(f"values shape {v.shape} does not match grids ({p.size}, {phi.size})")
        if not (math.isclose(p[0], 0, abs_tol=1e-12) and math.isclose(p[-1], 1, abs_tol=1e-12)):
            raise ValueError("p grid must span [0, 1]")
        if not np.allclose(np.diff(p), p[1] - p[0], rtol=1e-9, atol=1e-12):
            raise ValueError("p grid must be uniform")
        expect = 2 * np.pi * np.arange(phi.size) / phi.size
        if not np.allclose(phi, expect, atol=1e-9):
            raise ValueError("phi grid must be uniform on [0, 2 pi)")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "values", v)

    @staticmethod
    def grids(n_p: int, n_phi: int) -> tuple[np.ndarray, np.ndarray]:
        return np.linspace(0, 1, n_p), 2 * np.pi * np.arange(n_phi) / n_phi

    @classmethod
    def from_density(cls, density: Callable, n_p: int = 201, n_phi: int = 64, half_length: float = 1.0, nodes: int = 512):
        p, phi = cls.grids(n_p, n_phi)
        vals = radon_forward(density, p[:, None], phi[None, :], half_length, nodes)
        return cls(p, phi, vals)

    def to_rows(self) -> list[tuple[float, float, float]]:
        P, F = np.meshgrid(self.p, self.phi, indexing="ij")
        return list(zip(P.ravel().tolist(), F.ravel().tolist(), self.values.ravel().tolist()))

    @classmethod
    def from_rows(cls, rows) -> "Sinogram":
        arr = np.asarray(rows, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] == 0:
            raise ValueError("sinogram rows must be (p, phi, value) triples")
        p = np.unique(arr[:, 0])
        phi = np.unique(arr[:, 1])
        if p.size * phi.size != arr.shape[0]:
            raise ValueError("sinogram rows do not form a full grid")
        vals = np.full((p.size, phi.size), np.nan)
        vals[np.searchsorted(p, arr[:, 0]), np.searchsorted(phi, arr[:, 1])] = arr[:, 2]
        return cls(p, phi, vals)

    def angular_modes(self) -> np.ndarray:
        """``R_k(p) = (1/M) sum_j R(p, phi_j) exp(-i k phi_j)``; column ``k mod M``."""
        plan = DftPlan.auto(self.phi.size)
        return np.array([fft_gauss(row, plan) for row in self.values])


@dataclass(frozen=True)
class PolarCoefficients:
    """Angular modes ``F_k(rho)`` of a density on a radial grid: ``F = sum_k F_k(rho) exp(i k theta)``."""

    rho: np.ndarray
    modes: dict

    def __post_init__(self):
        for k, v in self.modes.items():
            if -k in self.modes and not np.allclose(self.modes[-k], np.conj(v), rtol=1e-9, atol=1e-12):
                raise ValueError(f"mode {k} is not the conjugate of mode {-k}")

    def mode(self, k: int) -> np.ndarray:
        return self.modes.get(k, np.zeros(self.rho.size, dtype=complex))

    def synthesize(self, theta) -> np.ndarray:
        """Field on the ``(rho, theta)`` grid, shape ``(len(rho), len(theta))``."""
        th = np.atleast_1d(np.asarray(theta, dtype=float))
        out = np.zeros((self.rho.size, th.size), dtype=complex)
        for k, v in self.modes.items():
            out += np.outer(v, np.exp(1j * k * th))
        return out.real


def _mode_inverse(Rk: np.ndarray, p: np.ndarray, k: int, tau: np.ndarray, h: float, quad_nodes: int) -> np.ndarray:
    spline_re = CubicSpline(p, Rk.real)
    spline_im = CubicSpline(p, Rk.imag)
    gl_x, gl_w = np.polynomial.legendre.leggauss(quad_nodes)

    def inner(t: np.ndarray) -> np.ndarray:
        # int_t^1 t T_k(p/t) R_k(p) / (p sqrt(p^2 - t^2)) dp with p = t cosh u
        umax = np.arccosh(1.0 / t)
        u = 0.5 * umax[:, None] * (gl_x + 1)
        pp = np.minimum(t[:, None] * np.cosh(u), 1.0)
        vals = (spline_re(pp) + 1j * spline_im(pp)) * np.cosh(k * u) / np.cosh(u)
        return 0.5 * umax * (vals @ gl_w)

    return -(inner(tau + h) - inner(tau - h)) / (2 * h * np.pi)


def radon_invert(
    s: Sinogram,
    tau,
    modes: Optional[int] = None,
    quad_nodes: int = 256,
) -> PolarCoefficients:
    """Recover the angular modes of a density from its sinogram.

    For each mode ``k`` the angular DFT ``R_k(p)`` of the sinogram is
    interpolated in ``p``; then
    ``F_k(tau) = -(1/pi) d/dtau int_tau^1 tau T_k(p/tau) R_k(p) / (p sqrt(p^2 - tau^2)) dp``
    with the substitution ``p = tau cosh u`` and a central difference whose
    step is the ``tau`` grid spacing. ``modes`` bounds ``|k|`` (default 4);
    the weight ``T_k`` grows like ``(2/tau)^k`` so high modes amplify noise.
    """
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    if np.any((tau <= 0) | (tau >= 1)):
        raise ValueError("tau must lie in (0, 1)")
    M = s.phi.size
    kmax = min(4 if modes is None else modes, (M - 1) // 2)
    if tau.size > 1:
        h = float(np.min(np.diff(np.sort(tau))))
    else:
        h = float(s.p[1] - s.p[0])
    h = min(h, 0.5 * float(np.min(tau)), 0.5 * float(np.min(1 - tau)))
    if h <= 0:
        raise ValueError("tau grid has repeated points")
    R = s.angular_modes()

    def one(k: int):
        return k, _mode_inverse(R[:, k % M], s.p, k, tau, h, quad_nodes)

    out = dict(ordered_map(one, range(0, kmax + 1)))
    for k in range(1, kmax + 1):
        out[-k] = np.conj(out[k])
    for k in out:
        if k == 0:
            out[k] = out[k].real.astype(complex)
    return PolarCoefficients(tau, {k: out[k] for k in sorted(out)})


# --------------------------------------------------------------------------
# closed curves by Fourier coefficients
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveGeometry:
    length: float
    area: float
    defect: float


@dataclass(frozen=True)
class CurveFourier:
    """``gamma(t) = x(t) + i y(t) = sum_{|k|<=K} gamma_k exp(2 pi i k t)``, period 1."""

    K: int
    gamma: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=complex)
        if g.shape != (2 * self.K + 1,):
            raise ValueError("need 2K+1 coefficients")
        object.__setattr__(self, "gamma", g)

    closed = True

    @property
    def ks(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)

    @property
    def x_hat(self) -> np.ndarray:
        return 0.5 * (self.gamma + np.conj(self.gamma[::-1]))

    @property
    def y_hat(self) -> np.ndarray:
        return (self.gamma - np.conj(self.gamma[::-1])) / 2j

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.exp(2j * np.pi * np.multiply.outer(t, self.ks)) @ self.gamma

    def derivative(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.exp(2j * np.pi * np.multiply.outer(t, self.ks)) @ (2j * np.pi * self.ks * self.gamma)

    def sample(self, n: int) -> np.ndarray:
        return self(np.arange(n) / n)

    def closure_gap(self) -> float:
        return float(abs(self(0.0) - self(1.0)))

    def area(self) -> float:
        """``A = pi i sum_k k (conj(x_k) y_k - x_k conj(y_k))``; positive for counterclockwise curves."""
        xh, yh = self.x_hat, self.y_hat
        return float((np.pi * 1j * np.sum(self.ks * (np.conj(xh) * yh - xh * np.conj(yh)))).real)

    def length(self, nodes: int = 4096) -> float:
        """``int_0^1 |gamma'(t)| dt`` by the periodic trapezoid rule."""
        return float(np.mean(np.abs(self.derivative(np.arange(nodes) / nodes))))

    def geometry(self, nodes: int = 4096) -> CurveGeometry:
        L = self.length(nodes)
        A = self.area()
        return CurveGeometry(L, A, L * L - 4 * np.pi * A)

    @classmethod
    def circle(cls, radius: float = 1.0, center: complex = 0) -> "CurveFourier":
        return cls(1, np.array([0, center, radius], dtype=complex))

    @classmethod
    def ellipse(cls, a: float, b: float) -> "CurveFourier":
        # a cos + i b sin = ((a+b)/2) e^{it} + ((a-b)/2) e^{-it}
        return cls(1, np.array([(a - b) / 2, 0, (a + b) / 2], dtype=complex))


def curve_fourier_fit(samples, K: int) -> CurveFourier:
    """Coefficients ``|k| <= K`` from ``n >= 2K+1`` equispaced samples ``x + i y`` of a closed curve."""
    z = np.asarray(samples)
    if z.ndim == 2 and z.shape[1] == 2:
        z = z[:, 0] + 1j * z[:, 1]
    z = np.asarray(z, dtype=complex).ravel()
    n = z.size
    if K < 0:
        raise ValueError("K must be nonnegative")
    if n < 2 * K + 1:
        raise ValueError(f"{n} samples cannot determine {2 * K + 1} coefficients")
    C = fft_gauss(z)
    idx = np.arange(-K, K + 1) % n
    return CurveFourier(K, C[idx])


def shoelace_area(samples) -> float:
    z = np.asarray(samples, dtype=complex)
    return float(0.5 * np.sum(z.real * np.roll(z.imag, -1) - np.roll(z.real, -1) * z.imag))


# --------------------------------------------------------------------------
# Crofton and Buffon
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Polyline:
    """Piecewise linear curve through ``points`` (complex); closed or open."""

    points: np.ndarray
    closed: bool = False

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).ravel()
        if pts.size < 2:
            raise ValueError("a polyline needs at least two points")
        object.__setattr__(self, "points", pts)

    def sample(self, n: int) -> np.ndarray:
        pts = np.append(self.points, self.points[0]) if self.closed else self.points
        seg = np.abs(np.diff(pts))
        s = np.concatenate([[0], np.cumsum(seg)])
        if s[-1] == 0:
            return np.full(n, pts[0])
        t = np.linspace(0, s[-1], n, endpoint=not self.closed)
        return np.interp(t, s, pts.real) + 1j * np.interp(t, s, pts.imag)

    @classmethod
    def segment(cls, a: complex, b: complex) -> "Polyline":
        return cls(np.array([a, b]), False)


def crofton_length(
    curve: Union[CurveFourier, Polyline],
    p_nodes: int = 2000,
    phi_nodes: int = 720,
    samples: int = 4096,
) -> float:
    """Half the ``(p, phi)`` integral of the number of times a line meets the curve.

    Lines are ``{z : (cos phi, sin phi) . z = p}`` with ``p >= 0`` and
    ``phi`` in ``[0, 2 pi)``. Intersections are sign changes of
    ``p - (cos phi, sin phi) . gamma(t)`` over ``samples`` parameter values;
    the double integral is a midpoint Riemann sum.
    """
    if min(p_nodes, phi_nodes, samples) < 2:
        raise ValueError("need at least two nodes in each direction")
    z = curve.sample(samples)
    if curve.closed:
        z = np.append(z, z[0])
    if float(np.sum(np.abs(np.diff(z)))) == 0:
        raise ValueError("degenerate curve of zero length")
    pmax = float(np.max(np.abs(z)))
    dp = pmax / p_nodes
    dphi = 2 * np.pi / phi_nodes
    p = (np.arange(p_nodes) + 0.5) * dp
    total = 0
    for phi in (np.arange(phi_nodes) + 0.5) * dphi:
        s = np.cos(phi) * z.real + np.sin(phi) * z.imag
        lo = np.sort(np.minimum(s[:-1], s[1:]))
        hi = np.sort(np.maximum(s[:-1], s[1:]))
        # segment j is crossed at offset p iff lo_j < p <= hi_j
        total += int(np.sum(np.searchsorted(lo, p, "left") - np.searchsorted(hi, p, "left")))
    return 0.5 * total * dp * dphi


def arclength(curve: Callable, derivative: Callable, a: float = 0.0, b: float = 1.0) -> float:
    from scipy.integrate import quad

    val, _ = quad(lambda t: abs(derivative(t)), a, b, limit=200, epsabs=1e-12, epsrel=1e-12)
    return val


@dataclass(frozen=True)
class BuffonResult:
    tosses: int
    hits: int
    fraction: float
    target: float
    stderr: float


BUFFON_CHUNK = 1 << 16


def _buffon_chunk(args) -> int:
    ss, n, ell = args
    rng = np.random.Generator(np.random.Philox(ss))
    d = rng.uniform(0.0, 0.5, n)
    theta = rng.uniform(0.0, np.pi / 2, n)
    return int(np.count_nonzero(d <= 0.5 * ell * np.sin(theta)))


def buffon_sim(ell: float, tosses: int, seed: int) -> BuffonResult:
    """Needle of length ``ell`` dropped on lines a unit apart.

    Hit iff the distance from the needle centre to the nearest line is at
    most ``(ell/2) sin(theta)``. Randomness is Philox, split into fixed
    chunks of ``BUFFON_CHUNK`` tosses with independent child seeds, so the
    result depends only on ``seed`` and not on the thread count.
    """
    if not 0 < ell <= 1:
        raise ValueError("needle length must lie in (0, 1]")
    if tosses < 1:
        raise ValueError("tosses must be >= 1")
    nchunks = -(-tosses // BUFFON_CHUNK)
    children = np.random.SeedSequence(seed).spawn(nchunks)
    sizes = [BUFFON_CHUNK] * (nchunks - 1) + [tosses - BUFFON_CHUNK * (nchunks - 1)]
    hits = sum(ordered_map(_buffon_chunk, [(c, n, ell) for c, n in zip(children, sizes)]))
    frac = hits / tosses
    target = 2 * ell / np.pi
    stderr = math.sqrt(target * (1 - target) / tosses)
    return BuffonResult(tosses, hits, frac, target, stderr)


# --------------------------------------------------------------------------
# equidistribution and ergodic averages
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EquidistributionReport:
    gamma: float
    a: float
    b: float
    K: int
    count: int

    def __post_init__(self):
        if not 0 <= self.count <= self.K:
            raise ValueError("count out of range")

    @property
    def ratio(self) -> float:
        return self.count / self.K

    @property
    def error(self) -> float:
        return abs(self.ratio - (self.b - self.a))


def weyl_count(gamma: float, a: float, b: float, K: int, chunk: int = 1 << 20) -> EquidistributionReport:
    """Number of ``0 <= k < K`` with ``{gamma k}`` in ``[a, b]``."""
    if a > b:
        raise ValueError("need a <= b")
    if not (0 <= a <= 1 and 0 <= b <= 1):
        raise ValueError("interval must lie in [0, 1]")
    if K < 1:
        raise ValueError("K must be >= 1")
    count = 0
    for s in range(0, K, chunk):
        k = np.arange(s, min(K, s + chunk), dtype=float)
        # drop the integer part of gamma first; it does not change {gamma k}
        u = frac_part((gamma - math.floor(gamma)) * k)
        count += int(np.count_nonzero((u >= a) & (u <= b)))
    return EquidistributionReport(float(gamma), float(a), float(b), int(K), count)


@dataclass(frozen=True)
class ErgodicAverage:
    value: complex
    bound: float


def ergodic_time_average(k, omega, p, T: float, nodes: int = 1 << 16) -> ErgodicAverage:
    """``(1/T) int_0^T exp(2 pi i k.(p + omega t)) dt`` and its bound ``2 / (2 pi |k.omega| T)``."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if not T > 0:
        raise ValueError("T must be positive")
    kw = float(k @ omega)
    t = np.linspace(0, T, nodes + 1)
    f = np.exp(2j * np.pi * (float(k @ p) + kw * t))
    val = (f[0] / 2 + f[1:-1].sum() + f[-1] / 2) / nodes
    bound = math.inf if kw == 0 else 2 / (2 * np.pi * abs(kw) * T)
    return ErgodicAverage(complex(val), bound)


# --------------------------------------------------------------------------
# central limit theorem on the circle
# --------------------------------------------------------------------------


def _uniform(rng, shape):
    return rng.uniform(-math.sqrt(3), math.sqrt(3), shape)


def _gaussian(rng, shape):
    return rng.standard_normal(shape)


def _coin(rng, shape):
    return rng.integers(0, 2, shape) * 2.0 - 1.0


SAMPLERS = {"uniform": _uniform, "gaussian": _gaussian, "coin": _coin}

CDF_GRID = 101
CLT_CHUNK = 1 << 12


@dataclass(frozen=True)
class CircleCLTReport:
    sampler: str
    N: int
    draws: int
    grid: np.ndarray
    empirical_cdf: np.ndarray
    distance: float


def _clt_chunk(args) -> np.ndarray:
    ss, sampler, N, n = args
    rng = np.random.Generator(np.random.Philox(ss))
    X = SAMPLERS[sampler](rng, (n, N))
    return frac_part(X.sum(axis=1) / math.sqrt(N))


def circle_clt(sampler: str, N: int, draws: int, seed: int) -> CircleCLTReport:
    """Distribution of ``Z_N = N^{-1/2} sum X_j mod 1`` against the wrapped Gaussian.

    Samplers (all mean 0, variance 1): ``uniform`` on ``[-sqrt 3, sqrt 3]``,
    ``gaussian`` and ``coin`` (``+-1``). ``distance`` is the exact sup over
    ``[0, 1]`` of the gap between the empirical CDF and ``int_0^x W``.
    """
    if sampler not in SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}; choose from {sorted(SAMPLERS)}")
    if N < 1:
        raise ValueError("N must be >= 1")
    if draws < 1000:
        raise ValueError("draws must be >= 1000")
    nchunks = -(-draws // CLT_CHUNK)
    children = np.random.SeedSequence(seed).spawn(nchunks)
    sizes = [CLT_CHUNK] * (nchunks - 1) + [draws - CLT_CHUNK * (nchunks - 1)]
    z = np.sort(np.concatenate(ordered_map(_clt_chunk, [(c, sampler, N, n) for c, n in zip(children, sizes)])))
    F = WrappedGaussian().cdf(z)
    i = np.arange(1, draws + 1)
    dist = float(max(np.max(i / draws - F), np.max(F - (i - 1) / draws)))
    grid = np.linspace(0, 1, CDF_GRID)
    ecdf = np.searchsorted(z, grid, side="right") / draws
    return CircleCLTReport(sampler, N, draws, grid, ecdf, dist)


@dataclass(frozen=True)
class DigitModelMoments:
    mean: float
    second_moment: float
    sample_mean: float
    sample_second_moment: float


def digit_model_moments(samples: int = 10**5, seed: int = 0) -> DigitModelMoments:
    """Moments of ``X = omega / 2`` with ``omega`` a fair binary digit, exact and sampled."""
    values = np.array([0.0, 0.5])
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    x = values[rng.integers(0, 2, samples)]
    return DigitModelMoments(
        mean=float(values.mean()),
        second_moment=float((values**2).mean()),
        sample_mean=float(x.mean()),
        sample_second_moment=float((x**2).mean()),
    )
