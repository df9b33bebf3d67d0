"""Discrete Fourier coefficients: direct sums, Gauss's factorized scheme, tides.

Normalisation follows the coefficient convention of the rest of the package:

    C_h = (1/N) sum_j f_j exp(-2 pi i h j / N),   f_j = sum_h C_h exp(2 pi i h j / N).

Operation counts tally complex multiply-adds whose twiddle exponent is
nonzero modulo the transform length; products by 1 are not counted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

_CHUNK = 1 << 20


@dataclass
class OpCounter:
    """Per-call tally of complex multiply-adds."""

    multiply_adds: int = 0

    def add(self, n: int) -> None:
        self.multiply_adds += int(n)


def _roots(N: int) -> np.ndarray:
    # exp(-2 pi i m / N) for m = 0..N-1; indexing by (h*j) % N keeps twiddles exact-ish
    return np.exp(-2j * np.pi * np.arange(N) / N)


def smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def auto_factors(N: int) -> tuple[int, ...]:
    """Strip smallest prime factors; a prime (or 1) gives the trivial plan."""
    if N < 1:
        raise ValueError("transform length must be positive")
    out = []
    n = N
    while n > 1:
        p = smallest_prime_factor(n)
        out.append(p)
        n //= p
    return tuple(out) if len(out) > 1 else (N,)


@dataclass(frozen=True)
class _Level:
    n: int
    n1: int
    n2: int
    inner: np.ndarray  # n1 x n1 DFT matrix (unnormalised)
    inner_ops: int  # nonzero exponents in the inner matrix
    twiddle: np.ndarray  # n1 x n2, omega_n^{h2 j2}
    twiddle_ops: int


@dataclass(frozen=True)
class DftPlan:
    """Factorisation ``N = N1 N2 ...`` with precomputed twiddles."""

    N: int
    factors: tuple
    _levels: tuple = field(init=False, repr=False, compare=False)
    _leaf: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        factors = tuple(int(f) for f in self.factors)
        object.__setattr__(self, "factors", factors)
        if self.N < 1:
            raise ValueError("transform length must be positive")
        if math.prod(factors) != self.N:
            raise ValueError(f"factors {factors} do not multiply to N={self.N}")
        if len(factors) > 1 and min(factors) < 2:
            raise ValueError("every factor of a nontrivial plan must be >= 2")
        levels = []
        n = self.N
        for n1 in factors[:-1]:
            n2 = n // n1
            e_in = np.outer(np.arange(n1), np.arange(n1)) % n1
            e_tw = np.outer(np.arange(n1), np.arange(n2)) % n
            levels.append(
                _Level(
                    n, n1, n2,
                    _roots(n1)[e_in], int(np.count_nonzero(e_in)),
                    _roots(n)[e_tw], int(np.count_nonzero(e_tw)),
                )
            )
            n = n2
        e_leaf = np.outer(np.arange(n), np.arange(n)) % n
        object.__setattr__(self, "_levels", tuple(levels))
        object.__setattr__(self, "_leaf", (_roots(n)[e_leaf], int(np.count_nonzero(e_leaf))))

    @classmethod
    def auto(cls, N: int) -> "DftPlan":
        return cls(N, auto_factors(N))

    def predicted_ops(self) -> int:
        """Multiply-add count of one transform under this plan."""
        total, batch = 0, 1
        for lv in self._levels:
            total += batch * (lv.n2 * lv.inner_ops + lv.twiddle_ops)
            batch *= lv.n1
        return total + batch * self._leaf[1]


def _direct(x: np.ndarray, sign: int, counter: Optional[OpCounter]) -> np.ndarray:
    N = x.size
    roots = _roots(N) if sign < 0 else np.conj(_roots(N))
    j = np.arange(N)
    out = np.empty(N, dtype=complex)
    step = max(1, _CHUNK // N)
    for s in range(0, N, step):
        h = np.arange(s, min(N, s + step))
        out[h] = roots[np.outer(h, j) % N] @ x
    if counter is not None:
        counter.add(direct_ops(N))
    return out


def direct_ops(N: int) -> int:
    """Nontrivial products in the ``N x N`` direct sum: ``N^2`` minus pairs with ``hj = 0 mod N``."""
    h = np.arange(N)
    trivial = int(np.sum(np.gcd(h, N)))  # #{j : h j = 0 mod N} = gcd(h, N)
    return N * N - trivial


def dft_forward(samples: Sequence[complex], counter: Optional[OpCounter] = None) -> np.ndarray:
    """``C_h = (1/N) sum_j f_j exp(-2 pi i h j / N)`` by direct summation."""
    x = np.asarray(samples, dtype=complex).ravel()
    if x.size == 0:
        raise ValueError("empty input")
    return _direct(x, -1, counter) / x.size


def dft_inverse(coeffs: Sequence[complex], plan: Optional[DftPlan] = None) -> np.ndarray:
    """``f_j = sum_h C_h exp(2 pi i h j / N)``; uses the factorized path when a plan is given."""
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size == 0:
        return c
    if plan is not None:
        return c.size * np.conj(fft_gauss(np.conj(c), plan))
    return _direct(c, +1, None)


def _gauss(x: np.ndarray, levels: tuple, leaf: tuple, ops: list) -> np.ndarray:
    # x has shape (batch, n); returns unnormalised sums of the same shape
    batch, n = x.shape
    if not levels:
        W, nz = leaf
        ops[0] += batch * nz
        return x @ W.T
    lv = levels[0]
    # X[b, j1, j2] = x[b, n2 j1 + j2]
    X = x.reshape(batch, lv.n1, lv.n2)
    # inner sums over j1: B[b, h2, j2]
    B = np.einsum("hj,bjk->bhk", lv.inner, X)
    ops[0] += batch * lv.n2 * lv.inner_ops
    B *= lv.twiddle
    ops[0] += batch * lv.twiddle_ops
    # outer sums over j2 are n2-point transforms, one per (b, h2); output index h1
    R = _gauss(B.reshape(batch * lv.n1, lv.n2), levels[1:], leaf, ops)
    # C[b, n1 h1 + h2] = R[b, h2, h1]
    return R.reshape(batch, lv.n1, lv.n2).transpose(0, 2, 1).reshape(batch, n)


def fft_gauss(
    samples: Sequence[complex],
    plan: Optional[DftPlan] = None,
    counter: Optional[OpCounter] = None,
) -> np.ndarray:
    """Gauss's factorized evaluation of ``dft_forward``.

    With ``N = N1 N2``, ``h = N1 h1 + h2`` and ``j = N2 j1 + j2`` the sum splits
    into inner sums ``B[j2, h2]`` over ``j1`` and outer sums over ``j2``;
    the outer stage is itself an ``N2``-point transform and is split again
    along the remaining factors.
    """
    x = np.asarray(samples, dtype=complex).ravel()
    if x.size == 0:
        raise ValueError("empty input")
    if plan is None:
        plan = DftPlan.auto(x.size)
    if plan.N != x.size:
        raise ValueError(f"plan is for N={plan.N}, input has {x.size} samples")
    ops = [0]
    out = _gauss(x[None, :], plan._levels, plan._leaf, ops)[0] / x.size
    if counter is not None:
        counter.add(ops[0])
    return out


# --------------------------------------------------------------------------
# tidal harmonic extraction
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HarmonicModel:
    """Sum of harmonics.

    ``basis="exp"``: ``h(t) = sum a_k exp(i w_k t)`` with angular frequencies.
    ``basis="sin"``: ``h(t) = sum a_k sin(2 pi f_k t)`` with frequencies in cycles.
    """

    frequencies: np.ndarray
    amplitudes: np.ndarray
    error_bound: Optional[np.ndarray] = None
    basis: str = "exp"

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        a = np.asarray(self.amplitudes, dtype=complex)
        if f.shape != a.shape:
            raise ValueError("frequencies and amplitudes differ in length")
        order = np.argsort(f, kind="stable")
        f, a = f[order], a[order]
        if np.any(np.diff(f) <= 0):
            raise ValueError("frequencies must be pairwise distinct")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "amplitudes", a)
        if self.error_bound is not None:
            object.__setattr__(self, "error_bound", np.asarray(self.error_bound, dtype=float)[order])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.basis == "exp":
            return np.exp(1j * np.multiply.outer(t, self.frequencies)) @ self.amplitudes
        return (np.sin(2 * np.pi * np.multiply.outer(t, self.frequencies)) @ self.amplitudes).real

    def amplitude(self, freq: float) -> complex:
        i = int(np.argmin(np.abs(self.frequencies - freq)))
        if not math.isclose(self.frequencies[i], freq, rel_tol=1e-12, abs_tol=1e-12):
            raise KeyError(freq)
        return complex(self.amplitudes[i])


def tide_extract(
    h: Callable[[np.ndarray], np.ndarray],
    frequencies: Sequence[float],
    T: float,
    nodes: Optional[int] = None,
    t0: float = 0.0,
) -> HarmonicModel:
    """Amplitudes ``(1/T) int_{t0}^{t0+T} h(t) exp(-i w t) dt`` at known frequencies.

    Trapezoid rule; by default 64 nodes per shortest period among the
    requested frequencies. The attached bound for each amplitude is
    ``sum_{k != m} 2|a_k| / (T |w_k - w_m|)``, the leakage from the other
    listed harmonics over a finite window.
    """
    if not T > 0:
        raise ValueError("averaging window T must be positive")
    w = np.asarray(frequencies, dtype=float)
    if len(np.unique(w)) != w.size:
        raise ValueError("duplicate frequencies")
    if nodes is None:
        wmax = float(np.max(np.abs(w))) if w.size else 0.0
        periods = T * wmax / (2 * np.pi) if wmax > 0 else 1.0
        nodes = max(64, int(math.ceil(64 * periods)))
    t = np.linspace(t0, t0 + T, nodes + 1)
    ht = np.asarray(h(t), dtype=complex)
    wts = np.full(nodes + 1, T / nodes)
    wts[0] = wts[-1] = T / (2 * nodes)
    amps = np.array([np.sum(wts * ht * np.exp(-1j * wm * t)) / T for wm in w])
    bound = np.array(
        [
            sum(2 * abs(amps[k]) / (T * abs(w[k] - w[m])) for k in range(w.size) if k != m)
            for m in range(w.size)
        ]
    )
    return HarmonicModel(w, amps, bound, "exp")
