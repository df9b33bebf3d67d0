import math

import numpy as np
import pytest

from fourierlab.kernels import (
    KernelSpec,
    conjugate_poisson,
    dirichlet,
    fejer,
    gauss_weierstrass,
    kernel_eval,
    kernel_signal,
    lebesgue_constant,
    periodic_convolution,
    poisson,
)
from fourierlab.periodic import PeriodicSignal, numeric_table, periodic_extend
from fourierlab.summation import partial_sum

M = 1 << 14
GRID = np.arange(M) / M  # periodic trapezoid nodes


def integral(f):
    return float(np.mean(f(GRID)))


def test_point_values():
    assert kernel_eval(dirichlet(5), 0.0) == pytest.approx(11)
    for N in (1, 4, 17):
        assert kernel_eval(fejer(N), 0.0) == pytest.approx(N)
    assert kernel_eval(poisson(0.5), 0.0) == pytest.approx(3)
    assert kernel_eval(conjugate_poisson(0.7), 0.0) == 0


def test_guard_near_integers():
    for x in (1e-12, 1.0, 2.0 - 1e-13, -1.0):
        assert kernel_eval(dirichlet(7), x) == pytest.approx(15, rel=1e-9)
        assert kernel_eval(fejer(7), x) == pytest.approx(7, rel=1e-9)


@pytest.mark.parametrize("bad", [("dirichlet", -1), ("dirichlet", 1.5), ("fejer", 0), ("poisson", 1.0), ("poisson", -0.1), ("gauss_weierstrass", 0.0), ("box", 1)])
def test_invalid_specs(bad):
    with pytest.raises(ValueError):
        KernelSpec(*bad)


@pytest.mark.parametrize("N", [0, 1, 2, 7, 32, 64])
def test_dirichlet_integrals(N):
    D = lambda x: kernel_eval(dirichlet(N), x)
    assert abs(integral(D) - 1) < 1e-10
    assert abs(integral(lambda x: D(x) ** 2) - (2 * N + 1)) < 1e-10


@pytest.mark.parametrize("N", [1, 3, 16, 64])
def test_fejer_positive_unit_mass_and_average(N):
    F = kernel_eval(fejer(N), GRID)
    assert F.min() >= -1e-12
    assert abs(F.mean() - 1) < 1e-10
    avg = np.mean([kernel_eval(dirichlet(k), GRID[::64]) for k in range(N)], axis=0)
    assert np.max(np.abs(avg - F[::64])) < 1e-12 * max(1, N)


def test_dirichlet_symmetries():
    x = np.linspace(0.01, 0.49, 50)
    for N in (3, 8):
        D = lambda t: kernel_eval(dirichlet(N), t)
        assert np.allclose(D(x), D(-x), atol=1e-12)
        assert np.allclose(D(0.5 - x), D(0.5 + x), atol=1e-10)


@pytest.mark.parametrize("r", [0.1, 0.5, 0.9])
def test_poisson_positive_unit_mass(r):
    P = kernel_eval(poisson(r), GRID)
    assert P.min() > 0
    assert abs(P.mean() - 1) < 1e-10


def test_conjugate_poisson_matches_multiplier_series():
    r = 0.6
    k = np.arange(1, 80)
    x = np.linspace(0, 1, 41)
    series = 2 * np.sin(2 * np.pi * np.outer(x, k)) @ r**k
    assert np.allclose(kernel_eval(conjugate_poisson(r), x), series, atol=1e-12)


def test_gauss_weierstrass_unit_mass_and_multiplier():
    for eps in (1e-3, 0.01, 0.2, 2.0):
        G = lambda x: kernel_eval(gauss_weierstrass(eps), x)
        assert abs(integral(G) - 1) < 1e-10
        c1 = np.mean(G(GRID) * np.exp(-2j * np.pi * GRID))
        assert abs(c1 - math.exp(-math.pi**2 * eps)) < 1e-10


def test_gauss_weierstrass_heat_identity():
    # 4 dG/deps = d^2G/dx^2
    eps, h_e, h_x = 0.02, 1e-6, 1e-4
    x = np.linspace(-0.4, 0.4, 33)
    G = lambda e, t: kernel_eval(gauss_weierstrass(e), t)
    lhs = 4 * (G(eps + h_e, x) - G(eps - h_e, x)) / (2 * h_e)
    rhs = (G(eps, x + h_x) - 2 * G(eps, x) + G(eps, x - h_x)) / h_x**2
    assert np.max(np.abs(lhs - rhs)) < 1e-5 * np.max(np.abs(rhs)) + 1e-5


def test_convolution_with_dirichlet_gives_partial_sum():
    f = periodic_extend(lambda x: np.exp(np.cos(2 * np.pi * x)), 1.0)
    N = 6
    conv = periodic_convolution(f, kernel_signal(dirichlet(N)), 1024)
    x = np.arange(16) / 16
    SN = partial_sum(numeric_table(f, N), N, x)
    assert np.max(np.abs(conv(x) - SN)) < 1e-8


def test_convolution_with_constant():
    f = periodic_extend(lambda x: 2 + np.sin(2 * np.pi * x), 1.0)
    one = PeriodicSignal.from_catalog("constant")
    conv = periodic_convolution(f, one, 64)
    assert np.allclose(conv(np.linspace(0, 1, 9)), 2, atol=1e-14)


def test_convolution_coefficients_are_products_and_commute():
    f = periodic_extend(lambda x: np.exp(np.sin(2 * np.pi * x)), 1.0)
    g = periodic_extend(lambda x: 1 / (1.5 + np.cos(2 * np.pi * x)), 1.0)
    fg = periodic_convolution(f, g, 256)
    gf = periodic_convolution(g, f, 256)
    x = np.linspace(0, 1, 11)
    assert np.allclose(fg(x), gf(x), atol=1e-12)
    tf, tg, tfg = numeric_table(f, 8, 512), numeric_table(g, 8, 512), numeric_table(fg, 8, 128)
    assert np.max(np.abs(tfg.values - tf.values * tg.values)) < 1e-10


def test_convolution_requires_grid():
    f = PeriodicSignal.from_catalog("sine")
    with pytest.raises(ValueError):
        periodic_convolution(f, f, 8)


def test_lebesgue_constants_grow_logarithmically():
    Ns = np.array([4, 8, 16, 32, 64, 128])
    L = np.array([lebesgue_constant(int(N)) for N in Ns])
    assert np.all(np.diff(L) > 0)
    c, _ = np.polyfit(np.log(Ns), L, 1)
    assert c > 0
    assert c == pytest.approx(4 / math.pi**2, rel=0.05)
    for N in (4, 64):
        assert abs(np.mean(np.abs(kernel_eval(fejer(N), GRID))) - 1) < 1e-10
