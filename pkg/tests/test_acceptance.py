"""The fifteen acceptance criteria, each at its stated tolerance.

Every test records its individual checks in ``acceptance_log`` before
asserting, and the session summary prints one PASS/FAIL line per criterion.
"""
import math

import numpy as np
import pytest

from fourierlab.geometry import (
    CurveFourier,
    Polyline,
    Sinogram,
    buffon_sim,
    circle_clt,
    crofton_length,
    radon_forward,
    radon_invert,
    weyl_count,
)
from fourierlab.kernels import dirichlet, fejer, kernel_eval, poisson
from fourierlab.pde import (
    SOIL_DIFFUSIVITY,
    YEAR_SECONDS,
    CellarSpec,
    HeatProblem,
    cellar_design,
    corner_asymptotic,
    disk_dirichlet_xy,
    heat_energy,
    heat_solve,
    square_dirichlet,
)
from fourierlab.periodic import (
    CATALOG,
    PeriodicSignal,
    coeff_exact,
    coefficient_algebra,
    exact_table,
    numeric_table,
    parseval_report,
    periodic_extend,
)
from fourierlab.signal_apps import edge_values
from fourierlab.special import WrappedGaussian, bessel_j, bessel_ode_residual, constants_suite, j0_zeros
from fourierlab.summation import gibbs_constants, gibbs_measure
from fourierlab.transforms import DftPlan, OpCounter, dft_forward, dft_inverse, fft_gauss

from acceptance_log import record
from oracles import heat_crank_nicolson, laplace_square_fd, quad_coefficient


def verdict(n, checks):
    failed = record(n, checks)
    assert not failed, f"criterion {n}: " + "; ".join(failed)


# 1 ------------------------------------------------------------------------


def test_criterion_01_coefficient_golden_set():
    checks = []
    k = np.arange(1, 40)
    odd = k % 2 == 1
    closed = {
        "square": np.where(odd, -2j / (np.pi * k), 0),
        "sawtooth": 1j / (2 * np.pi * k),
        "triangular": np.where(odd, -1 / (np.pi**2 * k**2), 0),
        "parabola_x1mx": -1 / (2 * np.pi**2 * k**2),
    }
    for name, expect in closed.items():
        got = np.array([coeff_exact(name, int(j)) for j in k])
        checks.append((f"{name} closed form", np.max(np.abs(got - expect)) <= 1e-15))
        entry = CATALOG[name]
        bps = [x for x, _ in entry.jumps] + [0.5]
        err = max(abs(coeff_exact(entry, j) - quad_coefficient(entry, j, bps)) for j in range(-6, 7))
        checks.append((f"{name} vs quadrature ({err:.1e})", err < 1e-10))
    checks.append(("parabola mean 1/6", abs(coeff_exact("parabola_x1mx", 0) - 1 / 6) < 1e-15))
    verdict(1, checks)


# 2 ------------------------------------------------------------------------


def test_criterion_02_kernel_identities():
    M = 1 << 14
    x = np.arange(M) / M
    worst = 0.0
    ok_fejer_sign = True
    for N in range(0, 65):
        D = kernel_eval(dirichlet(N), x)
        worst = max(worst, abs(D.mean() - 1), abs((D * D).mean() - (2 * N + 1)), abs(kernel_eval(dirichlet(N), 0.0) - (2 * N + 1)))
        if N >= 1:
            F = kernel_eval(fejer(N), x)
            ok_fejer_sign &= bool(F.min() >= -1e-10)
            worst = max(worst, abs(F.mean() - 1))
            xs = x[::16]
            avg = np.mean([kernel_eval(dirichlet(j), xs) for j in range(N)], axis=0)
            worst = max(worst, float(np.max(np.abs(avg - F[::16]))))
    for r in (0.1, 0.5, 0.9):
        worst = max(worst, abs(kernel_eval(poisson(r), x).mean() - 1))
    verdict(2, [(f"max identity defect {worst:.1e}", worst < 1e-10), ("Fejer kernel nonnegative", ok_fejer_sign)])


# 3 ------------------------------------------------------------------------


def test_criterion_03_gibbs():
    rep = gibbs_measure("square", 200)
    lam = gibbs_constants().lam
    verdict(
        3,
        [
            (f"overshoot {rep.measured_overshoot:.5f}", abs(rep.measured_overshoot - 0.17898) <= 0.005),
            (f"probe S_N(1/(2N)) {rep.probe_value:.5f}", abs(rep.probe_value - 1.17898) <= 0.005),
            (f"lambda {lam:.9f}", abs(lam - 0.08948987) <= 1e-7),
        ],
    )


# 4 ------------------------------------------------------------------------


def test_criterion_04_parseval_and_bessel():
    t = exact_table("sawtooth", 10**4)
    defect = 1 / 12 - t.energy()
    r = parseval_report(t, PeriodicSignal.from_catalog("sawtooth"))
    checks = [
        (f"sawtooth energy defect vs 1/12 {defect:.1e}", 0 <= defect < 1e-4),
        (f"sampled mean square {r.rhs:.8f}", abs(r.rhs - 1 / 12) < 1e-8),
    ]
    rng = np.random.default_rng(2024)
    worst = -np.inf
    M = 512
    for _ in range(100):
        f = rng.normal(size=M) * rng.uniform(0.1, 10)
        sig = periodic_extend(lambda t, f=f: f[np.floor(np.asarray(t) * M).astype(int) % M], 1.0)
        t = numeric_table(sig, int(rng.integers(1, 120)), M)
        worst = max(worst, t.energy() - float(np.mean(f * f)))
    checks.append((f"Bessel inequality worst excess {worst:.1e}", worst <= 1e-12))
    verdict(4, checks)


# 5 ------------------------------------------------------------------------


def test_criterion_05_dft_fft():
    rng = np.random.default_rng(5)
    N = 1 << 12
    x = rng.normal(size=N) + 1j * rng.normal(size=N)
    rt = float(np.max(np.abs(dft_inverse(fft_gauss(x), DftPlan.auto(N)) - x)))
    checks = [(f"round trip N=4096 ({rt:.1e})", rt < 1e-12)]
    for n in (12, 60, 1024):
        y = rng.normal(size=n) + 1j * rng.normal(size=n)
        d = dft_forward(y)
        err = float(np.max(np.abs(fft_gauss(y) - d)))
        checks.append((f"dft vs fft N={n} ({err:.1e})", err < 1e-11))
    c = OpCounter()
    fft_gauss(rng.normal(size=1024) + 0j, DftPlan.auto(1024), c)
    ratio = 1024**2 / c.multiply_adds
    checks.append((f"N^2 / multiply-adds = {ratio:.1f}", ratio >= 50))
    verdict(5, checks)


# 6 ------------------------------------------------------------------------


def test_criterion_06_constants():
    r = constants_suite()
    verdict(
        6,
        [
            (f"zeta(2) gap {abs(r.zeta2_partial - r.zeta2_target):.1e}", abs(r.zeta2_partial - r.zeta2_target) <= 2e-6),
            (f"zeta(4) gap {abs(r.zeta4_partial - r.zeta4_target):.1e}", abs(r.zeta4_partial - r.zeta4_target) <= 4e-12),
            (f"Wallis gap {abs(r.wallis_partial - r.wallis_target):.1e}", abs(r.wallis_partial - r.wallis_target) <= 1e-3),
            (f"Stirling ratio {r.stirling_ratio:.5f}", abs(r.stirling_ratio - 1) <= 0.005),
        ],
    )


# 7 ------------------------------------------------------------------------


def test_criterion_07_heat():
    x = np.linspace(0, 1, 51)
    p1 = HeatProblem(1.0, [1.0])
    single = max(float(np.max(np.abs(heat_solve(p1, x, t) - math.exp(-math.pi**2 * t) * np.sin(math.pi * x)))) for t in (0, 0.01, 0.1, 1))
    f = lambda s: s * (1 - s)
    xs, u = heat_crank_nicolson(f, 1.0, 0.01)
    fd = abs(heat_solve(HeatProblem.from_datum(f, 1.0, 200), 0.5, 0.01) - u[np.argmin(np.abs(xs - 0.5))])
    rng = np.random.default_rng(7)
    monotone = True
    for _ in range(10):
        p = HeatProblem(float(rng.uniform(0.5, 3)), rng.normal(size=16))
        e = [heat_energy(p, t) for t in np.linspace(0, 0.5, 25)]
        monotone &= all(b < a for a, b in zip(e, e[1:]))
    verdict(7, [(f"single mode ({single:.1e})", single <= 1e-14), (f"FD oracle gap {fd:.1e}", fd <= 2e-4), ("energy decays", monotone)])


# 8 ------------------------------------------------------------------------


def test_criterion_08_cellar():
    d37 = cellar_design(CellarSpec(SOIL_DIFFUSIVITY, YEAR_SECONDS, 37.0))
    d104 = cellar_design(CellarSpec(SOIL_DIFFUSIVITY, YEAR_SECONDS, 104.0))
    verdict(
        8,
        [
            (f"depth {d37.depth:.2f} cm", abs(d37.depth - 445) <= 1),
            ("37 e^-pi", abs(d37.annual_oscillation - 37 * math.exp(-math.pi)) <= 1e-10),
            ("104 e^-pi", abs(d104.annual_oscillation - 104 * math.exp(-math.pi)) <= 1e-10),
        ],
    )


# 9 ------------------------------------------------------------------------


def test_criterion_09_dirichlet_problems():
    f = periodic_extend(lambda t: np.exp(np.sin(2 * np.pi * t)) + 0.5 * np.cos(6 * np.pi * t), 1.0)
    p0 = 0.2 + 0.1j
    z = p0 + 0.3 * np.exp(2j * np.pi * np.arange(2048) / 2048)
    mv = abs(np.mean(disk_dirichlet_xy(f, z.real, z.imag)) - disk_dirichlet_xy(f, p0.real, p0.imag))
    g, U = laplace_square_fd(257)
    fd = abs(square_dirichlet(0.5, 0.5) - U[128, 128])
    rs = np.array([1e-2, 1e-3, 1e-4])
    res = np.array([abs(corner_asymptotic(r, math.pi / 4).residual) for r in rs])
    slope = float(np.polyfit(np.log(rs), np.log(res), 1)[0])
    verdict(
        9,
        [
            (f"mean value gap {mv:.1e}", mv <= 1e-6),
            (f"FD Laplace gap {fd:.1e}", fd <= 1e-3),
            (f"corner slope {slope:.3f}", abs(slope - 2) <= 0.2),
        ],
    )


# 10 -----------------------------------------------------------------------


def test_criterion_10_radon():
    p = np.linspace(0, 2.5, 26)[:, None]
    phi = np.linspace(0, 2 * np.pi, 9)[None, :]
    R = radon_forward(lambda x, y: np.exp(-(x * x + y * y)), p, phi, half_length=6, nodes=2048)
    fwd = float(np.max(np.abs(R - math.sqrt(math.pi) * np.exp(-p * p))))
    phantom = lambda x, y: np.where(x * x + y * y < 1, 1 - x * x - y * y, 0.0)
    tau = np.linspace(0.1, 0.8, 71)
    field = radon_invert(Sinogram.from_density(phantom), tau).synthesize(np.linspace(0, 2 * np.pi, 32, endpoint=False))
    inv = float(np.max(np.abs(field - (1 - tau**2)[:, None])))
    verdict(10, [(f"Gaussian forward error {fwd:.1e}", fwd < 1e-6), (f"phantom inversion error {inv:.1e}", inv < 1e-2)])


# 11 -----------------------------------------------------------------------


def test_criterion_11_integral_geometry():
    circ = crofton_length(CurveFourier.circle())
    seg = crofton_length(Polyline.segment(-0.35, 0.35))
    b = buffon_sim(1.0, 10**6, seed=20240611)
    verdict(
        11,
        [
            (f"Crofton circle {circ:.5f}", abs(circ - 2 * math.pi) <= 0.01 * 2 * math.pi),
            (f"Crofton segment {seg:.5f}", abs(seg - 0.7) <= 0.015 * 0.7),
            (f"Buffon {b.fraction:.5f} +- {b.stderr:.1e}", abs(b.fraction - 2 / math.pi) <= 3 * b.stderr),
        ],
    )


# 12 -----------------------------------------------------------------------


def test_criterion_12_weyl():
    checks = []
    for a, b in [(0.25, 0.5), (0.0, 0.1), (0.3, 0.95)]:
        r = weyl_count(math.sqrt(2), a, b, 10**6)
        checks.append((f"[{a}, {b}] error {r.error:.1e}", r.error < 1e-3))
    verdict(12, checks)


# 13 -----------------------------------------------------------------------


def test_criterion_13_circle_clt():
    rep = circle_clt("uniform", 64, 10**5, seed=64)
    w = WrappedGaussian()
    x = np.linspace(0, 1, 1001)
    dual = float(np.max(np.abs(w.pdf(x) - w.pdf_frequency(x))))
    w1 = abs(w.coefficient(1) - math.exp(-2 * math.pi**2))
    M = 4096
    s = (np.arange(M) + 0.5) / M
    w1_num = abs(np.mean(w.pdf(s) * np.exp(-2j * np.pi * s)) - math.exp(-2 * math.pi**2))
    verdict(
        13,
        [
            (f"CDF distance {rep.distance:.4f}", rep.distance < 0.02),
            (f"dual representations {dual:.1e}", dual <= 1e-12),
            (f"W_1 = e^(-2 pi^2) ({max(w1, w1_num):.1e})", max(w1, w1_num) <= 1e-12),
        ],
    )


# 14 -----------------------------------------------------------------------


def test_criterion_14_bessel_zeros_and_generating_function():
    zs = j0_zeros(3)
    bracketed = all(m * math.pi < z < (m + 1) * math.pi for m, z in enumerate(zs))
    signs = all(bessel_j(0, m * math.pi) * bessel_j(0, (m + 1) * math.pi) < 0 for m in range(3))
    ref = [2.404825557695773, 5.520078110286311, 8.653727912911013]
    loc = max(abs(a - b) for a, b in zip(zs, ref))
    val = max(abs(bessel_j(0, z)) for z in zs)
    theta = np.linspace(0, 2 * np.pi, 25)
    zz = np.exp(1j * theta)
    gen = 0.0
    for x in (0.5, 1.0, 3.0):
        total = sum(bessel_j(k, x) * zz**k for k in range(-30, 31))
        gen = max(gen, float(np.max(np.abs(total - np.exp(x / 2 * (zz - 1 / zz))))))
    verdict(
        14,
        [
            ("zeros bracketed by sign changes at multiples of pi", bracketed and signs),
            (f"zeros located ({loc:.1e}, |J0| {val:.1e})", loc <= 1e-10 and val <= 1e-10),
            (f"generating function ({gen:.1e})", gen <= 1e-10),
        ],
    )


@pytest.mark.xfail(
    strict=True,
    reason="central-difference truncation at h=1e-4 alone is about 2e-8 near x=10, above the 1e-8 threshold",
)
def test_criterion_14_bessel_ode_residual():
    # x^2 J'' + x J' + (x^2 - k^2) J with central differences h = 1e-4 on a grid of [0, 10];
    # values in extended precision so the only error left is the differencing itself
    x = np.linspace(0, 10, 41)
    worst = max(float(np.max(np.abs(bessel_ode_residual(k, x, h=1e-4)))) for k in (0, 1, 2))
    verdict(14, [(f"ODE residual {worst:.1e} at h=1e-4", worst < 1e-8)])


# 15 -----------------------------------------------------------------------


def test_criterion_15_edge_detector():
    N = 400
    t = coefficient_algebra("translate", exact_table("square", N), -0.3)  # jumps +2 at 0.3, -2 at 0.8
    at = edge_values(t, N, [0.3, 0.8])
    x = np.arange(8000) / 8000
    e = edge_values(t, N, x)
    far = (np.abs(x - 0.3) >= 0.02) & (np.abs(x - 0.8) >= 0.02)
    away = float(np.max(np.abs(e[far])))
    smooth = numeric_table(periodic_extend(lambda s: np.exp(np.cos(2 * np.pi * s)), 1.0), N)
    sm = float(np.max(np.abs(edge_values(smooth, N, x))))
    verdict(
        15,
        [
            (f"jump recovery {at[0]:.4f}, {at[1]:.4f}", abs(at[0] - 2) <= 0.05 and abs(at[1] + 2) <= 0.05),
            (f"away from jumps {away:.4f}", away < 0.05),
            (f"smooth signal {sm:.4f}", sm < 0.05),
        ],
    )
