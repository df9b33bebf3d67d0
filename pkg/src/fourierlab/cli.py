"""Command-line front end: ``fourierlab <subcommand> [flags]``.

Exit status is 0 on success, 2 on usage errors (bad flags, inputs outside an
operation's domain) and 1 on numerical failures. Nothing is written unless
the command succeeds.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Callable, Optional, Sequence

import numpy as np

from . import geometry as geo
from . import kernels, pde, signal_apps, special, summation, transforms
from ._io import csv_text, json_text, read_csv, write_text
from ._parallel import thread_count
from .periodic import CATALOG, CoefficientTable, PeriodicSignal, exact_table


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------
# shared helpers
# --------------------------------------------------------------------------


def emit_grid(f: Callable, M: int, out: Optional[str], period: float = 1.0) -> str:
    """``x,value`` CSV of ``f`` on ``M`` uniform points of one period."""
    if M < 2:
        raise ValueError("grid needs M >= 2")
    x = period * np.arange(M) / M
    v = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
    text = csv_text(["x", "value"], zip(x.tolist(), v.tolist()))
    write_text(out, text)
    return text


def table_rows(t: CoefficientTable):
    return [(int(k), float(c.real), float(c.imag)) for k, c in zip(t.ks, t.values)]


def read_table(path: str) -> CoefficientTable:
    arr = read_csv(path, ["k", "re", "im"])
    ks = arr[:, 0].astype(int)
    K = int(np.max(np.abs(ks)))
    vals = np.zeros(2 * K + 1, dtype=complex)
    vals[ks + K] = arr[:, 1] + 1j * arr[:, 2]
    try:
        return CoefficientTable(K, vals, True)
    except ValueError:
        return CoefficientTable(K, vals, False)


def _floats(s: str) -> list[float]:
    try:
        return [float(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {s!r}") from None


def _signal_from_args(a) -> PeriodicSignal:
    if a.waveform:
        return PeriodicSignal.from_catalog(a.waveform, a.period)
    vals = read_csv(a.samples, ["value"])[:, 0]
    return PeriodicSignal.from_samples(vals, a.period)


def _table_from_args(a, K: int) -> CoefficientTable:
    if getattr(a, "coeffs", None):
        t = read_table(a.coeffs)
        return t if t.kmax >= K else t.pad(K)
    if getattr(a, "waveform", None):
        return exact_table(CATALOG[a.waveform], K)
    raise UsageError("give --coeffs or --waveform")


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_coeffs(a):
    sig = _signal_from_args(a)
    t = sig.coefficients(a.kmax, a.nodes)
    write_text(a.out, csv_text(["k", "re", "im"], table_rows(t)))


def cmd_sum(a):
    K = a.order if a.method != "cesaro" else a.order - 1
    if a.method == "abel":
        if not 0 <= a.r < 1:
            raise UsageError("--r must lie in [0, 1)")
        K = summation.abel_truncation(a.r)
    t = _table_from_args(a, max(K, 0))
    if a.method == "partial":
        f = lambda x: summation.partial_sum(t, a.order, x)
    elif a.method == "cesaro":
        f = lambda x: summation.cesaro_mean(t, a.order, x)
    elif a.method == "abel":
        f = lambda x: summation.abel_mean(t, a.r, x)
    else:
        f = lambda x: summation.conjugate_sum(t, a.order, x)
    emit_grid(f, a.grid, a.out)


def cmd_gibbs(a):
    rep = summation.gibbs_measure(a.waveform, a.n, a.jump_index, a.probes)
    write_text(a.out, json_text(rep.to_dict()))


def cmd_kernel(a):
    spec = kernels.KernelSpec(a.kind, a.param)
    emit_grid(lambda x: kernels.kernel_eval(spec, x), a.grid, a.out)


def cmd_fft(a):
    if a.input:
        arr = read_csv(a.input, ["j", "re", "im"])
        order = np.argsort(arr[:, 0])
        x = arr[order, 1] + 1j * arr[order, 2]
        if not np.array_equal(arr[order, 0], np.arange(x.size)):
            raise UsageError("sample indices j must be 0..N-1")
    else:
        if a.n is None:
            raise UsageError("give --in or --n")
        x = np.exp(2j * np.pi * np.arange(a.n) / a.n) + 0.5  # a fixed test signal
    N = x.size
    if a.n is not None and a.n != N:
        raise UsageError(f"--n {a.n} does not match {N} samples")
    if a.factors:
        factors = tuple(int(v) for v in _floats(a.factors))
        plan = transforms.DftPlan(N, factors)
    else:
        plan = transforms.DftPlan.auto(N)
    counter = transforms.OpCounter()
    C = transforms.fft_gauss(x, plan, counter)
    write_text(a.out, csv_text(["k", "re", "im"], [(h, c.real, c.imag) for h, c in enumerate(C)]))
    if a.report:
        direct = transforms.direct_ops(N)
        write_text(
            a.report,
            json_text(
                {
                    "N": N,
                    "factors": ",".join(str(f) for f in plan.factors),
                    "multiply_adds": counter.multiply_adds,
                    "direct_multiply_adds": direct,
                    "direct_n_squared": N * N,
                    "ratio_vs_n_squared": N * N / max(counter.multiply_adds, 1),
                }
            ),
        )


def cmd_tide(a):
    arr = read_csv(a.input, ["t", "h"])
    t, h = arr[:, 0], arr[:, 1]
    if np.any(np.diff(t) <= 0):
        raise UsageError("times must be strictly increasing")
    T = a.T if a.T is not None else float(t[-1] - t[0])
    model = transforms.tide_extract(lambda s: np.interp(s, t, h), _floats(a.freqs), T, a.nodes, float(t[0]))
    rows = [(w, c.real, c.imag, b) for w, c, b in zip(model.frequencies, model.amplitudes, model.error_bound)]
    write_text(a.out, csv_text(["frequency", "re", "im", "bound"], rows))


def cmd_special(a):
    args = _floats(a.args) if a.args else []

    def need(n):
        if len(args) != n:
            raise UsageError(f"--fn {a.fn} takes {n} argument(s) in --args")

    rec: dict = {"fn": a.fn}
    if a.fn == "besselj":
        need(2)
        ev = special.bessel_eval(int(args[0]), args[1])
        rec.update(order=ev.order, x=args[1], value=ev.value, truncation=ev.truncation)
    elif a.fn == "cheb":
        need(2)
        rec.update(m=int(args[0]), x=args[1], value=special.chebyshev_t(int(args[0]), args[1]))
    elif a.fn == "legendre":
        need(2)
        rec.update(k=int(args[0]), x=args[1], value=special.legendre(int(args[0]), args[1]))
    elif a.fn == "haar":
        need(3)
        rec.update(k=int(args[0]), n=int(args[1]), x=args[2], value=special.haar(int(args[0]), int(args[1]), args[2]))
    elif a.fn == "wrapped":
        need(1)
        w = special.WrappedGaussian()
        rec.update(x=args[0], value=w.pdf(args[0]), value_frequency=w.pdf_frequency(args[0]), cdf=w.cdf(args[0] % 1.0))
    elif a.fn == "j0zeros":
        need(1)
        for i, z in enumerate(special.j0_zeros(int(args[0])), 1):
            rec[f"zero_{i}"] = float(z)
    else:
        rep = special.constants_suite()
        rec.update({k: v for k, v in vars(rep).items() if not isinstance(v, tuple)})
    write_text(a.out, json_text(rec))


def cmd_filter(a):
    t = _table_from_args(a, a.kmax)
    if a.mode == "lowpass":
        out = signal_apps.lowpass(t, int(a.param))
    elif a.mode == "threshold":
        out = signal_apps.threshold_denoise(t, a.param)
    else:
        out = signal_apps.gw_smooth(t, a.param)
    write_text(a.out, csv_text(["k", "re", "im"], table_rows(out)))


def cmd_edge(a):
    t = _table_from_args(a, a.n)
    rows = signal_apps.edge_detect(t, a.n, a.grid)
    write_text(a.out, csv_text(["x", "E"], rows))


def cmd_fm(a):
    model = signal_apps.fm_sidebands(a.eps, a.omega, a.omega_p, a.kmax)
    rows = [(f, c.real) for f, c in zip(model.frequencies, model.amplitudes)]
    write_text(a.out, csv_text(["frequency", "amplitude"], rows))


HEAT_DATA = {
    "parabola": lambda x, l: x * (l - x),
    "sine": lambda x, l: np.sin(np.pi * x / l),
    "tent": lambda x, l: np.minimum(x, l - x),
}


def cmd_heat(a):
    f = HEAT_DATA[a.datum]
    prob = pde.HeatProblem.from_datum(lambda x: f(x, a.length), a.length, a.K, a.nodes)
    x = np.linspace(0, a.length, a.grid)
    rows = []
    for t in _floats(a.times):
        u = pde.heat_solve(prob, x, t)
        rows.extend((xi, t, ui) for xi, ui in zip(x.tolist(), np.atleast_1d(u).tolist()))
    write_text(a.out, csv_text(["x", "t", "u"], rows))


def cmd_cellar(a):
    d = pde.cellar_design(pde.CellarSpec(a.diffusivity, a.period, a.amplitude, a.phase))
    write_text(a.out, json_text({"depth": d.depth, "damping": d.damping, "annual_oscillation": d.annual_oscillation}))


def cmd_disk(a):
    sig = PeriodicSignal.from_catalog(a.waveform)
    n = a.grid
    x = np.linspace(-1, 1, n)
    X, Y = np.meshgrid(x, x, indexing="ij")
    inside = np.hypot(X, Y) < a.rmax
    u = pde.disk_dirichlet_xy(sig, X[inside], Y[inside])
    write_text(a.out, csv_text(["x", "y", "u"], zip(X[inside].tolist(), Y[inside].tolist(), np.atleast_1d(u).tolist())))


def cmd_square(a):
    n = a.grid
    x = np.linspace(0, 1, n)
    y = np.linspace(0, 1, n)[:-1]  # the top side is excluded
    X, Y = np.meshgrid(x, y, indexing="ij")
    u = pde.square_dirichlet(X, Y, a.K)
    write_text(a.out, csv_text(["x", "y", "u"], zip(X.ravel().tolist(), Y.ravel().tolist(), u.ravel().tolist())))


def cmd_membrane(a):
    lam = float(special.j0_zeros(a.zero)[-1])
    m = pde.MembraneMode(a.c, lam)
    r = np.linspace(0, 1, a.grid)
    rows = []
    for t in _floats(a.times):
        u = pde.membrane_mode(m, r, t)
        rows.extend((ri, t, ui) for ri, ui in zip(r.tolist(), np.atleast_1d(u).tolist()))
    write_text(a.out, csv_text(["x", "t", "u"], rows))


def _disk_mask(x, y):
    return (x * x + y * y < 1).astype(float)


PHANTOMS = {
    "paraboloid": lambda x, y: np.clip(1 - x * x - y * y, 0, None),
    "gaussian": lambda x, y: np.exp(-(x * x + y * y) / 0.1) * _disk_mask(x, y),
    "offset_gaussian": lambda x, y: np.exp(-((x - 0.2) ** 2 + (y - 0.1) ** 2) / 0.2) * _disk_mask(x, y),
    "disk": _disk_mask,
    "zero": lambda x, y: np.zeros(np.broadcast(x, y).shape),
}


def cmd_radon(a):
    if a.action == "forward":
        s = geo.Sinogram.from_density(PHANTOMS[a.phantom], a.np, a.nphi, 1.0, a.nodes)
        write_text(a.out, csv_text(["p", "phi", "value"], s.to_rows()))
        return
    if not a.input:
        raise UsageError("radon invert needs --in sinogram.csv")
    s = geo.Sinogram.from_rows(read_csv(a.input, ["p", "phi", "value"]))
    tau = np.linspace(a.tau_min, a.tau_max, a.ntau)
    pc = geo.radon_invert(s, tau, a.modes)
    theta = 2 * np.pi * np.arange(a.ntheta) / a.ntheta
    F = pc.synthesize(theta)
    T, TH = np.meshgrid(tau, theta, indexing="ij")
    rows = zip((T * np.cos(TH)).ravel().tolist(), (T * np.sin(TH)).ravel().tolist(), F.ravel().tolist())
    write_text(a.out, csv_text(["x", "y", "u"], rows))


def _curve(a):
    if a.curve == "circle":
        return geo.CurveFourier.circle(a.a), 2 * np.pi * a.a
    if a.curve == "ellipse":
        c = geo.CurveFourier.ellipse(a.a, a.b)
        return c, geo.arclength(c, c.derivative)
    return geo.Polyline.segment(0, a.a), a.a


def cmd_crofton(a):
    curve, exact = _curve(a)
    est = geo.crofton_length(curve, a.p_nodes, a.phi_nodes)
    write_text(a.out, json_text({"curve": a.curve, "estimate": est, "reference_length": exact}))


def cmd_buffon(a):
    r = geo.buffon_sim(a.ell, a.tosses, a.seed)
    write_text(a.out, json_text(vars(r)))


def cmd_epicycle(a):
    if a.input:
        z = read_csv(a.input, ["x", "y"])
    else:
        t = np.arange(a.samples) / a.samples
        z = a.a * np.cos(2 * np.pi * t) + 1j * a.b * np.sin(2 * np.pi * t)
    c = geo.curve_fourier_fit(z, a.K)
    g = c.geometry()
    write_text(a.out, json_text({"K": a.K, "length": g.length, "area": g.area, "defect": g.defect}))
    if a.coeffs_out:
        write_text(a.coeffs_out, csv_text(["k", "re", "im"], [(int(k), v.real, v.imag) for k, v in zip(c.ks, c.gamma)]))


def cmd_weyl(a):
    r = geo.weyl_count(a.gamma, a.a, a.b, a.K)
    write_text(a.out, json_text({"gamma": r.gamma, "a": r.a, "b": r.b, "K": r.K, "count": r.count, "ratio": r.ratio}))


def cmd_clt(a):
    r = geo.circle_clt(a.sampler, a.n, a.draws, a.seed)
    write_text(a.out, json_text({"sampler": r.sampler, "N": r.N, "draws": r.draws, "distance": r.distance}))
    if a.cdf_out:
        write_text(a.cdf_out, csv_text(["x", "value"], zip(r.grid.tolist(), r.empirical_cdf.tolist())))


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _gamma(s: str) -> float:
    # accepts plain floats and sqrt(n)
    s = s.strip()
    if s.startswith("sqrt(") and s.endswith(")"):
        return math.sqrt(float(s[5:-1]))
    return float(s)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fourierlab", description="Fourier series, transforms and their applications.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--out", default=None, help="output path (stdout if omitted)")
        return sp

    waveforms = sorted(CATALOG)

    sp = add("coeffs", cmd_coeffs, "Fourier coefficient table as k,re,im CSV")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--waveform", choices=waveforms)
    g.add_argument("--samples", help="CSV with a 'value' column sampled uniformly over one period")
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--period", type=float, default=1.0)
    sp.add_argument("--nodes", type=int, default=None)

    sp = add("sum", cmd_sum, "partial / Cesaro / Abel / conjugate sums on a grid")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--coeffs")
    g.add_argument("--waveform", choices=waveforms)
    sp.add_argument("--method", choices=["partial", "cesaro", "abel", "conjugate"], default="partial")
    sp.add_argument("--order", type=int, default=10)
    sp.add_argument("--r", type=float, default=0.9)
    sp.add_argument("--grid", type=int, default=512)

    sp = add("gibbs", cmd_gibbs, "Gibbs overshoot report (JSON)")
    sp.add_argument("--waveform", choices=[w for w in waveforms if CATALOG[w].jumps], required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--jump-index", type=int, default=0)
    sp.add_argument("--probes", type=int, default=10_000)

    sp = add("kernel", cmd_kernel, "kernel values on a grid")
    sp.add_argument("--kind", choices=list(kernels.KINDS), required=True)
    sp.add_argument("--param", type=float, required=True)
    sp.add_argument("--grid", type=int, default=1024)

    sp = add("fft", cmd_fft, "discrete Fourier coefficients by the factorized scheme")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--factors", default=None)
    sp.add_argument("--in", dest="input", default=None)
    sp.add_argument("--report", default=None)

    sp = add("tide", cmd_tide, "harmonic amplitudes at known angular frequencies")
    sp.add_argument("--in", dest="input", required=True, help="CSV with t,h columns")
    sp.add_argument("--freqs", required=True)
    sp.add_argument("--T", type=float, default=None)
    sp.add_argument("--nodes", type=int, default=None)

    sp = add("special", cmd_special, "special functions and constants (JSON)")
    sp.add_argument("--fn", choices=["besselj", "cheb", "legendre", "haar", "wrapped", "j0zeros", "constants"], required=True)
    sp.add_argument("--args", default="")

    sp = add("filter", cmd_filter, "low-pass, threshold or Gauss-Weierstrass filtering of a table")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--coeffs")
    g.add_argument("--waveform", choices=waveforms)
    sp.add_argument("--kmax", type=int, default=64)
    sp.add_argument("--mode", choices=["lowpass", "threshold", "gw"], required=True)
    sp.add_argument("--param", type=float, required=True)

    sp = add("edge", cmd_edge, "edge detector values as x,E CSV")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--coeffs")
    g.add_argument("--waveform", choices=waveforms)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--grid", type=int, default=4096)

    sp = add("fm", cmd_fm, "sideband amplitudes of a frequency-modulated tone")
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--omega", type=float, required=True)
    sp.add_argument("--omega-p", type=float, required=True)
    sp.add_argument("--kmax", type=int, default=10)

    sp = add("heat", cmd_heat, "heat equation on a rod, x,t,u CSV")
    sp.add_argument("--datum", choices=sorted(HEAT_DATA), default="parabola")
    sp.add_argument("--length", type=float, default=1.0)
    sp.add_argument("--K", type=int, default=200)
    sp.add_argument("--nodes", type=int, default=4096)
    sp.add_argument("--grid", type=int, default=101)
    sp.add_argument("--times", default="0,0.01,0.05,0.1")

    sp = add("cellar", cmd_cellar, "cellar depth design (JSON)")
    sp.add_argument("--diffusivity", type=float, default=pde.SOIL_DIFFUSIVITY)
    sp.add_argument("--period", type=float, default=pde.YEAR_SECONDS)
    sp.add_argument("--amplitude", type=float, default=37.0)
    sp.add_argument("--phase", type=float, default=math.pi)

    sp = add("disk", cmd_disk, "Dirichlet problem in the unit disk, x,y,u CSV")
    sp.add_argument("--waveform", choices=waveforms, default="square")
    sp.add_argument("--grid", type=int, default=51)
    sp.add_argument("--rmax", type=float, default=0.99)

    sp = add("square", cmd_square, "Dirichlet problem in the unit square, x,y,u CSV")
    sp.add_argument("--grid", type=int, default=51)
    sp.add_argument("--K", type=int, default=None)

    sp = add("membrane", cmd_membrane, "radial drum mode, x,t,u CSV (x is the radius)")
    sp.add_argument("--zero", type=int, default=1, help="which zero of J0 (1..10)")
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--grid", type=int, default=101)
    sp.add_argument("--times", default="0,0.5,1")

    sp = add("radon", cmd_radon, "Radon transform: forward sinogram or inversion")
    sp.add_argument("action", choices=["forward", "invert"])
    sp.add_argument("--phantom", choices=sorted(PHANTOMS), default="paraboloid")
    sp.add_argument("--np", type=int, default=201)
    sp.add_argument("--nphi", type=int, default=64)
    sp.add_argument("--nodes", type=int, default=1024)
    sp.add_argument("--in", dest="input", default=None)
    sp.add_argument("--tau-min", type=float, default=0.1)
    sp.add_argument("--tau-max", type=float, default=0.8)
    sp.add_argument("--ntau", type=int, default=71)
    sp.add_argument("--ntheta", type=int, default=32)
    sp.add_argument("--modes", type=int, default=None)

    sp = add("crofton", cmd_crofton, "curve length from line intersection counts (JSON)")
    sp.add_argument("--curve", choices=["circle", "ellipse", "segment"], default="circle")
    sp.add_argument("--a", type=float, default=1.0, help="radius, semi-axis or segment length")
    sp.add_argument("--b", type=float, default=0.5)
    sp.add_argument("--p-nodes", type=int, default=2000)
    sp.add_argument("--phi-nodes", type=int, default=720)

    sp = add("buffon", cmd_buffon, "Buffon needle simulation (JSON)")
    sp.add_argument("--ell", type=float, default=1.0)
    sp.add_argument("--tosses", type=int, default=10**6)
    sp.add_argument("--seed", type=int, required=True)

    sp = add("epicycle", cmd_epicycle, "Fourier fit of a closed curve; length, area, defect (JSON)")
    sp.add_argument("--in", dest="input", default=None, help="CSV with x,y columns")
    sp.add_argument("--K", type=int, default=16)
    sp.add_argument("--samples", type=int, default=256)
    sp.add_argument("--a", type=float, default=1.0)
    sp.add_argument("--b", type=float, default=0.5)
    sp.add_argument("--coeffs-out", default=None)

    sp = add("weyl", cmd_weyl, "equidistribution count of {gamma k} (JSON)")
    sp.add_argument("--gamma", type=_gamma, default=math.sqrt(2))
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--K", type=int, default=10**6)

    sp = add("clt", cmd_clt, "central limit theorem on the circle (JSON)")
    sp.add_argument("--sampler", choices=sorted(geo.SAMPLERS), default="uniform")
    sp.add_argument("--n", type=int, default=64)
    sp.add_argument("--draws", type=int, default=10**5)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--cdf-out", default=None)

    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        thread_count()  # validate the environment before doing any work
        args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError, np.linalg.LinAlgError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
