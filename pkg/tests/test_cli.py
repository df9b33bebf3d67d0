import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from fourierlab.cli import emit_grid, main, read_table
from fourierlab.kernels import dirichlet, kernel_eval
from fourierlab.periodic import exact_table
from fourierlab.summation import partial_sum


def rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def run(*argv) -> int:
    return main([str(a) for a in argv])


def test_coeffs_square(tmp_path):
    out = tmp_path / "c.csv"
    assert run("coeffs", "--waveform", "square", "--kmax", 8, "--out", out) == 0
    r = rows(out)
    assert r[0] == ["k", "re", "im"]
    assert len(r) == 1 + 17
    one = next(row for row in r[1:] if row[0] == "1")
    assert one == ["1", "0", "-0.63661977236758138"]
    assert float(one[2]) == -2 / math.pi


def test_gibbs_report(tmp_path):
    out = tmp_path / "g.json"
    assert run("gibbs", "--waveform", "square", "--n", 200, "--out", out) == 0
    rep = json.loads(out.read_text())
    assert set(rep) == {"jump_location", "jump_size", "measured_overshoot", "reference_overshoot", "probe_value"}
    assert abs(rep["measured_overshoot"] - 0.17898) < 0.005
    assert all(not isinstance(v, (dict, list)) for v in rep.values())


def test_unknown_flag_exits_2_without_output(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert run("coeffs", "--waveform", "square", "--kmax", 8, "--bogus", 1, "--out", out) == 2
    assert not out.exists()
    assert list(tmp_path.iterdir()) == []
    assert run("no-such-command") == 2
    assert run("gibbs", "--waveform", "square", "--n", 10, "--out", out) == 2  # N below the Gibbs floor
    assert not out.exists()


def test_emit_grid_constant(tmp_path):
    out = tmp_path / "g.csv"
    emit_grid(lambda x: 1.0, 4, str(out))
    r = rows(out)
    assert r[0] == ["x", "value"] and len(r) == 5
    assert [float(v) for _, v in r[1:]] == [1.0] * 4
    assert [float(x) for x, _ in r[1:]] == [0, 0.25, 0.5, 0.75]
    with pytest.raises(ValueError):
        emit_grid(lambda x: x, 1, None)


def test_kernel_grid_matches_library(tmp_path):
    out = tmp_path / "d5.csv"
    assert run("kernel", "--kind", "dirichlet", "--param", 5, "--grid", 200, "--out", out) == 0
    arr = np.array(rows(out)[1:], dtype=float)
    assert np.array_equal(arr[:, 1], kernel_eval(dirichlet(5), arr[:, 0]))
    assert arr[0, 1] == 11


def test_partial_sum_grid_matches_library(tmp_path):
    out = tmp_path / "s50.csv"
    assert run("sum", "--waveform", "square", "--order", 50, "--grid", 1000, "--out", out) == 0
    arr = np.array(rows(out)[1:], dtype=float)
    ref = partial_sum(exact_table("square", 50), 50, arr[:, 0])
    assert np.array_equal(arr[:, 1], ref)
    assert 1.17 < arr[:, 1].max() < 1.19  # the overshoot next to the jump


def test_coeffs_round_trip_through_sum(tmp_path):
    c = tmp_path / "c.csv"
    s1, s2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run("coeffs", "--waveform", "sawtooth", "--kmax", 30, "--out", c) == 0
    t = read_table(str(c))
    assert np.array_equal(t.values, exact_table("sawtooth", 30).values)
    assert run("sum", "--coeffs", c, "--order", 30, "--method", "cesaro", "--grid", 64, "--out", s1) == 0
    assert run("sum", "--waveform", "sawtooth", "--order", 30, "--method", "cesaro", "--grid", 64, "--out", s2) == 0
    assert s1.read_bytes() == s2.read_bytes()


def test_seeded_commands_are_byte_identical(tmp_path, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("buffon", "--ell", 0.7, "--tosses", 100000, "--seed", 5, "--out", a) == 0
    monkeypatch.setenv("FOURIERLAB_THREADS", "4")
    assert run("buffon", "--ell", 0.7, "--tosses", 100000, "--seed", 5, "--out", b) == 0
    assert a.read_bytes() == b.read_bytes()
    c1, c2 = tmp_path / "c1.csv", tmp_path / "c2.csv"
    assert run("clt", "--n", 8, "--draws", 5000, "--seed", 1, "--out", tmp_path / "r1.json", "--cdf-out", c1) == 0
    assert run("clt", "--n", 8, "--draws", 5000, "--seed", 1, "--out", tmp_path / "r2.json", "--cdf-out", c2) == 0
    assert c1.read_bytes() == c2.read_bytes()
    assert (tmp_path / "r1.json").read_bytes() == (tmp_path / "r2.json").read_bytes()


def test_seed_is_required(tmp_path):
    assert run("buffon", "--ell", 0.5, "--out", tmp_path / "x.json") == 2


@pytest.mark.parametrize("value", ["0", "-2", "many", "1.5"])
def test_thread_variable_validated(tmp_path, monkeypatch, value):
    monkeypatch.setenv("FOURIERLAB_THREADS", value)
    out = tmp_path / "c.csv"
    assert run("coeffs", "--waveform", "square", "--kmax", 2, "--out", out) == 2
    assert not out.exists()


SMOKE = [
    ["coeffs", "--waveform", "triangular", "--kmax", 4],
    ["sum", "--waveform", "square", "--method", "abel", "--r", 0.9, "--grid", 16],
    ["sum", "--waveform", "square", "--method", "conjugate", "--order", 5, "--grid", 16],
    ["kernel", "--kind", "poisson", "--param", 0.5, "--grid", 8],
    ["fft", "--n", 12, "--factors", "3,4"],
    ["special", "--fn", "besselj", "--args", "0,2.5"],
    ["special", "--fn", "j0zeros", "--args", "3"],
    ["special", "--fn", "constants"],
    ["special", "--fn", "wrapped", "--args", "0.3"],
    ["filter", "--waveform", "square", "--mode", "lowpass", "--param", 5, "--kmax", 16],
    ["edge", "--waveform", "square", "--n", 32, "--grid", 64],
    ["fm", "--eps", 1, "--omega", 5, "--omega-p", 1],
    ["heat", "--K", 20, "--grid", 11, "--times", "0,0.1"],
    ["cellar"],
    ["disk", "--grid", 5],
    ["square", "--grid", 5],
    ["membrane", "--grid", 5, "--times", "0,1"],
    ["radon", "forward", "--np", 11, "--nphi", 8, "--nodes", 64],
    ["crofton", "--curve", "segment", "--a", 0.7, "--p-nodes", 200, "--phi-nodes", 90],
    ["epicycle", "--K", 4, "--samples", 32],
    ["weyl", "--gamma", "sqrt(2)", "--a", 0.25, "--b", 0.5, "--K", 1000],
    ["clt", "--n", 4, "--draws", 2000, "--seed", 3],
]


@pytest.mark.parametrize("argv", SMOKE, ids=lambda a: " ".join(map(str, a[:3])))
def test_every_subcommand_runs(tmp_path, argv):
    out = tmp_path / "out.txt"
    assert run(*argv, "--out", out) == 0
    assert out.stat().st_size > 0


def test_cellar_report(tmp_path):
    out = tmp_path / "c.json"
    assert run("cellar", "--amplitude", 104, "--out", out) == 0
    rep = json.loads(out.read_text())
    assert abs(rep["depth"] - 445) < 1
    assert abs(rep["annual_oscillation"] - 104 * math.exp(-math.pi)) < 1e-10


def test_radon_round_trip_via_files(tmp_path):
    sino, field = tmp_path / "s.csv", tmp_path / "f.csv"
    assert run("radon", "forward", "--out", sino) == 0
    r = rows(sino)
    assert r[0] == ["p", "phi", "value"] and len(r) == 1 + 201 * 64
    assert run("radon", "invert", "--in", sino, "--ntau", 15, "--ntheta", 8, "--out", field) == 0
    arr = np.array(rows(field)[1:], dtype=float)
    rho = np.hypot(arr[:, 0], arr[:, 1])
    assert np.max(np.abs(arr[:, 2] - (1 - rho**2))) < 1e-2


def test_module_entry_point(tmp_path):
    out = tmp_path / "c.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "fourierlab", "coeffs", "--waveform", "sine", "--kmax", "1", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert len(rows(out)) == 4
