"""End-to-end CLI tests running the real entry point in a subprocess.

Checks the published invocations, byte stability of every emitted
format, the sweep CSV round trip, and the error-code contract
(exit 1 with a single "error[code]: ..." line on stderr).
"""

from __future__ import annotations

import math
import subprocess
import sys

import pytest

from arraygain import (
    AngularSpread,
    ArrayGeometry,
    effective_gain,
    effective_gain_value,
    element_pattern_from_gain,
)

_CMD = [sys.executable, "-m", "arraygain"]


def _run(*args, binary=False):
    return subprocess.run(
        _CMD + list(args), capture_output=True, text=not binary, timeout=300
    )


def _lines(result):
    return result.stdout.splitlines()


# --- optimize -----------------------------------------------------------

def test_optimize_strong_spread():
    result = _run(
        "optimize", "--elements", "256", "--element-gain-dbi", "5",
        "--asd-deg", "22", "--zsd-deg", "5",
    )
    assert result.returncode == 0
    lines = _lines(result)
    assert lines[0] == "budget: 256 elements"
    assert "integer optimum: 32 x 8 (256 elements)" in lines
    assert any(line.startswith("continuous optimum: 33.56") for line in lines)
    assert any(line.startswith("upper bound: ") for line in lines)


def test_optimize_zero_spread():
    result = _run(
        "optimize", "--elements", "25", "--element-gain-dbi", "5",
        "--asd-deg", "0", "--zsd-deg", "0",
    )
    assert result.returncode == 0
    lines = _lines(result)
    assert "continuous optimum: none (degenerate spread)" in lines
    assert "integer optimum: 25 x 1 (25 elements)" in lines
    assert "effective gain: 18.979400 dBi" in lines
    assert "nominal gain: 18.979400 dBi" in lines


def test_optimize_eirp_cap():
    result = _run(
        "optimize", "--eirp-dbm", "43", "--element-power-dbm", "10",
        "--element-gain-dbi", "5", "--asd-deg", "9", "--zsd-deg", "1",
    )
    assert result.returncode == 0
    lines = _lines(result)
    assert lines[0] == "budget: 25 elements"
    assert "eirp cap: 43.000000 dBm at 10.000000 dBm per element" in lines


def test_optimize_is_byte_stable():
    args = (
        "optimize", "--elements", "256", "--element-gain-dbi", "5",
        "--asd-deg", "22", "--zsd-deg", "5",
    )
    first = _run(*args, binary=True)
    second = _run(*args, binary=True)
    assert first.stdout == second.stdout
    assert b"\r" not in first.stdout


def test_optimize_csv_winner(tmp_path):
    out = tmp_path / "winner.csv"
    result = _run(
        "optimize", "--elements", "256", "--element-gain-dbi", "5",
        "--asd-deg", "22", "--zsd-deg", "5", "--csv", str(out),
    )
    assert result.returncode == 0
    header, row = out.read_text().splitlines()
    assert header == "rows,cols,effective_gain_dbi,is_optimum"
    assert row.startswith("32,8,") and row.endswith(",1")


# --- sweep --------------------------------------------------------------

def test_sweep_reference_rows():
    result = _run(
        "sweep", "--elements", "256", "--element-gain-dbi", "5",
        "--asd-deg", "14", "--zsd-deg", "0.6",
        "--geometries", "64x4,16x16,1x256",
    )
    assert result.returncode == 0
    assert _lines(result) == [
        "rows,cols,effective_gain_dbi,is_optimum",
        "64,4,25.918410,1",
        "16,16,21.983942,0",
        "1,256,10.124369,0",
    ]


def test_sweep_round_trip_bit_exact():
    result = _run(
        "sweep", "--elements", "256", "--element-gain-dbi", "5",
        "--asd-deg", "14", "--zsd-deg", "0.6",
    )
    assert result.returncode == 0
    rows = _lines(result)[1:]
    assert len(rows) == 256
    element = element_pattern_from_gain(5.0)
    spread = AngularSpread(zsd_rad=math.radians(0.6), asd_rad=math.radians(14.0))
    optima = 0
    for row in rows:
        r, c, gain_text, flag = row.split(",")
        gain = effective_gain_value(element, int(r), int(c), spread)
        assert f"{10.0 * math.log10(gain):.6f}" == gain_text
        optima += flag == "1"
    assert optima == 1


def test_sweep_zero_spread_full_budget_rows_tie():
    result = _run(
        "sweep", "--elements", "16", "--element-gain-dbi", "5",
        "--asd-deg", "0", "--zsd-deg", "0",
    )
    assert result.returncode == 0
    full_budget_gains = set()
    for row in _lines(result)[1:]:
        r, c, gain_text, _ = row.split(",")
        if int(r) * int(c) == 16:
            full_budget_gains.add(gain_text)
    assert len(full_budget_gains) == 1


def test_sweep_out_file_uses_lf(tmp_path):
    out = tmp_path / "sweep.csv"
    result = _run(
        "sweep", "--elements", "32", "--element-gain-dbi", "5",
        "--asd-deg", "10", "--zsd-deg", "2", "--out", str(out),
    )
    assert result.returncode == 0
    data = out.read_bytes()
    assert b"\r" not in data
    assert data.endswith(b"\n")
    assert len(data.splitlines()) == 33


# --- estimate -----------------------------------------------------------

def _forward_csv(path, zsd_sq, asd_sq, shapes=((4, 4), (4, 8), (4, 16), (8, 4), (16, 4))):
    element = element_pattern_from_gain(5.0)
    spread = AngularSpread(
        zsd_rad=math.sqrt(zsd_sq) * element.bw_elev_rad,
        asd_rad=math.sqrt(asd_sq) * element.bw_azim_rad,
    )
    gains = [
        effective_gain(element, ArrayGeometry(r, c), spread).effective_gain_linear
        for r, c in shapes
    ]
    lines = ["rows,cols,tx_power_dbm,rx_power_dbm"]
    for (r, c), gain in zip(shapes, gains):
        rx = -70.0 + 10.0 * math.log10(gain / gains[0])
        lines.append(f"{r},{c},10.0,{rx!r}")
    path.write_text("\n".join(lines) + "\n")


def test_estimate_round_trip(tmp_path):
    csv = tmp_path / "m.csv"
    _forward_csv(csv, zsd_sq=0.0009, asd_sq=0.04)
    result = _run(
        "estimate", str(csv), "--element-gain-dbi", "5", "--predict", "16", "16",
    )
    assert result.returncode == 0
    lines = _lines(result)
    assert lines[0] == "measurements: 5 (baseline index 0)"
    assert "asd pairs: 3 used, 0 skipped" in lines
    assert "zsd pairs: 3 used, 0 skipped" in lines
    assert "normalized asd squared: 0.040000" in lines
    assert "normalized zsd squared: 0.000900" in lines
    assert "absolute asd: 9.113131 deg" in lines
    assert "absolute zsd: 1.366970 deg" in lines
    assert "predicted gain 16x16 vs baseline: 7.442402 dB" in lines


def test_estimate_aperture_scaled_gains(tmp_path):
    csv = tmp_path / "flat.csv"
    lines = ["rows,cols,tx_power_dbm,rx_power_dbm"]
    for r, c in ((4, 4), (4, 8), (8, 4), (8, 8)):
        rx = -70.0 + 10.0 * math.log10(r * c / 16.0)
        lines.append(f"{r},{c},10.0,{rx!r}")
    csv.write_text("\n".join(lines) + "\n")
    result = _run("estimate", str(csv))
    assert result.returncode == 0
    assert "normalized asd squared: 0.000000" in _lines(result)
    assert "normalized zsd squared: 0.000000" in _lines(result)


def test_estimate_unidentifiable_axis(tmp_path):
    csv = tmp_path / "two.csv"
    csv.write_text(
        "rows,cols,tx_power_dbm,rx_power_dbm\n4,4,10.0,-70.0\n4,8,10.0,-67.0\n"
    )
    result = _run("estimate", str(csv))
    assert result.returncode == 1
    assert result.stderr.startswith("error[estimate]: ZSD unidentifiable")


# --- validate -----------------------------------------------------------

def test_validate_reference_scenario_passes():
    args = (
        "validate", "--element-gain-dbi", "8", "--rows", "8", "--cols", "16",
        "--asd-deg", "16", "--zsd-deg", "1", "--realizations", "4000",
    )
    result = _run(*args)
    assert result.returncode == 0
    lines = _lines(result)
    assert lines[0] == "geometry: 8 x 16"
    assert lines[1].startswith("analytic gain: 19.91")
    assert lines[-1] == "PASS"

    again = _run(*args, binary=True)
    assert again.stdout == result.stdout.encode()


def test_validate_zero_spread_is_exact():
    result = _run(
        "validate", "--element-gain-dbi", "5", "--rows", "4", "--cols", "4",
        "--asd-deg", "0", "--zsd-deg", "0", "--realizations", "200",
    )
    assert result.returncode == 0
    lines = _lines(result)
    assert any("delta 0.000000" in line for line in lines)
    assert any("(z 0.000000, limit 3)" in line for line in lines)
    assert lines[-1] == "PASS"


def test_validate_requires_geometry():
    result = _run("validate", "--element-gain-dbi", "5")
    assert result.returncode == 1
    assert result.stderr.startswith("error[scenario]: validate needs a geometry")


# --- scenario files and error paths ------------------------------------

def test_scenario_file_with_flag_overrides(tmp_path):
    scenario = tmp_path / "case.txt"
    scenario.write_text(
        "element_gain_dbi = 5.0\n"
        "n_elements = 256\n"
        "asd_deg = 22.0\n"
        "zsd_deg = 5.0\n"
    )
    plain = _run("optimize", "--scenario", str(scenario))
    assert plain.returncode == 0
    assert "integer optimum: 32 x 8 (256 elements)" in _lines(plain)

    overridden = _run(
        "optimize", "--scenario", str(scenario), "--asd-deg", "14", "--zsd-deg", "0.6",
    )
    assert overridden.returncode == 0
    assert "integer optimum: 85 x 3 (255 elements)" in _lines(overridden)


def test_usage_errors():
    unknown_flag = _run("optimize", "--no-such-flag")
    assert unknown_flag.returncode == 1
    assert unknown_flag.stderr.startswith("error[usage]: ")

    unknown_command = _run("frobnicate")
    assert unknown_command.returncode == 1
    assert unknown_command.stderr.startswith("error[usage]: ")


def test_io_error():
    result = _run("estimate", "/no/such/file.csv")
    assert result.returncode == 1
    assert result.stderr.startswith("error[io]: ")


def test_measurement_error_names_the_line(tmp_path):
    csv = tmp_path / "bad.csv"
    csv.write_text("rows,cols,tx_power_dbm,rx_power_dbm\n4,4,10.0\n")
    result = _run("estimate", str(csv))
    assert result.returncode == 1
    assert result.stderr.startswith("error[measurements]: ")
    assert ":2:" in result.stderr


def test_eirp_error():
    result = _run(
        "optimize", "--eirp-dbm", "0", "--element-power-dbm", "10",
        "--element-gain-dbi", "5",
    )
    assert result.returncode == 1
    assert result.stderr.startswith("error[eirp]: EIRP below single-element emission")


def test_scenario_error():
    result = _run("optimize", "--elements", "16")
    assert result.returncode == 1
    assert result.stderr.startswith("error[scenario]: element description missing")


def test_help_exits_zero():
    result = _run("--help")
    assert result.returncode == 0
    for name in ("optimize", "sweep", "estimate", "validate"):
        assert name in result.stdout
