import json
import math
import subprocess
import sys

import numpy as np
import pytest

from squeezebounds import cli, report, validation
from squeezebounds.params import ModelParams


def run(*argv):
    import io
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def rows(text):
    return report.read_csv(text)


# ---------------------------------------------------------------- report

def test_report_fields_and_singular():
    r = report.build_report(ModelParams(alpha=1.0))
    assert r.singular and r.cq is None and r.sloppiness is None
    assert r.q11 == 24.0
    r = report.build_report(ModelParams(theta=math.pi / 4, phi=math.pi / 4), z=1.0)
    assert r.cq == pytest.approx(0.25) and r.c_g is not None


def test_csv_round_trip_is_exact():
    spec = report.ScanSpec("phi", 0.0, math.pi / 2, 7, ModelParams(0.4, 0.1, 1.0, 0.3), z=1.5)
    reports = report.scan(spec)
    assert report.read_csv(report.to_csv(reports)) == reports
    assert report.read_json(report.to_json(reports)) == reports
    assert report.read_json(report.to_json(reports[0])) == reports[0]


def test_scan_parallel_matches_serial():
    spec = report.ScanSpec("lambda1", 0.0, 1.5, 9, ModelParams(alpha=1.0, theta=0.5, phi=0.7))
    assert report.scan(spec, jobs=2) == report.scan(spec)


def test_scan_over_z():
    spec = report.ScanSpec("z", 0.5, 2.0, 4, ModelParams(0.3, 0.0, 1.0, 0.0, 0.8))
    out = report.scan(spec)
    assert [r.z for r in out] == pytest.approx([0.5, 1.0, 1.5, 2.0])


@pytest.mark.parametrize("kw", [
    {"axis": "gamma"}, {"count": 1}, {"count": 2.5}, {"start": 1.0, "stop": 0.0},
])
def test_scan_spec_validation(kw):
    base = dict(axis="alpha", start=0.0, stop=1.0, count=3, fixed=ModelParams())
    base.update(kw)
    with pytest.raises(ValueError):
        report.ScanSpec(**base)


def test_format_value():
    assert report.format_value(None) == ""
    assert report.format_value(True) == "true"
    assert report.format_value(0.1) == "0.1"
    assert report.format_value(math.pi, 4) == "3.142"


# ---------------------------------------------------------------- cli

def test_bounds_example():
    code, out, _ = run("bounds", "--lambda1", "0", "--alpha", "0",
                       "--theta", "0.7853981634", "--phi", "0.7853981634")
    assert code == 0
    (r,) = rows(out)
    assert r.cq == pytest.approx(0.25, rel=1e-9)
    assert r.quantumness == pytest.approx(1.0, rel=1e-9)
    assert r.t_identity == pytest.approx(0.70711, abs=1e-5)
    assert r.c_sep_min_1 == pytest.approx(0.5, rel=1e-9)


def test_bounds_singular_json():
    code, out, _ = run("bounds", "--phi", "0", "--alpha", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["singular"] is True
    assert data["sloppiness"] is None and data["quantumness"] is None and data["cq"] is None
    assert data["q11"] == 24.0


def test_pi_fraction_angles():
    assert cli.parse_angle("pi/4") == pytest.approx(math.pi / 4)
    assert cli.parse_angle("-3*pi/8") == pytest.approx(-3 * math.pi / 8)
    assert cli.parse_angle("2pi") == pytest.approx(2 * math.pi)
    assert cli.parse_angle("0.5") == 0.5
    _, a, _ = run("bounds", "--theta", "pi/4", "--phi", "pi/4")
    _, b, _ = run("bounds", "--theta", repr(math.pi / 4), "--phi", repr(math.pi / 4))
    assert a == b


def test_scan_vacuum_quantumness_constant():
    code, out, _ = run("scan", "--axis", "lambda1", "--start", "0", "--stop", "1.5",
                       "--count", "16", "--theta", "pi/4", "--phi", "pi/4")
    assert code == 0
    assert all(r.quantumness == pytest.approx(1.0, abs=1e-12) for r in rows(out))


def test_scan_trends_at_unit_amplitude():
    _, out, _ = run("scan", "--axis", "lambda1", "--start", "0", "--stop", "1.5",
                    "--count", "16", "--alpha", "1", "--theta", "pi/4", "--phi", "pi/4")
    rs = rows(out)
    for name in ("cq", "bracket_t", "bracket_r"):
        assert np.all(np.diff([getattr(r, name) for r in rs]) < 0)
    gap = [(r.bracket_r - r.cq) / r.cq for r in rs]
    assert np.all(np.diff(gap) <= 1e-12)


def test_scan_count_two():
    _, out, _ = run("scan", "--axis", "alpha", "--start", "0", "--stop", "1", "--count", "2")
    lines = out.splitlines()
    assert len(lines) == 3 and lines[0].startswith("lambda1,")


def test_scan_is_deterministic():
    argv = ("scan", "--axis", "phi", "--start", "0", "--stop", "pi/2", "--count", "11",
            "--alpha", "1.5", "--lambda1", "0.4", "--z", "1.2")
    assert run(*argv) == run(*argv)
    assert run(*argv)[1] == run(*argv, "--jobs", "2")[1]


@pytest.mark.parametrize("argv", [
    ("bounds", "--alpha", "-1"),
    ("bounds", "--alpha", "nan"),
    ("bounds", "--theta", "pie/4"),
    ("bounds", "--weight", "1,2,3"),
    ("scan", "--axis", "alpha", "--start", "1", "--stop", "0", "--count", "3"),
    ("scan", "--axis", "alpha", "--start", "0", "--stop", "1", "--count", "1"),
    ("generaldyne", "--z", "0"),
    ("frobnicate",),
])
def test_invalid_arguments_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        run(*argv)
    assert exc.value.code == 2


def test_validate_truncation_failure_exit_3():
    code, _, err = run("validate", "--dim", "8", "--no-adapt", "--lambda1", "1.5")
    assert code == 3
    assert "truncation" in err


def test_validate_small_grid_passes():
    code, out, _ = run("validate", "--grid-points", "2")
    assert code == 0
    assert "PASS" in out


def test_generaldyne_examples():
    code, out, _ = run("generaldyne", "--alpha", "0", "--lambda1", "0", "--theta", "0",
                       "--phi", "0.7853981634", "--z", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["f11"] == pytest.approx(1.0) and data["f22"] == pytest.approx(1.0)
    assert abs(data["f12"]) < 1e-9
    assert data["c_g"] == pytest.approx(2.0)


def test_generaldyne_optimize():
    code, out, _ = run("generaldyne", "--optimize", "--lambda1", "0.5", "--lambda2", "0.3",
                       "--alpha", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert abs(data["theta"]) < 1e-4
    assert data["phi"] == pytest.approx(math.pi / 4, abs=1e-4)
    assert data["z"] == pytest.approx(math.exp(0.6), abs=1e-4)


def test_generaldyne_asymptotic_ratio():
    code, out, _ = run("generaldyne", "--optimize", "--asymptotic", "--alpha", "20",
                       "--lambda1", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["c_g_ratio"] == pytest.approx(1.0, abs=0.02)


def test_config_file(tmp_path):
    cfg = tmp_path / "point.cfg"
    cfg.write_text("# optimal scrambler\nalpha = 1\ntheta=pi/4\nphi = pi/4\nlambda-1 = 0.5\n"
                   .replace("lambda-1", "lambda1"))
    _, from_file, _ = run("bounds", "--config", str(cfg))
    _, explicit, _ = run("bounds", "--alpha", "1", "--theta", "pi/4", "--phi", "pi/4",
                         "--lambda1", "0.5")
    assert from_file == explicit
    _, override, _ = run("bounds", "--config", str(cfg), "--alpha", "2")
    assert rows(override)[0].alpha == 2.0


def test_config_file_supplies_required_scan_options(tmp_path):
    cfg = tmp_path / "scan.cfg"
    cfg.write_text("axis=lambda1\nstart=0\nstop=1\ncount=3\n")
    code, out, _ = run("scan", "--config", str(cfg))
    assert code == 0 and len(out.splitlines()) == 4


def test_bad_config_file(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("alpha 1\n")
    with pytest.raises(SystemExit) as exc:
        run("bounds", "--config", str(cfg))
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "squeezebounds", "bounds", "--alpha", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert rows(proc.stdout)[0].q11 == 24.0


# ---------------------------------------------------------------- validation

def test_scaled_error_floor():
    assert validation.scaled_error([1e-9], [0.0]) == pytest.approx(1e-7)
    assert validation.scaled_error([2.0], [1.0]) == pytest.approx(1.0)


def test_make_grid_overrides():
    axes = validation.make_grid(3, lambda1=1.5)
    assert axes["lambda1"] == (1.5,)
    assert len(axes["alpha"]) == 3
    assert validation.make_grid()["phi"] == validation.STANDARD_GRID["phi"]
