import json
import subprocess
import sys

import pytest

from ybcollide import export
from ybcollide.cli import main
from ybcollide.scalars import Backend
from ybcollide.states import ChainParams
from ybcollide.transfer import integrals


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_collide_worked_example(capsys):
    code, out, _ = run(capsys, "collide", "--m1", "3", "--m2", "1", "--v1", "0.6", "--v2", "0")
    assert code == 0
    d = json.loads(out)
    assert d["v1p"] == pytest.approx(12 / 37, rel=1e-14)
    assert d["v2p"] == pytest.approx(171 / 221, rel=1e-14)
    assert d["energy_in"] == pytest.approx(4.75, rel=1e-14)
    assert d["energy_out"] == pytest.approx(4.75, rel=1e-14)
    assert d["momentum_out"] == pytest.approx(2.25, rel=1e-14)


def test_collide_exact(capsys):
    code, out, _ = run(capsys, "collide", "--m1", "3", "--m2", "1", "--v1", "3/5", "--v2", "0",
                       "--backend", "rational")
    d = json.loads(out)
    assert (d["v1p"], d["v2p"]) == ("12/37", "171/221")
    assert d["energy_in"] == d["energy_out"] == "19/4"
    assert d["momentum_in"] == d["momentum_out"] == "9/4"


def test_collide_equal_masses_and_fixed_point(capsys):
    _, out, _ = run(capsys, "collide", "--m1", "2", "--m2", "2", "--v1", "0.5", "--v2", "-0.25")
    d = json.loads(out)
    assert (d["v1p"], d["v2p"]) == pytest.approx((-0.25, 0.5))
    _, out, _ = run(capsys, "collide", "--m1", "2", "--m2", "7", "--v1", "0.3", "--v2", "0.3")
    d = json.loads(out)
    assert (d["v1p"], d["v2p"]) == pytest.approx((0.3, 0.3), rel=1e-14)


@pytest.mark.parametrize("argv", [
    ["--v1", "1", "--v2", "0"],
    ["--v1", "0.5", "--v2", "-2.5", "--c", "2"],
    ["--v1", "0.1", "--v2", "0", "--c", "0"],
])
def test_collide_domain_errors(capsys, argv):
    code, _, err = run(capsys, "collide", "--m1", "1", "--m2", "2", *argv)
    assert code == 2 and "error" in err


def test_collide_light_speed_option(capsys):
    code, out, _ = run(capsys, "collide", "--m1", "3", "--m2", "1", "--v1", "1.8", "--v2", "0",
                       "--c", "3")
    assert code == 0
    d = json.loads(out)
    assert d["energy_in"] == pytest.approx(d["energy_out"], rel=1e-14)


def test_spectrum_single_site(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "1", "--x", "2", "--y", "1",
                       "--alpha", "3", "--beta", "1", "--after-steps", "1")
    d = json.loads(out)
    assert code == 0
    assert d["I"] == [pytest.approx(7.5)]
    assert d["leading"] == 2
    assert (d["E"], d["P"], d["H"], d["linear"]) == pytest.approx((9.5, 4.5, 2.5, 7))
    assert all(abs(v) < 1e-12 for v in d["differences"]["I"])
    assert all(abs(d["differences"][k]) < 1e-12 for k in ("E", "P", "H", "linear"))


def test_spectrum_three_sites(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "3", "--seed", "4", "--backend", "rational",
                       "--after-steps", "5")
    d = json.loads(out)
    assert len(d["I"]) == 3 and d["leading"] == 2
    assert d["differences"]["I"] == ["0", "0", "0"]
    assert d["after"]["I"] == d["I"]


def test_spectrum_per_site_masses(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "2", "--alpha", "1,3", "--beta", "2,5",
                       "--x", "1/2,3", "--y", "2,7/3", "--backend", "rational", "--after-steps", "3")
    d = json.loads(out)
    assert code == 0 and d["differences"]["I"] == ["0", "0"]


@pytest.mark.parametrize("argv", [
    ["--n", "2", "--x", "1", "--y", "1,2"],
    ["--n", "1", "--x", "-1", "--y", "1"],
    ["--n", "2", "--alpha", "1,2,3"],
    ["--n", "0"],
    ["--n", "1", "--alpha", "0"],
])
def test_spectrum_invalid_state(capsys, argv):
    code, _, _ = run(capsys, "spectrum", *argv)
    assert code == 2


def test_verify_exact_yb(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--suite", "yb", "--samples", "30", "--seed", "42",
                       "--backend", "rational", "--report", str(report))
    d = json.loads(out)
    assert code == 0 and d["failures"] == [] and d["max_residual"] == "0"
    assert report.read_text() == out


def test_verify_float_all(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "10", "--backend", "float")
    d = json.loads(out)
    assert code == 0 and float(d["max_residual"]) <= 1e-12


def test_verify_negative_control(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--samples", "5", "--negative-control")
    d = json.loads(out)
    assert code == 1
    names = {f["check"] for f in d["failures"]}
    assert "broken map (negative control)" in names
    assert "perturbed face (negative control)" in names


def test_verify_bad_arguments():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_verify_report_is_byte_stable(capsys):
    outs = [run(capsys, "verify", "--suite", "quad", "--samples", "20", "--seed", "3")[1]
            for _ in range(2)]
    assert outs[0] == outs[1]


def test_orbit_files(capsys, tmp_path):
    code, out, _ = run(capsys, "orbit", "--n", "3", "--alpha", "3", "--beta", "1", "--steps", "500",
                       "--seed", "7", "--out", str(tmp_path))
    assert code == 0
    assert json.loads(out)["within_tolerance"]
    header = (tmp_path / "orbit.csv").read_text().splitlines()[0]
    assert header == "step,x1,x2,x3,y1,y2,y3"
    drift = json.loads((tmp_path / "drift.json").read_text())
    assert drift["within_tolerance"]
    assert all(d <= 1e-8 for d in drift["max_relative_drift"].values())
    head, rows = export.read_projection_csv(tmp_path / "projection.csv")
    assert head == ["x1", "x2", "x3"] and len(rows) == 501
    assert "splot 'projection.csv'" in (tmp_path / "plot.gp").read_text()


def test_orbit_zero_steps(capsys, tmp_path):
    run(capsys, "orbit", "--n", "2", "--steps", "0", "--out", str(tmp_path))
    lines = (tmp_path / "orbit.csv").read_text().splitlines()
    assert len(lines) == 2 and lines[1].startswith("0,")


def test_orbit_exact_drift_is_zero(capsys, tmp_path):
    run(capsys, "orbit", "--n", "2", "--backend", "rational", "--steps", "30", "--seed", "1",
        "--out", str(tmp_path))
    drift = json.loads((tmp_path / "drift.json").read_text())
    assert set(drift["max_relative_drift"].values()) == {"0"}
    assert drift["within_tolerance"]


def test_orbit_exact_horizon_is_capped(capsys, tmp_path):
    code, _, err = run(capsys, "orbit", "--backend", "rational", "--steps", "1001",
                       "--out", str(tmp_path))
    assert code == 2 and "capped" in err


@pytest.mark.parametrize("backend", ["float", "rational"])
def test_orbit_csv_round_trip_reproduces_drift(capsys, tmp_path, backend):
    run(capsys, "orbit", "--n", "3", "--steps", "25", "--stride", "4", "--backend", backend,
        "--out", str(tmp_path))
    b = Backend(backend)
    steps, states = export.read_orbit_csv(tmp_path / "orbit.csv", b)
    assert steps == [0, 4, 8, 12, 16, 20, 24, 25]
    params = ChainParams.autonomous(b.coerce("3"), b.coerce("1"), 3)
    rec = export.OrbitRecorder()
    for k, s in zip(steps, states):
        rec(k, s, integrals(s, params))
    again = export.dumps(export.drift_report(rec, b, params, 1e-8))
    assert again == (tmp_path / "drift.json").read_text()


def test_orbit_is_byte_stable(capsys, tmp_path):
    for sub in ("a", "b"):
        run(capsys, "orbit", "--n", "3", "--steps", "50", "--seed", "2", "--out", str(tmp_path / sub))
    for name in ("orbit.csv", "drift.json", "projection.csv", "plot.gp"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_orbit_config_file(capsys, tmp_path):
    cfg = tmp_path / "scenario.json"
    cfg.write_text(json.dumps({"n": 2, "alpha": "2", "beta": [1, 3], "x": ["1/2", "3"],
                               "y": ["2", "5/3"], "steps": 10, "projection": ["x1", "y1", "y2"]}))
    code, _, _ = run(capsys, "orbit", "--config", str(cfg), "--steps", "12", "--out", str(tmp_path))
    assert code == 0
    steps, states = export.read_orbit_csv(tmp_path / "orbit.csv", Backend.FLOAT)
    assert steps[-1] == 12 and states[0].x == (0.5, 3.0)
    assert (tmp_path / "projection.csv").read_text().startswith("x1,y1,y2\n")


@pytest.mark.parametrize("argv", [
    ["--projection", "x1,x2"],
    ["--projection", "x1,x2,z9"],
    ["--steps", "-1"],
    ["--stride", "0"],
])
def test_orbit_invalid_config(capsys, tmp_path, argv):
    code, _, _ = run(capsys, "orbit", "--n", "3", "--steps", "3", *argv, "--out", str(tmp_path))
    assert code == 2


def test_unknown_config_keys(capsys, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"n": 2, "colour": "red"}))
    code, _, _ = run(capsys, "orbit", "--config", str(cfg), "--out", str(tmp_path))
    assert code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ybcollide", "collide", "--m1", "3", "--m2", "1",
                          "--v1", "3/5", "--v2", "0", "--backend", "rational"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["v1p"] == "12/37"
