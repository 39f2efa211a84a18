import csv
import io
import json

import numpy as np
import pytest

from photon_soliton.cli import main
from photon_soliton.report import CONFIG_ENV, RunConfig, load_config, parse_config_text
from photon_soliton.constants import DomainError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field_on_axis(capsys):
    code, out, _ = run(capsys, "field", "--lambda", "650e-9", "--r", "0", "--phi", "0", "--z", "0",
                       "--t", "0", "--pol", "+1")
    assert code == 0
    rec = json.loads(out)["records"][0]
    assert rec["branch"] == "interior"
    for key in ("E_x", "E_y", "E_z", "H_x", "H_y", "H_z"):
        assert rec[key] == [0.0, 0.0]


def test_field_matching_ring(capsys):
    code, out, _ = run(capsys, "field", "--lambda", "650e-9", "--r", "1.0345e-7", "--z", "0")
    rec = json.loads(out)["records"][0]
    assert code == 0
    assert "continuity_note" in rec
    assert rec["interior_E_mag"] == pytest.approx(rec["evanescent_E_mag"], rel=1e-4)


def test_field_csv(capsys):
    code, out, _ = run(capsys, "field", "--lambda", "650e-9", "--r", "2e-7", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out.split("#")[0])))
    assert code == 0 and rows[0] == ["component", "value", "units"]
    assert all(r[2] for r in rows[1:])
    assert "branch=evanescent" in out


@pytest.mark.parametrize("pol", ["bogus", "1,2", "a,b,c,d"])
def test_field_bad_polarization(capsys, pol):
    code, _, err = run(capsys, "field", "--lambda", "650e-9", "--pol", pol)
    assert code == 2
    assert "usage" in err


def test_field_singularity_message(capsys):
    code, _, err = run(capsys, "field", "--lambda", "650e-9", "--r", "0", "--z", "1e-6")
    assert code == 2 and "singular" in err


def test_verify_maxwell_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "maxwell", "--seed", "0", "--points", "30")
    rep = json.loads(out)
    assert code == 0 and rep["pass"] is True
    assert rep["schema_version"] == 1


def test_verify_betaz(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "betaz", "--points", "40")
    rep = json.loads(out)
    summary = next(r for r in rep["records"] if r["kind"] == "betaz_summary")
    assert code == 0 and summary["median_ratio"] > 1e3


def test_verify_coarse_step_fails(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--fd-step", "1e-2", "--points", "30")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_verify_unknown_suite(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "nonsense")
    assert code == 2


def test_verify_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "--suite", "all", "--seed", "0", "--points", "20", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["timestamp"] is None


def test_timestamp_flag(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "ode", "--timestamp")
    assert json.loads(out)["timestamp"]


def test_predict_threshold(capsys):
    code, out, _ = run(capsys, "predict", "threshold", "--lambda", "650e-9")
    rec = json.loads(out)["records"][0]
    assert code == 0 and rec["value"] == pytest.approx(4.19e9, rel=1e-3) and rec["units"] == "W/m^2"


def test_predict_visibility_sweep(capsys):
    code, out, _ = run(capsys, "predict", "visibility", "--lambda", "650e-9", "--d-from", "1e-6",
                       "--d-to", "1e-3", "--steps", "100")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["param", "value", "units"]
    assert len(rows) == 101
    vals = np.array([float(r[1]) for r in rows[1:]])
    assert np.all(np.diff(vals) < 0)
    assert all(r[2] for r in rows[1:])
    assert rows[1][1] == f"{vals[0]:.11e}"


def test_predict_photoelectric(capsys):
    code, out, _ = run(capsys, "predict", "photoelectric", "--nu", "2e15", "--nu0", "1e15")
    recs = {r["name"]: r for r in json.loads(out)["records"]}
    assert recs["stopping_voltage"]["value"] == pytest.approx(4.136, rel=1e-3)


def test_predict_domain_error_echoes(capsys):
    code, _, err = run(capsys, "predict", "visibility", "--lambda", "650e-9", "--d-from", "1e-9",
                       "--d-to", "1e-6", "--steps", "5")
    assert code == 2 and "d=" in err


def test_predict_missing_param(capsys):
    code, _, err = run(capsys, "predict", "slit", "--lambda", "650e-9")
    assert code == 2 and "width" in err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--lambda", "650e-9")
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    by = {(r["region"], r["convention"]): r for r in rep["records"]
          if r["kind"] == "normalization" and r["source"] == "quadrature_derived"}
    assert by["ellipsoid", "paper_literal"]["alpha_ratio_to_closed_form"] == pytest.approx(1, rel=5e-3)
    assert by["ellipsoid", "standard_si"]["alpha_sq_ratio_to_closed_form"] == pytest.approx(
        1 / (2 * np.pi), rel=5e-3)
    ratios = [r for r in rep["records"] if r["kind"] == "region_ratio"]
    assert all(r["alpha_sq_ellipsoid_over_cylinder"] == pytest.approx(15 / 8, rel=5e-3) for r in ratios)


def test_report_writes_tables(capsys, tmp_path):
    code = main(["report", "--points", "10", "--out-dir", str(tmp_path)])
    capsys.readouterr()
    assert code == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert {"report.json", "checks.csv", "predictions.csv", "sweep_visibility_d.csv"} <= names
    header = (tmp_path / "sweep_slit_width.csv").read_text().splitlines()[0]
    assert header == "param,value,units"


def test_config_env(monkeypatch, tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("seed = 5\ntolerances.maxwell = 1e-30\n# comment\n")
    monkeypatch.setenv(CONFIG_ENV, str(cfg))
    code, out, _ = run(capsys, "verify", "--suite", "maxwell", "--points", "5")
    rep = json.loads(out)
    assert rep["config"]["seed"] == 5
    assert code == 1


def test_config_parsing_and_validation(tmp_path):
    assert parse_config_text('{"seed": 3}') == {"seed": 3}
    assert parse_config_text("constants.c = 299792458\nseed=2") == {"constants": {"c": 299792458}, "seed": 2}
    with pytest.raises(DomainError):
        RunConfig(quadrature_budget=10)
    with pytest.raises(DomainError):
        RunConfig(tolerances={"maxwell": 0})
    with pytest.raises(DomainError):
        RunConfig(constants={"c": 3e8})
    p = tmp_path / "bad.cfg"
    p.write_text("nonsense = 1\n")
    with pytest.raises(DomainError):
        load_config(p)
