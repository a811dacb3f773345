import json
import os

import numpy as np
import pytest

from morawetzlab.errors import ConstraintViolation, ParseError
from morawetzlab.harness import run_scenario, validate_config
from morawetzlab.harness.cli import main


def test_defaults_applied():
    cfg = validate_config("scenario: geodesic\nchart: {family: schwarzschild, mass: 1.0}\n")
    assert cfg.params["tolerance"] == 1e-10
    assert cfg.params["span"] == 200.0
    assert cfg.kind == "geodesic"
    assert cfg.chart.family == "schwarzschild"


def test_overspun_kerr_names_the_constraint():
    text = "scenario: geodesic\nchart: {family: kerr, mass: 1.0, spin: 1.2}\n"
    with pytest.raises(ConstraintViolation, match=r"\|a\| < M"):
        validate_config(text)


def test_empty_config_is_parse_error():
    with pytest.raises(ParseError, match="position"):
        validate_config("")


def test_bad_yaml_is_parse_error():
    with pytest.raises(ParseError):
        validate_config("scenario: [unclosed\n")


def test_unknown_scenario_rejected():
    with pytest.raises(ConstraintViolation, match="scenario"):
        validate_config("scenario: banana\n")


def test_wave_spin_weight_guard():
    with pytest.raises(ConstraintViolation, match="multipole"):
        validate_config("scenario: wave\nspin_weight: 2\nmultipole: 1\n")


GEO_SMALL = """
scenario: geodesic
chart: {family: schwarzschild, mass: 1.0}
span: 20.0
count: 2
samples: 501
generators: [T]
seed: 3
"""


def test_run_geodesic_writes_manifest(tmp_path):
    cfg = validate_config(GEO_SMALL)
    man = run_scenario(cfg, str(tmp_path))
    path = tmp_path / "manifest.json"
    assert path.is_file()
    on_disk = json.loads(path.read_text())
    assert on_disk["scenario"] == "geodesic"
    assert on_disk["seed"] == 3
    for rel in on_disk["files"]:
        full = tmp_path / rel
        assert full.is_file() and full.stat().st_size > 0
    assert man.all_passed
    assert len(man.jobs) == 2


def test_rerun_is_byte_identical(tmp_path):
    cfg = validate_config(GEO_SMALL)
    run_scenario(cfg, str(tmp_path / "a"))
    run_scenario(cfg, str(tmp_path / "b"))
    csv_a = (tmp_path / "a" / "job_001" / "trajectory.csv").read_bytes()
    csv_b = (tmp_path / "b" / "job_001" / "trajectory.csv").read_bytes()
    assert csv_a == csv_b


def test_trajectory_csv_has_increasing_lambda(tmp_path):
    cfg = validate_config(GEO_SMALL)
    run_scenario(cfg, str(tmp_path))
    data = np.genfromtxt(tmp_path / "job_000" / "trajectory.csv",
                         delimiter=",", skip_header=1)
    assert data.shape[0] == 501
    assert np.all(np.diff(data[:, 0]) > 0)


WAVE_SMALL = """
scenario: wave
grid: {lo: -40.0, hi: 40.0, points: 401}
packet: {center: 0.0, width: 4.0, direction: 0}
t_final: 10.0
window: [-10.0, 10.0]
"""


def test_run_wave_scenario(tmp_path):
    cfg = validate_config(WAVE_SMALL)
    man = run_scenario(cfg, str(tmp_path))
    assert (tmp_path / "wave.csv").is_file()
    assert "energy_balance" in man.audits
    header = (tmp_path / "wave.csv").read_text().splitlines()[0]
    for col in ("E", "bflux", "F", "local_E", "I", "B"):
        assert f"{col} [" in header


def test_cli_exit_codes(tmp_path):
    good = tmp_path / "good.yaml"
    good.write_text(GEO_SMALL)
    bad = tmp_path / "bad.yaml"
    bad.write_text("scenario: geodesic\nchart: {family: kerr, mass: 1.0, spin: 2.0}\n")
    strict = tmp_path / "strict.yaml"
    strict.write_text(WAVE_SMALL + "balance_tol: 1.0e-15\n")

    assert main(["geodesic", "--config", str(good), "--out", str(tmp_path / "run")]) == 0
    assert main(["geodesic", "--config", str(bad), "--out", str(tmp_path / "x")]) == 2
    assert main(["wave", "--config", str(strict), "--out", str(tmp_path / "w")]) == 3
    # pointing --out at an existing file is an I/O failure
    assert main(["geodesic", "--config", str(good), "--out", str(bad)]) == 4
    assert main(["audit", "--criteria", "no-such-audit"]) == 2


def test_cli_seed_override(tmp_path):
    good = tmp_path / "good.yaml"
    good.write_text(GEO_SMALL)
    assert main(["geodesic", "--config", str(good), "--out", str(tmp_path / "s1"),
                 "--seed", "9"]) == 0
    man = json.loads((tmp_path / "s1" / "manifest.json").read_text())
    assert man["seed"] == 9


def test_output_root_env_override(tmp_path, monkeypatch):
    from morawetzlab.harness import output_root
    monkeypatch.setenv("MORAWETZLAB_OUT", str(tmp_path / "envroot"))
    assert output_root(None) == str(tmp_path / "envroot")
    assert output_root("explicit") == "explicit"
