import subprocess
import sys
from pathlib import Path

import pytest
import yaml

from ringcut.config import load_config, validate_config

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def _run(*args, cwd=None):
    return subprocess.run(["ringcut", *args], capture_output=True, text=True, cwd=cwd)


def _write(tmp_path, doc, name="cfg.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(doc))
    return path


GOOD = {
    "observable": "bond_profile_zz",
    "engine": "finite",
    "j": [0.5, 2],
    "h": [0.3],
    "M": [4],
    "bonds": [1, 2],
    "output": "out.csv",
    "plot": False,
}


def test_validate_accepts_good_config(tmp_path):
    res = _run("validate", str(_write(tmp_path, GOOD)))
    assert res.returncode == 0
    assert "ok" in res.stdout


def test_validate_reports_missing_grid(tmp_path):
    doc = dict(GOOD)
    del doc["j"]
    res = _run("validate", str(_write(tmp_path, doc)))
    assert res.returncode == 1
    assert "'j'" in res.stdout


def test_validate_rejects_tlimit_with_m_grid(tmp_path):
    doc = dict(GOOD, engine="tlimit")
    res = _run("validate", str(_write(tmp_path, doc)))
    assert res.returncode == 1
    assert "M-dependent" in res.stdout


def test_validate_warns_on_zero_modes(tmp_path):
    doc = dict(GOOD, h=[0], boundary="ring_naive")
    res = _run("validate", str(_write(tmp_path, doc)))
    assert res.returncode == 0
    assert "zero" in res.stdout


def test_unknown_field_is_a_config_error(tmp_path):
    doc = dict(GOOD, jj=[1])
    res = _run("validate", str(_write(tmp_path, doc)))
    assert res.returncode == 1


def test_run_produces_data_sidecar_and_plot(tmp_path):
    doc = dict(GOOD, plot=True)
    cfg = _write(tmp_path, doc)
    res = _run("run", str(cfg), "--out-dir", str(tmp_path))
    assert res.returncode == 0, res.stderr
    assert (tmp_path / "out.csv").exists()
    assert (tmp_path / "out.csv.meta.json").exists()
    assert (tmp_path / "out.png").exists()
    header = (tmp_path / "out.csv").read_text().splitlines()[0]
    assert header == "observable,engine,M,j,h,site_or_bond_a,site_or_bond_b,value,flag,err_est"


def test_run_is_byte_deterministic(tmp_path):
    cfg = _write(tmp_path, GOOD)
    for d in ("a", "b"):
        (tmp_path / d).mkdir()
        assert _run("run", str(cfg), "--out-dir", str(tmp_path / d)).returncode == 0
    assert (tmp_path / "a" / "out.csv").read_bytes() == (tmp_path / "b" / "out.csv").read_bytes()


def test_partial_failure_exit_code(tmp_path):
    # site 3.5 reaches past the 4-site lattice: that point fails, run continues
    doc = dict(GOOD, M=[4, 2], observable="correlators_vs_j", pairs=[[0.5, 3.5]])
    doc.pop("bonds")
    cfg = _write(tmp_path, doc)
    res = _run("run", str(cfg), "--out-dir", str(tmp_path))
    assert res.returncode == 2
    text = (tmp_path / "out.csv").read_text()
    assert "error:" in text and "nan" in text


def test_json_output(tmp_path):
    doc = dict(GOOD, format="json", output="out.json")
    cfg = _write(tmp_path, doc)
    assert _run("run", str(cfg), "--out-dir", str(tmp_path)).returncode == 0
    import json
    records = json.loads((tmp_path / "out.json").read_text())
    assert len(records) == 4
    assert set(records[0]) == {"observable", "engine", "M", "j", "h",
                               "site_or_bond_a", "site_or_bond_b",
                               "value", "flag", "err_est"}


def test_threads_give_identical_output(tmp_path):
    doc = dict(GOOD, j=[0.5, 1, 2, 3])
    cfg = _write(tmp_path, doc)
    for d, extra in (("s", []), ("t", ["--threads", "4"])):
        (tmp_path / d).mkdir()
        assert _run("run", str(cfg), "--out-dir", str(tmp_path / d), *extra).returncode == 0
    assert (tmp_path / "s" / "out.csv").read_bytes() == (tmp_path / "t" / "out.csv").read_bytes()


@pytest.mark.parametrize("name", ["small_profile", "small_fidelity"])
def test_golden_regression(tmp_path, name):
    res = _run("run", str(DATA / f"{name}.yaml"), "--out-dir", str(tmp_path))
    assert res.returncode == 0, res.stderr
    produced = (tmp_path / f"{name}.csv").read_bytes()
    assert produced == (GOLDEN / f"{name}.csv").read_bytes()


@pytest.mark.parametrize("name", ["fig2", "fig3", "fig4", "fig5", "fig6"])
def test_preset_configs_are_valid(tmp_path, name):
    import importlib.resources

    text = importlib.resources.files("ringcut").joinpath(f"presets/{name}.yaml").read_text()
    path = tmp_path / f"{name}.yaml"
    path.write_text(text)
    diags = validate_config(load_config(path))
    assert not [d for d in diags if d[0] == "error"], (name, diags)
