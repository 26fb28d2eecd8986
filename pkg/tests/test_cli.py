from __future__ import annotations

import pytest
from typer.testing import CliRunner

from core.catalog import FamilySpec, build_algebra, pk_ideal
from core.config import EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK
from core.frames import PSEUDO_KAEHLER, build_frame
from core.liealg import make_algebra
from core.schemas import algebra_to_json, read_json, write_json
from holokit import app

runner = CliRunner()


@pytest.fixture(autouse=True)
def _in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def _report(path):
    return read_json(str(path))


def test_health():
    result = runner.invoke(app, ["health"])
    assert result.exit_code == EXIT_OK
    assert "engine" in result.output


def test_liegroup_g1(tmp_path):
    out = tmp_path / "g1.json"
    result = runner.invoke(app, ["liegroup", "g1", "--expect", "n0-hol2", "-o", str(out)])
    assert result.exit_code == EXIT_OK
    report = _report(out)
    assert report["pass"] is True
    assert report["results"]["algebra_dim"] == 2
    assert report["results"]["identification"]["key"] == "n0-hol2"


def test_liegroup_g2_gamma_key(tmp_path):
    out = tmp_path / "g2.json"
    result = runner.invoke(app, ["liegroup", "g2", "--expect", "n0-gamma:0:1", "-o", str(out)])
    assert result.exit_code == EXIT_OK


def test_failed_expectation_exits_2(tmp_path):
    result = runner.invoke(app, ["liegroup", "g1", "--expect", "n0-hol1", "-o", str(tmp_path / "r.json")])
    assert result.exit_code == EXIT_CHECK_FAILED
    assert _report(tmp_path / "r.json")["pass"] is False


def test_reports_are_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    runner.invoke(app, ["liegroup", "g1", "-o", str(a)])
    runner.invoke(app, ["liegroup", "g1", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_metric_roundtrip_through_the_cli(tmp_path):
    metric = tmp_path / "row2.json"
    out = tmp_path / "hol.json"
    assert runner.invoke(app, ["catalog", "build-metric", "n0-row2", "-o", str(metric)]).exit_code == EXIT_OK
    result = runner.invoke(app, ["holonomy", str(metric), "--expect", "n0-hol2", "-o", str(out)])
    assert result.exit_code == EXIT_OK
    report = _report(out)
    assert report["results"]["algebra_dim"] == 2
    assert report["results"]["stabilized"] is True
    assert report["inputs"]["metric"].startswith("sha256:")


def test_algebra_berger(tmp_path):
    alg_file = tmp_path / "alg.json"
    write_json(str(alg_file), algebra_to_json(build_algebra(FamilySpec("n0-hol2"))))
    out = tmp_path / "berger.json"
    result = runner.invoke(app, ["algebra", "berger", str(alg_file), "--expect", "true", "-o", str(out)])
    assert result.exit_code == EXIT_OK
    assert _report(out)["results"]["berger"] is True


def test_algebra_weakirr(tmp_path):
    ms = build_frame(PSEUDO_KAEHLER, 1).structure()
    alg_file = tmp_path / "n1c.json"
    write_json(str(alg_file), algebra_to_json(make_algebra(ms, pk_ideal(1, ms.domain, n1=[1]))))
    result = runner.invoke(app, ["algebra", "weakirr", str(alg_file), "--expect", "WeaklyIrreducible", "-o", str(tmp_path / "w.json")])
    assert result.exit_code == EXIT_OK


def test_symmetric_builtin(tmp_path):
    out = tmp_path / "sym.json"
    result = runner.invoke(app, ["symmetric", "--builtin", "hol3", "--m", "1", "--n", "1", "-o", str(out)])
    assert result.exit_code == EXIT_OK
    report = _report(out)
    assert report["results"]["pair"] == "hol3"
    assert "ricci" in report["results"]


def test_missing_file_exits_1(tmp_path):
    result = runner.invoke(app, ["holonomy", str(tmp_path / "nope.json")])
    assert result.exit_code == EXIT_INPUT


def test_malformed_metric_exits_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "g": "x0"}')
    assert runner.invoke(app, ["holonomy", str(bad)]).exit_code == EXIT_INPUT


def test_unknown_subcommand_exits_1(tmp_path):
    assert runner.invoke(app, ["catalog", "rebuild"]).exit_code == EXIT_INPUT


def test_repro_small_groups(tmp_path):
    out = tmp_path / "repro.json"
    result = runner.invoke(app, ["repro", "-g", "liegroup", "-g", "symmetric", "-o", str(out)])
    assert result.exit_code == EXIT_OK
    report = _report(out)
    assert report["results"]["groups"] == ["liegroup", "symmetric"]
    assert report["checks"]
    assert all(c["pass"] for c in report["checks"])


def test_repro_unknown_group():
    assert runner.invoke(app, ["repro", "-g", "everything"]).exit_code == EXIT_INPUT


def test_repro_lorentz_example(tmp_path):
    out = tmp_path / "lorentz.json"
    result = runner.invoke(app, ["repro", "-g", "lorentz-example", "-o", str(out)])
    assert result.exit_code == EXIT_OK
    checks = {c["name"]: c for c in _report(out)["checks"]}
    assert checks["rho(so(3)): closure dim"]["pass"] is True
    assert checks["ikemakhen construction: holonomy dim"]["computed"] == 8
