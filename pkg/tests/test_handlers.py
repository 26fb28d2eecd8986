from __future__ import annotations

from pathlib import Path

import pytest

from core.catalog import family_ids
from core.errors import InputFormatError
from core.recipes import METRIC_ROWS
from handlers import catalog as catalog_handler
from handlers import health as health_handler
from handlers import symmetric as symmetric_handler
from handlers.report import Report, digest_obj


def test_report_exit_codes():
    report = Report("demo")
    assert report.exit_code == 0
    report.check("one", 1, 1)
    report.check("two", "a", "b")
    assert not report.passed
    assert report.exit_code == 2
    d = report.to_dict()
    assert [c["pass"] for c in d["checks"]] == [True, False]
    assert "elapsed" not in d


def test_digest_is_order_independent():
    assert digest_obj({"a": 1, "b": 2}) == digest_obj({"b": 2, "a": 1})
    assert digest_obj({"a": 1}).startswith("sha256:")


def test_parse_params():
    params = catalog_handler.parse_params(["n=2", "m=1", "phi=1, 0", "lam=1/2"])
    assert params == {"n": 2, "m": 1, "phi": ["1", "0"], "lam": "1/2"}
    with pytest.raises(InputFormatError):
        catalog_handler.parse_params(["n"])
    with pytest.raises(InputFormatError):
        catalog_handler.parse_params(["n=two"])


def test_catalog_list():
    report = catalog_handler.handle("list")
    assert report.results["family_count"] == len(family_ids())
    assert report.results["metric_rows"] == list(METRIC_ROWS)
    assert "ikemakhen-original" in report.results["metric_presets"]


def test_catalog_build_algebra():
    report = catalog_handler.handle("build-algebra", "u-pp", ["n=1"])
    assert report.results["algebra_dim"] == report.results["expected_dim"] == 6
    assert report.results["in_so"] is True
    assert report.results["commutes_with_J"] is True
    assert report.results["artifact"]["dim"] == 6


def test_catalog_build_algebra_from_file(tmp_path):
    spec = tmp_path / "fam.json"
    spec.write_text('{"family": "lorentz2", "n": 2, "h": "so", "h_m": 2}')
    out = tmp_path / "alg.json"
    report = catalog_handler.handle("build-algebra", spec_file=str(spec), out=str(out))
    assert report.results["algebra_dim"] == 3
    assert report.results["written"] == str(out)
    assert out.exists()


def test_catalog_build_metric_preset():
    report = catalog_handler.handle("build-metric", "n0-row3", ["gamma1=0", "gamma2=1"])
    assert report.results["metric_dim"] == 4
    assert report.results["row"] == "n0-row3"


def test_catalog_needs_a_family():
    with pytest.raises(InputFormatError):
        catalog_handler.handle("build-algebra")


def test_symmetric_handler_needs_one_source():
    with pytest.raises(InputFormatError):
        symmetric_handler.handle()
    with pytest.raises(InputFormatError):
        symmetric_handler.handle("pair.json", "hol2")


def test_symmetric_handler_builtin():
    report = symmetric_handler.handle(builtin="hol1c-lambda1")
    assert report.passed
    assert report.results["ricci_flat"] is False


def test_health_reports_engine():
    status = health_handler.run_health_check()
    assert status["engine"].startswith("✓")
    assert status["data:sweep"].startswith("✓")
    assert health_handler.healthy({"a": "✓ fine"})
    assert not health_handler.healthy({"a": "❌ broken"})


def test_health_covers_every_runtime_requirement():
    root = Path(__file__).resolve().parent.parent
    pinned = {line.split("==")[0] for line in (root / "requirements.txt").read_text().split() if line}
    modules = {"python-dotenv": "dotenv"}
    assert {modules.get(p, p) for p in pinned if p != "pytest"} == set(health_handler.PACKAGES)
