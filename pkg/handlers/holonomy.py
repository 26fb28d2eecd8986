# handlers/holonomy.py
from __future__ import annotations

from typing import Any, Dict, Optional

from core.geometry import PolynomialMetric
from core.holonomy import HolonomyReport, holonomy
from core.identify import UNKNOWN, Identification, frame_of, identify, load_default_sweep
from core.liealg import MatrixLieAlgebra
from core.linalg import matrix_to_json
from core.logs import get_logger
from core.schemas import algebra_to_json, load_sweep, metric_from_json, read_json
from handlers.report import Report, digest_file

logger = get_logger("handlers.holonomy")


def holonomy_to_json(rep: HolonomyReport) -> Dict[str, Any]:
    return {
        "algebra": algebra_to_json(rep.algebra),
        "algebra_dim": rep.algebra.dim,
        "max_order_used": rep.max_order_used,
        "stabilized": rep.stabilized,
        "dims_by_order": list(rep.dims_by_order),
        "span_dim": rep.span_dim,
        "closure_added": rep.closure_added,
        "generators": [
            {"order": g.order, "pair": list(g.pair), "path": list(g.path), "matrix": matrix_to_json(g.matrix)}
            for g in rep.generator_log
        ],
    }


def identify_algebra(alg: MatrixLieAlgebra, sweep_path: Optional[str] = None) -> Identification:
    """Identification in the standard frame matching the algebra's metric, or Unknown."""
    frame = frame_of(alg.ambient.eta)
    if frame is None:
        logger.info("metric at the basepoint is not a standard frame Gram matrix; skipping identification")
        return Identification(UNKNOWN)
    sweep = load_sweep(sweep_path) if sweep_path else load_default_sweep()
    return identify(alg, frame, sweep)


def attach_identification(report: Report, alg: MatrixLieAlgebra, expect: Optional[str], sweep_path: Optional[str]) -> Identification:
    ident = identify_algebra(alg, sweep_path)
    report.results["identification"] = ident.to_dict()
    if expect:
        report.check("identification", expect, ident.key or ident.kind, passed=ident.matches_expectation(expect))
    return ident


def run_metric(
    metric: PolynomialMetric,
    max_order: int,
    window: int,
    do_identify: bool = False,
    expect: Optional[str] = None,
    sweep_path: Optional[str] = None,
    report: Optional[Report] = None,
) -> Report:
    report = report or Report("holonomy")
    rep = holonomy(metric, max_order=max_order, window=window)
    report.results.update(holonomy_to_json(rep))
    if not rep.stabilized:
        logger.warning(f"holonomy did not stabilize by order {rep.max_order_used}; the algebra may be incomplete")
    if do_identify or expect:
        attach_identification(report, rep.algebra, expect, sweep_path)
    return report


def handle(
    metric_file: str,
    max_order: int,
    window: int,
    do_identify: bool = False,
    expect: Optional[str] = None,
    sweep_path: Optional[str] = None,
) -> Report:
    metric = metric_from_json(read_json(metric_file), metric_file)
    report = Report("holonomy", inputs={"metric": digest_file(metric_file)})
    if sweep_path:
        report.inputs["sweep"] = digest_file(sweep_path)
    report.results["metric_dim"] = metric.dim
    return run_metric(metric, max_order, window, do_identify, expect, sweep_path, report)
