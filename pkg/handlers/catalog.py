# handlers/catalog.py
from __future__ import annotations

from typing import Any, Dict, List, Optional, Sequence, Tuple

from core.catalog import FamilySpec, build_algebra, family_ids, family_info
from core.errors import InputFormatError
from core.geometry import PolynomialMetric
from core.liealg import commutes_with_J, is_in_so
from core.logs import get_logger
from core.recipes import PRESETS, METRIC_ROWS, MetricRecipe, build_metric, ikemakhen_original_metric, n0_recipe, suggested_max_order
from core.schemas import algebra_to_json, family_from_json, family_to_json, metric_to_json, read_json, write_json
from handlers.report import Report, digest_file, digest_obj

logger = get_logger("handlers.catalog")

SUBCOMMANDS = ("list", "build-algebra", "build-metric")

_INT_KEYS = {"n", "m", "k", "l", "r", "u_m", "h_m"}
_LIST_KEYS = {"phi", "phihat", "zeta"}


# ----------------------------
# Parameter parsing
# ----------------------------
def parse_params(params: Sequence[str]) -> Dict[str, Any]:
    """'key=value' pairs; phi/phihat/zeta take comma-separated lists."""
    out: Dict[str, Any] = {}
    for item in params:
        if "=" not in item:
            raise InputFormatError(f"parameter '{item}' is not of the form key=value")
        key, value = (s.strip() for s in item.split("=", 1))
        if key in _INT_KEYS:
            try:
                out[key] = int(value)
            except ValueError:
                raise InputFormatError(f"parameter {key} must be an integer (got '{value}')")
        elif key in _LIST_KEYS:
            out[key] = [v.strip() for v in value.split(",") if v.strip()]
        else:
            out[key] = value
    return out


def load_family(family: Optional[str], params: Sequence[str], spec_file: Optional[str]) -> Tuple[FamilySpec, List[List[Any]], Dict[str, str]]:
    data: Dict[str, Any] = {}
    inputs: Dict[str, str] = {}
    if spec_file:
        loaded = read_json(spec_file)
        if not isinstance(loaded, dict):
            raise InputFormatError("family file must hold a JSON object", spec_file)
        data.update(loaded)
        inputs["spec"] = digest_file(spec_file)
    if family:
        data["family"] = family
    data.update(parse_params(params))
    if "family" not in data:
        raise InputFormatError("no family given (use a family id or a spec file with a 'family' key)")
    inputs["params"] = digest_obj(data)
    spec, weak = family_from_json(data, spec_file or "<params>")
    return spec, weak, inputs


# ----------------------------
# Subcommands
# ----------------------------
def _list(report: Report) -> None:
    report.results["families"] = [
        {"id": fid, "frame": family_info(fid).frame, "summary": family_info(fid).summary} for fid in family_ids()
    ]
    report.results["metric_rows"] = list(METRIC_ROWS)
    report.results["metric_presets"] = sorted(PRESETS) + ["ikemakhen-original"]
    report.results["family_count"] = len(family_ids())


def _build_algebra(report: Report, spec: FamilySpec) -> Dict[str, Any]:
    alg = build_algebra(spec)
    report.results.update({
        "family": spec.family,
        "label": spec.label(),
        "algebra_dim": alg.dim,
        "expected_dim": family_info(spec.family).dimension(spec),
        "in_so": is_in_so(alg),
    })
    if alg.ambient.J is not None:
        report.results["commutes_with_J"] = commutes_with_J(alg)
    return algebra_to_json(alg)


def preset_metric(name: str, gamma1: Any = 0, gamma2: Any = 0) -> Tuple[PolynomialMetric, Optional[MetricRecipe]]:
    """Named metrics: the n = 0 rows, the Lorentzian presets and the hand-made Ikemakhen metric."""
    if name == "ikemakhen-original":
        return ikemakhen_original_metric(), None
    if name in PRESETS:
        recipe = PRESETS[name]()
        return build_metric(recipe), recipe
    if name in METRIC_ROWS:
        recipe = n0_recipe(name, gamma1, gamma2)
        return build_metric(recipe), recipe
    raise InputFormatError(f"unknown metric preset '{name}'")


def _build_metric(report: Report, metric: PolynomialMetric, recipe: Optional[MetricRecipe]) -> Dict[str, Any]:
    report.results["metric_dim"] = metric.dim
    if recipe is not None:
        report.results.update({
            "family": recipe.family.family,
            "row": recipe.row(),
            "suggested_max_order": suggested_max_order(recipe, metric),
            "spec": family_to_json(recipe.family),
        })
    return metric_to_json(metric)


def handle(
    subcmd: str,
    family: Optional[str] = None,
    params: Sequence[str] = (),
    spec_file: Optional[str] = None,
    out: Optional[str] = None,
) -> Report:
    report = Report(f"catalog {subcmd}")
    if subcmd == "list":
        _list(report)
        return report
    if subcmd == "build-algebra":
        spec, _, report.inputs = load_family(family, params, spec_file)
        artifact = _build_algebra(report, spec)
    elif subcmd == "build-metric":
        if family and not spec_file and (family in METRIC_ROWS or family in PRESETS or family == "ikemakhen-original"):
            kv = parse_params(params)
            report.inputs = {"preset": digest_obj({"name": family, **kv})}
            metric, recipe = preset_metric(family, kv.get("gamma1", 0), kv.get("gamma2", 0))
        else:
            spec, weak, report.inputs = load_family(family, params, spec_file)
            recipe = MetricRecipe(spec, weak=weak)
            metric = build_metric(recipe)
        artifact = _build_metric(report, metric, recipe)
    else:
        raise InputFormatError(f"unknown catalog subcommand '{subcmd}' (expected one of {', '.join(SUBCOMMANDS)})")

    if out:
        write_json(out, artifact)
        report.results["written"] = out
        logger.info(f"wrote {subcmd} artifact to {out}")
    else:
        report.results["artifact"] = artifact
    return report
