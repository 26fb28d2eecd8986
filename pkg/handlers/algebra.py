# handlers/algebra.py
from __future__ import annotations

from typing import Any, Callable, Dict, Optional, Tuple

from core.curvspace import curvature_space, image_span, invariant_curvature_space, weak_curvature_space
from core.errors import InputFormatError
from core.liealg import MatrixLieAlgebra, commutes_with_J, is_closed, is_in_so, weak_irreducibility
from core.schemas import algebra_from_json, read_json, subspace_to_json
from handlers.report import Report, digest_file

SUBCOMMANDS = ("berger", "weakirr", "curvspace", "invspace", "weakberger")


def _berger(alg: MatrixLieAlgebra, seed: int) -> Tuple[Any, Dict[str, Any]]:
    cs = curvature_space(alg)
    image = image_span(cs)
    verdict = image == alg.subspace()
    return verdict, {"curvature_space_dim": cs.dim, "image_dim": image.dim, "berger": verdict}


def _weakirr(alg: MatrixLieAlgebra, seed: int) -> Tuple[Any, Dict[str, Any]]:
    v = weak_irreducibility(alg, seed=seed)
    return v.kind, {"verdict": v.to_dict()}


def _curvspace(alg: MatrixLieAlgebra, seed: int) -> Tuple[Any, Dict[str, Any]]:
    cs = curvature_space(alg)
    image = image_span(cs)
    return cs.dim, {"curvature_space_dim": cs.dim, "image_dim": image.dim, "image": subspace_to_json(image)}


def _invspace(alg: MatrixLieAlgebra, seed: int) -> Tuple[Any, Dict[str, Any]]:
    r0 = invariant_curvature_space(alg)
    return r0.dim, {"invariant_space_dim": r0.dim, "image_dim": image_span(r0).dim}


def _weakberger(alg: MatrixLieAlgebra, seed: int) -> Tuple[Any, Dict[str, Any]]:
    P = weak_curvature_space(alg)
    image = P.image_span()
    verdict = image == alg.subspace()
    return verdict, {"weak_curvature_space_dim": P.dim, "image_dim": image.dim, "weak_berger": verdict}


_HANDLERS: Dict[str, Callable[[MatrixLieAlgebra, int], Tuple[Any, Dict[str, Any]]]] = {
    "berger": _berger,
    "weakirr": _weakirr,
    "curvspace": _curvspace,
    "invspace": _invspace,
    "weakberger": _weakberger,
}


def _normalize(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def handle(subcmd: str, alg_file: str, seed: int, expect: Optional[str] = None) -> Report:
    if subcmd not in _HANDLERS:
        raise InputFormatError(f"unknown algebra check '{subcmd}' (expected one of {', '.join(SUBCOMMANDS)})")
    alg = algebra_from_json(read_json(alg_file), alg_file)
    report = Report(f"algebra {subcmd}", inputs={"algebra": digest_file(alg_file)})
    report.results.update({
        "ambient_dim": alg.n,
        "algebra_dim": alg.dim,
        "closed": is_closed(alg),
        "in_so": is_in_so(alg),
    })
    if alg.ambient.J is not None:
        report.results["commutes_with_J"] = commutes_with_J(alg)
    value, extra = _HANDLERS[subcmd](alg, seed)
    report.results.update(extra)
    if expect is not None:
        report.check(subcmd, expect, _normalize(value), passed=_normalize(value) == expect.strip().lower() or _normalize(value) == expect.strip())
    return report
