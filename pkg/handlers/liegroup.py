# handlers/liegroup.py
from __future__ import annotations

from typing import Optional

from core.config import LIEGROUP_FILES
from core.liegroup import lg_curvature, lg_holonomy, lg_nabla
from core.linalg import matrix_to_json
from core.logs import get_logger
from core.schemas import algebra_to_json, liegroup_from_json, read_json
from handlers.holonomy import attach_identification
from handlers.report import Report, digest_file

logger = get_logger("handlers.liegroup")


def resolve(group: str) -> str:
    """A shipped group name ('g1', 'g2', 'abelian') or a file path."""
    return LIEGROUP_FILES.get(group, group)


def handle(group: str, expect: Optional[str] = None, sweep_path: Optional[str] = None) -> Report:
    path = resolve(group)
    data, names = liegroup_from_json(read_json(path), path)
    report = Report("liegroup", inputs={"group": digest_file(path)})

    nabla = lg_nabla(data)
    curv = lg_curvature(data, nabla)
    alg = lg_holonomy(data)
    logger.info(f"left-invariant metric on a {data.dim}-dim group: holonomy dim {alg.dim}")

    report.results.update({
        "group_dim": data.dim,
        "basis": names,
        "nabla": {names[i]: matrix_to_json(M) for i, M in enumerate(nabla)},
        "curvature": {f"{names[i]},{names[j]}": matrix_to_json(M) for (i, j), M in sorted(curv.items())},
        "algebra": algebra_to_json(alg),
        "algebra_dim": alg.dim,
    })
    attach_identification(report, alg, expect, sweep_path)
    return report
