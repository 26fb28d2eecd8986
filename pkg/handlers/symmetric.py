# handlers/symmetric.py
from __future__ import annotations

from typing import Any, Optional

from core.curvspace import CurvatureTensor, pair_symmetry_check
from core.errors import InputFormatError
from core.exactnum import rational
from core.frames import PSEUDO_KAEHLER, StandardFrame
from core.identify import frame_of
from core.liealg import MatrixLieAlgebra
from core.linalg import matrix_to_json
from core.logs import get_logger
from core.schemas import algebra_to_json, pair_from_json, read_json, tensor_to_json
from core.symmetric import BUILTIN_PAIRS, builtin_pair, is_ricci_flat, ricci, verify_symmetric_pair
from handlers.report import Report, digest_file, digest_obj

logger = get_logger("handlers.symmetric")


def check_pair(report: Report, hol: MatrixLieAlgebra, R: CurvatureTensor, frame: Optional[StandardFrame]) -> Report:
    pr = verify_symmetric_pair(hol, R)
    report.results.update({
        "algebra_dim": pr.hol_dim,
        "r0_dim": pr.r0_dim,
        "image_dim": pr.image_dim,
        "pair_symmetric": pair_symmetry_check(R),
        "notes": pr.notes,
    })
    report.check("R in R0(hol)", True, pr.in_r0)
    report.check("values of R span hol", True, pr.spans_hol)
    if frame is not None and frame.case == PSEUDO_KAEHLER:
        ric = ricci(R, frame)
        report.results["ricci"] = matrix_to_json(ric)
        report.results["ricci_flat"] = is_ricci_flat(R, frame)
    return report


def handle(
    pair_file: Optional[str] = None,
    builtin: Optional[str] = None,
    m: int = 0,
    n: int = 0,
    lam5: Any = 0,
) -> Report:
    if bool(pair_file) == bool(builtin):
        raise InputFormatError(f"give exactly one of a pair file or --builtin ({', '.join(BUILTIN_PAIRS)})")
    if builtin:
        report = Report("symmetric", inputs={"builtin": digest_obj({"name": builtin, "m": m, "n": n, "lam5": str(lam5)})})
        hol, R, frame = builtin_pair(builtin, m=m, n=n, lam5=rational(lam5) if isinstance(lam5, (int, str)) else lam5)
        report.results["pair"] = builtin
    else:
        report = Report("symmetric", inputs={"pair": digest_file(pair_file)})
        hol, R = pair_from_json(read_json(pair_file), pair_file)
        frame = frame_of(hol.ambient.eta)
    report.results["algebra"] = algebra_to_json(hol)
    report.results["tensor"] = tensor_to_json(R)
    logger.info(f"checking a symmetric pair on a {hol.n}-dim space")
    return check_pair(report, hol, R, frame)
