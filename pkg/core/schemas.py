"""
JSON file formats.

Every input file is validated by a pydantic model first; the converters then
turn the validated model into exact objects. Scalars are strings ("3/2",
"2*sqrt(3)/3") or integers; an optional "field" key selects QQ<sqrt(3)>.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Tuple, Union

import orjson
from pydantic import BaseModel, Field, ValidationError

from core.catalog import FamilySpec, h_preset, u_preset
from core.config import FIELD_QQ
from core.curvspace import CurvatureTensor
from core.errors import InputFormatError
from core.exactnum import field_by_name, field_name, poly_from_expr, poly_from_json, poly_ring, poly_to_json, rational, scalar_to_str
from core.frames import build_frame
from core.geometry import PolynomialMetric
from core.identify import Sweep, SweepBounds
from core.liealg import MatrixLieAlgebra, MetricStructure, make_algebra
from core.liegroup import LieGroupData
from core.linalg import Subspace, matrix, matrix_from_json, matrix_to_json

Scalar = Union[int, str]
Rows = List[List[Scalar]]


# ============================================
# 1) ENCODING
# ============================================

def dumps(obj: Any) -> str:
    """Sorted-key, 2-space JSON; identical inputs give identical bytes."""
    return orjson.dumps(obj, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS).decode("utf-8")


def loads(text: Union[str, bytes], source: str = "<input>") -> Any:
    try:
        return orjson.loads(text)
    except orjson.JSONDecodeError as e:
        raise InputFormatError(f"invalid JSON: {e}", source)


def read_json(path: str) -> Any:
    try:
        with open(path, "rb") as fh:
            return loads(fh.read(), path)
    except OSError as e:
        raise InputFormatError(f"cannot read {path}: {e}", path)


def write_json(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
        fh.write("\n")


def _validate(model: type, data: Any, source: str):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise InputFormatError(f"{model.__name__}: {e.error_count()} validation error(s): {e.errors()[0]['msg']}", source)


# ============================================
# 2) MODELS
# ============================================

class Term(BaseModel):
    coef: Scalar
    exps: List[int]


class MatrixModel(BaseModel):
    rows: int
    cols: int
    entries: Rows


class MetricModel(BaseModel):
    dim: int = Field(ge=1)
    field: str = FIELD_QQ
    g: List[List[Union[str, List[Term]]]]
    basepoint: List[Scalar] = Field(default_factory=list)


class AlgebraModel(BaseModel):
    field: str = FIELD_QQ
    eta: MatrixModel
    J: Optional[MatrixModel] = None
    basis: List[MatrixModel] = Field(default_factory=list)


class FrameAlgebraModel(BaseModel):
    """An algebra given in a standard frame instead of an explicit eta."""
    frame: str
    n: int = Field(ge=0)
    field: str = FIELD_QQ
    basis: List[MatrixModel] = Field(default_factory=list)


class BracketModel(BaseModel):
    i: int
    j: int
    coeffs: List[Scalar]


class LieGroupModel(BaseModel):
    dim: int = Field(ge=1)
    field: str = FIELD_QQ
    names: List[str] = Field(default_factory=list)
    gram: Rows
    brackets: List[BracketModel] = Field(default_factory=list)


class TensorValueModel(BaseModel):
    a: int
    b: int
    value: MatrixModel


class PairModel(BaseModel):
    algebra: Union[AlgebraModel, FrameAlgebraModel]
    tensor: List[TensorValueModel] = Field(default_factory=list)


class FamilyModel(BaseModel):
    family: str
    n: int = Field(default=0, ge=0)
    m: int = 0
    k: int = 0
    l: int = 0
    r: int = 0
    lam: Optional[Scalar] = None
    gamma1: Scalar = 0
    gamma2: Scalar = 0
    field: str = FIELD_QQ
    u: Optional[str] = None
    u_m: Optional[int] = None
    u_basis: List[Tuple[Rows, Rows]] = Field(default_factory=list)
    h: Optional[str] = None
    h_m: Optional[int] = None
    h_basis: List[Rows] = Field(default_factory=list)
    phi: List[Scalar] = Field(default_factory=list)
    phihat: List[Scalar] = Field(default_factory=list)
    psi: List[Any] = Field(default_factory=list)
    zeta: List[Scalar] = Field(default_factory=list)
    weak: List[List[Rows]] = Field(default_factory=list)


class BoundsModel(BaseModel):
    max_n: int = 2
    max_m: int = 1
    u_presets: List[str] = Field(default_factory=lambda: ["zero", "J", "full"])
    h_presets: List[str] = Field(default_factory=lambda: ["zero", "so"])
    scalars: List[Scalar] = Field(default_factory=lambda: [0, 1])
    lambdas: List[Scalar] = Field(default_factory=lambda: [1, -1])
    gammas: List[List[Scalar]] = Field(default_factory=lambda: [[0, 0], [0, 1], [1, 0], [1, 1]])
    include_presets: bool = True


class SweepModel(BaseModel):
    bounds: Optional[BoundsModel] = None
    candidates: List[FamilyModel] = Field(default_factory=list)


# ============================================
# 3) CONVERTERS
# ============================================

def _mat(m: MatrixModel, K) -> Any:
    return matrix_from_json(m.model_dump(), K)


def metric_from_json(data: Any, source: str = "<metric>") -> PolynomialMetric:
    model = _validate(MetricModel, data, source)
    K = field_by_name(model.field)
    ring = poly_ring(model.dim, K)
    g = []
    for row in model.g:
        out = []
        for entry in row:
            if isinstance(entry, str):
                out.append(poly_from_expr(entry, ring))
            else:
                out.append(poly_from_json([t.model_dump() for t in entry], ring))
        g.append(out)
    basepoint = [rational(x, K) for x in model.basepoint]
    return PolynomialMetric(model.dim, g, basepoint)


def metric_to_json(m: PolynomialMetric) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "dim": m.dim,
        "g": [[poly_to_json(p) for p in row] for row in m.g],
        "basepoint": [scalar_to_str(x, m.domain) for x in m.basepoint],
    }
    if field_name(m.domain) != FIELD_QQ:
        out["field"] = field_name(m.domain)
    return out


def _frame_algebra(model: FrameAlgebraModel) -> MatrixLieAlgebra:
    K = field_by_name(model.field)
    frame = build_frame(model.frame, model.n)
    return make_algebra(frame.structure(K), [_mat(b, K) for b in model.basis])


def algebra_from_json(data: Any, source: str = "<algebra>") -> MatrixLieAlgebra:
    if isinstance(data, dict) and "frame" in data:
        return _frame_algebra(_validate(FrameAlgebraModel, data, source))
    model = _validate(AlgebraModel, data, source)
    K = field_by_name(model.field)
    eta = _mat(model.eta, K)
    J = _mat(model.J, K) if model.J is not None else None
    ambient = MetricStructure(eta.shape[0], eta, J)
    return make_algebra(ambient, [_mat(b, K) for b in model.basis])


def algebra_to_json(alg: MatrixLieAlgebra) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "dim": alg.dim,
        "eta": matrix_to_json(alg.ambient.eta),
        "basis": [matrix_to_json(b) for b in alg.basis],
    }
    if alg.ambient.J is not None:
        out["J"] = matrix_to_json(alg.ambient.J)
    if field_name(alg.domain) != FIELD_QQ:
        out["field"] = field_name(alg.domain)
    return out


def subspace_to_json(s: Subspace) -> Dict[str, Any]:
    return {
        "ambient_dim": s.ambient_dim,
        "dim": s.dim,
        "basis": [[scalar_to_str(x, s.domain) for x in v] for v in s.basis],
    }


def liegroup_from_json(data: Any, source: str = "<liegroup>") -> Tuple[LieGroupData, List[str]]:
    model = _validate(LieGroupModel, data, source)
    K = field_by_name(model.field)
    structure = {(b.i, b.j): [rational(c, K) for c in b.coeffs] for b in model.brackets}
    names = model.names or [f"e{i}" for i in range(model.dim)]
    if len(names) != model.dim:
        raise InputFormatError(f"{len(names)} basis names for a {model.dim}-dim algebra", source)
    return LieGroupData(model.dim, matrix(model.gram, K), structure), names


def tensor_to_json(R: CurvatureTensor) -> List[Dict[str, Any]]:
    return [{"a": a, "b": b, "value": matrix_to_json(M)} for (a, b), M in sorted(R.values.items())]


def pair_from_json(data: Any, source: str = "<pair>") -> Tuple[MatrixLieAlgebra, CurvatureTensor]:
    model = _validate(PairModel, data, source)
    alg = _frame_algebra(model.algebra) if isinstance(model.algebra, FrameAlgebraModel) else algebra_from_json(model.algebra.model_dump(), source)
    K = alg.domain
    values = {(v.a, v.b): _mat(v.value, K) for v in model.tensor}
    return alg, CurvatureTensor(alg.ambient, values)


def _family(model: FamilyModel) -> Tuple[FamilySpec, List[List[Any]]]:
    K = field_by_name(model.field)
    u_basis: List[Any] = [(B, C) for B, C in model.u_basis]
    if model.u:
        u_basis = u_preset(model.u, model.m if model.u_m is None else model.u_m, model.n, K) + u_basis
    h_basis: List[Any] = list(model.h_basis)
    if model.h:
        h_basis = h_preset(model.h, model.m if model.h_m is None else model.h_m, model.n, K) + h_basis
    spec = FamilySpec(
        family=model.family, n=model.n, m=model.m, k=model.k, l=model.l, r=model.r,
        lam=model.lam, gamma1=model.gamma1, gamma2=model.gamma2,
        u_basis=u_basis, h_basis=h_basis,
        phi=list(model.phi), phihat=list(model.phihat), psi=list(model.psi), zeta=list(model.zeta),
        domain=K,
    )
    weak = [[matrix(P_i, K) for P_i in P] for P in model.weak]
    return spec, weak


def family_from_json(data: Any, source: str = "<family>") -> Tuple[FamilySpec, List[List[Any]]]:
    """A FamilySpec plus the optional weak curvature maps of a Lorentzian recipe."""
    return _family(_validate(FamilyModel, data, source))


def family_to_json(spec: FamilySpec) -> Dict[str, Any]:
    K = spec.domain

    def s(x: Any) -> Any:
        if x is None or isinstance(x, (int, str)):
            return x
        if isinstance(x, (list, tuple)):
            return [s(y) for y in x]
        return scalar_to_str(K.convert(x), K)

    out: Dict[str, Any] = {
        "family": spec.family,
        "n": spec.n,
        "m": spec.m,
        "k": spec.k,
        "l": spec.l,
        "r": spec.r,
        "lam": s(spec.lam),
        "gamma1": s(spec.gamma1),
        "gamma2": s(spec.gamma2),
        "u_basis": s(spec.u_basis),
        "h_basis": s(spec.h_basis),
        "phi": s(spec.phi),
        "phihat": s(spec.phihat),
        "psi": s(spec.psi),
        "zeta": s(spec.zeta),
    }
    if field_name(K) != FIELD_QQ:
        out["field"] = field_name(K)
    return out


def sweep_from_json(data: Any, source: str = "<sweep>") -> Sweep:
    model = _validate(SweepModel, data, source)
    bounds = SweepBounds(**model.bounds.model_dump()) if model.bounds is not None else None
    return Sweep(bounds, [_family(c)[0] for c in model.candidates])


def load_sweep(path: str) -> Sweep:
    return sweep_from_json(read_json(path), path)
