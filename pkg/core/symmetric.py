"""
Pseudo-Kaehler symmetric pairs (hol, R) of index 2.

A pair qualifies when R lies in R0(hol), the curvature tensors annihilated
by hol, and the values of R span hol. This module builds the holonomy
algebras and curvature tensors of the known pairs, checks them, and computes
the Ricci form Ric(X, Y) = -1/2 tr(J o R(X, JY)) (half the real trace, which
is the complex trace of the Kaehler Ricci form).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from core.curvspace import CurvatureTensor, invariant_curvature_space
from core.errors import FrameMismatchError, MissingComplexStructureError
from core.frames import PSEUDO_KAEHLER, StandardFrame, build_frame, build_pk_element, frame_wedge
from core.liealg import MatrixLieAlgebra, make_algebra
from core.linalg import entries, flatten, span, zeros
from core.logs import get_logger

logger = get_logger("symmetric")

TENSOR_NAMES = ("R_lambda5", "R_lambda1", "R_lambda2", "R_M3_e1", "R_1")


# ============================================
# 1) HOLONOMY ALGEBRAS OF THE PAIRS
# ============================================

def _pk(frame: StandardFrame, K: Domain, mats: List[DomainMatrix]) -> MatrixLieAlgebra:
    return make_algebra(frame.structure(K), mats)


def hol1(K: Domain = QQ) -> MatrixLieAlgebra:
    """R p1^p2 inside u(1,1)."""
    return _pk(build_frame(PSEUDO_KAEHLER, 0), K, [build_pk_element(0, c=1, K=K)])


def hol1c(K: Domain = QQ) -> MatrixLieAlgebra:
    """R(p1^q1 + p2^q2) + R(p1^q2 - p2^q1) inside u(1,1)."""
    return _pk(build_frame(PSEUDO_KAEHLER, 0), K, [build_pk_element(0, a1=1, K=K), build_pk_element(0, a2=1, K=K)])


def hol2(K: Domain = QQ) -> MatrixLieAlgebra:
    """R(p1^e1 + p2^f1) + R p1^p2 inside u(1,2)."""
    return _pk(build_frame(PSEUDO_KAEHLER, 1), K, [build_pk_element(1, z1=[1], K=K), build_pk_element(1, c=1, K=K)])


def hol3(m: int, n: int, K: Domain = QQ) -> MatrixLieAlgebra:
    """R(2J - J_m) + N1 + N2_{1..m} + R p1^p2 inside u(1,n+1)."""
    if not 0 <= m <= n:
        raise FrameMismatchError(f"hol3 needs 0 <= m <= n, got m={m}, n={n}")
    C = [[K.zero] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = K.one if i < m else K.convert(2)
    mats = [build_pk_element(n, a2=2, C=C, K=K)]
    for i in range(n):
        z = [K.zero] * n
        z[i] = K.one
        mats.append(build_pk_element(n, z1=z, K=K))
        if i < m:
            mats.append(build_pk_element(n, z2=z, K=K))
    mats.append(build_pk_element(n, c=1, K=K))
    return _pk(build_frame(PSEUDO_KAEHLER, n), K, mats)


# ============================================
# 2) CURVATURE TENSORS OF THE PAIRS
# ============================================

class _Values:
    """R(x ^ y) accumulated by frame vector names."""

    def __init__(self, frame: StandardFrame, K: Domain):
        self.frame = frame
        self.K = K
        self.values: Dict[Tuple[int, int], DomainMatrix] = {}

    def w(self, x: str, y: str) -> DomainMatrix:
        return frame_wedge(self.frame, {x: 1}, {y: 1}, self.K)

    def put(self, x: str, y: str, M: DomainMatrix) -> None:
        a, b = self.frame.index[x], self.frame.index[y]
        if a > b:
            a, b, M = b, a, -M
        self.values[(a, b)] = self.values.get((a, b), zeros(self.frame.dim, self.K)) + M

    def tensor(self) -> CurvatureTensor:
        return CurvatureTensor(self.frame.structure(self.K), self.values)


def _require(frame: StandardFrame, ok: bool, what: str) -> None:
    if frame.case != PSEUDO_KAEHLER:
        raise FrameMismatchError(f"symmetric-pair tensors live on pseudo-Kaehler frames, got {frame.case}")
    if not ok:
        raise FrameMismatchError(f"{what} (frame n={frame.n})")


def r_lambda5(frame: StandardFrame, lam: Any = 1, K: Domain = QQ) -> CurvatureTensor:
    _require(frame, True, "")
    v = _Values(frame, K)
    v.put("q1", "q2", v.w("p1", "p2").mul(K.convert(lam)))
    return v.tensor()


def r_lambda12(frame: StandardFrame, lam1: Any = 0, lam2: Any = 0, K: Domain = QQ) -> CurvatureTensor:
    """R(p1^q1) = R(p2^q2) = l1 X + l2 Y and R(p1^q2) = -R(p2^q1) = -l2 X + l1 Y,
    with X = p1^q1 + p2^q2 and Y = p1^q2 - p2^q1."""
    _require(frame, True, "")
    v = _Values(frame, K)
    l1, l2 = K.convert(lam1), K.convert(lam2)
    X = v.w("p1", "q1") + v.w("p2", "q2")
    Y = v.w("p1", "q2") - v.w("p2", "q1")
    first = X.mul(l1) + Y.mul(l2)
    second = Y.mul(l1) - X.mul(l2)
    v.put("p1", "q1", first)
    v.put("p2", "q2", first)
    v.put("p1", "q2", second)
    v.put("p2", "q1", -second)
    return v.tensor()


def r_m3_e1(frame: StandardFrame, K: Domain = QQ) -> CurvatureTensor:
    _require(frame, frame.n >= 1, "R_M3_e1 needs n >= 1")
    v = _Values(frame, K)
    v.put("q1", "q2", v.w("p1", "e1") + v.w("p2", "f1"))
    v.put("q1", "e1", v.w("p1", "p2"))
    v.put("q2", "f1", v.w("p1", "p2"))
    return v.tensor()


def r_one(frame: StandardFrame, m: int, K: Domain = QQ) -> CurvatureTensor:
    n = frame.n
    _require(frame, 0 <= m <= n, f"R_1 needs 0 <= m <= n, got m={m}")
    v = _Values(frame, K)
    half = K.convert(QQ(1, 2))
    two = K.convert(2)
    pp = v.w("p1", "p2")
    v.put("p1", "q2", pp.mul(-two))
    v.put("p2", "q1", pp.mul(two))
    for i in range(1, n + 1):
        e, f = f"e{i}", f"f{i}"
        plus = v.w("p1", e) + v.w("p2", f)
        if i <= m:
            v.put(e, f, -pp)
            v.put("q1", e, plus.mul(-half))
            v.put("q2", f, plus.mul(-half))
            minus = v.w("p1", f) - v.w("p2", e)
            v.put("q2", e, minus.mul(half))
            v.put("q1", f, minus.mul(-half))
        else:
            v.put(e, f, pp.mul(-two))
            v.put("q1", e, plus.mul(-two))
            v.put("q2", f, plus.mul(-two))
    C = [[K.zero] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = K.one if i < m else K.zero
    Jm = build_pk_element(n, a2=0, C=C, K=K)
    v.put("q1", "q2", Jm - frame.J.convert_to(K).mul(two))
    return v.tensor()


def named_tensor(name: str, frame: StandardFrame, m: int = 0, lam: Any = 1, K: Domain = QQ) -> CurvatureTensor:
    """One of the named tensors; `lam` scales R_lambda5/1/2, `m` parametrizes R_1."""
    if name == "R_lambda5":
        return r_lambda5(frame, lam, K)
    if name == "R_lambda1":
        return r_lambda12(frame, lam1=lam, K=K)
    if name == "R_lambda2":
        return r_lambda12(frame, lam2=lam, K=K)
    if name == "R_M3_e1":
        return r_m3_e1(frame, K)
    if name == "R_1":
        return r_one(frame, m, K)
    raise FrameMismatchError(f"unknown tensor '{name}' (expected one of {', '.join(TENSOR_NAMES)})")


# ============================================
# 3) RICCI FORM
# ============================================

def evaluate(R: CurvatureTensor, x: List[Any], y: List[Any]) -> DomainMatrix:
    """R(x, y) for frame vectors x, y."""
    K = R.domain
    out = zeros(R.dim, K)
    for a, xa in enumerate(x):
        if not xa:
            continue
        for b, yb in enumerate(y):
            if yb and a != b:
                out = out + R.value(a, b).mul(xa * yb)
    return out


def ricci(R: CurvatureTensor, frame: StandardFrame) -> DomainMatrix:
    if frame.J is None:
        raise MissingComplexStructureError(f"the {frame.case} frame carries no complex structure")
    if frame.dim != R.dim:
        raise FrameMismatchError(f"tensor of dim {R.dim} on a frame of dim {frame.dim}")
    K = R.domain
    J = frame.J.convert_to(K)
    Jrows = entries(J)
    d = R.dim
    neg_half = K.convert(QQ(-1, 2))
    rows = [[K.zero] * d for _ in range(d)]
    for a in range(d):
        ea = [K.one if s == a else K.zero for s in range(d)]
        for b in range(d):
            Jeb = [Jrows[s][b] for s in range(d)]
            M = entries(J * evaluate(R, ea, Jeb))
            tr = sum((M[i][i] for i in range(d)), K.zero)
            rows[a][b] = neg_half * tr
    return DomainMatrix(rows, (d, d), K)


def is_ricci_flat(R: CurvatureTensor, frame: StandardFrame) -> bool:
    return ricci(R, frame).is_zero_matrix


# ============================================
# 4) PAIR CHECKS
# ============================================

@dataclass
class SymmetricPairReport:
    in_r0: bool
    spans_hol: bool
    r0_dim: int
    hol_dim: int
    image_dim: int
    ricci: Optional[List[List[Any]]] = None
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.in_r0 and self.spans_hol


def r0_dimension(hol: MatrixLieAlgebra) -> int:
    return invariant_curvature_space(hol).dim


def verify_symmetric_pair(hol: MatrixLieAlgebra, R: CurvatureTensor) -> SymmetricPairReport:
    if R.dim != hol.n:
        raise FrameMismatchError(f"tensor of dim {R.dim} against an algebra in so({hol.n})")
    r0 = invariant_curvature_space(hol)
    in_r0 = r0.contains(R)
    image = span([flatten(M) for M in R.values.values()], hol.n * hol.n, hol.domain)
    spans = image == hol.subspace()
    notes = []
    if not in_r0:
        notes.append("R is not annihilated by hol or leaves R(hol)")
    if not spans:
        notes.append(f"values of R span dim {image.dim}, hol has dim {hol.dim}")
    logger.info(f"symmetric pair check: in R0={in_r0}, spans hol={spans} (dim R0 = {r0.dim})")
    return SymmetricPairReport(in_r0, spans, r0.dim, hol.dim, image.dim, notes=notes)


# ----------------------------
# Built-in pairs
# ----------------------------
PairBuilder = Callable[..., Tuple[MatrixLieAlgebra, CurvatureTensor, StandardFrame]]


def _b_hol1(sign: int) -> PairBuilder:
    def build(**_: Any):
        frame = build_frame(PSEUDO_KAEHLER, 0)
        return hol1(), r_lambda5(frame, sign), frame
    return build


def _b_hol1c(lam1: Any, lam2: Any) -> PairBuilder:
    def build(**_: Any):
        frame = build_frame(PSEUDO_KAEHLER, 0)
        return hol1c(), r_lambda12(frame, lam1, lam2), frame
    return build


def _b_hol2(**_: Any):
    frame = build_frame(PSEUDO_KAEHLER, 1)
    return hol2(), r_m3_e1(frame), frame


def _b_hol3(sign: int) -> PairBuilder:
    def build(m: int = 0, n: int = 0, lam5: Any = 0, **_: Any):
        frame = build_frame(PSEUDO_KAEHLER, n)
        R = r_one(frame, m) + r_lambda5(frame, lam5)
        return hol3(m, n), R.scaled(sign), frame
    return build


BUILTIN_PAIRS: Dict[str, PairBuilder] = {
    "hol1-pos": _b_hol1(1),
    "hol1-neg": _b_hol1(-1),
    "hol1c-lambda1": _b_hol1c(QQ(-1, 2), 0),
    "hol1c-lambda1-neg": _b_hol1c(1, 0),
    "hol1c-lambda2": _b_hol1c(0, 1),
    "hol2": _b_hol2,
    "hol3": _b_hol3(1),
    "hol3-neg": _b_hol3(-1),
}


def builtin_pair(name: str, **params: Any) -> Tuple[MatrixLieAlgebra, CurvatureTensor, StandardFrame]:
    try:
        builder = BUILTIN_PAIRS[name]
    except KeyError:
        raise FrameMismatchError(f"unknown built-in pair '{name}' (expected one of {', '.join(BUILTIN_PAIRS)})")
    return builder(**params)
