"""
Standard isotropic frames and coordinate builders.

Lorentz(n):        basis p, e1..en, q with eta(p, q) = 1 and eta(e_i, e_i) = 1.
PseudoKaehler(n):  basis p1, p2, e1..en, f1..fn, q1, q2 with eta(p_a, q_a) = 1,
                   eta(e_i, e_i) = eta(f_i, f_i) = 1 and J p1 = p2, J e_i = f_i, J q1 = q2.

Elements of u(1,n+1)_{<p1,p2>} are addressed by (a1, a2, B, C, z1, z2, c) and
elements of so(1,n+1)_{Rp} by (a, A, X).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from core.errors import DimensionMismatchError, FrameMismatchError, InvalidStructureError
from core.exactnum import rational
from core.liealg import MetricStructure
from core.linalg import entries, matrix, zeros
from core.logs import get_logger

logger = get_logger("frames")

LORENTZ = "lorentz"
PSEUDO_KAEHLER = "pseudo-kaehler"


@dataclass
class StandardFrame:
    case: str
    n: int
    eta: DomainMatrix
    J: Optional[DomainMatrix] = None
    index: Dict[str, int] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.eta.shape[0]

    @property
    def domain(self) -> Domain:
        return self.eta.domain

    def structure(self, K: Optional[Domain] = None) -> MetricStructure:
        ms = MetricStructure(self.dim, self.eta, self.J)
        return ms.convert_to(K) if K is not None else ms

    def vector(self, name: str, K: Domain = QQ) -> List[Any]:
        try:
            i = self.index[name]
        except KeyError:
            raise FrameMismatchError(f"frame {self.case}({self.n}) has no basis vector '{name}'")
        return [K.one if j == i else K.zero for j in range(self.dim)]

    def combo(self, terms: Dict[str, Any], K: Domain = QQ) -> List[Any]:
        """Vector sum_name coeff * name."""
        out = [K.zero] * self.dim
        for name, c in terms.items():
            out = [x + K.convert(c) * y for x, y in zip(out, self.vector(name, K))]
        return out


def build_frame(case: str, n: int) -> StandardFrame:
    if n < 0:
        raise DimensionMismatchError("frame size must be non-negative", expected=">=0", got=n)
    if case == LORENTZ:
        d = n + 2
        eta = [[0] * d for _ in range(d)]
        eta[0][d - 1] = eta[d - 1][0] = 1
        for i in range(1, n + 1):
            eta[i][i] = 1
        index = {"p": 0, "q": d - 1}
        index.update({f"e{i}": i for i in range(1, n + 1)})
        return StandardFrame(LORENTZ, n, matrix(eta), None, index)
    if case == PSEUDO_KAEHLER:
        d = 2 * n + 4
        eta = [[0] * d for _ in range(d)]
        eta[0][d - 2] = eta[d - 2][0] = 1
        eta[1][d - 1] = eta[d - 1][1] = 1
        for i in range(2, 2 * n + 2):
            eta[i][i] = 1
        index = {"p1": 0, "p2": 1, "q1": d - 2, "q2": d - 1}
        index.update({f"e{i}": 1 + i for i in range(1, n + 1)})
        index.update({f"f{i}": 1 + n + i for i in range(1, n + 1)})
        eye_n = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        J = build_pk_element(n, a2=1, C=eye_n)
        return StandardFrame(PSEUDO_KAEHLER, n, matrix(eta), J, index)
    raise FrameMismatchError(f"unknown frame case '{case}' (expected '{LORENTZ}' or '{PSEUDO_KAEHLER}')")


# ============================================
# 1) COORDINATE BUILDERS
# ============================================

def _square(rows: Optional[Sequence[Sequence[Any]]], n: int, K: Domain) -> List[List[Any]]:
    if rows is None:
        return [[K.zero] * n for _ in range(n)]
    if isinstance(rows, DomainMatrix):
        rows = entries(rows.convert_to(K))
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DimensionMismatchError("block has the wrong size", expected=(n, n), got=(len(rows), len(rows[0]) if rows else 0))
    return [[_conv(x, K) for x in r] for r in rows]


def _vec(v: Optional[Sequence[Any]], n: int, K: Domain) -> List[Any]:
    if v is None:
        return [K.zero] * n
    if len(v) != n:
        raise DimensionMismatchError("vector has the wrong length", expected=n, got=len(v))
    return [_conv(x, K) for x in v]


def _conv(x: Any, K: Domain):
    if isinstance(x, (int, str)):
        return rational(x, K)
    return K.convert(x)


def build_pk_element(
    n: int,
    a1: Any = 0,
    a2: Any = 0,
    B: Optional[Sequence[Sequence[Any]]] = None,
    C: Optional[Sequence[Sequence[Any]]] = None,
    z1: Optional[Sequence[Any]] = None,
    z2: Optional[Sequence[Any]] = None,
    c: Any = 0,
    K: Domain = QQ,
) -> DomainMatrix:
    """Matrix of (a1, a2, B, C, z1, z2, c) in u(1,n+1)_{<p1,p2>}."""
    a1, a2, c = _conv(a1, K), _conv(a2, K), _conv(c, K)
    Bm, Cm = _square(B, n, K), _square(C, n, K)
    for i in range(n):
        for j in range(n):
            if Bm[i][j] != -Bm[j][i]:
                raise InvalidStructureError("B must be skew-symmetric")
            if Cm[i][j] != Cm[j][i]:
                raise InvalidStructureError("C must be symmetric")
    x1, x2 = _vec(z1, n, K), _vec(z2, n, K)
    d = 2 * n + 4
    Z = K.zero
    rows = [[Z] * d for _ in range(d)]
    q1, q2 = d - 2, d - 1
    rows[0][0], rows[0][1], rows[0][q2] = a1, -a2, -c
    rows[1][0], rows[1][1], rows[1][q1] = a2, a1, c
    rows[q1][q1], rows[q1][q2] = -a1, -a2
    rows[q2][q1], rows[q2][q2] = a2, -a1
    for i in range(n):
        e, f = 2 + i, 2 + n + i
        rows[0][e], rows[0][f] = -x1[i], -x2[i]
        rows[1][e], rows[1][f] = x2[i], -x1[i]
        rows[e][q1], rows[e][q2] = x1[i], -x2[i]
        rows[f][q1], rows[f][q2] = x2[i], x1[i]
        for j in range(n):
            rows[e][2 + j] = Bm[i][j]
            rows[e][2 + n + j] = -Cm[i][j]
            rows[f][2 + j] = Cm[i][j]
            rows[f][2 + n + j] = Bm[i][j]
    return DomainMatrix(rows, (d, d), K)


def pk_coordinates(X: DomainMatrix, n: int) -> Dict[str, Any]:
    """Inverse of build_pk_element (no membership check)."""
    d = 2 * n + 4
    if X.shape != (d, d):
        raise DimensionMismatchError("element has the wrong size", expected=(d, d), got=X.shape)
    r = entries(X)
    return {
        "a1": r[0][0],
        "a2": r[1][0],
        "B": [[r[2 + i][2 + j] for j in range(n)] for i in range(n)],
        "C": [[r[2 + n + i][2 + j] for j in range(n)] for i in range(n)],
        "z1": [r[2 + i][d - 2] for i in range(n)],
        "z2": [r[2 + n + i][d - 2] for i in range(n)],
        "c": r[1][d - 2],
    }


def su_condition(X: DomainMatrix, n: int) -> bool:
    """2 a2 + tr C == 0."""
    co = pk_coordinates(X, n)
    tr = sum((co["C"][i][i] for i in range(n)), X.domain.zero)
    return not (2 * co["a2"] + tr)


def I0(n: int, K: Domain = QQ) -> DomainMatrix:
    """The element of su(1,n+1)_{<p1,p2>} complementing A1 + su(n) on the reductive part."""
    s = K.convert(QQ(2, n + 2))
    return build_pk_element(n, a2=-K.convert(QQ(n, n + 2)), C=[[s if i == j else K.zero for j in range(n)] for i in range(n)], K=K)


def J_range(n: int, m1: int, m2: int, K: Domain = QQ) -> DomainMatrix:
    """J restricted to E_{m1..m2} (1-based, inclusive) and zero elsewhere."""
    C = [[K.one if i == j and m1 - 1 <= i <= m2 - 1 else K.zero for j in range(n)] for i in range(n)]
    return build_pk_element(n, C=C, K=K)


def build_lorentz_element(
    n: int,
    a: Any = 0,
    A: Optional[Sequence[Sequence[Any]]] = None,
    X: Optional[Sequence[Any]] = None,
    K: Domain = QQ,
) -> DomainMatrix:
    """Matrix of (a, A, X) in so(1,n+1)_{Rp}."""
    a = _conv(a, K)
    Am = _square(A, n, K)
    for i in range(n):
        for j in range(n):
            if Am[i][j] != -Am[j][i]:
                raise InvalidStructureError("A must be skew-symmetric")
    x = _vec(X, n, K)
    d = n + 2
    rows = [[K.zero] * d for _ in range(d)]
    rows[0][0] = a
    rows[d - 1][d - 1] = -a
    for i in range(n):
        rows[0][1 + i] = x[i]
        rows[1 + i][d - 1] = -x[i]
        for j in range(n):
            rows[1 + i][1 + j] = Am[i][j]
    return DomainMatrix(rows, (d, d), K)


def lorentz_coordinates(X: DomainMatrix, n: int) -> Dict[str, Any]:
    r = entries(X)
    return {
        "a": r[0][0],
        "A": [[r[1 + i][1 + j] for j in range(n)] for i in range(n)],
        "X": [r[0][1 + i] for i in range(n)],
    }


def embed_block(A: DomainMatrix, n: int, offset: int = 0) -> DomainMatrix:
    """Place a k x k block at rows/cols offset..offset+k-1 of an n x n zero matrix."""
    K = A.domain
    k = A.shape[0]
    if offset + k > n:
        raise DimensionMismatchError("block does not fit", expected=n, got=offset + k)
    rows = entries(zeros(n, K))
    Ae = entries(A)
    for i in range(k):
        for j in range(k):
            rows[offset + i][offset + j] = Ae[i][j]
    return DomainMatrix(rows, (n, n), K)


# ============================================
# 2) WEDGES
# ============================================

def wedge(eta: DomainMatrix, x: Sequence[Any], y: Sequence[Any]) -> DomainMatrix:
    """(x ^ y) z = eta(x, z) y − eta(y, z) x."""
    K = eta.domain
    d = eta.shape[0]
    E = entries(eta)
    ex = [sum((x[a] * E[a][j] for a in range(d)), K.zero) for j in range(d)]
    ey = [sum((y[a] * E[a][j] for a in range(d)), K.zero) for j in range(d)]
    rows = [[y[i] * ex[j] - x[i] * ey[j] for j in range(d)] for i in range(d)]
    return DomainMatrix(rows, (d, d), K)


def frame_wedge(frame: StandardFrame, x: Dict[str, Any], y: Dict[str, Any], K: Domain = QQ) -> DomainMatrix:
    return wedge(frame.eta.convert_to(K), frame.combo(x, K), frame.combo(y, K))


# ============================================
# 3) SMALL ALGEBRA BASES
# ============================================

def skew_unit(n: int, i: int, j: int, K: Domain = QQ) -> List[List[Any]]:
    """E_ij − E_ji (0-based)."""
    rows = [[K.zero] * n for _ in range(n)]
    rows[i][j] = K.one
    rows[j][i] = -K.one
    return rows


def so_basis(n: int, K: Domain = QQ) -> List[List[List[Any]]]:
    return [skew_unit(n, i, j, K) for i in range(n) for j in range(i + 1, n)]


def u_basis(m: int, n: int, K: Domain = QQ) -> List[Tuple[List[List[Any]], List[List[Any]]]]:
    """(B, C) pairs spanning u(m) inside u(n), acting on the first m coordinates."""
    zero = [[K.zero] * n for _ in range(n)]
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            out.append((skew_unit(n, i, j, K), [row[:] for row in zero]))
    for i in range(m):
        for j in range(i, m):
            C = [row[:] for row in zero]
            C[i][j] = C[j][i] = K.one
            out.append(([row[:] for row in zero], C))
    return out


def sod_basis(n: int, k: int, l: int, K: Domain = QQ) -> List[Tuple[List[List[Any]], List[List[Any]]]]:
    """sod(k..l): so(l−k+1) acting identically on e_k..e_l and f_k..f_l (1-based)."""
    zero = [[K.zero] * n for _ in range(n)]
    return [
        (skew_unit(n, i, j, K), [row[:] for row in zero])
        for i in range(k - 1, l)
        for j in range(i + 1, l)
    ]
