"""
Polynomial pseudo-Riemannian metrics and their curvature.

Index conventions:
    gamma[a][b][c]   = Γ^a_{bc}
    R^a_{bcd}        = ∂_c Γ^a_{db} − ∂_d Γ^a_{cb} + Γ^a_{ce} Γ^e_{db} − Γ^a_{de} Γ^e_{cb}
so that, with (Γ_c)^a_b = Γ^a_{cb}, the endomorphism R(∂_c, ∂_d) is
∂_c Γ_d − ∂_d Γ_c + [Γ_c, Γ_d].
Covariant derivatives append their new lower index last.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyRing

from core.errors import DimensionMismatchError, UnsupportedMetricError
from core.exactnum import Polynomial, constant_term, partial, poly_ring, shift, total_degree, truncate
from core.logs import get_logger

logger = get_logger("geometry")

PolyMatrix = List[List[Polynomial]]
Index = Tuple[int, ...]


# ============================================
# 1) POLYNOMIAL MATRICES
# ============================================

def pm_zero(ring: PolyRing, n: int) -> PolyMatrix:
    return [[ring.zero] * n for _ in range(n)]


def pm_identity(ring: PolyRing, n: int) -> PolyMatrix:
    out = pm_zero(ring, n)
    for i in range(n):
        out[i][i] = ring.one
    return out


def pm_add(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def pm_sub(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def pm_neg(A: PolyMatrix) -> PolyMatrix:
    return [[-a for a in row] for row in A]


def pm_mul(A: PolyMatrix, B: PolyMatrix, degree: Optional[int] = None) -> PolyMatrix:
    """Product A·B, truncated to `degree` when given."""
    n, m, k = len(A), len(B[0]) if B else 0, len(B)
    ring = A[0][0].ring
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ring.zero
            for t in range(k):
                a, b = A[i][t], B[t][j]
                if a and b:
                    acc += a * b
            row.append(truncate(acc, degree) if degree is not None else acc)
        out.append(row)
    return out


def pm_diff(A: PolyMatrix, var: int) -> PolyMatrix:
    return [[partial(a, var) if a else a for a in row] for row in A]


def pm_truncate(A: PolyMatrix, degree: int) -> PolyMatrix:
    return [[truncate(a, degree) for a in row] for row in A]


def pm_is_zero(A: PolyMatrix) -> bool:
    return not any(a for row in A for a in row)


def pm_constant(A: PolyMatrix, K: Domain) -> DomainMatrix:
    n = len(A)
    return DomainMatrix([[constant_term(a) for a in row] for row in A], (n, len(A[0]) if n else 0), K)


def pm_from_matrix(M: DomainMatrix, ring: PolyRing) -> PolyMatrix:
    return [[ring.ground_new(x) for x in row] for row in M.to_dense().to_list()]


def pm_degree(A: PolyMatrix) -> int:
    return max((total_degree(a) for row in A for a in row), default=-1)


# ============================================
# 2) METRICS
# ============================================

@dataclass
class PolynomialMetric:
    """Symmetric matrix of polynomials g_ab in x0..x{dim-1} with a basepoint."""
    dim: int
    g: PolyMatrix
    basepoint: List[Any] = field(default_factory=list)

    def __post_init__(self) -> None:
        n = self.dim
        if len(self.g) != n or any(len(row) != n for row in self.g):
            raise DimensionMismatchError("metric must be a square array", expected=n, got=len(self.g))
        if self.g[0][0].ring.ngens != n:
            raise DimensionMismatchError("metric ring has the wrong variable count", expected=n, got=self.g[0][0].ring.ngens)
        if not self.basepoint:
            self.basepoint = [self.domain.zero] * n
        if len(self.basepoint) != n:
            raise DimensionMismatchError("basepoint length differs from dimension", expected=n, got=len(self.basepoint))
        self.basepoint = [self.domain.convert(x) for x in self.basepoint]
        for i in range(n):
            for j in range(i + 1, n):
                if self.g[i][j] != self.g[j][i]:
                    raise UnsupportedMetricError(f"metric is not symmetric at ({i},{j})")

    @property
    def ring(self) -> PolyRing:
        return self.g[0][0].ring

    @property
    def domain(self) -> Domain:
        return self.ring.domain

    def centered(self) -> "PolynomialMetric":
        """The same metric in coordinates where the basepoint is the origin."""
        if not any(self.basepoint):
            return self
        g = [[shift(p, self.basepoint) for p in row] for row in self.g]
        return PolynomialMetric(self.dim, g, [self.domain.zero] * self.dim)

    def at_basepoint(self) -> DomainMatrix:
        return pm_constant(self.centered().g, self.domain)


def flat_metric(eta: DomainMatrix) -> PolynomialMetric:
    n = eta.shape[0]
    return PolynomialMetric(n, pm_from_matrix(eta, poly_ring(n, eta.domain)))


def random_unimodular_metric(eta: DomainMatrix, rng: random.Random, degree: int = 1, bound: int = 3) -> PolynomialMetric:
    """L^T eta L with L = I + (strictly upper triangular polynomials of degree <= `degree`
    without constant term), so det g = det eta and g(0) = eta."""
    n, K = eta.shape[0], eta.domain
    ring = poly_ring(n, K)
    monomials = [m for m in _monomials(n, degree) if sum(m)]
    L = pm_identity(ring, n)
    for i in range(n):
        for j in range(i + 1, n):
            p = ring.zero
            for mono in monomials:
                c = rng.randint(-bound, bound)
                if c:
                    p += ring.from_dict({mono: K.convert(c)})
            L[i][j] = p
    Lt = [[L[j][i] for j in range(n)] for i in range(n)]
    g = pm_mul(pm_mul(Lt, pm_from_matrix(eta, ring)), L)
    return PolynomialMetric(n, g)


def _monomials(n: int, degree: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    return [(k,) + rest for k in range(degree + 1) for rest in _monomials(n - 1, degree - k)]


def metric_inverse(m: PolynomialMetric) -> PolyMatrix:
    """Exact polynomial inverse of g; requires a constant nonzero determinant.

    With g = g0 + h (g0 the constant part) and N = g0^-1 h, the inverse is
    the finite sum of (-N)^k g0^-1 once everything above degree
    (dim-1)·deg(g) is discarded.
    """
    n, K, ring = m.dim, m.domain, m.ring
    g0 = pm_constant(m.g, K)
    try:
        g0inv = g0.to_field().inv()
    except Exception:
        raise UnsupportedMetricError("metric is degenerate at the origin, so its determinant is not a nonzero constant")
    h = pm_sub(m.g, pm_from_matrix(g0, ring))
    bound = max((n - 1) * pm_degree(m.g), 0)
    g0inv_p = pm_from_matrix(g0inv, ring)
    N = pm_mul(g0inv_p, h, bound)
    term = g0inv_p
    total = g0inv_p
    for _ in range(bound):
        term = pm_neg(pm_mul(N, term, bound))
        if pm_is_zero(term):
            break
        total = pm_add(total, term)
    check = pm_mul(m.g, total)
    if check != pm_identity(ring, n):
        raise UnsupportedMetricError("metric determinant is not constant; its inverse is not polynomial")
    return total


# ============================================
# 3) CONNECTION AND CURVATURE
# ============================================

@dataclass
class ChristoffelField:
    """gamma[a][b][c] = Γ^a_{bc}."""
    dim: int
    gamma: List[PolyMatrix]

    @property
    def ring(self) -> PolyRing:
        return self.gamma[0][0][0].ring

    def connection_matrix(self, e: int) -> PolyMatrix:
        """(Γ_e)^a_b = Γ^a_{eb}."""
        return [[self.gamma[a][e][b] for b in range(self.dim)] for a in range(self.dim)]


@dataclass
class TensorField:
    """Curvature (order 0) or its r-th covariant derivative.

    components maps (a, b, c, d, f1, ..., fr) to the nonzero polynomial
    R^a_{bcd;f1...fr}.
    """
    dim: int
    order: int
    ring: PolyRing
    components: Dict[Index, Polynomial] = field(default_factory=dict)

    def get(self, idx: Index) -> Polynomial:
        return self.components.get(idx, self.ring.zero)

    def is_zero(self) -> bool:
        return not self.components

    def endomorphism_at_origin(self, c: int, d: int, path: Index = ()) -> DomainMatrix:
        n = self.dim
        rows = [[constant_term(self.get((a, b, c, d) + tuple(path))) for b in range(n)] for a in range(n)]
        return DomainMatrix(rows, (n, n), self.ring.domain)


def christoffel(m: PolynomialMetric) -> ChristoffelField:
    n = m.dim
    ginv = metric_inverse(m)
    dg = [[[partial(m.g[i][j], k) for j in range(n)] for i in range(n)] for k in range(n)]
    # lowered symbols Γ_{e,bc}
    low = [[[(dg[b][e][c] + dg[c][e][b] - dg[e][b][c]) for c in range(n)] for b in range(n)] for e in range(n)]
    half = m.domain.convert(QQ(1, 2))
    gamma = []
    for a in range(n):
        block = []
        for b in range(n):
            row = []
            for c in range(n):
                acc = m.ring.zero
                for e in range(n):
                    if ginv[a][e] and low[e][b][c]:
                        acc += ginv[a][e] * low[e][b][c]
                row.append(acc * half)
            block.append(row)
        gamma.append(block)
    return ChristoffelField(n, gamma)


def curvature_operator(conn: Sequence[PolyMatrix], dconn: Sequence[Sequence[PolyMatrix]], c: int, d: int,
                       degree: Optional[int] = None) -> PolyMatrix:
    """R(∂_c, ∂_d) = ∂_c Γ_d − ∂_d Γ_c + [Γ_c, Γ_d]; dconn[x][y] = ∂_x Γ_y."""
    comm = pm_sub(pm_mul(conn[c], conn[d], degree), pm_mul(conn[d], conn[c], degree))
    out = pm_add(pm_sub(dconn[c][d], dconn[d][c]), comm)
    return pm_truncate(out, degree) if degree is not None else out


def curvature(cf: ChristoffelField) -> TensorField:
    n = cf.dim
    conn = [cf.connection_matrix(e) for e in range(n)]
    dconn = [[pm_diff(conn[y], x) for y in range(n)] for x in range(n)]
    comps: Dict[Index, Polynomial] = {}
    for c, d in combinations(range(n), 2):
        op = curvature_operator(conn, dconn, c, d)
        for a in range(n):
            for b in range(n):
                if op[a][b]:
                    comps[(a, b, c, d)] = op[a][b]
                    comps[(a, b, d, c)] = -op[a][b]
    return TensorField(n, 0, cf.ring, comps)


def covariant_derivative(t: TensorField, cf: ChristoffelField) -> TensorField:
    """∇T with the derivative direction appended as the last lower index."""
    n = t.dim
    out: Dict[Index, Polynomial] = {}

    def bump(idx: Index, val) -> None:
        if not val:
            return
        nv = out.get(idx, t.ring.zero) + val
        if nv:
            out[idx] = nv
        else:
            out.pop(idx, None)

    gamma = cf.gamma
    for idx, val in t.components.items():
        upper, lower = idx[0], idx[1:]
        for f in range(n):
            bump(idx + (f,), partial(val, f))
            for a2 in range(n):
                gm = gamma[a2][f][upper]
                if gm:
                    bump((a2,) + lower + (f,), gm * val)
            for slot, s in enumerate(lower):
                for i in range(n):
                    gm = gamma[s][f][i]
                    if gm:
                        new_lower = lower[:slot] + (i,) + lower[slot + 1:]
                        bump((upper,) + new_lower + (f,), -gm * val)
    return TensorField(n, t.order + 1, t.ring, out)


# ============================================
# 4) IDENTITY CHECKS
# ============================================

def christoffel_symmetric(cf: ChristoffelField) -> bool:
    n = cf.dim
    return all(cf.gamma[a][b][c] == cf.gamma[a][c][b] for a in range(n) for b in range(n) for c in range(b + 1, n))


def metric_compatible(m: PolynomialMetric, cf: ChristoffelField) -> bool:
    """∂_c g_ab − Γ^e_{ca} g_eb − Γ^e_{cb} g_ae == 0 for all a, b, c."""
    n = m.dim
    g, gm = m.g, cf.gamma
    for c in range(n):
        for a in range(n):
            for b in range(a, n):
                acc = partial(g[a][b], c)
                for e in range(n):
                    acc -= gm[e][c][a] * g[e][b] + gm[e][c][b] * g[a][e]
                if acc:
                    return False
    return True


def curvature_antisymmetric(t: TensorField) -> bool:
    for idx, v in t.components.items():
        a, b, c, d = idx[:4]
        if t.get((a, b, d, c) + idx[4:]) != -v:
            return False
    return True


def first_bianchi_holds(t: TensorField) -> bool:
    """R^a_{bcd} + R^a_{cdb} + R^a_{dbc} == 0 (order 0)."""
    n = t.dim
    for a in range(n):
        for b, c, d in combinations(range(n), 3):
            if t.get((a, b, c, d)) + t.get((a, c, d, b)) + t.get((a, d, b, c)):
                return False
    return True


def lowered_at_origin(t: TensorField, eta: DomainMatrix) -> Dict[Tuple[int, int], List[List[Any]]]:
    """(c, d) -> matrix of eta(R(∂_c,∂_d) ∂_z, ∂_w) indexed [w][z]."""
    out = {}
    for c, d in combinations(range(t.dim), 2):
        out[(c, d)] = (eta * t.endomorphism_at_origin(c, d)).to_dense().to_list()
    return out


def pair_symmetric_at_origin(t: TensorField, eta: DomainMatrix) -> bool:
    low = lowered_at_origin(t, eta)
    for (a, b), L1 in low.items():
        for (c, d), L2 in low.items():
            if L1[d][c] != L2[b][a]:
                return False
    return True
