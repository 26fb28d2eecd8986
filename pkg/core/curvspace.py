"""
Spaces of algebraic curvature tensors.

Every space here is the exact nullspace of a sparse linear system whose
unknowns are the coordinates of R(e_a ^ e_b), a < b, in the basis of the
target algebra, ordered lexicographically by (bivector, basis index).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Sequence, Tuple

from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from core.exactnum import common_field
from core.errors import ContainmentError, CurvatureTensorError, DimensionMismatchError, NotInSoError
from core.linalg import (
    Subspace,
    contains,
    entries,
    flatten,
    is_subspace,
    lin_comb,
    nullspace,
    reduce,
    sparse_matrix,
    span,
    zeros,
)
from core.liealg import MatrixLieAlgebra, MetricStructure, is_in_so
from core.logs import get_logger

logger = get_logger("curvspace")

Pair = Tuple[int, int]


def bivectors(n: int) -> List[Pair]:
    return list(combinations(range(n), 2))


# ============================================
# 1) TENSORS
# ============================================

@dataclass
class CurvatureTensor:
    """R(e_a ^ e_b) for a < b; missing pairs are zero."""
    ambient: MetricStructure
    values: Dict[Pair, DomainMatrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = self.dim
        K = self.domain
        clean: Dict[Pair, DomainMatrix] = {}
        for (a, b), m in self.values.items():
            if not (0 <= a < b < n):
                raise CurvatureTensorError(f"bivector index ({a},{b}) is not an ordered pair below {n}")
            if m.shape != (n, n):
                raise DimensionMismatchError("curvature value has the wrong shape", expected=(n, n), got=m.shape)
            m = m.convert_to(K)
            if not m.is_zero_matrix:
                clean[(a, b)] = m
        self.values = clean
        bad = self.bianchi_defect()
        if bad is not None:
            raise CurvatureTensorError(f"first Bianchi identity fails on frame triple {bad}")

    @property
    def dim(self) -> int:
        return self.ambient.dim

    @property
    def domain(self) -> Domain:
        return self.ambient.domain

    def value(self, a: int, b: int) -> DomainMatrix:
        if a == b:
            return zeros(self.dim, self.domain)
        if a > b:
            return -self.value(b, a)
        m = self.values.get((a, b))
        return m if m is not None else zeros(self.dim, self.domain)

    def is_zero(self) -> bool:
        return not self.values

    def bianchi_defect(self):
        cols = {p: entries(m) for p, m in self.values.items()}

        def col(a: int, b: int, w: int):
            rows = cols.get((a, b))
            return None if rows is None else [r[w] for r in rows]

        for u, v, w in combinations(range(self.dim), 3):
            acc = [self.domain.zero] * self.dim
            for c, sign in ((col(u, v, w), 1), (col(v, w, u), 1), (col(u, w, v), -1)):
                if c is not None:
                    acc = [x + sign * y for x, y in zip(acc, c)]
            if any(acc):
                return (u, v, w)
        return None

    def flat(self) -> List[Any]:
        out: List[Any] = []
        for p in bivectors(self.dim):
            out.extend(flatten(self.value(*p)))
        return out

    def __add__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        keys = set(self.values) | set(other.values)
        return CurvatureTensor(self.ambient, {p: self.value(*p) + other.value(*p) for p in keys})

    def scaled(self, c) -> "CurvatureTensor":
        return CurvatureTensor(self.ambient, {p: m.mul(self.domain.convert(c)) for p, m in self.values.items()})


def zero_tensor(ambient: MetricStructure) -> CurvatureTensor:
    return CurvatureTensor(ambient, {})


def pair_symmetry_check(R: CurvatureTensor) -> bool:
    """eta(R(u^v)z, w) == eta(R(z^w)u, v) on every frame quadruple."""
    eta = R.ambient.eta
    lowered = {p: entries(eta * R.value(*p)) for p in bivectors(R.dim)}
    for (a, b) in bivectors(R.dim):
        for (c, d) in bivectors(R.dim):
            if lowered[(a, b)][d][c] != lowered[(c, d)][b][a]:
                return False
    return True


# ============================================
# 2) SPACES
# ============================================

@dataclass
class CurvatureSpace:
    target: MatrixLieAlgebra
    basis: List[CurvatureTensor] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def as_subspace(self) -> Subspace:
        n = self.target.n
        return span([R.flat() for R in self.basis], len(bivectors(n)) * n * n, self.target.domain)

    def contains(self, R: CurvatureTensor) -> bool:
        return contains(self.as_subspace(), R.flat())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurvatureSpace):
            return NotImplemented
        return self.target == other.target and self.as_subspace() == other.as_subspace()


@dataclass
class WeakCurvatureSpace:
    """Linear maps P: R^n -> target, each stored as [P(e_0), ..., P(e_{n-1})]."""
    target: MatrixLieAlgebra
    basis: List[List[DomainMatrix]] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, P: Sequence[DomainMatrix]) -> bool:
        n = self.target.n
        K = self.target.domain
        flat = [x for m in P for x in flatten(m.convert_to(K))]
        sub = span([[x for m in Q for x in flatten(m)] for Q in self.basis], n * n * n, K)
        return contains(sub, flat)

    def image_span(self) -> Subspace:
        n = self.target.n
        return span([flatten(m) for P in self.basis for m in P], n * n, self.target.domain)


class _Unknowns:
    """Index map (bivector, target basis index) -> column."""

    def __init__(self, n: int, g_dim: int):
        self.pairs = bivectors(n)
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.g_dim = g_dim

    @property
    def count(self) -> int:
        return len(self.pairs) * self.g_dim

    def col(self, a: int, b: int, t: int) -> Tuple[int, int]:
        """(column, sign) of the t-th coordinate of R(e_a ^ e_b); a != b."""
        if a < b:
            return self.pair_index[(a, b)] * self.g_dim + t, 1
        return self.pair_index[(b, a)] * self.g_dim + t, -1


def _add(row: Dict[int, Any], col: int, val) -> None:
    if val:
        nv = row.get(col, 0) + val
        if nv:
            row[col] = nv
        else:
            row.pop(col, None)


def _bianchi_rows(g: MatrixLieAlgebra, unk: _Unknowns) -> List[Dict[int, Any]]:
    n = g.n
    B = [entries(b) for b in g.basis]
    rows: List[Dict[int, Any]] = []
    for u, v, w in combinations(range(n), 3):
        for i in range(n):
            row: Dict[int, Any] = {}
            for t, bt in enumerate(B):
                _add(row, unk.col(u, v, t)[0], bt[i][w])
                _add(row, unk.col(v, w, t)[0], bt[i][u])
                _add(row, unk.col(u, w, t)[0], -bt[i][v])
            if row:
                rows.append(row)
    return rows


def _annihilation_rows(g: MatrixLieAlgebra, unk: _Unknowns) -> List[Dict[int, Any]]:
    """[R(e_a^e_b), A] + R(A e_a ^ e_b) + R(e_a ^ A e_b) = 0 for every basis A."""
    n = g.n
    B = [entries(b) for b in g.basis]
    rows: List[Dict[int, Any]] = []
    for A in g.basis:
        Ae = entries(A)
        comm = [entries(b * A - A * b) for b in g.basis]
        for a, b in unk.pairs:
            for i in range(n):
                for j in range(n):
                    row: Dict[int, Any] = {}
                    for t in range(unk.g_dim):
                        _add(row, unk.col(a, b, t)[0], comm[t][i][j])
                    for s in range(n):
                        if Ae[s][a] and s != b:
                            for t in range(unk.g_dim):
                                c, sign = unk.col(s, b, t)
                                _add(row, c, sign * Ae[s][a] * B[t][i][j])
                        if Ae[s][b] and s != a:
                            for t in range(unk.g_dim):
                                c, sign = unk.col(a, s, t)
                                _add(row, c, sign * Ae[s][b] * B[t][i][j])
                    if row:
                        rows.append(row)
    return rows


def _tensors_from_coords(g: MatrixLieAlgebra, unk: _Unknowns, sol: Subspace) -> List[CurvatureTensor]:
    n, K = g.n, g.domain
    out = []
    for vec in sol.basis:
        values = {}
        for (a, b), pi in unk.pair_index.items():
            coeffs = vec[pi * unk.g_dim:(pi + 1) * unk.g_dim]
            if any(coeffs):
                values[(a, b)] = lin_comb(coeffs, g.basis, n, K)
        out.append(CurvatureTensor(g.ambient, values))
    return out


def _solve(g: MatrixLieAlgebra, rows: List[Dict[int, Any]], unk: _Unknowns) -> CurvatureSpace:
    if unk.count == 0:
        return CurvatureSpace(g, [])
    logger.debug(f"curvature system: {unk.count} unknowns, {len(rows)} constraints")
    sol = nullspace(sparse_matrix(rows, unk.count, g.domain))
    return CurvatureSpace(g, _tensors_from_coords(g, unk, sol))


def _require_so(g: MatrixLieAlgebra) -> None:
    if not is_in_so(g):
        raise NotInSoError()


def curvature_space(g: MatrixLieAlgebra) -> CurvatureSpace:
    _require_so(g)
    unk = _Unknowns(g.n, g.dim)
    return _solve(g, _bianchi_rows(g, unk), unk)


def invariant_curvature_space(h: MatrixLieAlgebra) -> CurvatureSpace:
    _require_so(h)
    unk = _Unknowns(h.n, h.dim)
    return _solve(h, _bianchi_rows(h, unk) + _annihilation_rows(h, unk), unk)


def image_span(cs: CurvatureSpace) -> Subspace:
    n = cs.target.n
    return span([flatten(m) for R in cs.basis for m in R.values.values()], n * n, cs.target.domain)


def is_berger(g: MatrixLieAlgebra) -> bool:
    return image_span(curvature_space(g)) == g.subspace()


def restrict_space(cs: CurvatureSpace, sub: MatrixLieAlgebra) -> CurvatureSpace:
    """Tensors of `cs` whose values all lie in `sub`."""
    outer = cs.target
    if sub.n != outer.n:
        raise ContainmentError("restriction target lives in another space")
    K = common_field(outer.domain, sub.domain)
    outer, sub = outer.converted(K), sub.converted(K)
    if not is_subspace(sub.subspace(), outer.subspace()):
        raise ContainmentError("restriction target is not contained in the curvature space's algebra")
    sub_space = sub.subspace()
    n = outer.n
    # residual modulo sub is linear, so each basis tensor contributes one column
    columns = []
    for R in cs.basis:
        col: List[Any] = []
        for p in bivectors(n):
            col.extend(reduce(sub_space, flatten(R.value(*p))))
        columns.append(col)
    if not columns:
        return CurvatureSpace(sub, [])
    height = len(columns[0])
    rows = [{k: columns[k][r] for k in range(len(columns)) if columns[k][r]} for r in range(height)]
    coeffs = nullspace(sparse_matrix(rows, len(columns), K))
    tensors = []
    for c in coeffs.basis:
        acc = zero_tensor(sub.ambient)
        for ck, R in zip(c, cs.basis):
            if ck:
                acc = acc + R.scaled(ck)
        tensors.append(CurvatureTensor(sub.ambient, acc.values))
    return CurvatureSpace(sub, tensors)


# ============================================
# 3) WEAK CURVATURE
# ============================================

def weak_curvature_space(h: MatrixLieAlgebra) -> WeakCurvatureSpace:
    _require_so(h)
    eta = h.ambient.eta
    if not eta.to_Matrix().is_positive_definite:
        raise NotInSoError("weak curvature tensors need a positive definite metric")
    n, K, d = h.n, h.domain, h.dim
    lowered = [entries(eta * b) for b in h.basis]
    rows: List[Dict[int, Any]] = []
    for i, j, k in combinations(range(n), 3):
        row: Dict[int, Any] = {}
        for t, L in enumerate(lowered):
            _add(row, i * d + t, L[k][j])
            _add(row, j * d + t, L[i][k])
            _add(row, k * d + t, L[j][i])
        if row:
            rows.append(row)
    if n * d == 0:
        return WeakCurvatureSpace(h, [])
    sol = nullspace(sparse_matrix(rows, n * d, K))
    basis = [[lin_comb(vec[i * d:(i + 1) * d], h.basis, n, K) for i in range(n)] for vec in sol.basis]
    logger.debug(f"weak curvature space of a {d}-dim algebra: dim {len(basis)}")
    return WeakCurvatureSpace(h, basis)


def is_weak_berger(h: MatrixLieAlgebra) -> bool:
    return weak_curvature_space(h).image_span() == h.subspace()


def weak_cyclic_defect(eta: DomainMatrix, P: Sequence[DomainMatrix]):
    """First (i, j, k) violating the cyclic identity, or None."""
    lowered = [entries(eta * m) for m in P]
    for i, j, k in combinations(range(len(P)), 3):
        if lowered[i][k][j] + lowered[j][i][k] + lowered[k][j][i]:
            return (i, j, k)
    return None
