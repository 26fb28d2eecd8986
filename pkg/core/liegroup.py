from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from core.errors import InvalidStructureError
from core.liealg import MatrixLieAlgebra, MetricStructure, bracket, lie_closure
from core.linalg import SparseEchelon, flatten, lin_comb, rank
from core.logs import get_logger

logger = get_logger("liegroup")


@dataclass
class LieGroupData:
    """Lie algebra e_0..e_{dim-1} with [e_i, e_j] = sum_k structure[(i, j)][k] e_k (i < j)
    and a left-invariant metric given by its Gram matrix."""
    dim: int
    gram: DomainMatrix
    structure: Dict[Tuple[int, int], List[Any]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = self.dim
        K = self.domain
        if self.gram.shape != (n, n) or self.gram.transpose() != self.gram:
            raise InvalidStructureError("gram matrix must be square and symmetric")
        if rank(self.gram) != n:
            raise InvalidStructureError("gram matrix is degenerate")
        clean = {}
        for (i, j), coeffs in self.structure.items():
            if len(coeffs) != n:
                raise InvalidStructureError(f"bracket [{i},{j}] needs {n} coefficients")
            coeffs = [K.convert(c) for c in coeffs]
            if i == j:
                if any(coeffs):
                    raise InvalidStructureError(f"[e{i}, e{i}] must vanish")
                continue
            if i > j:
                i, j, coeffs = j, i, [-c for c in coeffs]
            if (i, j) in clean and clean[(i, j)] != coeffs:
                raise InvalidStructureError(f"bracket [{i},{j}] given twice with different values")
            clean[(i, j)] = coeffs
        self.structure = clean
        bad = self.jacobi_defect()
        if bad is not None:
            raise InvalidStructureError(f"Jacobi identity fails on {bad}")

    @property
    def domain(self) -> Domain:
        return self.gram.domain

    def c(self, i: int, j: int) -> List[Any]:
        K = self.domain
        if i == j:
            return [K.zero] * self.dim
        if i < j:
            return self.structure.get((i, j), [K.zero] * self.dim)
        return [-x for x in self.c(j, i)]

    def bracket_vectors(self, x: Sequence[Any], y: Sequence[Any]) -> List[Any]:
        K = self.domain
        out = [K.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj and i != j:
                    out = [o + xi * yj * c for o, c in zip(out, self.c(i, j))]
        return out

    def ad(self, i: int) -> DomainMatrix:
        n = self.dim
        rows = [[self.c(i, j)[k] for j in range(n)] for k in range(n)]
        return DomainMatrix(rows, (n, n), self.domain)

    def jacobi_defect(self):
        n = self.dim
        for i, j, k in combinations(range(n), 3):
            ei, ej, ek = (_unit(n, t, self.domain) for t in (i, j, k))
            total = [
                a + b + c
                for a, b, c in zip(
                    self.bracket_vectors(ei, self.bracket_vectors(ej, ek)),
                    self.bracket_vectors(ej, self.bracket_vectors(ek, ei)),
                    self.bracket_vectors(ek, self.bracket_vectors(ei, ej)),
                )
            ]
            if any(total):
                return (i, j, k)
        return None


def _unit(n: int, t: int, K: Domain) -> List[Any]:
    return [K.one if s == t else K.zero for s in range(n)]


def lg_nabla(d: LieGroupData) -> List[DomainMatrix]:
    """Matrices of ∇_{e_i} from 2g(∇_X Y, Z) = g([X,Y],Z) + g([Z,X],Y) + g(X,[Z,Y])."""
    n, K = d.dim, d.domain
    G = d.gram.to_dense().to_list()
    ginv = d.gram.to_field().inv().to_dense().to_list()

    def g(u: Sequence[Any], v: Sequence[Any]):
        return sum((u[a] * G[a][b] * v[b] for a in range(n) for b in range(n) if u[a] and v[b]), K.zero)

    half = K.convert(QQ(1, 2))
    out = []
    for i in range(n):
        rows = [[K.zero] * n for _ in range(n)]
        for j in range(n):
            lowered = [
                g(d.c(i, j), _unit(n, k, K)) + g(d.c(k, i), _unit(n, j, K)) + g(_unit(n, i, K), d.c(k, j))
                for k in range(n)
            ]
            for l in range(n):
                rows[l][j] = half * sum((ginv[l][k] * lowered[k] for k in range(n)), K.zero)
        out.append(DomainMatrix(rows, (n, n), K))
    return out


def lg_curvature(d: LieGroupData, nabla: Sequence[DomainMatrix]) -> Dict[Tuple[int, int], DomainMatrix]:
    """R(e_i, e_j) = [∇_i, ∇_j] − ∇_{[e_i, e_j]} for i < j."""
    n, K = d.dim, d.domain
    return {
        (i, j): bracket(nabla[i], nabla[j]) - lin_comb(d.c(i, j), nabla, n, K)
        for i, j in combinations(range(n), 2)
    }


def lg_holonomy(d: LieGroupData) -> MatrixLieAlgebra:
    """m0 + [m1, m0] + [m1, [m1, m0]] + ..., with m0 the curvature values and m1 the ∇ matrices."""
    nabla = lg_nabla(d)
    curv = lg_curvature(d, nabla)
    K = d.domain
    ech = SparseEchelon(K)
    acc: List[DomainMatrix] = []

    def push(m: DomainMatrix) -> None:
        if ech.insert({i: x for i, x in enumerate(flatten(m)) if x}):
            acc.append(m)

    for m in curv.values():
        push(m)
    j = 0
    while j < len(acc):
        for nab in nabla:
            push(bracket(nab, acc[j]))
        j += 1
    logger.debug(f"left-invariant holonomy: span dim {len(acc)}")
    return lie_closure(acc, MetricStructure(d.dim, d.gram))
