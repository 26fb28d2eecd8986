"""
Holonomy algebra of an analytic metric at a point.

The algebra is generated by the endomorphisms R(∂_c, ∂_d) and their covariant
derivatives evaluated at the basepoint. Instead of the full tensors ∇^r R the
engine differentiates endomorphism fields with D_e X = ∂_e X + [Γ_e, X]; over
the ring of functions these span the same modules level by level, so their
values at the basepoint span the same spaces.

Level k fields only matter up to degree max_order − k, so every field is
truncated there, and a field that is a constant combination of kept fields
(after truncation) is dropped together with its descendants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Tuple

from sympy.polys.matrices import DomainMatrix

from core.config import DEFAULT_MAX_ORDER, DEFAULT_WINDOW
from core.errors import DimensionMismatchError
from core.geometry import (
    PolyMatrix,
    PolynomialMetric,
    christoffel,
    curvature_operator,
    pm_add,
    pm_constant,
    pm_diff,
    pm_is_zero,
    pm_mul,
    pm_sub,
    pm_truncate,
)
from core.liealg import MatrixLieAlgebra, MetricStructure, lie_closure
from core.linalg import SparseEchelon, flatten
from core.logs import get_logger

logger = get_logger("holonomy")


@dataclass
class GeneratorRecord:
    order: int
    pair: Tuple[int, int]
    path: Tuple[int, ...]
    matrix: DomainMatrix


@dataclass
class HolonomyReport:
    algebra: MatrixLieAlgebra
    max_order_used: int
    stabilized: bool
    generator_log: List[GeneratorRecord] = field(default_factory=list)
    dims_by_order: List[int] = field(default_factory=list)
    span_dim: int = 0
    closure_added: bool = False


@dataclass
class _Field:
    order: int
    pair: Tuple[int, int]
    path: Tuple[int, ...]
    mat: PolyMatrix


def _as_sparse(mat: PolyMatrix) -> Dict[Any, Any]:
    out = {}
    for a, row in enumerate(mat):
        for b, p in enumerate(row):
            for monom, coeff in p.items():
                out[(sum(monom), monom, a, b)] = coeff
    return out


def _derive(mat: PolyMatrix, conn: PolyMatrix, e: int, degree: int) -> PolyMatrix:
    comm = pm_sub(pm_mul(conn, mat, degree), pm_mul(mat, conn, degree))
    return pm_truncate(pm_add(pm_diff(mat, e), comm), degree)


def holonomy(m: PolynomialMetric, max_order: int = DEFAULT_MAX_ORDER, window: int = DEFAULT_WINDOW) -> HolonomyReport:
    if max_order < 1 or window < 1:
        raise DimensionMismatchError("max_order and window must be at least 1", expected=">=1", got=(max_order, window))
    m = m.centered()
    n, K = m.dim, m.domain
    eta = pm_constant(m.g, K)
    ambient = MetricStructure(n, eta)

    cf = christoffel(m)
    conn = [pm_truncate(cf.connection_matrix(e), max_order + 1) for e in range(n)]
    dconn = [[pm_diff(conn[y], x) for y in range(n)] for x in range(n)]

    kept: List[_Field] = []
    fresh: List[_Field] = []
    values = SparseEchelon(K)
    gens: List[DomainMatrix] = []
    log: List[GeneratorRecord] = []
    dims: List[int] = []
    quiet = 0
    stabilized = False
    order = 0

    while True:
        degree = max_order - order
        if order == 0:
            candidates = [
                _Field(0, (c, d), (), curvature_operator(conn, dconn, c, d, degree))
                for c, d in combinations(range(n), 2)
            ]
        else:
            candidates = [
                _Field(order, f.pair, f.path + (e,), _derive(f.mat, conn[e], e, degree))
                for f in fresh
                for e in range(n)
            ]
        ech = SparseEchelon(K)
        for f in kept:
            ech.insert(_as_sparse(pm_truncate(f.mat, degree)))
        fresh = []
        for cand in candidates:
            if pm_is_zero(cand.mat) or not ech.insert(_as_sparse(cand.mat)):
                continue
            fresh.append(cand)
            value = pm_constant(cand.mat, K)
            if values.insert({i: x for i, x in enumerate(flatten(value)) if x}):
                gens.append(value)
                log.append(GeneratorRecord(order, cand.pair, cand.path, value))
                logger.debug(f"order {order}: new generator from R{cand.pair} along {cand.path}")
        kept.extend(fresh)

        alg = lie_closure(gens, ambient)
        grew = not dims or alg.dim > dims[-1]
        dims.append(alg.dim)
        logger.info(f"holonomy order {order}: {len(fresh)} live fields, algebra dim {alg.dim}")

        if not fresh:
            stabilized = True
            break
        quiet = 0 if grew else quiet + 1
        if order > 0 and quiet >= window:
            stabilized = True
            break
        if order >= max_order:
            break
        order += 1

    alg = lie_closure(gens, ambient)
    return HolonomyReport(
        algebra=alg,
        max_order_used=order,
        stabilized=stabilized,
        generator_log=log,
        dims_by_order=dims,
        span_dim=len(gens),
        closure_added=alg.dim > len(gens),
    )
