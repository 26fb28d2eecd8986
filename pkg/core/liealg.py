from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from core.config import COEFF_BOUND, DEFAULT_RETRIES, DEFAULT_SEED
from core.errors import (
    DimensionMismatchError,
    InvalidStructureError,
    MissingComplexStructureError,
    NotInSoError,
)
from core.exactnum import common_field, scalar_to_float
from core.linalg import (
    SparseEchelon,
    Subspace,
    contains,
    entries,
    eye,
    flatten,
    full_space,
    lin_comb,
    nullspace,
    rank,
    sparse_matrix,
    span,
    unflatten,
)
from core.logs import get_logger

logger = get_logger("liealg")


# ============================================
# 1) TYPES
# ============================================

@dataclass
class MetricStructure:
    """Gram matrix eta and optional complex structure J of a pseudo-Euclidean space."""
    dim: int
    eta: DomainMatrix
    J: Optional[DomainMatrix] = None

    def __post_init__(self) -> None:
        self.validate()

    @property
    def domain(self) -> Domain:
        return self.eta.domain

    def validate(self) -> None:
        if self.eta.shape != (self.dim, self.dim):
            raise InvalidStructureError(f"eta must be {self.dim}x{self.dim}, got {self.eta.shape}")
        if self.eta.transpose() != self.eta:
            raise InvalidStructureError("eta is not symmetric")
        if rank(self.eta) != self.dim:
            raise InvalidStructureError("eta is degenerate")
        if self.J is not None:
            J = self.J
            if J.shape != (self.dim, self.dim):
                raise InvalidStructureError(f"J must be {self.dim}x{self.dim}, got {J.shape}")
            if J * J != -eye(self.dim, J.domain):
                raise InvalidStructureError("J^2 != -Id")
            if J.transpose() * self.eta * J != self.eta:
                raise InvalidStructureError("eta is not J-invariant")

    def convert_to(self, K: Domain) -> "MetricStructure":
        if K == self.domain:
            return self
        J = self.J.convert_to(K) if self.J is not None else None
        return MetricStructure(self.dim, self.eta.convert_to(K), J)


@dataclass
class MatrixLieAlgebra:
    """Span of dim x dim matrices with a canonical (flattened RREF) basis.

    Build instances through `make_algebra` or `lie_closure`; the constructor
    trusts its arguments.
    """
    ambient: MetricStructure
    basis: List[DomainMatrix] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.ambient.dim

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def domain(self) -> Domain:
        return self.ambient.domain

    def subspace(self) -> Subspace:
        return span([flatten(b) for b in self.basis], self.n * self.n, self.domain)

    def contains(self, m: DomainMatrix) -> bool:
        return contains(self.subspace(), flatten(m.convert_to(self.domain)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixLieAlgebra):
            return NotImplemented
        if self.n != other.n:
            return False
        K = common_field(self.domain, other.domain)
        return self.converted(K).subspace() == other.converted(K).subspace()

    def converted(self, K: Domain) -> "MatrixLieAlgebra":
        if K == self.domain:
            return self
        return MatrixLieAlgebra(self.ambient.convert_to(K), [b.convert_to(K) for b in self.basis])


def make_algebra(ambient: MetricStructure, mats: Sequence[DomainMatrix]) -> MatrixLieAlgebra:
    """Canonical span of `mats` (no bracket closure is taken)."""
    K = common_field(ambient.domain, *[m.domain for m in mats])
    ambient = ambient.convert_to(K)
    n = ambient.dim
    for m in mats:
        if m.shape != (n, n):
            raise DimensionMismatchError("algebra element has the wrong shape", expected=(n, n), got=m.shape)
    sub = span([flatten(m.convert_to(K)) for m in mats], n * n, K)
    return MatrixLieAlgebra(ambient, [unflatten(v, n, K) for v in sub.basis])


# ============================================
# 2) BRACKETS AND CLOSURE
# ============================================

def bracket(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("bracket needs square matrices of equal size", expected=a.shape, got=b.shape)
    if a.domain != b.domain:
        K = common_field(a.domain, b.domain)
        a, b = a.convert_to(K), b.convert_to(K)
    return a * b - b * a


def _as_sparse(m: DomainMatrix) -> Dict[int, Any]:
    return {i: x for i, x in enumerate(flatten(m)) if x}


def lie_closure(seed: Sequence[DomainMatrix], ambient: MetricStructure) -> MatrixLieAlgebra:
    """Smallest bracket-closed span containing `seed`."""
    K = common_field(ambient.domain, *[m.domain for m in seed])
    ambient = ambient.convert_to(K)
    ech = SparseEchelon(K)
    elems: List[DomainMatrix] = []
    for m in seed:
        m = m.convert_to(K)
        if ech.insert(_as_sparse(m)):
            elems.append(m)
    j = 0
    while j < len(elems):
        for i in range(j):
            c = bracket(elems[i], elems[j])
            if ech.insert(_as_sparse(c)):
                elems.append(c)
        j += 1
    logger.debug(f"lie_closure: seed {len(seed)} -> dim {len(elems)}")
    return make_algebra(ambient, elems)


def is_closed(alg: MatrixLieAlgebra) -> bool:
    sub = alg.subspace()
    return all(
        contains(sub, flatten(bracket(a, b)))
        for i, a in enumerate(alg.basis)
        for b in alg.basis[i + 1:]
    )


def is_in_so(alg: MatrixLieAlgebra) -> bool:
    eta = alg.ambient.eta
    return all((eta * b + b.transpose() * eta).is_zero_matrix for b in alg.basis)


def commutes_with_J(alg: MatrixLieAlgebra) -> bool:
    J = alg.ambient.J
    if J is None:
        raise MissingComplexStructureError()
    return all(bracket(b, J).is_zero_matrix for b in alg.basis)


def commutant(alg: MatrixLieAlgebra) -> Subspace:
    """{X in gl(n) : [X, b] = 0 for every basis b}, as flattened vectors."""
    n = alg.n
    K = alg.domain
    rows: List[Dict[int, Any]] = []
    for b in alg.basis:
        be = entries(b)
        for i in range(n):
            for j in range(n):
                row: Dict[int, Any] = {}
                for k in range(n):
                    if be[k][j]:
                        row[i * n + k] = row.get(i * n + k, K.zero) + be[k][j]
                    if be[i][k]:
                        row[k * n + j] = row.get(k * n + j, K.zero) - be[i][k]
                if any(row.values()):
                    rows.append(row)
    if not rows:
        return full_space(n * n, K)
    return nullspace(sparse_matrix(rows, n * n, K))


# ============================================
# 3) INVARIANT SUBSPACES
# ============================================

class InvariantVerdict(str, Enum):
    NOT_INVARIANT = "NotInvariant"
    NON_DEGENERATE = "InvariantNonDegenerate"
    DEGENERATE = "InvariantDegenerate"
    ISOTROPIC = "InvariantIsotropic"


def _apply(rows: List[List[Any]], v: Sequence[Any], K: Domain) -> List[Any]:
    return [sum((a * x for a, x in zip(row, v) if a and x), K.zero) for row in rows]


def restricted_gram(eta: DomainMatrix, sub: Subspace) -> DomainMatrix:
    K = eta.domain
    er = entries(eta)
    vecs = sub.vectors()
    ev = [_apply(er, v, K) for v in vecs]
    k = len(vecs)
    return DomainMatrix(
        [[sum((a * b for a, b in zip(vecs[i], ev[j])), K.zero) for j in range(k)] for i in range(k)],
        (k, k), K)


def check_invariant_subspace(alg: MatrixLieAlgebra, candidate: Subspace) -> InvariantVerdict:
    if candidate.ambient_dim != alg.n:
        raise DimensionMismatchError("candidate lives in another space", expected=alg.n, got=candidate.ambient_dim)
    K = common_field(alg.domain, candidate.domain)
    alg = alg.converted(K)
    cand = span(candidate.vectors(), alg.n, K)
    for b in alg.basis:
        be = entries(b)
        for v in cand.vectors():
            if not contains(cand, _apply(be, v, K)):
                return InvariantVerdict.NOT_INVARIANT
    r = rank(restricted_gram(alg.ambient.eta, cand)) if cand.dim else 0
    if r == cand.dim:
        return InvariantVerdict.NON_DEGENERATE
    if r == 0:
        return InvariantVerdict.ISOTROPIC
    return InvariantVerdict.DEGENERATE


# ============================================
# 4) WEAK IRREDUCIBILITY
# ============================================

WEAKLY_IRREDUCIBLE = "WeaklyIrreducible"
REDUCIBLE = "ReducibleWitness"
INCONCLUSIVE = "Inconclusive"


@dataclass
class WeakIrreducibilityVerdict:
    kind: str
    seed: int
    attempts: int
    witness: Optional[Subspace] = None
    heuristic: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        from core.schemas import subspace_to_json
        return {
            "kind": self.kind,
            "seed": self.seed,
            "attempts": self.attempts,
            "witness": subspace_to_json(self.witness) if self.witness is not None else None,
            "heuristic": self.heuristic,
        }


def self_adjoint_commutant(alg: MatrixLieAlgebra) -> List[DomainMatrix]:
    """Basis of the eta-self-adjoint part of the commutant (eta X = X^T eta)."""
    n = alg.n
    K = alg.domain
    eta = alg.ambient.eta
    comm = [unflatten(v, n, K) for v in commutant(alg).basis]
    if not comm:
        return []
    defects = [flatten(eta * X - X.transpose() * eta) for X in comm]
    rows = [{j: defects[j][i] for j in range(len(comm)) if defects[j][i]} for i in range(n * n)]
    coeffs = nullspace(sparse_matrix(rows, len(comm), K))
    mats = [lin_comb(c, comm, n, K) for c in coeffs.basis]
    canon = span([flatten(m) for m in mats], n * n, K)
    return [unflatten(v, n, K) for v in canon.basis]


def _splitting_spaces(X: DomainMatrix) -> Optional[List[Subspace]]:
    """Generalized eigenspaces for the rational factors of X's characteristic
    polynomial, or None when there is only one primary component."""
    factors = X.charpoly_factor_list()
    if len(factors) < 2:
        return None
    spaces = []
    for f, mult in factors:
        fx = X.eval_poly(f)
        spaces.append(nullspace(fx ** mult))
    return spaces


def _is_conclusive_single(X: DomainMatrix) -> bool:
    """A single primary component is conclusive (no real splitting hidden)
    when its irreducible factor is linear or a quadratic without real roots."""
    (f, _mult), = X.charpoly_factor_list()
    deg = len(f) - 1
    if deg == 1:
        return True
    if deg == 2:
        K = X.domain
        a, b, c = f
        disc = b * b - 4 * a * c
        return scalar_to_float(disc, K) < 0
    return False


def _float_heuristic(X: DomainMatrix) -> Dict[str, Any]:
    K = X.domain
    arr = np.array([[scalar_to_float(x, K) for x in row] for row in entries(X)], dtype=float)
    eig = np.linalg.eigvals(arr)
    clusters: List[List[float]] = []
    for lam in sorted(eig, key=lambda z: (round(z.real, 8), round(z.imag, 8))):
        for cl in clusters:
            if abs(cl[0] - lam.real) < 1e-8 and abs(cl[1] - lam.imag) < 1e-8:
                cl[2] += 1
                break
        else:
            clusters.append([float(lam.real), float(lam.imag), 1])
    return {"authoritative": False, "eigenvalue_clusters": clusters,
            "suggests_reducible": len(clusters) > 1}


def _pick_witness(alg: MatrixLieAlgebra, spaces: List[Subspace]) -> Optional[Subspace]:
    good = [
        s for s in spaces
        if 0 < s.dim < alg.n and check_invariant_subspace(alg, s) == InvariantVerdict.NON_DEGENERATE
    ]
    if not good:
        return None
    return min(good, key=lambda s: (s.dim, [next(j for j, x in enumerate(v) if x) for v in s.basis]))


def weak_irreducibility(
    alg: MatrixLieAlgebra,
    seed: int = DEFAULT_SEED,
    retries: int = DEFAULT_RETRIES,
) -> WeakIrreducibilityVerdict:
    """Search the self-adjoint commutant for a nontrivial idempotent.

    Candidates are the canonical basis elements of the self-adjoint commutant
    followed by `retries` random rational combinations drawn from Random(seed).
    """
    if not is_in_so(alg):
        raise NotInSoError()
    n = alg.n
    K = alg.domain
    S = self_adjoint_commutant(alg)
    logger.debug(f"weak_irreducibility: self-adjoint commutant has dim {len(S)}")
    if len(S) <= 1:
        return WeakIrreducibilityVerdict(WEAKLY_IRREDUCIBLE, seed, 0)

    rng = random.Random(seed)
    candidates: List[DomainMatrix] = list(S)
    for _ in range(retries):
        coeffs = [K.convert(rng.randint(-COEFF_BOUND, COEFF_BOUND)) for _ in S]
        candidates.append(lin_comb(coeffs, S, n, K))

    unresolved: Optional[DomainMatrix] = None
    for attempt, X in enumerate(candidates, start=1):
        spaces = _splitting_spaces(X)
        if spaces is not None:
            witness = _pick_witness(alg, spaces)
            if witness is not None:
                return WeakIrreducibilityVerdict(REDUCIBLE, seed, attempt, witness=witness)
            unresolved = X
        elif not _is_conclusive_single(X):
            unresolved = X
    if unresolved is not None:
        return WeakIrreducibilityVerdict(INCONCLUSIVE, seed, len(candidates), heuristic=_float_heuristic(unresolved))
    return WeakIrreducibilityVerdict(WEAKLY_IRREDUCIBLE, seed, len(candidates))


def zero_algebra(ambient: MetricStructure) -> MatrixLieAlgebra:
    return MatrixLieAlgebra(ambient, [])

