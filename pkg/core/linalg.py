from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from core.errors import DimensionMismatchError
from core.exactnum import rational, scalar_to_str

Matrix = DomainMatrix
Vector = List[Any]


# ============================================
# 1) MATRIX CONSTRUCTION
# ============================================

def matrix(rows: Sequence[Sequence[Any]], K: Domain = QQ) -> DomainMatrix:
    """Dense exact matrix; entries may be ints, 'p/q' strings or domain elements."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    data = []
    for r in rows:
        if len(r) != ncols:
            raise DimensionMismatchError("ragged matrix rows", expected=ncols, got=len(r))
        data.append([_to_dom(x, K) for x in r])
    return DomainMatrix(data, (nrows, ncols), K)


def _to_dom(x: Any, K: Domain):
    if isinstance(x, (int, str)):
        return rational(x, K)
    return K.convert(x)


def sparse_matrix(rows: Sequence[Dict[int, Any]], ncols: int, K: Domain = QQ) -> DomainMatrix:
    """Matrix from a list of {column: value} rows, stored in sparse format."""
    dod = {}
    for i, row in enumerate(rows):
        clean = {j: v for j, v in row.items() if v}
        if clean:
            dod[i] = clean
    return DomainMatrix(dod, (len(rows), ncols), K)


def zeros(n: int, K: Domain = QQ, m: Optional[int] = None) -> DomainMatrix:
    return DomainMatrix.zeros((n, n if m is None else m), K).to_dense()


def eye(n: int, K: Domain = QQ) -> DomainMatrix:
    return DomainMatrix.eye(n, K).to_dense()


def unit(n: int, i: int, j: int, K: Domain = QQ) -> DomainMatrix:
    """Matrix unit with a single 1 at (i, j)."""
    rows = [[K.zero] * n for _ in range(n)]
    rows[i][j] = K.one
    return DomainMatrix(rows, (n, n), K)


def entries(m: DomainMatrix) -> List[List[Any]]:
    return m.to_dense().to_list()


def entry(m: DomainMatrix, i: int, j: int):
    return m.rep.to_ddm()[i][j]


def flatten(m: DomainMatrix) -> Vector:
    return [x for row in entries(m) for x in row]


def unflatten(v: Sequence[Any], n: int, K: Domain) -> DomainMatrix:
    return DomainMatrix([list(v[i * n:(i + 1) * n]) for i in range(n)], (n, n), K)


def is_zero(m: DomainMatrix) -> bool:
    return m.is_zero_matrix


def transpose(m: DomainMatrix) -> DomainMatrix:
    return m.transpose()


def scale(m: DomainMatrix, c) -> DomainMatrix:
    return m.mul(m.domain.convert(c))


def lin_comb(coeffs: Sequence[Any], mats: Sequence[DomainMatrix], n: int, K: Domain) -> DomainMatrix:
    out = zeros(n, K)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m.mul(c)
    return out


def apply(m: DomainMatrix, v: Sequence[Any]) -> Vector:
    rows = entries(m)
    K = m.domain
    return [sum((a * b for a, b in zip(row, v)), K.zero) for row in rows]


def matrix_to_json(m: DomainMatrix) -> Dict[str, Any]:
    K = m.domain
    r, c = m.shape
    return {"rows": r, "cols": c, "entries": [[scalar_to_str(x, K) for x in row] for row in entries(m)]}


def matrix_from_json(obj: Dict[str, Any], K: Domain = QQ) -> DomainMatrix:
    m = matrix(obj["entries"], K)
    if m.shape != (obj["rows"], obj["cols"]):
        raise DimensionMismatchError("matrix shape disagrees with entries", expected=(obj["rows"], obj["cols"]), got=m.shape)
    return m


# ============================================
# 2) ELIMINATION
# ============================================

def rref(m: DomainMatrix) -> DomainMatrix:
    """Reduced row-echelon form; rows and columns are kept (zero rows at the bottom)."""
    if m.shape[0] == 0 or m.shape[1] == 0:
        return m
    reduced, _ = m.to_field().rref()
    return reduced.to_dense()


def rank(m: DomainMatrix) -> int:
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return m.to_field().rank()


@dataclass(frozen=True)
class Subspace:
    """Subspace of K^ambient_dim held by its unique RREF basis."""
    ambient_dim: int
    domain: Domain = QQ
    basis: tuple = field(default_factory=tuple)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> List[Vector]:
        return [list(v) for v in self.basis]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, len(self.basis)))


def _pivot(row: Sequence[Any]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def span(vectors: Iterable[Sequence[Any]], ambient_dim: Optional[int] = None, K: Domain = QQ) -> Subspace:
    vecs = [list(v) for v in vectors]
    if ambient_dim is None:
        if not vecs:
            raise DimensionMismatchError("span of no vectors needs an ambient dimension")
        ambient_dim = len(vecs[0])
    for v in vecs:
        if len(v) != ambient_dim:
            raise DimensionMismatchError("vectors of different lengths", expected=ambient_dim, got=len(v))
    if not vecs:
        return Subspace(ambient_dim, K, ())
    rows = entries(rref(DomainMatrix([[K.convert(x) for x in v] for v in vecs], (len(vecs), ambient_dim), K)))
    basis = tuple(tuple(r) for r in rows if _pivot(r) >= 0)
    return Subspace(ambient_dim, K, basis)


def full_space(n: int, K: Domain = QQ) -> Subspace:
    return span(entries(eye(n, K)), n, K) if n else Subspace(0, K, ())


def nullspace(m: DomainMatrix) -> Subspace:
    nrows, ncols = m.shape
    K = m.domain.get_field()
    if nrows == 0 or m.is_zero_matrix:
        return full_space(ncols, K)
    ns = m.to_field().nullspace()
    if ns.shape[0] == 0:
        return Subspace(ncols, K, ())
    return span(entries(ns), ncols, K)


def reduce(s: Subspace, v: Sequence[Any]) -> Vector:
    """Residual of v after elimination against the RREF basis (zero iff v in s)."""
    if len(v) != s.ambient_dim:
        raise DimensionMismatchError("vector length differs from ambient dimension", expected=s.ambient_dim, got=len(v))
    w = list(v)
    for row in s.basis:
        p = _pivot(row)
        c = w[p]
        if c:
            w = [a - c * b for a, b in zip(w, row)]
    return w


def contains(s: Subspace, v: Sequence[Any]) -> bool:
    return not any(reduce(s, v))


def is_subspace(a: Subspace, b: Subspace) -> bool:
    return all(contains(b, v) for v in a.basis)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b via the nullspace of [A; -B]ᵀ coefficients."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("ambient dimensions differ", expected=a.ambient_dim, got=b.ambient_dim)
    if not a.dim or not b.dim:
        return Subspace(a.ambient_dim, a.domain, ())
    K = a.domain
    cols = [list(v) for v in a.basis] + [[-x for x in v] for v in b.basis]
    system = DomainMatrix([[cols[j][i] for j in range(len(cols))] for i in range(a.ambient_dim)],
                          (a.ambient_dim, len(cols)), K)
    coeffs = nullspace(system)
    out = []
    for c in coeffs.basis:
        vec = [K.zero] * a.ambient_dim
        for ci, v in zip(c[:a.dim], a.basis):
            if ci:
                vec = [x + ci * y for x, y in zip(vec, v)]
        out.append(vec)
    return span(out, a.ambient_dim, K)


def solve(m: DomainMatrix, b: Sequence[Any]) -> Optional[Vector]:
    """One exact solution of m·x = b (free variables set to 0), or None."""
    nrows, ncols = m.shape
    if len(b) != nrows:
        raise DimensionMismatchError("right-hand side length differs from row count", expected=nrows, got=len(b))
    K = m.domain.get_field()
    aug = m.to_field().hstack(DomainMatrix([[K.convert(x)] for x in b], (nrows, 1), K))
    red, pivots = aug.rref()
    if ncols in pivots:
        return None
    rows = entries(red)
    x = [K.zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = rows[i][ncols]
    return x


# ============================================
# 3) INCREMENTAL SPARSE ECHELON
# ============================================

class SparseEchelon:
    """Incremental echelon basis for sparse vectors given as {key: coeff} dicts.

    The pivot of a stored vector is its smallest key and stored vectors are
    normalized there, so reducing a vector only ever raises its smallest key.
    """

    def __init__(self, domain: Domain = QQ):
        self.domain = domain
        self.rows: Dict[Hashable, Dict[Hashable, Any]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Dict[Hashable, Any]) -> Dict[Hashable, Any]:
        w = {k: v for k, v in vec.items() if v}
        done: Dict[Hashable, Any] = {}
        while w:
            k = min(w)
            c = w[k]
            row = self.rows.get(k)
            if row is None:
                done[k] = w.pop(k)
                continue
            for rk, rv in row.items():
                nv = w.get(rk, self.domain.zero) - c * rv
                if nv:
                    w[rk] = nv
                else:
                    w.pop(rk, None)
        return done

    def insert(self, vec: Dict[Hashable, Any]) -> bool:
        """Add vec to the span; True iff it was independent."""
        w = self.reduce(vec)
        if not w:
            return False
        k = min(w)
        inv = self.domain.one / w[k]
        self.rows[k] = {rk: rv * inv for rk, rv in w.items()}
        return True

    def contains(self, vec: Dict[Hashable, Any]) -> bool:
        return not self.reduce(vec)
