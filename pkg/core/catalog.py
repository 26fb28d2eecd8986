"""
Named algebra families.

Every family is addressed by a kebab-case id and instantiated from a
FamilySpec. Pseudo-Kaehler families live in u(1,n+1)_{<p1,p2>} (frame
PK(n)), Lorentzian families in so(1,n+1)_{Rp} (frame L(n)).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from core.errors import ParameterConstraintError
from core.exactnum import common_field, rational
from core.frames import (
    LORENTZ,
    PSEUDO_KAEHLER,
    build_frame,
    build_lorentz_element,
    build_pk_element,
    so_basis,
    sod_basis,
    u_basis,
)
from core.liealg import MatrixLieAlgebra, bracket, make_algebra
from core.linalg import contains, entries, flatten, nullspace, rank, solve, span
from core.logs import get_logger

logger = get_logger("catalog")

Block = List[List[Any]]
UElement = Tuple[Block, Block]


@dataclass
class FamilySpec:
    """Parameters of one family instance.

    `u_basis` holds (B, C) blocks (pseudo-Kaehler) and `h_basis` skew n x n
    matrices (Lorentz). Linear maps are given by their values on that basis:
    `phi`, `phihat`, `zeta` as scalars, `psi` as (z1, z2) vector pairs for
    pseudo-Kaehler families and as vectors of R^{n-m} for lorentz4.
    """
    family: str
    n: int = 0
    m: int = 0
    k: int = 0
    l: int = 0
    r: int = 0
    lam: Any = None
    gamma1: Any = 0
    gamma2: Any = 0
    u_basis: List[UElement] = field(default_factory=list)
    h_basis: List[Block] = field(default_factory=list)
    phi: List[Any] = field(default_factory=list)
    phihat: List[Any] = field(default_factory=list)
    psi: List[Any] = field(default_factory=list)
    zeta: List[Any] = field(default_factory=list)
    domain: Domain = QQ

    def label(self) -> str:
        parts = [self.family, f"n={self.n}"]
        for key in ("m", "k", "l", "r"):
            if getattr(self, key):
                parts.append(f"{key}={getattr(self, key)}")
        if self.u_basis:
            parts.append(f"dim u={len(self.u_basis)}")
        if self.h_basis:
            parts.append(f"dim h={len(self.h_basis)}")
        return " ".join(parts)


@dataclass(frozen=True)
class FamilyInfo:
    id: str
    frame: str
    builder: Callable[[FamilySpec], List[DomainMatrix]]
    dimension: Callable[[FamilySpec], int]
    summary: str


# ============================================
# 1) SMALL HELPERS
# ============================================

def _fail(spec: FamilySpec, constraint: str) -> None:
    raise ParameterConstraintError(spec.family, constraint)


def _u_matrix(B: Block, C: Block, K: Domain) -> DomainMatrix:
    """The 2n x 2n block [[B, -C], [C, B]]."""
    n = len(B)
    rows = [[K.zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            b, c = K.convert(B[i][j]), K.convert(C[i][j])
            rows[i][j] = rows[n + i][n + j] = b
            rows[i][n + j] = -c
            rows[n + i][j] = c
    return DomainMatrix(rows, (2 * n, 2 * n), K)


def _check_subalgebra(spec: FamilySpec, mats: Sequence[DomainMatrix], what: str) -> None:
    if not mats:
        return
    K = mats[0].domain
    sub = span([flatten(m) for m in mats], len(flatten(mats[0])), K)
    if sub.dim != len(mats):
        _fail(spec, f"the basis of {what} is linearly independent")
    for i, a in enumerate(mats):
        for b in mats[i + 1:]:
            if not contains(sub, flatten(bracket(a, b))):
                _fail(spec, f"{what} is closed under the bracket")


def coordinates(mats: Sequence[DomainMatrix], target: DomainMatrix) -> List[Any]:
    """Coordinates of `target` in the (independent) list `mats`."""
    K = target.domain
    cols = [flatten(m) for m in mats]
    size = len(cols[0])
    system = DomainMatrix([[cols[j][i] for j in range(len(cols))] for i in range(size)], (size, len(cols)), K)
    x = solve(system, flatten(target))
    if x is None:
        raise ValueError("element outside the span")
    return x


def _kills_derived(spec: FamilySpec, mats: Sequence[DomainMatrix], values: Sequence[Sequence[Any]], name: str) -> None:
    """values[a] is the image of mats[a]; require the map to vanish on every [A_a, A_b]."""
    if not mats:
        return
    K = mats[0].domain
    width = len(values[0]) if values else 0
    for i, a in enumerate(mats):
        for b in mats[i + 1:]:
            br = bracket(a, b)
            if br.is_zero_matrix:
                continue
            c = coordinates(mats, br)
            image = [sum((K.convert(c[t]) * K.convert(values[t][s]) for t in range(len(mats))), K.zero) for s in range(width)]
            if any(image):
                _fail(spec, f"{name} vanishes on the derived algebra")


def center_dim(mats: Sequence[DomainMatrix]) -> int:
    """dim z(span(mats)) for an independent list closed under the bracket."""
    if not mats:
        return 0
    K = mats[0].domain
    N = len(mats)
    rows: List[List[Any]] = []
    for b in mats:
        cols = [flatten(bracket(a, b)) for a in mats]
        for i in range(len(cols[0])):
            rows.append([cols[j][i] for j in range(N)])
    return N - rank(DomainMatrix(rows, (len(rows), N), K))


def _support(blocks: Sequence[Block]) -> int:
    """1 + largest index with a nonzero entry in any block (0 if all vanish)."""
    top = 0
    for M in blocks:
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                if x:
                    top = max(top, i + 1, j + 1)
    return top


def _diag(n: int, lo: int, hi: int, K: Domain, value: Any = 1) -> Block:
    """value on positions lo..hi (1-based, inclusive), zero elsewhere."""
    v = K.convert(value)
    return [[v if i == j and lo - 1 <= i <= hi - 1 else K.zero for j in range(n)] for i in range(n)]


def _add_blocks(X: Block, Y: Block) -> Block:
    return [[a + b for a, b in zip(r, s)] for r, s in zip(X, Y)]


def _scale_block(X: Block, c: Any) -> Block:
    return [[c * a for a in r] for r in X]


def _trace(C: Block, K: Domain):
    return sum((K.convert(C[i][i]) for i in range(len(C))), K.zero)


def _neg_half_trace(C: Block, K: Domain):
    return -_trace(C, K) * K.convert(QQ(1, 2))


def _vec_support(v: Sequence[Any], allowed: Sequence[int]) -> bool:
    """True iff v vanishes outside the 1-based index set `allowed`."""
    ok = set(allowed)
    return all(not x or (i + 1) in ok for i, x in enumerate(v))


def _rng(lo: int, hi: int) -> List[int]:
    return list(range(lo, hi + 1))


def _unit_vec(n: int, i: int, K: Domain) -> List[Any]:
    return [K.one if t == i - 1 else K.zero for t in range(n)]


# ============================================
# 2) PSEUDO-KAEHLER BUILDING BLOCKS
# ============================================

def pk_ideal(n: int, K: Domain, n1: Sequence[int] = (), n2: Sequence[int] = (), with_c: bool = True) -> List[DomainMatrix]:
    """Basis of N^1_{n1} + N^2_{n2} (+ C)."""
    out = [build_pk_element(n, z1=_unit_vec(n, i, K), K=K) for i in n1]
    out += [build_pk_element(n, z2=_unit_vec(n, i, K), K=K) for i in n2]
    if with_c:
        out.append(build_pk_element(n, c=1, K=K))
    return out


def _u_elements(spec: FamilySpec) -> List[DomainMatrix]:
    n, K = spec.n, spec.domain
    return [_u_matrix(B, C, K) for B, C in spec.u_basis]


def _check_u(spec: FamilySpec, bound: int, what: str) -> List[DomainMatrix]:
    """u must sit inside u(bound) and be a subalgebra; returns its 2n x 2n matrices."""
    for B, C in spec.u_basis:
        if len(B) != spec.n or len(C) != spec.n:
            _fail(spec, f"u blocks are {spec.n}x{spec.n}")
    if _support([b for pair in spec.u_basis for b in pair]) > bound:
        _fail(spec, f"u ⊂ {what}")
    mats = _u_elements(spec)
    _check_subalgebra(spec, mats, "u")
    return mats


def _scalar_values(spec: FamilySpec, values: List[Any], name: str, count: int) -> List[Any]:
    if len(values) != count:
        _fail(spec, f"{name} has one value per basis element ({count})")
    return [_parse(v, spec.domain) for v in values]


def _parse(v: Any, K: Domain):
    return rational(v, K) if isinstance(v, (int, str)) else K.convert(v)


def _require_n(spec: FamilySpec, cond: bool, text: str) -> None:
    if not cond:
        _fail(spec, text)


# ----------------------------
# n = 0
# ----------------------------
def _n0_hol1(spec: FamilySpec) -> List[DomainMatrix]:
    _require_n(spec, spec.n == 0, "n = 0")
    K = spec.domain
    return [build_pk_element(0, a1=1, K=K), build_pk_element(0, a2=1, K=K), build_pk_element(0, c=1, K=K)]


def _n0_hol2(spec: FamilySpec) -> List[DomainMatrix]:
    _require_n(spec, spec.n == 0, "n = 0")
    K = spec.domain
    return [build_pk_element(0, a1=1, K=K), build_pk_element(0, a2=1, K=K)]


def _n0_gamma(spec: FamilySpec) -> List[DomainMatrix]:
    _require_n(spec, spec.n == 0, "n = 0")
    K = spec.domain
    g1, g2 = _parse(spec.gamma1, K), _parse(spec.gamma2, K)
    out = [build_pk_element(0, c=1, K=K)]
    if g1 or g2:
        out.insert(0, build_pk_element(0, a1=g1, a2=g2, K=K))
    return out


def _n0_c(spec: FamilySpec) -> List[DomainMatrix]:
    _require_n(spec, spec.n == 0, "n = 0")
    return [build_pk_element(0, c=1, K=spec.domain)]


def _n0_su11(spec: FamilySpec) -> List[DomainMatrix]:
    _require_n(spec, spec.n == 0, "n = 0")
    K = spec.domain
    return [build_pk_element(0, a1=1, K=K), build_pk_element(0, c=1, K=K)]


# ----------------------------
# whole parabolic algebras
# ----------------------------
def _u_pp(spec: FamilySpec) -> List[DomainMatrix]:
    n, K = spec.n, spec.domain
    out = [build_pk_element(n, a1=1, K=K), build_pk_element(n, a2=1, K=K)]
    out += [build_pk_element(n, B=B, C=C, K=K) for B, C in u_basis(n, n, K)]
    return out + pk_ideal(n, K, _rng(1, n), _rng(1, n))


def _su_pp(spec: FamilySpec) -> List[DomainMatrix]:
    n, K = spec.n, spec.domain
    out = [build_pk_element(n, a1=1, K=K)]
    for B, C in u_basis(n, n, K):
        out.append(build_pk_element(n, a2=_neg_half_trace(C, K), B=B, C=C, K=K))
    return out + pk_ideal(n, K, _rng(1, n), _rng(1, n))


# ----------------------------
# holonomy families, n >= 1
# ----------------------------
def _hol_common(spec: FamilySpec) -> Tuple[int, int, Domain, List[DomainMatrix]]:
    n, m, K = spec.n, spec.m, spec.domain
    _require_n(spec, n >= 1, "n >= 1")
    _require_n(spec, 0 <= m <= n, "0 <= m <= n")
    mats = _check_u(spec, m, "u(m)")
    return n, m, K, mats


def _tail_j(n: int, m: int, K: Domain) -> Block:
    return _diag(n, m + 1, n, K)


def _hol_A1_A2t(spec: FamilySpec) -> List[DomainMatrix]:
    n, m, K, _ = _hol_common(spec)
    out = [build_pk_element(n, a1=1, K=K), build_pk_element(n, a2=1, C=_tail_j(n, m, K), K=K)]
    out += [build_pk_element(n, B=B, C=C, K=K) for B, C in spec.u_basis]
    return out + pk_ideal(n, K, _rng(1, n), _rng(1, m))


def _phihat_element(n: int, m: int, K: Domain, B: Block, C: Block, a1: Any, ph: Any) -> DomainMatrix:
    return build_pk_element(n, a1=a1, a2=ph, B=B, C=_add_blocks(C, _scale_block(_tail_j(n, m, K), ph)), K=K)


def _hol_A1_phihat(spec: FamilySpec) -> List[DomainMatrix]:
    n, m, K, mats = _hol_common(spec)
    ph = _scalar_values(spec, spec.phihat, "phihat", len(mats))
    _kills_derived(spec, mats, [[v] for v in ph], "phihat")
    out = [build_pk_element(n, a1=1, K=K)]
    out += [_phihat_element(n, m, K, B, C, 0, v) for (B, C), v in zip(spec.u_basis, ph)]
    return out + pk_ideal(n, K, _rng(1, n), _rng(1, m))


def _hol_phi_phihat(spec: FamilySpec) -> List[DomainMatrix]:
    n, m, K, mats = _hol_common(spec)
    ph = _scalar_values(spec, spec.phihat, "phihat", len(mats))
    fi = _scalar_values(spec, spec.phi, "phi", len(mats))
    _kills_derived(spec, mats, [[v] for v in ph], "phihat")
    _kills_derived(spec, mats, [[v] for v in fi], "phi")
    out = [_phihat_element(n, m, K, B, C, a, v) for (B, C), a, v in zip(spec.u_basis, fi, ph)]
    return out + pk_ideal(n, K, _rng(1, n), _rng(1, m))


def _hol_phi_A2t(spec: FamilySpec) -> List[DomainMatrix]:
    n, m, K, mats = _hol_common(spec)
    fi = _scalar_values(spec, spec.phi, "phi", len(mats))
    _kills_derived(spec, mats, [[v] for v in fi], "phi")
    out = [build_pk_element(n, a2=1, C=_tail_j(n, m, K), K=K)]
    out += [build_pk_element(n, a1=a, B=B, C=C, K=K) for (B, C), a in zip(spec.u_basis, fi)]
    return out + pk_ideal(n, K, _rng(1, n), _rng(1, m))


def _hol_lambda(spec: FamilySpec) -> List[DomainMatrix]:
    n, m, K, _ = _hol_common(spec)
    lam = _parse(spec.lam if spec.lam is not None else 0, K)
    _require_n(spec, bool(lam), "lambda != 0")
    out = [build_pk_element(n, a1=1, a2=lam, C=_scale_block(_tail_j(n, m, K), lam), K=K)]
    out += [build_pk_element(n, B=B, C=C, K=K) for B, C in spec.u_basis]
    return out + pk_ideal(n, K, _rng(1, n), _rng(1, m))


def special_phihat(spec: FamilySpec) -> List[Any]:
    """phihat(B, C) = -tr C / (n - m + 2), the trace-free choice."""
    K = spec.domain
    d = K.convert(spec.n - spec.m + 2)
    return [K.quo(-_trace(C, K), d) for _, C in spec.u_basis]


def _special_A1_phihat(spec: FamilySpec) -> List[DomainMatrix]:
    return _hol_A1_phihat(replace(spec, phihat=special_phihat(spec)))


def _special_phi_phihat(spec: FamilySpec) -> List[DomainMatrix]:
    return _hol_phi_phihat(replace(spec, phihat=special_phihat(spec)))


# ----------------------------
# psi families
# ----------------------------
def _psi_pairs(spec: FamilySpec, count: int) -> List[Tuple[List[Any], List[Any]]]:
    if len(spec.psi) != count:
        _fail(spec, f"psi has one value per basis element ({count})")
    K, n = spec.domain, spec.n
    out = []
    for pair in spec.psi:
        z1, z2 = pair
        if len(z1) != n or len(z2) != n:
            _fail(spec, f"psi values are pairs of vectors of length {n}")
        out.append(([_parse(x, K) for x in z1],
                    [_parse(x, K) for x in z2]))
    return out


def _check_psi(spec: FamilySpec, mats: Sequence[DomainMatrix], pairs, e1: List[int], e2: List[int]) -> None:
    for z1, z2 in pairs:
        if not (_vec_support(z1, e1) and _vec_support(z2, e2)):
            _fail(spec, "psi takes values in the prescribed E^1 + E^2 blocks")
    _kills_derived(spec, mats, [z1 + z2 for z1, z2 in pairs], "psi")
    target = len(e1) + len(e2)
    if pairs:
        K = spec.domain
        got = rank(DomainMatrix([z1 + z2 for z1, z2 in pairs], (len(pairs), 2 * spec.n), K))
    else:
        got = 0
    if got != target:
        _fail(spec, f"psi is surjective onto a space of dimension {target}")


def _hol_n_psi(spec: FamilySpec, su: bool = False) -> List[DomainMatrix]:
    n, k, l, K = spec.n, spec.k, spec.l, spec.domain
    _require_n(spec, 0 < k <= l <= n, "0 < k <= l <= n")
    mats = _check_su_h(spec, k) if su else _check_u(spec, k, "u(k)")
    if center_dim(mats) < n + l - 2 * k:
        _fail(spec, "dim z(u) >= n + l - 2k")
    pairs = _psi_pairs(spec, len(mats))
    _check_psi(spec, mats, pairs, _rng(k + 1, l), _rng(k + 1, n))
    out = []
    for (B, C), (z1, z2) in zip(spec.u_basis, pairs):
        a2 = _neg_half_trace(C, K) if su else 0
        out.append(build_pk_element(n, a2=a2, B=B, C=C, z1=z1, z2=z2, K=K))
    return out + pk_ideal(n, K, _rng(1, k) + _rng(l + 1, n), _rng(1, k))


def _hol_m_psi(spec: FamilySpec, su: bool = False) -> List[DomainMatrix]:
    n, m, k, l, r, K = spec.n, spec.m, spec.k, spec.l, spec.r, spec.domain
    _require_n(spec, 0 < k <= l <= m <= r <= n, "0 < k <= l <= m <= r <= n")
    _require_n(spec, 0 < m < n, "0 < m < n")
    mats = _check_su_h(spec, k, m + 1, r) if su else _check_u(spec, k, "u(k)")
    if center_dim(mats) < n + m + l - 2 * k - r:
        _fail(spec, "dim z(u) >= n + m + l - 2k - r")
    pairs = _psi_pairs(spec, len(mats))
    _check_psi(spec, mats, pairs, _rng(k + 1, l) + _rng(r + 1, n), _rng(k + 1, m))
    out = []
    for (B, C), (z1, z2) in zip(spec.u_basis, pairs):
        a2 = _neg_half_trace(C, K) if su else 0
        out.append(build_pk_element(n, a2=a2, B=B, C=C, z1=z1, z2=z2, K=K))
    return out + pk_ideal(n, K, _rng(1, k) + _rng(l + 1, r), _rng(1, k))


# ----------------------------
# su(1,n+1) families
# ----------------------------
def _su_element(n: int, K: Domain, B: Block, C: Block, a1: Any = 0) -> DomainMatrix:
    return build_pk_element(n, a1=a1, a2=_neg_half_trace(C, K), B=B, C=C, K=K)


def _check_su_h(spec: FamilySpec, head: int, sod_lo: int = 0, sod_hi: int = -1) -> List[DomainMatrix]:
    """h ⊂ su(head) + R(J_head - head/(n+2) J_n) + sod(sod_lo..sod_hi).

    Equivalently: B and C do not couple the head block 1..head with the rest,
    B is supported on the head and sod blocks, and C restricted to the tail is
    t times the identity with t = -tr C / 2.
    """
    n, K = spec.n, spec.domain
    sod = set(_rng(sod_lo, sod_hi))

    def block(i: int) -> str:
        if i < head:
            return "head"
        return "sod" if (i + 1) in sod else "rest"

    for B, C in spec.u_basis:
        if len(B) != n or len(C) != n:
            _fail(spec, f"h blocks are {n}x{n}")
        t = _neg_half_trace(C, K)
        for i in range(n):
            for j in range(n):
                b, c = K.convert(B[i][j]), K.convert(C[i][j])
                if b and (block(i) != block(j) or block(i) == "rest"):
                    _fail(spec, "h ⊂ su(head) + R(J_head - head/(n+2) J_n) + sod")
                if i >= head or j >= head:
                    want = t if i == j else K.zero
                    if c != want:
                        _fail(spec, "h ⊂ su(head) + R(J_head - head/(n+2) J_n) + sod")
    mats = _u_elements(spec)
    _check_subalgebra(spec, mats, "h")
    return mats


def _su_common(spec: FamilySpec) -> Tuple[int, int, Domain, List[DomainMatrix]]:
    n, m, K = spec.n, spec.m, spec.domain
    _require_n(spec, n >= 1, "n >= 1")
    _require_n(spec, 0 <= m <= n, "0 <= m <= n")
    mats = _check_su_h(spec, m, m + 1, n)
    return n, m, K, mats


def _su_A1(spec: FamilySpec) -> List[DomainMatrix]:
    n, m, K, _ = _su_common(spec)
    out = [build_pk_element(n, a1=1, K=K)]
    out += [_su_element(n, K, B, C) for B, C in spec.u_basis]
    return out + pk_ideal(n, K, _rng(1, n), _rng(1, m))


def _su_phi(spec: FamilySpec) -> List[DomainMatrix]:
    n, m, K, mats = _su_common(spec)
    fi = _scalar_values(spec, spec.phi, "phi", len(mats))
    _kills_derived(spec, mats, [[v] for v in fi], "phi")
    out = [_su_element(n, K, B, C, a) for (B, C), a in zip(spec.u_basis, fi)]
    return out + pk_ideal(n, K, _rng(1, n), _rng(1, m))


def _su_n_psi(spec: FamilySpec) -> List[DomainMatrix]:
    return _hol_n_psi(spec, su=True)


def _su_m_psi(spec: FamilySpec) -> List[DomainMatrix]:
    return _hol_m_psi(spec, su=True)


def _sod_common(spec: FamilySpec, bound: int) -> Tuple[List[DomainMatrix], List[Block]]:
    for B, C in spec.u_basis:
        if any(x for row in C for x in row):
            _fail(spec, "h ⊂ sod (C = 0)")
    if _support([B for B, _ in spec.u_basis]) > bound:
        _fail(spec, f"h ⊂ sod(1..{bound})")
    mats = _u_elements(spec)
    _check_subalgebra(spec, mats, "h")
    return mats, [B for B, _ in spec.u_basis]


def _vec_values(spec: FamilySpec, count: int, allowed: List[int]) -> List[List[Any]]:
    if len(spec.psi) != count:
        _fail(spec, f"psi has one value per basis element ({count})")
    K = spec.domain
    out = []
    for v in spec.psi:
        vec = [_parse(x, K) for x in v]
        if len(vec) != spec.n or not _vec_support(vec, allowed):
            _fail(spec, f"psi takes values in E^1_{{{allowed[0] if allowed else ''}..{spec.n}}}")
        out.append(vec)
    return out


def _su0_psi_k(spec: FamilySpec, with_c: bool = True, with_zeta: bool = False) -> List[DomainMatrix]:
    n, k, K = spec.n, spec.k, spec.domain
    _require_n(spec, 0 < k < n, "0 < k < n")
    mats, Bs = _sod_common(spec, k)
    if center_dim(mats) < n - k:
        _fail(spec, "dim z(h) >= n - k")
    vals = _vec_values(spec, len(mats), _rng(k + 1, n))
    _kills_derived(spec, mats, vals, "psi")
    if (rank(DomainMatrix(vals, (len(vals), n), K)) if vals else 0) != n - k:
        _fail(spec, "psi is surjective onto E^1_{k+1..n}")
    zs = [K.zero] * len(mats)
    if with_zeta:
        zs = _scalar_values(spec, spec.zeta, "zeta", len(mats))
        if not any(zs):
            _fail(spec, "zeta != 0")
        _kills_derived(spec, mats, [[z] for z in zs], "zeta")
    out = [build_pk_element(n, B=B, z1=v, c=z, K=K) for B, v, z in zip(Bs, vals, zs)]
    return out + pk_ideal(n, K, _rng(1, k), (), with_c=with_c)


def _su0_psi(spec: FamilySpec) -> List[DomainMatrix]:
    return _su0_psi_k(spec)


def _su0_psi_zeta(spec: FamilySpec) -> List[DomainMatrix]:
    return _su0_psi_k(spec, with_c=False, with_zeta=True)


def _su0_zeta(spec: FamilySpec) -> List[DomainMatrix]:
    n, K = spec.n, spec.domain
    _require_n(spec, n >= 1, "n >= 1")
    mats, Bs = _sod_common(spec, n)
    zs = _scalar_values(spec, spec.zeta, "zeta", len(mats))
    if not mats or center_dim(mats) == 0:
        _fail(spec, "z(h) != 0")
    _kills_derived(spec, mats, [[z] for z in zs], "zeta")
    if not _nonzero_on_center(mats, zs, K):
        _fail(spec, "zeta does not vanish on z(h)")
    out = [build_pk_element(n, B=B, c=z, K=K) for B, z in zip(Bs, zs)]
    return out + pk_ideal(n, K, _rng(1, n), (), with_c=False)


def _nonzero_on_center(mats: Sequence[DomainMatrix], values: Sequence[Any], K: Domain) -> bool:
    N = len(mats)
    rows: List[List[Any]] = []
    for b in mats:
        cols = [flatten(bracket(a, b)) for a in mats]
        for i in range(len(cols[0])):
            rows.append([cols[j][i] for j in range(N)])
    center = nullspace(DomainMatrix(rows, (len(rows), N), K))
    return any(sum((c * v for c, v in zip(vec, values)), K.zero) for vec in center.basis)


# ============================================
# 3) LORENTZIAN FAMILIES
# ============================================

def _h_matrices(spec: FamilySpec, bound: int) -> List[DomainMatrix]:
    n, K = spec.n, spec.domain
    mats = []
    for A in spec.h_basis:
        if len(A) != n or any(len(r) != n for r in A):
            _fail(spec, f"h elements are {n}x{n}")
        M = DomainMatrix([[_parse(x, K) for x in r] for r in A], (n, n), K)
        if M.transpose() != -M:
            _fail(spec, "h ⊂ so(n)")
        mats.append(M)
    if _support(spec.h_basis) > bound:
        _fail(spec, f"h ⊂ so({bound})")
    _check_subalgebra(spec, mats, "h")
    return mats


def _translations(n: int, K: Domain, upto: int) -> List[DomainMatrix]:
    return [build_lorentz_element(n, X=_unit_vec(n, i, K), K=K) for i in range(1, upto + 1)]


def _lorentz1(spec: FamilySpec) -> List[DomainMatrix]:
    n, K = spec.n, spec.domain
    mats = _h_matrices(spec, n)
    out = [build_lorentz_element(n, a=1, K=K)]
    out += [build_lorentz_element(n, A=entries(M), K=K) for M in mats]
    return out + _translations(n, K, n)


def _lorentz2(spec: FamilySpec) -> List[DomainMatrix]:
    n, K = spec.n, spec.domain
    mats = _h_matrices(spec, n)
    return [build_lorentz_element(n, A=entries(M), K=K) for M in mats] + _translations(n, K, n)


def _lorentz3(spec: FamilySpec) -> List[DomainMatrix]:
    n, K = spec.n, spec.domain
    mats = _h_matrices(spec, n)
    fi = _scalar_values(spec, spec.phi, "phi", len(mats))
    if not any(fi):
        _fail(spec, "phi != 0")
    _kills_derived(spec, mats, [[v] for v in fi], "phi")
    out = [build_lorentz_element(n, a=a, A=entries(M), K=K) for M, a in zip(mats, fi)]
    return out + _translations(n, K, n)


def _lorentz4(spec: FamilySpec) -> List[DomainMatrix]:
    n, m, K = spec.n, spec.m, spec.domain
    _require_n(spec, 0 < m < n, "0 < m < n")
    mats = _h_matrices(spec, m)
    if center_dim(mats) < n - m:
        _fail(spec, "dim z(h) >= n - m")
    if len(spec.psi) != len(mats):
        _fail(spec, f"psi has one value per basis element ({len(mats)})")
    vals = []
    for v in spec.psi:
        if len(v) != n - m:
            _fail(spec, f"psi takes values in R^{n - m}")
        vals.append([_parse(x, K) for x in v])
    _kills_derived(spec, mats, vals, "psi")
    if (rank(DomainMatrix(vals, (len(vals), n - m), K)) if vals else 0) != n - m:
        _fail(spec, "psi is surjective onto R^{n-m}")
    out = [build_lorentz_element(n, A=entries(M), X=[K.zero] * m + v, K=K) for M, v in zip(mats, vals)]
    return out + _translations(n, K, m)


# ============================================
# 4) REGISTRY
# ============================================

def _du(s: FamilySpec) -> int:
    return len(s.u_basis)


def _dh(s: FamilySpec) -> int:
    return len(s.h_basis)


FAMILIES: Dict[str, FamilyInfo] = {
    info.id: info
    for info in [
        FamilyInfo("n0-hol1", PSEUDO_KAEHLER, _n0_hol1, lambda s: 3, "u(1,1)_{<p1,p2>}"),
        FamilyInfo("n0-hol2", PSEUDO_KAEHLER, _n0_hol2, lambda s: 2, "A1 + A2"),
        FamilyInfo("n0-gamma", PSEUDO_KAEHLER, _n0_gamma,
                   lambda s: 1 if not (_parse(s.gamma1, s.domain) or _parse(s.gamma2, s.domain)) else 2,
                   "{(a g1, a g2, 0)} x C"),
        FamilyInfo("n0-c", PSEUDO_KAEHLER, _n0_c, lambda s: 1, "C inside su(1,1)_{<p1,p2>}"),
        FamilyInfo("n0-su11", PSEUDO_KAEHLER, _n0_su11, lambda s: 2, "su(1,1)_{<p1,p2>} = A1 x C"),
        FamilyInfo("u-pp", PSEUDO_KAEHLER, _u_pp, lambda s: s.n * s.n + 2 * s.n + 3, "u(1,n+1)_{<p1,p2>}"),
        FamilyInfo("su-pp", PSEUDO_KAEHLER, _su_pp, lambda s: s.n * s.n + 2 * s.n + 2, "su(1,n+1)_{<p1,p2>}"),
        FamilyInfo("hol-m-u-A1-A2t", PSEUDO_KAEHLER, _hol_A1_A2t,
                   lambda s: 2 + _du(s) + s.n + s.m + 1, "(A1 + A2~ + u) x (N1 + N2_{1..m} + C)"),
        FamilyInfo("hol-m-u-A1-phihat", PSEUDO_KAEHLER, _hol_A1_phihat,
                   lambda s: 1 + _du(s) + s.n + s.m + 1, "(A1 + {(0, phihat, B, C) + phihat J_{m+1..n}}) x ideal"),
        FamilyInfo("hol-m-u-phi-phihat", PSEUDO_KAEHLER, _hol_phi_phihat,
                   lambda s: _du(s) + s.n + s.m + 1, "{(phi, phihat, B, C) + phihat J_{m+1..n}} x ideal"),
        FamilyInfo("hol-m-u-phi-A2t", PSEUDO_KAEHLER, _hol_phi_A2t,
                   lambda s: 1 + _du(s) + s.n + s.m + 1, "(A2~ + {(phi, 0, B, C)}) x ideal"),
        FamilyInfo("hol-m-u-lambda", PSEUDO_KAEHLER, _hol_lambda,
                   lambda s: 1 + _du(s) + s.n + s.m + 1, "({(a, lambda a) + lambda a J_{m+1..n}} + u) x ideal"),
        FamilyInfo("hol-n-u-psi-k-l", PSEUDO_KAEHLER, _hol_n_psi,
                   lambda s: _du(s) + 2 * s.k + (s.n - s.l) + 1, "{(0,0,B,C,psi1,psi2+psi3,0)} x ideal"),
        FamilyInfo("hol-m-u-psi-k-l-r", PSEUDO_KAEHLER, _hol_m_psi,
                   lambda s: _du(s) + 2 * s.k + (s.r - s.l) + 1, "{(0,0,B,C,psi1+psi4,psi2+psi3,0)} x ideal"),
        FamilyInfo("special-m-u-A1-phihat", PSEUDO_KAEHLER, _special_A1_phihat,
                   lambda s: 1 + _du(s) + s.n + s.m + 1, "hol-m-u-A1-phihat with phihat = -tr C/(n-m+2)"),
        FamilyInfo("special-m-u-phi-phihat", PSEUDO_KAEHLER, _special_phi_phihat,
                   lambda s: _du(s) + s.n + s.m + 1, "hol-m-u-phi-phihat with phihat = -tr C/(n-m+2)"),
        FamilyInfo("su-m-h-A1", PSEUDO_KAEHLER, _su_A1,
                   lambda s: 1 + _du(s) + s.n + s.m + 1, "(A1 + {(0, -tr C/2, B, C)}) x (N1 + N2_{1..m} + C)"),
        FamilyInfo("su-m-h-phi", PSEUDO_KAEHLER, _su_phi,
                   lambda s: _du(s) + s.n + s.m + 1, "{(phi, -tr C/2, B, C)} x (N1 + N2_{1..m} + C)"),
        FamilyInfo("su-n-h-psi-k-l", PSEUDO_KAEHLER, _su_n_psi,
                   lambda s: _du(s) + 2 * s.k + (s.n - s.l) + 1, "su version of hol-n-u-psi-k-l"),
        FamilyInfo("su-m-h-psi-k-l-r", PSEUDO_KAEHLER, _su_m_psi,
                   lambda s: _du(s) + 2 * s.k + (s.r - s.l) + 1, "su version of hol-m-u-psi-k-l-r"),
        FamilyInfo("su-0-h-psi-k", PSEUDO_KAEHLER, _su0_psi,
                   lambda s: _du(s) + s.k + 1, "{(0,0,B,0,psi(B),0,0)} x (N1_{1..k} + C)"),
        FamilyInfo("su-0-h-zeta", PSEUDO_KAEHLER, _su0_zeta,
                   lambda s: _du(s) + s.n, "{(0,0,B,0,0,0,zeta(B))} x N1"),
        FamilyInfo("su-0-h-psi-k-zeta", PSEUDO_KAEHLER, _su0_psi_zeta,
                   lambda s: _du(s) + s.k, "{(0,0,B,0,psi(B),0,zeta(B))} x N1_{1..k}"),
        FamilyInfo("lorentz1", LORENTZ, _lorentz1, lambda s: 1 + _dh(s) + s.n, "(R + h) x R^n"),
        FamilyInfo("lorentz2", LORENTZ, _lorentz2, lambda s: _dh(s) + s.n, "h x R^n"),
        FamilyInfo("lorentz3", LORENTZ, _lorentz3, lambda s: _dh(s) + s.n, "{(phi(A), A, 0)} x R^n"),
        FamilyInfo("lorentz4", LORENTZ, _lorentz4, lambda s: _dh(s) + s.m, "{(0, A, X + psi(A)) | X in R^m}"),
    ]
}


def family_ids() -> List[str]:
    return sorted(FAMILIES)


def family_info(family: str) -> FamilyInfo:
    try:
        return FAMILIES[family]
    except KeyError:
        raise ParameterConstraintError(family, f"family id is one of {', '.join(family_ids())}")


def _spec_domain(spec: FamilySpec) -> Domain:
    doms = [spec.domain]
    for B, C in spec.u_basis:
        for X in (B, C):
            if isinstance(X, DomainMatrix):
                doms.append(X.domain)
    for A in spec.h_basis:
        if isinstance(A, DomainMatrix):
            doms.append(A.domain)
    return common_field(*doms)


def _plain(X: Any, K: Domain) -> Block:
    if isinstance(X, DomainMatrix):
        return entries(X.convert_to(K))
    return [[_parse(x, K) for x in row] for row in X]


def build_algebra(spec: FamilySpec) -> MatrixLieAlgebra:
    info = family_info(spec.family)
    spec.domain = _spec_domain(spec)
    spec.u_basis = [(_plain(B, spec.domain), _plain(C, spec.domain)) for B, C in spec.u_basis]
    spec.h_basis = [_plain(A, spec.domain) for A in spec.h_basis]
    if spec.n < 0:
        _fail(spec, "n >= 0")
    mats = info.builder(spec)
    frame = build_frame(info.frame, spec.n)
    alg = make_algebra(frame.structure(spec.domain), mats)
    expected = info.dimension(spec)
    if alg.dim != expected:
        _fail(spec, f"dimension equals the closed form {expected} (built {alg.dim})")
    logger.debug(f"built {spec.label()}: dim {alg.dim}")
    return alg


# ============================================
# 5) UNITARY PART PRESETS
# ============================================

def u_preset(name: str, m: int, n: int, K: Domain = QQ) -> List[UElement]:
    """'zero' -> {0}, 'J' -> R J_m, 'full' -> u(m), 'su' -> su(m),
    'su-J' -> su(m) + R(J_m - m/(n+2) J_n), 'sod' -> sod(1..m)."""
    if name == "zero" or m == 0:
        return []
    if name == "J":
        return [([[K.zero] * n for _ in range(n)], _diag(n, 1, m, K))]
    if name == "full":
        return u_basis(m, n, K)
    if name == "su":
        out = [(B, C) for B, C in u_basis(m, n, K) if not _trace(C, K)]
        for i in range(1, m):
            C = _diag(n, i, i, K)
            C[i][i] = -K.one
            out.append(([[K.zero] * n for _ in range(n)], C))
        return out
    if name == "su-J":
        shift = K.convert(QQ(m, n + 2))
        C = [[(K.one if i == j and i < m else K.zero) - (shift if i == j else K.zero) for j in range(n)] for i in range(n)]
        return u_preset("su", m, n, K) + [([[K.zero] * n for _ in range(n)], C)]
    if name == "sod":
        return sod_basis(n, 1, m, K)
    raise ParameterConstraintError("u-preset", f"preset is one of zero, J, full, su, su-J, sod (got '{name}')")


def h_preset(name: str, m: int, n: int, K: Domain = QQ) -> List[Block]:
    """'zero' -> {0}, 'so' -> so(m) in so(n)."""
    if name == "zero" or m == 0:
        return []
    if name == "so":
        out = []
        for B in so_basis(m, K):
            M = [[K.zero] * n for _ in range(n)]
            for i in range(m):
                for j in range(m):
                    M[i][j] = B[i][j]
            out.append(M)
        return out
    raise ParameterConstraintError("h-preset", f"preset is one of zero, so (got '{name}')")
