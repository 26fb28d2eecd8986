"""
Explicit metrics realizing the catalog families.

Lorentzian recipes live on R^{n+2} with coordinates x0..x{n+1} (x0 <-> p,
x{n+1} <-> q); pseudo-Kaehler recipes live on R^{2n+4} where the coordinate
x^a of the construction is variable a-1, so x0, x1 <-> p1, p2, then the e's,
the f's, and finally q1, q2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyRing

from core.catalog import FamilySpec, build_algebra, coordinates, family_info, special_phihat
from core.errors import ParameterConstraintError, RecipeError
from core.exactnum import Polynomial, QQ_SQRT3, constant_term, partial, poly_from_expr, poly_ring, rational
from core.frames import LORENTZ
from core.geometry import PolynomialMetric, pm_degree
from core.liealg import MatrixLieAlgebra, MetricStructure, bracket, lie_closure, make_algebra
from core.linalg import entries, eye, flatten, matrix, nullspace, span
from core.curvspace import weak_curvature_space, weak_cyclic_defect
from core.logs import get_logger
from core.special import g2_generators, g2_weak_map, rho_so3_generators, rho_so3_weak_map, spin7_generators, spin7_weak_map

logger = get_logger("recipes")

Block = List[List[Any]]

METRIC_ROWS = ("n0-row1", "n0-row2", "n0-row3", "n0-row4")

# family id -> construction row for n >= 1
_PK_ROWS = {
    "hol-m-u-A1-A2t": "A1-A2t",
    "hol-m-u-A1-phihat": "A1-phihat",
    "hol-m-u-phi-A2t": "phi-A2t",
    "hol-m-u-phi-phihat": "phi-phihat",
    "hol-m-u-lambda": "lambda",
    "hol-n-u-psi-k-l": "n-psi",
    "hol-m-u-psi-k-l-r": "m-psi",
    "special-m-u-A1-phihat": "A1-phihat",
    "special-m-u-phi-phihat": "phi-phihat",
}

_N0_ROWS = {"n0-hol1": "n0-row1", "n0-hol2": "n0-row2"}


@dataclass
class MetricRecipe:
    """A family instance together with the data its metric is built from.

    `weak` lists the maps P_alpha (each given by its n values P_alpha(e_i))
    for Lorentzian recipes; when empty, a basis of the weak curvature space
    of h is used.
    """
    family: FamilySpec
    weak: List[List[Any]] = field(default_factory=list)
    label: str = ""

    @property
    def case(self) -> str:
        return family_info(self.family.family).frame

    def row(self) -> str:
        fam = self.family.family
        if self.case == LORENTZ:
            return fam
        if fam in _N0_ROWS:
            return _N0_ROWS[fam]
        if fam == "n0-gamma":
            K = self.family.domain
            g1, g2 = _num(self.family.gamma1, K), _num(self.family.gamma2, K)
            return "n0-row3" if (g1 or g2) else "n0-row4"
        if fam in _PK_ROWS:
            return _PK_ROWS[fam]
        raise RecipeError(f"no metric construction is known for family '{fam}'", {"family": fam})


@dataclass
class PkFunctions:
    """The functions entering a pseudo-Kaehler recipe metric.

    `u` maps a variable index (an e or f slot) to the coefficient u of
    2 dx^slot dx^{q2}.
    """
    n: int
    ring: PolyRing
    u: Dict[int, Polynomial]
    f1: Polynomial
    f2: Polynomial
    f3: Polynomial


def _num(v: Any, K: Domain):
    return rational(v, K) if isinstance(v, (int, str)) else K.convert(v)


def _inv_fact(k: int, K: Domain):
    return K.convert(QQ(1, factorial(k)))


def _q(a: int, b: int, K: Domain):
    return K.convert(QQ(a, b))


# ============================================
# 1) LORENTZIAN RECIPES
# ============================================

def _lorentz_h(spec: FamilySpec) -> MatrixLieAlgebra:
    n, K = spec.n, spec.domain
    ms = MetricStructure(n, eye(n, K)) if n else None
    if ms is None:
        raise RecipeError("Lorentzian recipes need n >= 1")
    return make_algebra(ms, [matrix(A, K) for A in spec.h_basis])


def _weak_maps(recipe: MetricRecipe, h: MatrixLieAlgebra) -> List[List[DomainMatrix]]:
    n, K = recipe.family.n, recipe.family.domain
    if not recipe.weak:
        if not h.dim:
            return []
        return weak_curvature_space(h).basis
    out = []
    for alpha, P in enumerate(recipe.weak, start=1):
        if len(P) != n:
            raise RecipeError(f"P_{alpha} needs {n} values, got {len(P)}")
        mats = [M.convert_to(K) if isinstance(M, DomainMatrix) else matrix(M, K) for M in P]
        for i, M in enumerate(mats, start=1):
            if not h.contains(M):
                raise RecipeError(f"P_{alpha}(e{i}) does not lie in h")
        bad = weak_cyclic_defect(eye(n, K), mats)
        if bad is not None:
            raise RecipeError(f"P_{alpha} violates the cyclic identity on {bad}")
        out.append(mats)
    return out


def _support_of(mats: Sequence[DomainMatrix]) -> int:
    top = 0
    for M in mats:
        for i, row in enumerate(entries(M)):
            for j, x in enumerate(row):
                if x:
                    top = max(top, i + 1, j + 1)
    return top


def lorentz_u(P: Sequence[Sequence[DomainMatrix]], ring: PolyRing, n: int) -> List[Polynomial]:
    """u^k = sum_alpha a^k_{alpha j l} x^j x^l t^(alpha-1) for k = 1..n.

    a^k_{alpha j l} = (P_alpha(e_l)_{kj} + P_alpha(e_j)_{kl}) / (3 (alpha-1)!).
    """
    K = ring.domain
    X = ring.gens
    t = X[n + 1]
    out = [ring.zero for _ in range(n)]
    for alpha, Pa in enumerate(P, start=1):
        rows = [entries(M) for M in Pa]
        scale = _inv_fact(alpha - 1, K) * _q(1, 3, K)
        tp = t ** (alpha - 1)
        for k in range(n):
            acc = ring.zero
            for j in range(n):
                for l in range(n):
                    a = rows[l][k][j] + rows[j][k][l]
                    if a:
                        acc += X[j + 1] * X[l + 1] * a
            if acc:
                out[k] += acc * scale * tp
    return out


def _phi_of(h_basis: Sequence[DomainMatrix], values: Sequence[Any], X: DomainMatrix, K: Domain):
    if X.is_zero_matrix:
        return K.zero
    c = coordinates(h_basis, X)
    return sum((ci * K.convert(v) for ci, v in zip(c, values)), K.zero)


def build_lorentz_metric(recipe: MetricRecipe) -> PolynomialMetric:
    spec = recipe.family
    expected = build_algebra(spec)
    n, K = spec.n, spec.domain
    kind = spec.family
    h = _lorentz_h(spec)
    P = _weak_maps(recipe, h)
    h_mats = [matrix(A, K) for A in spec.h_basis]
    if P:
        if lie_closure([M for Pa in P for M in Pa], h.ambient).dim != h.dim:
            raise RecipeError("the values of the P_alpha do not generate h")
    elif h.dim:
        raise RecipeError("h is nonzero but carries no weak curvature tensor")

    ring = poly_ring(n + 2, K)
    X = ring.gens
    t = X[n + 1]
    n0 = _support_of(h_mats)
    u = lorentz_u(P, ring, n)

    tail = sum((X[i] ** 2 for i in range(n0 + 1, n + 1)), ring.zero)
    if kind == "lorentz1":
        f = X[0] ** 2 + tail
    elif kind == "lorentz2":
        f = tail
    elif kind == "lorentz3":
        f = tail
        for alpha, Pa in enumerate(P, start=1):
            for i in range(n):
                phi_ai = _phi_of(h_mats, [_num(v, K) for v in spec.phi], Pa[i], K) * _inv_fact(alpha - 1, K)
                if phi_ai:
                    f += X[0] * X[i + 1] * t ** (alpha - 1) * (2 * phi_ai)
    elif kind == "lorentz4":
        m = spec.m
        f = sum((X[i] ** 2 for i in range(n0 + 1, m + 1)), ring.zero)
        psi_vals = [[_num(x, K) for x in v] for v in spec.psi]
        for alpha, Pa in enumerate(P, start=1):
            for i in range(n):
                if Pa[i].is_zero_matrix:
                    continue
                c = coordinates(h_mats, Pa[i])
                for s in range(n - m):
                    psi = sum((ci * v[s] for ci, v in zip(c, psi_vals)), K.zero) * _inv_fact(alpha - 1, K)
                    if psi:
                        f += X[i + 1] * X[m + 1 + s] * t ** (alpha - 1) * (2 * psi)
    else:
        raise RecipeError(f"no Lorentzian construction for family '{kind}'")

    d = n + 2
    g = [[ring.zero] * d for _ in range(d)]
    g[0][d - 1] = g[d - 1][0] = ring.one
    for i in range(1, n + 1):
        g[i][i] = ring.one
        g[i][d - 1] = g[d - 1][i] = u[i - 1]
    g[d - 1][d - 1] = f
    logger.info(f"built {kind} metric on R^{d} from {len(P)} weak curvature maps (n0={n0}), holonomy target dim {expected.dim}")
    return PolynomialMetric(d, g)


# ============================================
# 2) PSEUDO-KAEHLER RECIPES
# ============================================

def _u_block_matrix(B: Block, C: Block, K: Domain) -> DomainMatrix:
    n = len(B)
    rows = [[K.zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            rows[i][j] = rows[n + i][n + j] = B[i][j]
            rows[i][n + j] = -C[i][j]
            rows[n + i][j] = C[i][j]
    return DomainMatrix(rows, (2 * n, 2 * n), K)


@dataclass
class _UData:
    """u reordered as (basis of u', basis of z(u)) with the values of the
    twisting maps on the central part."""
    blocks: List[Tuple[Block, Block]]
    n1: int
    center: List[List[Any]]

    @property
    def N(self) -> int:
        return len(self.blocks)


def _reorder_u(spec: FamilySpec) -> _UData:
    n, K = spec.n, spec.domain
    mats = [_u_block_matrix(B, C, K) for B, C in spec.u_basis]
    if not mats:
        return _UData([], 0, [])
    size = 2 * n
    derived = span([flatten(bracket(a, b)) for i, a in enumerate(mats) for b in mats[i + 1:]], size * size, K)
    blocks: List[Tuple[Block, Block]] = []
    for v in derived.basis:
        rows = [list(v[r * size:(r + 1) * size]) for r in range(size)]
        blocks.append(([row[:n] for row in rows[:n]], [row[:n] for row in rows[n:]]))
    N = len(mats)
    sys_rows: List[List[Any]] = []
    for b in mats:
        cols = [flatten(bracket(a, b)) for a in mats]
        for i in range(size * size):
            sys_rows.append([cols[j][i] for j in range(N)])
    center = nullspace(DomainMatrix(sys_rows, (len(sys_rows), N), K)).vectors()
    for c in center:
        B = [[sum((c[a] * K.convert(spec.u_basis[a][0][i][j]) for a in range(N)), K.zero) for j in range(n)] for i in range(n)]
        C = [[sum((c[a] * K.convert(spec.u_basis[a][1][i][j]) for a in range(N)), K.zero) for j in range(n)] for i in range(n)]
        blocks.append((B, C))
    if len(blocks) != N:
        raise RecipeError(f"u does not split as u' + z(u) ({len(blocks)} != {N})")
    return _UData(blocks, N - len(center), center)


def _on_center(ud: _UData, values: Sequence[Any], K: Domain) -> List[Any]:
    """Values of a map (given on the user basis) on the central basis elements."""
    return [sum((c * _num(v, K) for c, v in zip(coeffs, values)), K.zero) for coeffs in ud.center]


def _vec_on_center(ud: _UData, values: Sequence[Sequence[Any]], K: Domain) -> List[List[Any]]:
    width = len(values[0]) if values else 0
    return [
        [sum((c * _num(v[s], K) for c, v in zip(coeffs, values)), K.zero) for s in range(width)]
        for coeffs in ud.center
    ]


class _PkBuilder:
    """Accumulates u and (f1, f2, f3) for one recipe."""

    def __init__(self, n: int, K: Domain):
        self.n = n
        self.K = K
        self.ring = poly_ring(2 * n + 4, K)
        X = self.ring.gens
        self.x1, self.x2 = X[0], X[1]
        self.t = X[2 * n + 2]
        self.e = lambda j: X[1 + j]
        self.f = lambda j: X[1 + n + j]
        self.u: Dict[int, Polynomial] = {}
        self.f1 = self.f2 = self.f3 = self.ring.zero

    def add_f(self, f1: Polynomial, f2: Polynomial, f3: Polynomial, scale: Any = None) -> None:
        if scale is not None:
            f1, f2, f3 = f1 * scale, f2 * scale, f3 * scale
        self.f1 += f1
        self.f2 += f2
        self.f3 += f3

    def add_u(self, slot: int, p: Polynomial) -> None:
        if p:
            self.u[slot] = self.u.get(slot, self.ring.zero) + p

    # ----------------------------
    # f-families
    # ----------------------------
    def f_A1(self, K_: int) -> Tuple[Polynomial, Polynomial, Polynomial]:
        c = 2 * _inv_fact(K_, self.K)
        f1 = -self.x2 * self.t ** K_ * c
        return f1, -f1, self.x1 * self.t ** K_ * c

    def f_A2t(self, K_: int, m: int) -> Tuple[Polynomial, Polynomial, Polynomial]:
        K, n, t = self.K, self.n, self.t
        r = self.ring
        c = _inv_fact(K_ - 1, K)
        two_over = _q(2, K_, K)
        se = sum((self.e(i) ** 2 for i in range(m + 1, n + 1)), r.zero)
        sf = sum((self.f(i) ** 2 for i in range(m + 1, n + 1)), r.zero)
        sef = sum((self.e(i) * self.f(i) for i in range(m + 1, n + 1)), r.zero)
        lead = t ** (K_ - 1) * c
        f1 = lead * (-self.x1 * t * two_over + se)
        f2 = lead * (self.x1 * t * two_over + sf + t ** 2 * (se + sf) * _q(1, (K_ + 1) * K_, K))
        f3 = lead * (-self.x2 * t * two_over + sef)
        return f1, f2, f3

    def f_tilde(self, m1: int, m2: int) -> Tuple[Polynomial, Polynomial, Polynomial]:
        r = self.ring
        f1 = sum((self.e(i) ** 2 - self.f(i) ** 2 for i in range(m1, m2 + 1)), r.zero)
        f3 = sum((self.e(i) * self.f(i) * 2 for i in range(m1, m2 + 1)), r.zero)
        return f1, -f1, f3

    def f_breve(self, m1: int, K_: int, m2: int) -> Tuple[Polynomial, Polynomial, Polynomial]:
        r, K, t = self.ring, self.K, self.t
        f1 = f3 = r.zero
        for i in range(max(m1, 1), m2 + 1):
            power = K_ + i - m1
            c = 2 * _inv_fact(power, K)
            f1 -= self.f(i) * t ** power * c
            f3 -= self.e(i) * t ** power * c
        return f1, -f1, f3

    def f_zero(self, ud: _UData) -> Tuple[Polynomial, Polynomial, Polynomial]:
        r, K, n, t = self.ring, self.K, self.n, self.t
        half = _q(1, 2, K)
        f1 = r.zero
        for alpha, (B, C) in enumerate(ud.blocks, start=1):
            acc = r.zero
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    b, c = B[i - 1][j - 1], C[i - 1][j - 1]
                    if b:
                        acc += self.e(i) * self.f(j) * b
                    if c:
                        acc += (self.e(i) * self.e(j) + self.f(i) * self.f(j)) * (c * half)
            f1 += acc * t ** (alpha - 1) * _inv_fact(alpha - 1, K)
        squares = r.zero
        for i in range(1, n + 1):
            squares += self._u_part_e(ud, i) ** 2 + self._u_part_f(ud, i) ** 2
        return f1, f1 + squares, r.zero

    def f_psi(self, ud: _UData, psi: List[List[Any]], k: int, l: int, upper3: int, r_: Optional[int]) -> Tuple[Polynomial, Polynomial, Polynomial]:
        """f^{n,psi} (r_ is None, upper3 = n) or f^{m,psi} (upper3 = m, psi4 on r_+1..n)."""
        ring, K, n, t = self.ring, self.K, self.n, self.t
        f1 = f3 = ring.zero
        for idx, vec in enumerate(psi):
            alpha = ud.n1 + idx + 1
            z1, z2 = vec[:n], vec[n:]
            a1 = a3 = ring.zero
            for j in range(k + 1, l + 1):
                a1 += self.f(j) * z1[j - 1] - self.e(j) * z2[j - 1]
                a3 += -self.e(j) * z1[j - 1] - self.f(j) * z2[j - 1]
            for j in range(l + 1, upper3 + 1):
                a1 -= self.e(j) * z2[j - 1]
                a3 -= self.f(j) * z2[j - 1]
            if r_ is not None:
                for j in range(r_ + 1, n + 1):
                    a1 += self.f(j) * z1[j - 1]
                    a3 -= self.e(j) * z1[j - 1]
            c = 2 * _inv_fact(alpha, K)
            f1 += a1 * t ** alpha * c
            f3 += a3 * t ** alpha * c
        return f1, -f1, f3

    # ----------------------------
    # u-functions
    # ----------------------------
    def _u_part_e(self, ud: _UData, i: int) -> Polynomial:
        r, K, n, t = self.ring, self.K, self.n, self.t
        out = r.zero
        for alpha, (B, C) in enumerate(ud.blocks, start=1):
            acc = r.zero
            for j in range(1, n + 1):
                b, c = B[i - 1][j - 1], C[i - 1][j - 1]
                if b:
                    acc += self.e(j) * b
                if c:
                    acc -= self.f(j) * c
            out += acc * t ** alpha * _inv_fact(alpha, K)
        return out

    def _u_part_f(self, ud: _UData, i: int) -> Polynomial:
        r, K, n, t = self.ring, self.K, self.n, self.t
        out = r.zero
        for alpha, (B, C) in enumerate(ud.blocks, start=1):
            acc = r.zero
            for j in range(1, n + 1):
                b, c = B[i - 1][j - 1], C[i - 1][j - 1]
                if b:
                    acc += self.f(j) * b
                if c:
                    acc += self.e(j) * c
            out += acc * t ** alpha * _inv_fact(alpha, K)
        return out

    def u_from_basis(self, ud: _UData) -> None:
        for i in range(1, self.n + 1):
            self.add_u(1 + i, self._u_part_e(ud, i))
            self.add_u(1 + self.n + i, self._u_part_f(ud, i))

    def u_rotation(self, m: int, K_: int, coeff: Any) -> None:
        """u^{e_i} -= coeff x^{f_i} t^K/K!, u^{f_i} += coeff x^{e_i} t^K/K! for i > m."""
        c = _inv_fact(K_, self.K) * coeff
        if not c:
            return
        for i in range(m + 1, self.n + 1):
            self.add_u(1 + i, -self.f(i) * self.t ** K_ * c)
            self.add_u(1 + self.n + i, self.e(i) * self.t ** K_ * c)

    def functions(self) -> PkFunctions:
        return PkFunctions(self.n, self.ring, dict(self.u), self.f1, self.f2, self.f3)


def _n0_row_functions(row: str, spec: FamilySpec) -> PkFunctions:
    K = spec.domain
    ring = poly_ring(4, K)
    x1, x2, x3, x4 = ring.gens
    if row == "n0-row1":
        f1 = -2 * x2 * x3 - x1 * x3 ** 2
        f3 = 2 * x1 * x3 - x2 * x3 ** 2
        return PkFunctions(0, ring, {}, f1, -f1, f3)
    if row == "n0-row2":
        f1 = x1 ** 2 - x2 ** 2
        return PkFunctions(0, ring, {}, f1, -f1, 2 * x1 * x2)
    if row == "n0-row3":
        g1, g2 = _num(spec.gamma1, K), _num(spec.gamma2, K)
        f1 = (x2 * x3 * g1 + x1 * x3 * g2) * (-2)
        f3 = (x1 * x3 * g1 - x2 * x3 * g2) * 2
        return PkFunctions(0, ring, {}, f1, -f1, f3)
    if row == "n0-row4":
        return PkFunctions(0, ring, {}, x4 ** 2, ring.zero, ring.zero)
    raise RecipeError(f"unknown n = 0 row '{row}'")


def pk_functions(recipe: MetricRecipe) -> PkFunctions:
    """u and (f1, f2, f3) of the pseudo-Kaehler construction for the recipe's family."""
    spec = recipe.family
    row = recipe.row()
    build_algebra(spec)
    if row.startswith("n0-row"):
        return _n0_row_functions(row, spec)
    n, K, m = spec.n, spec.domain, spec.m
    ud = _reorder_u(spec)
    N = ud.N
    n0 = 0
    for B, C in spec.u_basis:
        for X in (B, C):
            for i, r in enumerate(X):
                for j, x in enumerate(r):
                    if x:
                        n0 = max(n0, i + 1, j + 1)
    b = _PkBuilder(n, K)
    b.u_from_basis(ud)
    b.add_f(*b.f_zero(ud))

    if row in ("A1-A2t", "A1-phihat", "phi-A2t", "phi-phihat", "lambda"):
        b.add_f(*b.f_tilde(n0 + 1, m))
    if row == "A1-A2t":
        b.add_f(*b.f_A1(N + 1))
        b.add_f(*b.f_A2t(N + 2, m))
        b.add_f(*b.f_breve(m + 1, N + 3, n))
        b.u_rotation(m, N + 2, K.one)
    elif row in ("A1-phihat", "phi-phihat"):
        values = special_phihat(spec) if spec.family.startswith("special-") else spec.phihat
        phihat = _on_center(ud, values, K)
        for idx, v in enumerate(phihat):
            alpha = ud.n1 + idx + 1
            if v:
                b.add_f(*b.f_A2t(alpha, m), scale=v)
                b.u_rotation(m, alpha, v)
        if row == "A1-phihat":
            b.add_f(*b.f_A1(N + 1))
            b.add_f(*b.f_breve(m + 1, N + 2, n))
        else:
            _add_phi(b, ud, spec, K)
            b.add_f(*b.f_breve(m + 1, N + 1, n))
    elif row == "phi-A2t":
        _add_phi(b, ud, spec, K)
        b.add_f(*b.f_A2t(N + 1, m))
        b.add_f(*b.f_breve(m + 1, N + 2, n))
        b.u_rotation(m, N + 1, K.one)
    elif row == "lambda":
        lam = _num(spec.lam, K)
        b.add_f(*b.f_A1(N + 1))
        b.add_f(*b.f_A2t(N + 1, m), scale=lam)
        b.add_f(*b.f_breve(m + 1, N + 2, n))
        b.u_rotation(m, N + 1, lam)
    elif row in ("n-psi", "m-psi"):
        k, l = spec.k, spec.l
        psi = _vec_on_center(ud, [list(z1) + list(z2) for z1, z2 in spec.psi], K)
        b.add_f(*b.f_tilde(n0 + 1, k))
        if row == "n-psi":
            b.add_f(*b.f_psi(ud, psi, k, l, n, None))
            b.add_f(*b.f_breve(l + 1, N + 1, n))
        else:
            b.add_f(*b.f_psi(ud, psi, k, l, m, spec.r))
            b.add_f(*b.f_breve(l + 1, N + 1, spec.r))
    else:
        raise RecipeError(f"unknown construction row '{row}'")
    return b.functions()


def _add_phi(b: _PkBuilder, ud: _UData, spec: FamilySpec, K: Domain) -> None:
    for idx, v in enumerate(_on_center(ud, spec.phi, K)):
        if v:
            b.add_f(*b.f_A1(ud.n1 + idx + 1), scale=v)


def pk_metric_from_functions(fn: PkFunctions) -> PolynomialMetric:
    n, ring = fn.n, fn.ring
    d = 2 * n + 4
    q1, q2 = d - 2, d - 1
    g = [[ring.zero] * d for _ in range(d)]
    g[0][q1] = g[q1][0] = ring.one
    g[1][q2] = g[q2][1] = ring.one
    for i in range(2, 2 * n + 2):
        g[i][i] = ring.one
    for slot, p in fn.u.items():
        g[slot][q2] = g[q2][slot] = p
    g[q1][q1] = fn.f1
    g[q2][q2] = fn.f2
    g[q1][q2] = g[q2][q1] = fn.f3
    return PolynomialMetric(d, g)


def build_pk_metric(recipe: MetricRecipe) -> PolynomialMetric:
    spec = recipe.family
    fn = pk_functions(recipe)
    for name, p in (("f1", fn.f1), ("f2", fn.f2), ("f3", fn.f3)):
        if constant_term(p):
            raise RecipeError(f"{name}(0) != 0")
    logger.info(f"built {spec.family} metric on R^{2 * spec.n + 4} ({recipe.row()})")
    return pk_metric_from_functions(fn)


def build_metric(recipe: MetricRecipe) -> PolynomialMetric:
    if recipe.case == LORENTZ:
        return build_lorentz_metric(recipe)
    return build_pk_metric(recipe)


def suggested_max_order(recipe: MetricRecipe, metric: PolynomialMetric) -> int:
    """N + 4 with N the number of t-powers used, never below the metric degree."""
    spec = recipe.family
    if recipe.case == LORENTZ:
        N = len(recipe.weak) if recipe.weak else len(_weak_maps(recipe, _lorentz_h(spec)))
    else:
        N = len(spec.u_basis)
    return max(N + 4, pm_degree(metric.g))


# ============================================
# 3) CHRISTOFFEL ORACLE
# ============================================

def pk_christoffel_oracle(fn: PkFunctions) -> Dict[Tuple[int, int, int], Polynomial]:
    """Closed forms of the Christoffel symbols Γ^a_{bc} (0-based variables)
    that hold for every metric of the pseudo-Kaehler construction."""
    n, ring = fn.n, fn.ring
    K = ring.domain
    half = K.convert(QQ(1, 2))
    q1, q2 = 2 * n + 2, 2 * n + 3
    d = lambda p, v: partial(p, v)
    out: Dict[Tuple[int, int, int], Polynomial] = {
        (q1, q1, q1): -d(fn.f1, 0) * half,
        (q1, q1, q2): -d(fn.f3, 0) * half,
        (q1, q2, q2): -d(fn.f2, 0) * half,
        (q2, q1, q1): -d(fn.f1, 1) * half,
        (q2, q1, q2): -d(fn.f3, 1) * half,
        (q2, q2, q2): -d(fn.f2, 1) * half,
        (0, 0, q1): d(fn.f1, 0) * half,
        (0, 1, q1): d(fn.f1, 1) * half,
        (0, 0, q2): d(fn.f3, 0) * half,
        (0, 1, q2): d(fn.f3, 1) * half,
        (1, 0, q1): d(fn.f3, 0) * half,
        (1, 1, q1): d(fn.f3, 1) * half,
        (1, 0, q2): d(fn.f2, 0) * half,
        (1, 1, q2): d(fn.f2, 1) * half,
    }
    zero = ring.zero
    for i in range(2, 2 * n + 2):
        ui = fn.u.get(i, zero)
        for j in range(2, 2 * n + 2):
            uj = fn.u.get(j, zero)
            out[(i, j, q2)] = (d(ui, j) - d(uj, i)) * half
            out[(1, i, j)] = (d(ui, j) + d(uj, i)) * half
    return out


# ============================================
# 4) FIXED EXAMPLES
# ============================================

def ikemakhen_recipe() -> MetricRecipe:
    """g^{2, rho(so(3))} in so(1,6) built from P(e3..e5) = A1, A2, A3."""
    spec = FamilySpec("lorentz2", n=5, h_basis=[entries(A) for A in rho_so3_generators()], domain=QQ_SQRT3)
    return MetricRecipe(spec, weak=[rho_so3_weak_map()], label="ikemakhen-construction")


def ikemakhen_original_metric() -> PolynomialMetric:
    """The hand-made metric on R^7 whose holonomy is g^{2, rho(so(3))}."""
    ring = poly_ring(7, QQ_SQRT3)
    us = {
        1: "-x3**2 - 4*x4**2 - x5**2",
        3: "-2*sqrt(3)*x2*x3 - 2*x4*x5",
        5: "2*sqrt(3)*x2*x5 + 2*x3*x4",
    }
    g = [[ring.zero] * 7 for _ in range(7)]
    g[0][6] = g[6][0] = ring.one
    for i in range(1, 6):
        g[i][i] = ring.one
    for i, expr in us.items():
        g[i][6] = g[6][i] = poly_from_expr(expr, ring)
    return PolynomialMetric(7, g)


def g2_recipe() -> MetricRecipe:
    spec = FamilySpec("lorentz2", n=7, h_basis=[entries(A) for A in g2_generators()])
    return MetricRecipe(spec, weak=[g2_weak_map()], label="g2")


def spin7_recipe() -> MetricRecipe:
    spec = FamilySpec("lorentz2", n=8, h_basis=[entries(A) for A in spin7_generators()])
    return MetricRecipe(spec, weak=[spin7_weak_map()], label="spin7")


def n0_recipe(row: str, gamma1: Any = 0, gamma2: Any = 0) -> MetricRecipe:
    """One of the four n = 0 rows by name ('n0-row1' ... 'n0-row4')."""
    family = {
        "n0-row1": "n0-hol1",
        "n0-row2": "n0-hol2",
        "n0-row3": "n0-gamma",
        "n0-row4": "n0-gamma",
    }.get(row)
    if family is None:
        raise RecipeError(f"unknown n = 0 row '{row}' (expected one of {', '.join(METRIC_ROWS)})")
    if row == "n0-row4":
        gamma1 = gamma2 = 0
    elif row == "n0-row3" and not (_num(gamma1, QQ) or _num(gamma2, QQ)):
        raise ParameterConstraintError("n0-gamma", "gamma1^2 + gamma2^2 != 0")
    return MetricRecipe(FamilySpec(family, n=0, gamma1=gamma1, gamma2=gamma2), label=row)


PRESETS = {
    "ikemakhen": ikemakhen_recipe,
    "g2": g2_recipe,
    "spin7": spin7_recipe,
}
