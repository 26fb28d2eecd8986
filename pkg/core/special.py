"""
Fixed generator data: rho(so(3)) in so(5), g2 in so(7), spin(7) in so(8),
together with the weak-curvature maps used by the Lorentzian example metrics.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from sympy import sqrt
from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from core.exactnum import QQ_SQRT3
from core.linalg import matrix, zeros

Combo = Sequence[Tuple[int, int, int]]


def E(n: int, terms: Combo, K: Domain = QQ) -> DomainMatrix:
    """sum of sign * E_ij (1-based, i < j) with (E_ij)_ij = 1 and (E_ij)_ji = -1."""
    rows = [[K.zero] * n for _ in range(n)]
    for sign, i, j in terms:
        rows[i - 1][j - 1] += K.convert(sign)
        rows[j - 1][i - 1] -= K.convert(sign)
    return DomainMatrix(rows, (n, n), K)


# ----------------------------
# rho(so(3)) in so(5)
# ----------------------------
def rho_so3_generators() -> List[DomainMatrix]:
    K = QQ_SQRT3
    s = K.from_sympy(sqrt(3))
    A1 = matrix(
        [[0, 0, -1, 0, 0],
         [0, 0, s, 0, 0],
         [1, -s, 0, 0, 0],
         [0, 0, 0, 0, -1],
         [0, 0, 0, 1, 0]], K)
    A2 = matrix(
        [[0, 0, 0, -4, 0],
         [0, 0, 0, 0, 0],
         [0, 0, 0, 0, -2],
         [4, 0, 0, 0, 0],
         [0, 0, 2, 0, 0]], K)
    # [A1, A2] = 2 A3; the (3,5) entry is zero
    A3 = matrix(
        [[0, 0, 0, 0, -1],
         [0, 0, 0, 0, -s],
         [0, 0, 0, -1, 0],
         [0, 0, 1, 0, 0],
         [1, s, 0, 0, 0]], K)
    return [A1, A2, A3]


def rho_so3_weak_map() -> List[DomainMatrix]:
    """P(e1) = P(e2) = 0, P(e3) = A1, P(e4) = A2, P(e5) = A3."""
    A1, A2, A3 = rho_so3_generators()
    Z = zeros(5, QQ_SQRT3)
    return [Z, Z, A1, A2, A3]


# ----------------------------
# g2 in so(7)
# ----------------------------
_G2: List[Combo] = [
    [(1, 1, 2), (-1, 3, 4)],
    [(1, 1, 2), (-1, 5, 6)],
    [(1, 1, 3), (1, 2, 4)],
    [(1, 1, 3), (-1, 6, 7)],
    [(1, 1, 4), (-1, 2, 3)],
    [(1, 1, 4), (-1, 5, 7)],
    [(1, 1, 5), (1, 2, 6)],
    [(1, 1, 5), (1, 4, 7)],
    [(1, 1, 6), (-1, 2, 5)],
    [(1, 1, 6), (1, 3, 7)],
    [(1, 1, 7), (-1, 3, 6)],
    [(1, 1, 7), (-1, 4, 5)],
    [(1, 2, 7), (-1, 3, 5)],
    [(1, 2, 7), (1, 4, 6)],
]

# P(e_i) as {generator index (1-based): coefficient}
_G2_P: List[Dict[int, int]] = [
    {6: 1},
    {4: 1, 5: 1},
    {1: 1, 7: 1},
    {1: 1},
    {4: 1},
    {5: -1, 6: 1},
    {7: 1},
]


def g2_generators() -> List[DomainMatrix]:
    return [E(7, c) for c in _G2]


def g2_weak_map() -> List[DomainMatrix]:
    gens = g2_generators()
    return [_combine(gens, p, 7) for p in _G2_P]


# ----------------------------
# spin(7) in so(8)
# ----------------------------
_SPIN7: List[Combo] = [
    [(1, 1, 2), (1, 3, 4)],
    [(1, 1, 3), (-1, 2, 4)],
    [(1, 1, 4), (1, 2, 3)],
    [(1, 5, 6), (1, 7, 8)],
    [(-1, 5, 7), (1, 6, 8)],
    [(1, 5, 8), (1, 6, 7)],
    [(-1, 1, 5), (1, 2, 6)],
    [(1, 1, 2), (1, 5, 6)],
    [(1, 1, 6), (1, 2, 5)],
    [(1, 3, 7), (-1, 4, 8)],
    [(1, 3, 8), (1, 4, 7)],
    [(1, 1, 7), (1, 2, 8)],
    [(1, 1, 8), (-1, 2, 7)],
    [(1, 3, 5), (1, 4, 6)],
    [(1, 3, 6), (-1, 4, 5)],
    [(1, 1, 8), (1, 3, 6)],
    [(1, 1, 7), (1, 3, 5)],
    [(1, 2, 6), (-1, 4, 8)],
    [(1, 2, 5), (1, 3, 8)],
    [(1, 2, 3), (1, 6, 7)],
    [(1, 2, 4), (1, 5, 7)],
]

# the second value printed under e7 is P(e8)
_SPIN7_P: List[Dict[int, int]] = [
    {},
    {14: -1},
    {},
    {21: 1},
    {20: 1},
    {21: 1, 18: -1},
    {15: 1, 16: -1},
    {14: 1, 17: -1},
]


def spin7_generators() -> List[DomainMatrix]:
    return [E(8, c) for c in _SPIN7]


def spin7_weak_map() -> List[DomainMatrix]:
    gens = spin7_generators()
    return [_combine(gens, p, 8) for p in _SPIN7_P]


def _combine(gens: Sequence[DomainMatrix], coeffs: Dict[int, int], n: int) -> DomainMatrix:
    out = zeros(n, gens[0].domain)
    for idx, c in coeffs.items():
        out = out + gens[idx - 1].mul(gens[0].domain.convert(c))
    return out
