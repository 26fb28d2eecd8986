"""
Exact scalars and sparse multivariate polynomials.

Scalars live in a sympy domain: QQ for everything rational, and
QQ<sqrt(3)> for the rho(so(3)) data. Polynomials are PolyElements of a
graded-lex PolyRing over that domain (a dict monomial -> nonzero coefficient).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from sympy import Rational, sqrt, sympify
from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from core.config import FIELD_QQ, FIELD_QQ_SQRT3
from core.errors import DimensionMismatchError, InputFormatError

Polynomial = PolyElement
Monomial = Tuple[int, ...]

QQ_SQRT3 = QQ.algebraic_field(sqrt(3))

_FIELDS: Dict[str, Domain] = {FIELD_QQ: QQ, FIELD_QQ_SQRT3: QQ_SQRT3}


# ----------------------------
# Scalar fields
# ----------------------------
def field_by_name(name: str) -> Domain:
    try:
        return _FIELDS[name]
    except KeyError:
        raise InputFormatError(f"unknown scalar field '{name}' (expected one of {sorted(_FIELDS)})")


def field_name(K: Domain) -> str:
    for name, dom in _FIELDS.items():
        if dom == K:
            return name
    raise InputFormatError(f"unsupported scalar field {K}")


def common_field(*fields: Domain) -> Domain:
    """The smallest supported field containing all arguments."""
    return QQ_SQRT3 if any(K == QQ_SQRT3 for K in fields) else QQ


def rational(value: Any, K: Domain = QQ):
    """Exact scalar from an int, a 'p/q' string or a sympy expression."""
    if isinstance(value, str):
        try:
            expr = sympify(value, rational=True)
        except Exception as e:
            raise InputFormatError(f"cannot parse scalar '{value}': {e}")
    elif isinstance(value, int):
        expr = Rational(value)
    else:
        expr = sympify(value, rational=True)
    try:
        return K.from_sympy(expr)
    except Exception as e:
        raise InputFormatError(f"scalar '{value}' does not lie in {field_name(K)}: {e}")


def scalar_to_str(a, K: Domain = QQ) -> str:
    return str(K.to_sympy(a))


def scalar_to_float(a, K: Domain = QQ) -> float:
    return float(K.to_sympy(a).evalf())


# ----------------------------
# Polynomial rings
# ----------------------------
@lru_cache(maxsize=None)
def poly_ring(nvars: int, K: Domain = QQ) -> PolyRing:
    """Graded-lex ring in x0..x{nvars-1}; cached so equal requests share a ring."""
    if nvars < 1:
        raise DimensionMismatchError("a polynomial ring needs at least one variable", expected=">=1", got=nvars)
    return PolyRing([f"x{i}" for i in range(nvars)], K, grlex)


def _same_ring(p: Polynomial, q: Polynomial) -> None:
    if p.ring.ngens != q.ring.ngens:
        raise DimensionMismatchError("variable-count mismatch", expected=p.ring.ngens, got=q.ring.ngens)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    _same_ring(p, q)
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _same_ring(p, q)
    return p * q


def partial(p: Polynomial, var_index: int) -> Polynomial:
    n = p.ring.ngens
    if not 0 <= var_index < n:
        raise DimensionMismatchError("derivative index out of range", expected=f"0..{n - 1}", got=var_index)
    return p.diff(p.ring.gens[var_index])


def evaluate(p: Polynomial, point: Sequence) -> Any:
    """Direct term sum at an exact point."""
    ring = p.ring
    if len(point) != ring.ngens:
        raise DimensionMismatchError("point length differs from variable count", expected=ring.ngens, got=len(point))
    K = ring.domain
    vals = [K.convert(v) for v in point]
    total = K.zero
    for monom, coeff in p.items():
        term = coeff
        for v, e in zip(vals, monom):
            if e:
                term = term * v**e
        total += term
    return total


def evaluate_nested(p: Polynomial, point: Sequence) -> Any:
    """Variable-by-variable substitution through sympy's ring evaluation."""
    ring = p.ring
    if len(point) != ring.ngens:
        raise DimensionMismatchError("point length differs from variable count", expected=ring.ngens, got=len(point))
    return p.evaluate(list(zip(ring.gens, point)))


def constant_term(p: Polynomial):
    return p.get(p.ring.zero_monom, p.ring.domain.zero)


def total_degree(p: Polynomial) -> int:
    if not p:
        return -1
    return max(sum(m) for m in p.keys())


def truncate(p: Polynomial, degree: int) -> Polynomial:
    """Drop every term of total degree above `degree`."""
    if degree < 0:
        return p.ring.zero
    if all(sum(m) <= degree for m in p.keys()):
        return p
    return p.ring.from_dict({m: c for m, c in p.items() if sum(m) <= degree})


def shift(p: Polynomial, point: Sequence) -> Polynomial:
    """p(x + point), used to move a basepoint to the origin."""
    ring = p.ring
    K = ring.domain
    if not any(point):
        return p
    return p.compose([(g, g + K.convert(b)) for g, b in zip(ring.gens, point)])


def change_field(p: Polynomial, K: Domain) -> Polynomial:
    if p.ring.domain == K:
        return p
    return p.set_ring(poly_ring(p.ring.ngens, K))


# ----------------------------
# JSON terms
# ----------------------------
def sorted_terms(p: Polynomial) -> List[Tuple[Monomial, Any]]:
    """Terms in ascending graded-lex order."""
    return sorted(p.items(), key=lambda t: (sum(t[0]), t[0]))


def poly_to_json(p: Polynomial) -> List[Dict[str, Any]]:
    K = p.ring.domain
    return [{"coef": scalar_to_str(c, K), "exps": list(m)} for m, c in sorted_terms(p)]


def poly_from_json(terms: Iterable[Dict[str, Any]], ring: PolyRing) -> Polynomial:
    data: Dict[Monomial, Any] = {}
    for t in terms:
        exps = tuple(int(e) for e in t["exps"])
        if len(exps) != ring.ngens or any(e < 0 for e in exps):
            raise InputFormatError(f"bad exponent vector {list(exps)} for {ring.ngens} variables")
        c = rational(t["coef"], ring.domain)
        data[exps] = data.get(exps, ring.domain.zero) + c
    return ring.from_dict({m: c for m, c in data.items() if c})


def poly_from_expr(expr: str, ring: PolyRing) -> Polynomial:
    """Parse a human expression in x0..x{n-1} (used for presets and tests)."""
    try:
        return ring.from_expr(sympify(expr, rational=True))
    except Exception as e:
        raise InputFormatError(f"cannot parse polynomial '{expr}': {e}")
