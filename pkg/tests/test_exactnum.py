from __future__ import annotations

import pytest
from sympy import sqrt
from sympy.polys.domains import QQ

from core.errors import DimensionMismatchError, InputFormatError
from core.exactnum import (
    QQ_SQRT3,
    change_field,
    common_field,
    constant_term,
    evaluate,
    evaluate_nested,
    field_by_name,
    field_name,
    partial,
    poly_from_expr,
    poly_from_json,
    poly_ring,
    poly_to_json,
    rational,
    scalar_to_str,
    shift,
    total_degree,
    truncate,
)


def test_rational_parses_ints_fractions_and_roots():
    assert rational(3) == QQ(3)
    assert rational("-2/6") == QQ(-1, 3)
    r = rational("sqrt(3)/2", QQ_SQRT3)
    assert r * r == QQ_SQRT3.convert(QQ(3, 4))
    assert scalar_to_str(r, QQ_SQRT3) == str(sqrt(3) / 2)


def test_rational_rejects_irrational_in_qq():
    with pytest.raises(InputFormatError):
        rational("sqrt(3)", QQ)
    with pytest.raises(InputFormatError):
        rational("1/+/2")


def test_field_names_round_trip():
    for name in ("QQ", "QQ<sqrt(3)>"):
        assert field_name(field_by_name(name)) == name
    assert common_field(QQ, QQ) == QQ
    assert common_field(QQ, QQ_SQRT3) == QQ_SQRT3
    with pytest.raises(InputFormatError):
        field_by_name("RR")


def test_poly_ring_is_cached_and_needs_variables():
    assert poly_ring(3) is poly_ring(3)
    with pytest.raises(DimensionMismatchError):
        poly_ring(0)


def test_partial_and_evaluate_agree():
    R = poly_ring(3)
    p = poly_from_expr("x0**2*x1 - 3*x2 + 1/2", R)
    assert partial(p, 0) == poly_from_expr("2*x0*x1", R)
    assert partial(p, 2) == R(-3)
    point = [QQ(1), QQ(-2), QQ(1, 3)]
    assert evaluate(p, point) == QQ(-2) - QQ(1) + QQ(1, 2)
    assert evaluate(p, point) == evaluate_nested(p, point)
    with pytest.raises(DimensionMismatchError):
        partial(p, 3)
    with pytest.raises(DimensionMismatchError):
        evaluate(p, [1, 2])


def test_degree_truncate_and_constant_term():
    R = poly_ring(2)
    p = poly_from_expr("5 + x0 + x0*x1 + x1**3", R)
    assert total_degree(p) == 3
    assert total_degree(R.zero) == -1
    assert truncate(p, 1) == poly_from_expr("5 + x0", R)
    assert truncate(p, -1) == R.zero
    assert constant_term(p) == QQ(5)


def test_shift_moves_basepoint():
    R = poly_ring(2)
    p = poly_from_expr("x0*x1", R)
    assert shift(p, [QQ(1), QQ(2)]) == poly_from_expr("x0*x1 + 2*x0 + x1 + 2", R)
    assert shift(p, [QQ(0), QQ(0)]) is p


def test_json_terms_are_sorted_and_merged():
    R = poly_ring(2)
    p = poly_from_expr("x1**2 - 1/3*x0 + 4", R)
    terms = poly_to_json(p)
    assert terms == [
        {"coef": "4", "exps": [0, 0]},
        {"coef": "-1/3", "exps": [1, 0]},
        {"coef": "1", "exps": [0, 2]},
    ]
    merged = poly_from_json([{"coef": "1", "exps": [1, 0]}, {"coef": "-1", "exps": [1, 0]}, {"coef": 2, "exps": [0, 1]}], R)
    assert merged == poly_from_expr("2*x1", R)
    with pytest.raises(InputFormatError):
        poly_from_json([{"coef": 1, "exps": [1]}], R)


def test_change_field_keeps_coefficients():
    p = poly_from_expr("x0 + 2", poly_ring(1))
    q = change_field(p, QQ_SQRT3)
    assert q.ring.domain == QQ_SQRT3
    assert constant_term(q) == QQ_SQRT3.convert(QQ(2))
