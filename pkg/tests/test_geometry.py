from __future__ import annotations

import random

import pytest
from sympy.polys.domains import QQ

from core.errors import DimensionMismatchError, UnsupportedMetricError
from core.exactnum import poly_from_expr, poly_ring
from core.geometry import (
    PolynomialMetric,
    christoffel,
    christoffel_symmetric,
    covariant_derivative,
    curvature,
    curvature_antisymmetric,
    first_bianchi_holds,
    flat_metric,
    metric_compatible,
    metric_inverse,
    pair_symmetric_at_origin,
    pm_identity,
    pm_mul,
    random_unimodular_metric,
)
from core.linalg import matrix
from core.recipes import build_metric, n0_recipe


def _metric(rows, basepoint=None) -> PolynomialMetric:
    n = len(rows)
    ring = poly_ring(n)
    g = [[poly_from_expr(str(x), ring) for x in row] for row in rows]
    return PolynomialMetric(n, g, basepoint or [])


def _diag_eta(rng: random.Random, d: int):
    return matrix([[rng.choice([1, -1]) if i == j else 0 for j in range(d)] for i in range(d)])


def test_metric_validation():
    with pytest.raises(UnsupportedMetricError):
        _metric([["1", "x0"], ["0", "1"]])
    with pytest.raises(DimensionMismatchError):
        _metric([["1", "0"], ["0", "1"]], basepoint=[QQ(0)])


def test_centered_moves_basepoint_to_origin():
    m = _metric([["0", "1"], ["1", "x0**2"]], basepoint=[QQ(1), QQ(0)])
    assert m.at_basepoint() == matrix([[0, 1], [1, 1]])
    assert m.centered().g[1][1] == poly_from_expr("x0**2 + 2*x0 + 1", m.ring)


def test_inverse_of_unimodular_metric(rng):
    m = random_unimodular_metric(_diag_eta(rng, 3), rng, degree=1)
    assert pm_mul(m.g, metric_inverse(m)) == pm_identity(m.ring, 3)


def test_inverse_needs_constant_determinant():
    with pytest.raises(UnsupportedMetricError):
        metric_inverse(_metric([["1 + x0", "0"], ["0", "1"]]))
    with pytest.raises(UnsupportedMetricError):
        metric_inverse(_metric([["x0", "0"], ["0", "1"]]))


def test_flat_metric_has_no_curvature():
    m = flat_metric(matrix([[0, 1], [1, 0]]))
    cf = christoffel(m)
    t = curvature(cf)
    assert t.is_zero()
    assert covariant_derivative(t, cf).is_zero()


def test_christoffel_closed_form_for_the_second_n0_row():
    m = build_metric(n0_recipe("n0-row2"))
    cf = christoffel(m)
    x0 = m.ring.gens[0]
    # Γ^{p1}_{p1 q1} = ½ ∂f1/∂x0 with f1 = x0² − x1²
    assert cf.gamma[0][0][2] == x0
    assert cf.gamma[0][2][0] == x0


def test_curvature_of_the_second_n0_row_at_origin():
    m = build_metric(n0_recipe("n0-row2"))
    t = curvature(christoffel(m))
    assert not t.endomorphism_at_origin(0, 2).is_zero_matrix
    assert t.endomorphism_at_origin(0, 1).is_zero_matrix
    assert t.endomorphism_at_origin(2, 0) == -t.endomorphism_at_origin(0, 2)


def test_identities_on_random_metrics(rng):
    for _ in range(20):
        d = rng.randint(2, 4)
        eta = _diag_eta(rng, d)
        m = random_unimodular_metric(eta, rng, degree=1)
        assert m.at_basepoint() == eta
        cf = christoffel(m)
        t = curvature(cf)
        assert metric_compatible(m, cf)
        assert christoffel_symmetric(cf)
        assert curvature_antisymmetric(t)
        assert first_bianchi_holds(t)
        assert pair_symmetric_at_origin(t, eta)


@pytest.mark.slow
def test_identities_on_larger_random_metrics():
    rng = random.Random(11)
    for d in (5, 6):
        eta = _diag_eta(rng, d)
        m = random_unimodular_metric(eta, rng, degree=1, bound=2)
        cf = christoffel(m)
        t = curvature(cf)
        assert metric_compatible(m, cf)
        assert first_bianchi_holds(t)
        assert pair_symmetric_at_origin(t, eta)
        assert curvature_antisymmetric(covariant_derivative(t, cf))
