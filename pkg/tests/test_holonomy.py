from __future__ import annotations

import pytest

from core.catalog import FamilySpec, build_algebra
from core.errors import DimensionMismatchError
from core.geometry import flat_metric
from core.holonomy import holonomy
from core.liealg import is_in_so
from core.linalg import matrix
from core.recipes import build_metric, n0_recipe, suggested_max_order


@pytest.mark.parametrize(
    "row, gamma, dim, family",
    [
        ("n0-row1", (0, 0), 3, FamilySpec("n0-hol1", n=0)),
        ("n0-row2", (0, 0), 2, FamilySpec("n0-hol2", n=0)),
        ("n0-row3", (0, 1), 2, FamilySpec("n0-gamma", n=0, gamma1=0, gamma2=1)),
        ("n0-row4", (0, 0), 1, FamilySpec("n0-gamma", n=0)),
    ],
)
def test_n0_rows_reach_their_algebras(row, gamma, dim, family):
    recipe = n0_recipe(row, *gamma)
    metric = build_metric(recipe)
    rep = holonomy(metric, max_order=suggested_max_order(recipe, metric))
    assert rep.algebra.dim == dim
    assert rep.algebra == build_algebra(family)
    assert is_in_so(rep.algebra)


def test_first_row_needs_a_derivative():
    rep = holonomy(build_metric(n0_recipe("n0-row1")), max_order=4)
    assert rep.generator_log[0].order == 0
    assert any(g.order >= 1 for g in rep.generator_log)
    assert rep.dims_by_order[0] == 2
    assert rep.dims_by_order[-1] == 3


def test_third_row_is_complete_at_order_zero():
    rep = holonomy(build_metric(n0_recipe("n0-row3", 0, 1)), max_order=4)
    assert all(g.order == 0 for g in rep.generator_log)
    assert rep.dims_by_order[0] == rep.dims_by_order[-1] == 2
    assert rep.stabilized


def test_report_bookkeeping():
    recipe = n0_recipe("n0-row1")
    rep = holonomy(build_metric(recipe), max_order=6, window=2)
    assert rep.stabilized
    assert rep.dims_by_order == sorted(rep.dims_by_order)
    assert rep.span_dim == len(rep.generator_log)
    assert rep.closure_added == (rep.algebra.dim > rep.span_dim)
    assert rep.max_order_used <= 6
    for g in rep.generator_log:
        assert len(g.path) == g.order
        assert g.pair[0] < g.pair[1]


def test_flat_metric_has_trivial_holonomy():
    rep = holonomy(flat_metric(matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])))
    assert rep.algebra.dim == 0
    assert rep.stabilized
    assert rep.generator_log == []


def test_order_bounds_are_validated():
    metric = flat_metric(matrix([[1, 0], [0, 1]]))
    with pytest.raises(DimensionMismatchError):
        holonomy(metric, max_order=0)
    with pytest.raises(DimensionMismatchError):
        holonomy(metric, window=0)
