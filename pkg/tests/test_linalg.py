from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from core.errors import DimensionMismatchError
from core.linalg import (
    SparseEchelon,
    contains,
    entries,
    eye,
    intersect,
    is_subspace,
    matrix,
    matrix_from_json,
    matrix_to_json,
    nullspace,
    rank,
    reduce,
    rref,
    solve,
    span,
    unit,
)


def test_matrix_accepts_strings_and_rejects_ragged_rows():
    m = matrix([[1, "1/2"], ["-3", 0]])
    assert entries(m) == [[QQ(1), QQ(1, 2)], [QQ(-3), QQ(0)]]
    with pytest.raises(DimensionMismatchError):
        matrix([[1, 2], [3]])


def test_rank_nullity():
    m = matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    ns = nullspace(m)
    assert rank(m) + ns.dim == 3
    for v in ns.vectors():
        assert not any(row[0] for row in entries(m * matrix([[x] for x in v])))


def test_nullspace_of_zero_and_full_rank():
    assert nullspace(matrix([[0, 0], [0, 0]])).dim == 2
    assert nullspace(eye(3)).dim == 0


def test_rref_is_canonical():
    a = rref(matrix([[2, 4], [1, 3]]))
    assert entries(a) == [[QQ(1), QQ(0)], [QQ(0), QQ(1)]]
    assert span([[1, 1, 0], [0, 1, 1]]) == span([[1, 2, 1], [1, 0, -1]])


def test_span_membership_and_reduce():
    s = span([[1, 0, 1], [0, 1, 1]])
    assert contains(s, [QQ(2), QQ(3), QQ(5)])
    assert not contains(s, [QQ(0), QQ(0), QQ(1)])
    assert any(reduce(s, [QQ(0), QQ(0), QQ(1)]))
    with pytest.raises(DimensionMismatchError):
        reduce(s, [QQ(1)])


def test_intersection_and_inclusion():
    a = span([[1, 0, 0], [0, 1, 0]])
    b = span([[0, 1, 0], [0, 0, 1]])
    both = intersect(a, b)
    assert both == span([[0, 1, 0]])
    assert is_subspace(both, a) and is_subspace(both, b)
    assert not is_subspace(a, b)


def test_solve_returns_solution_or_none():
    m = matrix([[1, 1], [1, -1]])
    assert solve(m, [QQ(3), QQ(1)]) == [QQ(2), QQ(1)]
    assert solve(matrix([[1, 1], [2, 2]]), [QQ(1), QQ(3)]) is None


def test_matrix_json_checks_shape():
    m = matrix([[1, "2/3"]])
    assert matrix_to_json(m) == {"rows": 1, "cols": 2, "entries": [["1", "2/3"]]}
    assert matrix_from_json(matrix_to_json(m)) == m
    with pytest.raises(DimensionMismatchError):
        matrix_from_json({"rows": 2, "cols": 2, "entries": [["1", "2"]]})


def test_sparse_echelon_tracks_independence():
    ech = SparseEchelon(QQ)
    assert ech.insert({0: QQ(1), 2: QQ(1)})
    assert ech.insert({1: QQ(2)})
    assert not ech.insert({0: QQ(3), 1: QQ(4), 2: QQ(3)})
    assert ech.contains({1: QQ(1)})
    assert not ech.contains({2: QQ(1)})
    assert len(ech) == 2


def test_unit_matrix():
    u = unit(3, 0, 2)
    assert entries(u)[0][2] == QQ(1)
    assert sum(sum(1 for x in row if x) for row in entries(u)) == 1
