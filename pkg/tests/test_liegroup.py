from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from core.catalog import FamilySpec, build_algebra
from core.config import LIEGROUP_FILES
from core.errors import InvalidStructureError
from core.liegroup import LieGroupData, lg_curvature, lg_holonomy, lg_nabla
from core.linalg import entries, matrix, zeros
from core.schemas import liegroup_from_json, read_json

P1, P2, Q1, Q2 = range(4)

ROT = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
DIAG = [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def _load(name: str) -> LieGroupData:
    data, names = liegroup_from_json(read_json(LIEGROUP_FILES[name]), name)
    assert names == ["p1", "p2", "q1", "q2"]
    return data


def _scaled(rows, c):
    return matrix([[c * x for x in row] for row in rows])


def test_g1_connection_matrices():
    nabla = lg_nabla(_load("g1"))
    assert nabla[P1] == matrix(ROT)
    assert nabla[Q2] == matrix(ROT)
    assert nabla[P2] == matrix(DIAG)
    assert nabla[Q1] == matrix(DIAG)


def test_g1_curvature_values():
    d = _load("g1")
    R = lg_curvature(d, lg_nabla(d))
    assert R[(P1, Q1)] == matrix([[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]])
    assert R[(P1, Q2)] == _scaled(DIAG, 2)
    assert R[(P2, Q1)] == _scaled(DIAG, -2)
    assert R[(P2, Q2)] == _scaled(ROT, -2)
    assert R[(P1, P2)] == zeros(4)
    assert R[(Q1, Q2)] == zeros(4)


def test_g2_connection_matrices():
    nabla = lg_nabla(_load("g2"))
    assert nabla[P1] == matrix([[0, 0, 0, 1], [0, 0, -1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert nabla[Q1] == matrix([[0, 1, 0, 1], [-1, 0, -1, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    assert nabla[P2] == zeros(4)
    assert nabla[Q2] == zeros(4)


def test_g2_curvature_values():
    d = _load("g2")
    R = lg_curvature(d, lg_nabla(d))
    r = matrix([[0, 0, 0, -1], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert R[(P1, Q2)] == r
    assert R[(P2, Q1)] == -r
    assert R[(Q1, Q2)] == matrix([[0, -1, 0, -2], [1, 0, 2, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    for pair in ((P1, P2), (P1, Q1), (P2, Q2)):
        assert R[pair] == zeros(4)


def test_holonomy_of_the_two_groups_matches_the_catalog():
    assert lg_holonomy(_load("g1")) == build_algebra(FamilySpec("n0-hol2", n=0))
    assert lg_holonomy(_load("g2")) == build_algebra(FamilySpec("n0-gamma", n=0, gamma1=0, gamma2=1))
    assert lg_holonomy(_load("abelian")).dim == 0


def test_adjoint_columns_are_brackets():
    d = _load("g1")
    ad = entries(d.ad(P1))
    assert [row[Q1] for row in ad] == [QQ(1), QQ(0), QQ(0), QQ(1)]
    assert [row[Q2] for row in ad] == [QQ(0), QQ(-1), QQ(-1), QQ(0)]


def test_structure_validation():
    gram = matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(InvalidStructureError):
        LieGroupData(3, gram, {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (0, 2): [0, 0, 1]})
    with pytest.raises(InvalidStructureError):
        LieGroupData(2, matrix([[1, 1], [1, 1]]), {})
    with pytest.raises(InvalidStructureError):
        LieGroupData(2, matrix([[1, 0], [0, 1]]), {(0, 1): [1, 0], (1, 0): [0, 1]})
    ok = LieGroupData(3, gram, {(1, 0): [0, 0, -1]})
    assert ok.c(0, 1) == [QQ(0), QQ(0), QQ(1)]
