from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from core.errors import FrameMismatchError, InvalidStructureError
from core.frames import (
    PSEUDO_KAEHLER,
    I0,
    J_range,
    build_frame,
    build_lorentz_element,
    build_pk_element,
    embed_block,
    frame_wedge,
    lorentz_coordinates,
    pk_coordinates,
    su_condition,
    u_basis,
    wedge,
)
from core.linalg import apply, entries, eye, matrix


def _is_skew(X, eta) -> bool:
    return (eta * X + X.transpose() * eta).is_zero_matrix


def test_pk_frame_layout(pk1):
    assert pk1.dim == 6
    assert pk1.index == {"p1": 0, "p2": 1, "e1": 2, "f1": 3, "q1": 4, "q2": 5}
    eta = entries(pk1.eta)
    assert eta[0][4] == eta[1][5] == eta[2][2] == eta[3][3] == QQ(1)
    J = pk1.J
    assert J * J == -eye(6)
    assert apply(J, pk1.vector("p1")) == pk1.vector("p2")
    assert apply(J, pk1.vector("e1")) == pk1.vector("f1")
    assert apply(J, pk1.vector("q1")) == pk1.vector("q2")


def test_lorentz_frame_layout(lorentz2):
    assert lorentz2.index == {"p": 0, "e1": 1, "e2": 2, "q": 3}
    assert lorentz2.J is None
    with pytest.raises(FrameMismatchError):
        lorentz2.vector("f1")
    with pytest.raises(FrameMismatchError):
        build_frame("riemannian", 2)


def test_pk_element_round_trips_coordinates(pk1):
    X = build_pk_element(1, a1=2, a2="1/3", C=[[5]], z1=[1], z2=[-1], c=4)
    co = pk_coordinates(X, 1)
    assert (co["a1"], co["a2"], co["c"]) == (QQ(2), QQ(1, 3), QQ(4))
    assert co["C"] == [[QQ(5)]] and co["z1"] == [QQ(1)] and co["z2"] == [QQ(-1)]
    assert _is_skew(X, pk1.eta)
    assert (X * pk1.J - pk1.J * X).is_zero_matrix


def test_pk_element_block_checks():
    with pytest.raises(InvalidStructureError):
        build_pk_element(2, B=[[1, 0], [0, 0]])
    with pytest.raises(InvalidStructureError):
        build_pk_element(2, C=[[0, 1], [0, 0]])


def test_su_condition_and_i0():
    assert su_condition(I0(2), 2)
    assert not su_condition(build_pk_element(1, a2=1), 1)
    assert su_condition(build_pk_element(1, a2=1, C=[[-2]]), 1)


def test_j_range_is_partial_complex_structure():
    pk2 = build_frame(PSEUDO_KAEHLER, 2)
    Jr = J_range(2, 2, 2)
    assert apply(Jr, pk2.vector("e2")) == pk2.vector("f2")
    assert not any(apply(Jr, pk2.vector("e1")))


def test_lorentz_element(lorentz2):
    X = build_lorentz_element(2, a=1, A=[[0, 1], [-1, 0]], X=[3, 0])
    assert _is_skew(X, lorentz2.eta)
    co = lorentz_coordinates(X, 2)
    assert co["a"] == QQ(1) and co["X"] == [QQ(3), QQ(0)]
    with pytest.raises(InvalidStructureError):
        build_lorentz_element(2, A=[[1, 0], [0, 0]])


def test_wedge_convention(lorentz2):
    eta = lorentz2.eta
    x, y = lorentz2.vector("p"), lorentz2.vector("e1")
    W = wedge(eta, x, y)
    assert _is_skew(W, eta)
    # (x ^ y) z = eta(x, z) y - eta(y, z) x
    assert apply(W, lorentz2.vector("q")) == y
    assert apply(W, lorentz2.vector("e1")) == [-a for a in x]
    assert frame_wedge(lorentz2, {"p": 1}, {"e1": 1}) == W


def test_u_basis_dimension_and_embedding():
    assert len(u_basis(2, 3)) == 4
    assert len(u_basis(3, 3)) == 9
    big = embed_block(matrix([[1, 2], [3, 4]]), 4, offset=1)
    assert entries(big)[1][1] == QQ(1) and entries(big)[2][2] == QQ(4)
