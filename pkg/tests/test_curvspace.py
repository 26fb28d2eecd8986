from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from core.catalog import FamilySpec, build_algebra
from core.curvspace import (
    CurvatureTensor,
    curvature_space,
    image_span,
    invariant_curvature_space,
    is_berger,
    is_weak_berger,
    pair_symmetry_check,
    restrict_space,
    weak_curvature_space,
    weak_cyclic_defect,
)
from core.errors import ContainmentError, CurvatureTensorError, NotInSoError
from core.frames import PSEUDO_KAEHLER, build_frame, build_pk_element, skew_unit, sod_basis
from core.liealg import MetricStructure, lie_closure, make_algebra
from core.linalg import eye, matrix


def _so(n: int):
    gens = [matrix(skew_unit(n, i, i + 1)) for i in range(n - 1)]
    return lie_closure(gens, MetricStructure(n, eye(n)))


def _sod_euclidean(k: int):
    mats = []
    for B, C in sod_basis(k, 1, k, QQ):
        rows = [[QQ.zero] * (2 * k) for _ in range(2 * k)]
        for i in range(k):
            for j in range(k):
                rows[i][j] = rows[k + i][k + j] = B[i][j]
                rows[i][k + j] = -C[i][j]
                rows[k + i][j] = C[i][j]
        mats.append(matrix(rows))
    return make_algebra(MetricStructure(2 * k, eye(2 * k)), mats)


@pytest.mark.parametrize("n, expected", [(2, 1), (3, 6), (4, 20)])
def test_curvature_space_of_so_n(n, expected):
    so = _so(n)
    cs = curvature_space(so)
    assert cs.dim == expected
    assert image_span(cs) == so.subspace()
    assert is_berger(so)


def test_basis_tensors_are_pair_symmetric():
    for R in curvature_space(_so(3)).basis:
        assert pair_symmetry_check(R)


def test_bianchi_violation_is_rejected():
    ms = MetricStructure(3, eye(3))
    with pytest.raises(CurvatureTensorError):
        CurvatureTensor(ms, {(0, 1): matrix(skew_unit(3, 0, 2))})
    with pytest.raises(CurvatureTensorError):
        CurvatureTensor(ms, {(1, 0): matrix(skew_unit(3, 0, 1))})


def test_parabolic_u11_has_five_curvature_tensors():
    assert curvature_space(build_algebra(FamilySpec("u-pp", n=0))).dim == 5


@pytest.mark.parametrize("k", [2, 3])
def test_sod_has_no_curvature(k):
    sod = _sod_euclidean(k)
    assert curvature_space(sod).dim == 0
    assert weak_curvature_space(sod).dim == 0
    assert not is_weak_berger(sod)


def test_berger_claims_for_n0_algebras():
    frame = build_frame(PSEUDO_KAEHLER, 0)
    diagonal = make_algebra(frame.structure(), [build_pk_element(0, a1=1, a2=1)])
    assert not is_berger(diagonal)
    assert is_berger(build_algebra(FamilySpec("n0-hol1", n=0)))
    assert is_berger(build_algebra(FamilySpec("n0-hol2", n=0)))
    for g1, g2 in ((0, 0), (0, 1), (1, 0), (1, 1)):
        assert is_berger(build_algebra(FamilySpec("n0-gamma", n=0, gamma1=g1, gamma2=g2)))


def test_weak_curvature_space_of_so3():
    so3 = _so(3)
    P = weak_curvature_space(so3)
    assert P.dim == 8
    assert is_weak_berger(so3)
    for Q in P.basis:
        assert weak_cyclic_defect(so3.ambient.eta, Q) is None
        assert P.contains(Q)


def test_weak_curvature_needs_definite_metric():
    with pytest.raises(NotInSoError):
        weak_curvature_space(build_algebra(FamilySpec("n0-hol2", n=0)))


def test_invariant_tensors_of_so3_are_constant_curvature():
    r0 = invariant_curvature_space(_so(3))
    assert r0.dim == 1
    assert curvature_space(_so(3)).contains(r0.basis[0])


def test_restriction_matches_direct_computation():
    ms = MetricStructure(3, eye(3))
    so2 = make_algebra(ms, [matrix(skew_unit(3, 0, 1))])
    restricted = restrict_space(curvature_space(_so(3)), so2)
    assert restricted.dim == 1
    assert restricted == curvature_space(so2)


def test_restriction_target_must_be_contained():
    ms = MetricStructure(3, eye(3))
    so2 = make_algebra(ms, [matrix(skew_unit(3, 0, 1))])
    with pytest.raises(ContainmentError):
        restrict_space(curvature_space(so2), _so(3))
