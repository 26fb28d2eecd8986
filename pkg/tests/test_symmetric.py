from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from core.catalog import FamilySpec, build_algebra
from core.errors import FrameMismatchError, MissingComplexStructureError
from core.frames import PSEUDO_KAEHLER, build_frame
from core.linalg import entries
from core.symmetric import (
    BUILTIN_PAIRS,
    builtin_pair,
    hol1,
    hol2,
    hol3,
    is_ricci_flat,
    named_tensor,
    r0_dimension,
    r_lambda12,
    r_one,
    ricci,
    verify_symmetric_pair,
)


@pytest.mark.parametrize(
    "alg, dim",
    [
        (hol1(), 1),
        (hol2(), 2),
        (build_algebra(FamilySpec("n0-hol2")), 2),
    ],
    ids=["hol1", "hol2", "n0-hol2"],
)
def test_invariant_curvature_dimensions(alg, dim):
    assert r0_dimension(alg) == dim


@pytest.mark.parametrize("name", ["hol1-pos", "hol1-neg", "hol1c-lambda1", "hol1c-lambda2", "hol2"])
def test_fixed_pairs_are_symmetric(name):
    hol, R, _ = builtin_pair(name)
    report = verify_symmetric_pair(hol, R)
    assert report.passed, report.notes
    assert report.image_dim == hol.dim


@pytest.mark.parametrize("m, n", [(0, 0), (0, 1), (1, 1)])
def test_hol3_pairs(m, n):
    hol, R, frame = builtin_pair("hol3", m=m, n=n)
    assert hol.dim == hol3(m, n).dim == 2 + n + m
    assert verify_symmetric_pair(hol, R).passed
    q1 = frame.index["q1"]
    assert entries(ricci(R, frame))[q1][q1] == m - 2 * n - 4


def test_hol3_pair_with_lambda5():
    hol, R, _ = builtin_pair("hol3-neg", m=1, n=1, lam5=QQ(1))
    assert verify_symmetric_pair(hol, R).passed


def test_ricci_of_lambda1_pair():
    _, R, frame = builtin_pair("hol1c-lambda1")
    ric = entries(ricci(R, frame))
    assert ric[frame.index["p1"]][frame.index["q1"]] == -1
    assert not is_ricci_flat(R, frame)


def test_lambda5_tensor_is_ricci_flat():
    _, R, frame = builtin_pair("hol1-pos")
    assert is_ricci_flat(R, frame)


def test_wrong_tensor_fails_the_check():
    frame = build_frame(PSEUDO_KAEHLER, 0)
    report = verify_symmetric_pair(hol1(), r_lambda12(frame, lam1=1))
    assert not report.passed
    assert report.notes


def test_named_tensors():
    frame = build_frame(PSEUDO_KAEHLER, 1)
    assert named_tensor("R_1", frame, m=1).values == r_one(frame, 1).values
    with pytest.raises(FrameMismatchError):
        named_tensor("R_9", frame)


def test_errors(lorentz2):
    assert "hol3" in BUILTIN_PAIRS
    with pytest.raises(FrameMismatchError):
        builtin_pair("hol9")
    with pytest.raises(FrameMismatchError):
        hol3(2, 1)
    _, R, _ = builtin_pair("hol1-pos")
    with pytest.raises(MissingComplexStructureError):
        ricci(R, lorentz2)
    with pytest.raises(FrameMismatchError):
        verify_symmetric_pair(hol2(), R)
