from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from core.catalog import FamilySpec, build_algebra, pk_ideal
from core.errors import InvalidStructureError, MissingComplexStructureError, NotInSoError
from core.frames import LORENTZ, PSEUDO_KAEHLER, build_frame, build_pk_element, skew_unit
from core.liealg import (
    INCONCLUSIVE,
    REDUCIBLE,
    WEAKLY_IRREDUCIBLE,
    InvariantVerdict,
    MetricStructure,
    bracket,
    check_invariant_subspace,
    commutant,
    commutes_with_J,
    is_closed,
    is_in_so,
    lie_closure,
    make_algebra,
    self_adjoint_commutant,
    weak_irreducibility,
)
from core.linalg import eye, matrix, span


def _euclidean(n: int) -> MetricStructure:
    return MetricStructure(n, eye(n))


def test_metric_structure_validation():
    with pytest.raises(InvalidStructureError):
        MetricStructure(2, matrix([[1, 1], [0, 1]]))
    with pytest.raises(InvalidStructureError):
        MetricStructure(2, matrix([[1, 1], [1, 1]]))
    with pytest.raises(InvalidStructureError):
        MetricStructure(2, eye(2), J=eye(2))
    frame = build_frame(PSEUDO_KAEHLER, 1)
    assert frame.structure().J is not None


def test_closure_of_two_rotations_is_so3():
    a, b = matrix(skew_unit(3, 0, 1)), matrix(skew_unit(3, 1, 2))
    alg = lie_closure([a, b], _euclidean(3))
    assert alg.dim == 3
    assert is_closed(alg)
    assert is_in_so(alg)
    assert alg.contains(bracket(a, b))


def test_canonical_basis_makes_equal_spans_equal():
    a, b = matrix(skew_unit(3, 0, 1)), matrix(skew_unit(3, 0, 2))
    one = make_algebra(_euclidean(3), [a, b])
    other = make_algebra(_euclidean(3), [a + b, a - b, a])
    assert one == other
    assert one.dim == 2
    assert not is_closed(one)


def test_commutant_of_so3_is_scalars():
    so3 = lie_closure([matrix(skew_unit(3, 0, 1)), matrix(skew_unit(3, 1, 2))], _euclidean(3))
    assert commutant(so3).dim == 1
    assert len(self_adjoint_commutant(so3)) == 1


def test_parabolic_unitary_algebra_commutes_with_J():
    alg = build_algebra(FamilySpec("u-pp", n=1))
    assert alg.dim == 6
    assert is_in_so(alg)
    assert commutes_with_J(alg)
    lorentz = build_algebra(FamilySpec("lorentz2", n=1))
    with pytest.raises(MissingComplexStructureError):
        commutes_with_J(lorentz)


def test_invariant_subspace_verdicts():
    frame = build_frame(PSEUDO_KAEHLER, 0)
    hol2 = build_algebra(FamilySpec("n0-hol2", n=0))
    p = span([frame.vector("p1"), frame.vector("p2")], 4)
    assert check_invariant_subspace(hol2, p) == InvariantVerdict.ISOTROPIC
    pq = span([frame.vector("p1"), frame.vector("q1")], 4)
    assert check_invariant_subspace(hol2, pq) == InvariantVerdict.NOT_INVARIANT

    c_only = build_algebra(FamilySpec("n0-c", n=0))
    ppq = span([frame.vector("p1"), frame.vector("p2"), frame.vector("q1")], 4)
    assert check_invariant_subspace(c_only, ppq) == InvariantVerdict.DEGENERATE


def test_ideal_with_center_is_weakly_irreducible():
    frame = build_frame(PSEUDO_KAEHLER, 1)
    alg = make_algebra(frame.structure(), pk_ideal(1, QQ, n1=[1], with_c=True))
    assert weak_irreducibility(alg).kind == WEAKLY_IRREDUCIBLE


def test_ideal_without_center_is_reducible():
    frame = build_frame(PSEUDO_KAEHLER, 1)
    alg = make_algebra(frame.structure(), pk_ideal(1, QQ, n1=[1], with_c=False))
    verdict = weak_irreducibility(alg, seed=7)
    assert verdict.kind == REDUCIBLE
    assert check_invariant_subspace(alg, verdict.witness) == InvariantVerdict.NON_DEGENERATE
    printed = span([
        frame.combo({"p1": 1, "p2": 1}),
        frame.combo({"e1": 1, "f1": 1}),
        frame.combo({"q1": 1, "q2": 1}),
    ], frame.dim)
    assert check_invariant_subspace(alg, printed) == InvariantVerdict.NON_DEGENERATE


def test_a1_alone_is_reducible():
    frame = build_frame(PSEUDO_KAEHLER, 0)
    a1 = make_algebra(frame.structure(), [build_pk_element(0, a1=1)])
    verdict = weak_irreducibility(a1)
    assert verdict.kind == REDUCIBLE
    assert 0 < verdict.witness.dim < 4
    assert check_invariant_subspace(a1, verdict.witness) == InvariantVerdict.NON_DEGENERATE
    pq = span([frame.vector("p1"), frame.vector("q1")], 4)
    assert check_invariant_subspace(a1, pq) == InvariantVerdict.NON_DEGENERATE


def test_verdict_is_deterministic_for_a_seed():
    frame = build_frame(PSEUDO_KAEHLER, 1)
    alg = make_algebra(frame.structure(), pk_ideal(1, QQ, n1=[1], with_c=False))
    first, second = weak_irreducibility(alg, seed=3), weak_irreducibility(alg, seed=3)
    assert first.to_dict() == second.to_dict()
    assert first.kind in (REDUCIBLE, WEAKLY_IRREDUCIBLE, INCONCLUSIVE)


def test_weak_irreducibility_needs_so():
    frame = build_frame(LORENTZ, 0)
    alg = make_algebra(frame.structure(), [eye(2)])
    with pytest.raises(NotInSoError):
        weak_irreducibility(alg)
