from __future__ import annotations

from dataclasses import replace

import pytest
from sympy.polys.domains import QQ

from core.catalog import FAMILIES, FamilySpec, build_algebra, family_ids, family_info, h_preset, pk_ideal, special_phihat, u_preset
from core.errors import ParameterConstraintError
from core.frames import LORENTZ, PSEUDO_KAEHLER, su_condition
from core.liealg import commutes_with_J, is_closed, is_in_so


def test_registry_is_sorted_and_framed():
    ids = family_ids()
    assert ids == sorted(ids)
    assert {"n0-hol1", "u-pp", "hol-m-u-lambda", "su-0-h-zeta", "lorentz4"} <= set(ids)
    for fid in ids:
        assert family_info(fid).frame in (LORENTZ, PSEUDO_KAEHLER)


def test_unknown_family_is_rejected():
    with pytest.raises(ParameterConstraintError):
        family_info("hol-nothing")


@pytest.mark.parametrize(
    "spec, dim",
    [
        (FamilySpec("n0-hol1"), 3),
        (FamilySpec("n0-hol2"), 2),
        (FamilySpec("n0-gamma"), 1),
        (FamilySpec("n0-gamma", gamma1=1, gamma2=2), 2),
        (FamilySpec("n0-c"), 1),
        (FamilySpec("n0-su11"), 2),
        (FamilySpec("u-pp", n=1), 6),
        (FamilySpec("u-pp", n=2), 11),
        (FamilySpec("su-pp", n=1), 5),
    ],
)
def test_small_family_dimensions(spec, dim):
    alg = build_algebra(spec)
    assert alg.dim == dim == family_info(spec.family).dimension(spec)
    assert is_in_so(alg)
    assert commutes_with_J(alg)
    assert is_closed(alg)


def test_n0_families_need_n_zero():
    with pytest.raises(ParameterConstraintError):
        build_algebra(FamilySpec("n0-hol2", n=1))


def test_full_unitary_part_gives_the_whole_parabolic():
    spec = FamilySpec("hol-m-u-A1-A2t", n=1, m=1, u_basis=u_preset("full", 1, 1))
    assert build_algebra(spec) == build_algebra(FamilySpec("u-pp", n=1))


def test_su_pp_lies_in_su():
    alg = build_algebra(FamilySpec("su-pp", n=2))
    assert all(su_condition(X, 2) for X in alg.basis)


def test_special_phihat_is_trace_free():
    spec = FamilySpec("special-m-u-A1-phihat", n=2, m=1, u_basis=u_preset("J", 1, 2))
    assert special_phihat(spec) == [QQ(-1, 3)]
    alg = build_algebra(spec)
    assert alg.dim == 6
    assert spec.phihat == []
    assert all(su_condition(X, 2) for X in alg.basis)


def test_lambda_family_needs_nonzero_lambda():
    spec = FamilySpec("hol-m-u-lambda", n=1, m=1, lam=0)
    with pytest.raises(ParameterConstraintError, match="lambda"):
        build_algebra(spec)
    assert build_algebra(FamilySpec("hol-m-u-lambda", n=1, m=1, lam="2")).dim == 4


def test_unitary_part_must_fit_in_u_m():
    spec = FamilySpec("hol-m-u-A1-A2t", n=2, m=1, u_basis=u_preset("full", 2, 2))
    with pytest.raises(ParameterConstraintError):
        build_algebra(spec)


def test_m_is_bounded_by_n():
    with pytest.raises(ParameterConstraintError):
        build_algebra(FamilySpec("hol-m-u-A1-A2t", n=1, m=2))


@pytest.mark.parametrize(
    "spec, dim",
    [
        (FamilySpec("lorentz1", n=2, h_basis=h_preset("so", 2, 2)), 4),
        (FamilySpec("lorentz2", n=2, h_basis=h_preset("so", 2, 2)), 3),
        (FamilySpec("lorentz3", n=2, h_basis=h_preset("so", 2, 2), phi=[1]), 3),
        (FamilySpec("lorentz4", n=3, m=2, h_basis=h_preset("so", 2, 3), psi=[["1"]]), 3),
        (FamilySpec("lorentz2", n=3), 3),
    ],
)
def test_lorentz_family_dimensions(spec, dim):
    alg = build_algebra(spec)
    assert alg.dim == dim
    assert alg.n == spec.n + 2
    assert is_in_so(alg)


def test_lorentz3_needs_nonzero_phi():
    with pytest.raises(ParameterConstraintError, match="phi"):
        build_algebra(FamilySpec("lorentz3", n=2, h_basis=h_preset("so", 2, 2), phi=[0]))


def test_h_must_be_skew():
    with pytest.raises(ParameterConstraintError):
        build_algebra(FamilySpec("lorentz2", n=2, h_basis=[[[1, 0], [0, 0]]]))


def test_u_presets():
    assert u_preset("zero", 2, 3) == []
    assert len(u_preset("J", 2, 3)) == 1
    assert len(u_preset("full", 2, 3)) == 4
    assert len(u_preset("su", 2, 3)) == 3
    assert len(u_preset("su-J", 2, 3)) == 4
    assert len(h_preset("so", 3, 4)) == 3
    with pytest.raises(ParameterConstraintError):
        u_preset("bogus", 1, 1)


def test_pk_ideal_elements():
    mats = pk_ideal(2, QQ, n1=(1, 2), n2=(1,))
    assert len(mats) == 4
    assert len(pk_ideal(2, QQ, n1=(1,), with_c=False)) == 1


def test_label_mentions_parameters():
    label = FamilySpec("hol-m-u-A1-A2t", n=2, m=1, u_basis=u_preset("J", 1, 2)).label()
    assert "n=2" in label
    assert "m=1" in label
    assert "dim u=1" in label


def test_dimension_must_match_the_closed_form(monkeypatch):
    info = family_info("n0-c")
    monkeypatch.setitem(FAMILIES, "n0-c", replace(info, dimension=lambda s: 2))
    with pytest.raises(ParameterConstraintError, match="closed form 2"):
        build_algebra(FamilySpec("n0-c"))
