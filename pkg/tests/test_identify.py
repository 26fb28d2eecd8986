from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from core.catalog import FamilySpec, build_algebra, h_preset
from core.errors import FrameMismatchError
from core.frames import LORENTZ, PSEUDO_KAEHLER, build_frame, build_pk_element
from core.identify import EXACT, UNKNOWN, Sweep, SweepBounds, candidate_key, frame_of, identify, load_default_sweep
from core.liealg import make_algebra
from core.linalg import eye


def test_frame_of_recognises_standard_frames(eta_pk0, lorentz2):
    frame = frame_of(eta_pk0)
    assert frame.case == PSEUDO_KAEHLER
    assert frame.n == 0
    frame = frame_of(lorentz2.eta)
    assert frame.case == LORENTZ
    assert frame.n == 2
    assert frame_of(eye(3)) is None


def test_candidate_keys():
    assert candidate_key(FamilySpec("n0-gamma", gamma1=0, gamma2=1)) == "n0-gamma:0:1"
    assert candidate_key(FamilySpec("hol-m-u-lambda", n=1, m=1, lam="1/2")) == "hol-m-u-lambda:1/2"
    assert candidate_key(FamilySpec("u-pp", n=1)) == "u-pp"


def test_default_sweep_file():
    sweep = load_default_sweep()
    assert sweep.bounds == SweepBounds()
    assert sweep.candidates == []


@pytest.mark.parametrize(
    "spec, key",
    [
        (FamilySpec("n0-hol1"), "n0-hol1"),
        (FamilySpec("n0-hol2"), "n0-hol2"),
        (FamilySpec("n0-gamma", gamma1=0, gamma2=1), "n0-gamma:0:1"),
        (FamilySpec("n0-gamma"), "n0-gamma:0:0"),
    ],
)
def test_identifies_n0_algebras(spec, key):
    alg = build_algebra(spec)
    ident = identify(alg, build_frame(PSEUDO_KAEHLER, 0), Sweep())
    assert ident.kind == EXACT
    assert ident.key == key
    assert ident.matches_expectation(key)
    assert ident.matches_expectation(spec.family)


def test_equal_algebras_list_every_match():
    alg = build_algebra(FamilySpec("n0-su11"))
    ident = identify(alg, build_frame(PSEUDO_KAEHLER, 0), Sweep())
    assert ident.key == "n0-gamma:1:0"
    assert "n0-su11" in ident.matches
    assert ident.matches_expectation("n0-su11")


def test_identifies_lorentz_algebra():
    alg = build_algebra(FamilySpec("lorentz2", n=2, h_basis=h_preset("so", 2, 2)))
    ident = identify(alg, build_frame(LORENTZ, 2), Sweep())
    assert ident.exact
    assert ident.key == "lorentz2"


def test_unknown_algebra():
    frame = build_frame(PSEUDO_KAEHLER, 0)
    alg = make_algebra(frame.structure(QQ), [build_pk_element(0, a2=1)])
    ident = identify(alg, frame, Sweep())
    assert ident.kind == UNKNOWN
    assert ident.tried > 0
    assert not ident.matches_expectation("n0-c")
    assert ident.to_dict()["family"] is None


def test_explicit_candidates_only():
    alg = build_algebra(FamilySpec("n0-c"))
    ident = identify(alg, build_frame(PSEUDO_KAEHLER, 0), Sweep(bounds=None, candidates=[FamilySpec("n0-c")]))
    assert ident.exact
    assert ident.tried == 1


def test_frame_mismatch():
    alg = build_algebra(FamilySpec("n0-hol2"))
    with pytest.raises(FrameMismatchError):
        identify(alg, build_frame(PSEUDO_KAEHLER, 1), Sweep())
    with pytest.raises(FrameMismatchError):
        identify(alg, build_frame(LORENTZ, 2), Sweep())
