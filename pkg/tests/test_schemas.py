from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from core.catalog import FamilySpec, build_algebra
from core.errors import CurvatureTensorError, InputFormatError
from core.exactnum import QQ_SQRT3
from core.frames import build_pk_element
from core.linalg import matrix, matrix_to_json, zeros
from core.schemas import (
    algebra_from_json,
    algebra_to_json,
    dumps,
    family_from_json,
    family_to_json,
    liegroup_from_json,
    loads,
    metric_from_json,
    metric_to_json,
    pair_from_json,
    read_json,
    sweep_from_json,
    write_json,
)

ROT2 = [[0, 1], [-1, 0]]


def test_dumps_sorts_keys():
    text = dumps({"b": 1, "a": [1, 2]})
    assert text.index('"a"') < text.index('"b"')
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})


def test_bad_json_is_an_input_error(tmp_path):
    with pytest.raises(InputFormatError):
        loads("{not json")
    with pytest.raises(InputFormatError):
        read_json(str(tmp_path / "missing.json"))


def test_write_then_read(tmp_path):
    path = str(tmp_path / "out.json")
    write_json(path, {"x": "1/2"})
    assert read_json(path) == {"x": "1/2"}


def test_metric_from_expressions():
    m = metric_from_json({"dim": 2, "g": [["1", "x0*x1"], ["x0*x1", "-1"]], "basepoint": ["1/2", 0]})
    assert m.dim == 2
    assert m.basepoint == [QQ(1, 2), QQ(0)]
    x0, x1 = m.ring.gens
    assert m.g[0][1] == x0 * x1
    again = metric_from_json(metric_to_json(m))
    assert again.g == m.g
    assert again.basepoint == m.basepoint


def test_metric_in_sqrt3_field():
    m = metric_from_json({"dim": 1, "field": "QQ<sqrt(3)>", "g": [["1 + sqrt(3)*x0**2"]]})
    assert m.domain == QQ_SQRT3
    assert metric_to_json(m)["field"] == "QQ<sqrt(3)>"


@pytest.mark.parametrize(
    "data",
    [
        {"dim": 0, "g": []},
        {"dim": 2, "g": 5},
        {"g": [["1"]]},
        {"dim": 1, "g": [["1"]], "field": "GF(7)"},
    ],
)
def test_metric_validation_errors(data):
    with pytest.raises(InputFormatError):
        metric_from_json(data)


def test_algebra_in_a_frame():
    data = {"frame": "pseudo-kaehler", "n": 0, "basis": [matrix_to_json(build_pk_element(0, c=1))]}
    alg = algebra_from_json(data)
    assert alg.dim == 1
    assert alg.ambient.J is not None
    assert algebra_from_json(algebra_to_json(alg)) == alg


def test_liegroup_names_must_match_dimension():
    data = {"dim": 2, "names": ["a"], "gram": [[1, 0], [0, 1]]}
    with pytest.raises(InputFormatError):
        liegroup_from_json(data)
    _, names = liegroup_from_json({"dim": 2, "gram": [[1, 0], [0, 1]], "brackets": [{"i": 0, "j": 1, "coeffs": [0, 1]}]})
    assert names == ["e0", "e1"]


def test_family_with_presets():
    spec, weak = family_from_json({"family": "hol-m-u-A1-A2t", "n": 2, "m": 1, "u": "J"})
    assert weak == []
    assert len(spec.u_basis) == 1
    assert build_algebra(spec).dim == 7


def test_family_with_weak_maps():
    data = {"family": "lorentz2", "n": 2, "h": "so", "h_m": 2, "weak": [[ROT2, [[0, 0], [0, 0]]]]}
    spec, weak = family_from_json(data)
    assert len(spec.h_basis) == 1
    assert weak[0][0] == matrix(ROT2)


def test_family_to_json_writes_scalars_as_strings():
    out = family_to_json(FamilySpec("hol-m-u-lambda", n=1, m=1, lam=QQ(1, 2)))
    assert out["lam"] == "1/2"
    assert "field" not in out
    spec, _ = family_from_json(out)
    assert spec.lam == "1/2"


def test_sweep_without_bounds():
    sweep = sweep_from_json({"candidates": [{"family": "n0-c"}]})
    assert sweep.bounds is None
    assert [c.family for c in sweep.candidates] == ["n0-c"]


def test_pair_in_a_frame():
    C = matrix_to_json(build_pk_element(0, c=1))
    Z = matrix_to_json(zeros(4))
    algebra = {"frame": "pseudo-kaehler", "n": 0, "basis": [C]}
    hol, R = pair_from_json({"algebra": algebra, "tensor": [{"a": 0, "b": 2, "value": Z}]})
    assert hol.dim == 1
    assert R.is_zero()
    with pytest.raises(CurvatureTensorError):
        pair_from_json({"algebra": algebra, "tensor": [{"a": 2, "b": 0, "value": Z}]})


def test_pair_validation_error():
    with pytest.raises(InputFormatError):
        pair_from_json({"tensor": []})
