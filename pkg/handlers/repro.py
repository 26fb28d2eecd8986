# handlers/repro.py
"""
One-command reproduction of the classification checks.

Each group appends exact checks to a single consolidated report. Groups are
independent, so a failure in one does not stop the others; an exception in a
group becomes a failed check carrying the error text.
"""
from __future__ import annotations

import random
import time
from typing import Callable, Dict, List, Optional, Sequence

from sympy.polys.domains import QQ

from core.catalog import FamilySpec, build_algebra, h_preset, pk_ideal, u_preset
from core.config import DEFAULT_SEED, LIEGROUP_FILES
from core.curvspace import curvature_space, is_berger, is_weak_berger, weak_curvature_space
from core.errors import HolokitBaseException
from core.exactnum import QQ_SQRT3
from core.frames import PSEUDO_KAEHLER, build_frame, build_pk_element, sod_basis
from core.geometry import (
    PolynomialMetric,
    christoffel,
    christoffel_symmetric,
    curvature,
    curvature_antisymmetric,
    first_bianchi_holds,
    metric_compatible,
    pair_symmetric_at_origin,
    random_unimodular_metric,
)
from core.holonomy import holonomy
from core.liealg import REDUCIBLE, WEAKLY_IRREDUCIBLE, InvariantVerdict, MatrixLieAlgebra, MetricStructure, check_invariant_subspace, lie_closure, make_algebra, weak_irreducibility
from core.liegroup import lg_holonomy
from core.linalg import entries, eye, matrix, span
from core.logs import get_logger
from core.recipes import MetricRecipe, build_metric, g2_recipe, ikemakhen_original_metric, ikemakhen_recipe, n0_recipe, spin7_recipe, suggested_max_order
from core.schemas import liegroup_from_json, read_json
from core.special import rho_so3_generators
from core.symmetric import builtin_pair, hol1, hol2, r0_dimension, ricci, verify_symmetric_pair
from handlers.holonomy import identify_algebra
from handlers.report import Report, digest_obj

logger = get_logger("handlers.repro")

GROUPS = ("liegroup", "lorentz-example", "n0-rows", "curvspace", "symmetric", "pk-metrics", "lorentz-metrics", "properties", "weakirr")


# ----------------------------
# Small helpers
# ----------------------------
def _ident(report: Report, name: str, alg: MatrixLieAlgebra, expect: str) -> None:
    ident = identify_algebra(alg)
    report.check(name, expect, ident.key or ident.kind, passed=ident.matches_expectation(expect))


def _projection(M, lo: int, hi: int):
    rows = entries(M)
    return matrix([[rows[a][b] for b in range(lo, hi)] for a in range(lo, hi)], M.domain)


def _weak_projection_checks(report: Report, label: str, recipe: MetricRecipe, metric: PolynomialMetric) -> None:
    """pr_{so(n)} R(∂_i, ∂_{n+1})(0) == P_1(e_i) for every i."""
    n = recipe.family.n
    t = curvature(christoffel(metric))
    P = recipe.weak[0]
    ok = all(_projection(t.endomorphism_at_origin(i, n + 1), 1, n + 1) == P[i - 1].convert_to(metric.domain) for i in range(1, n + 1))
    report.check(f"{label}: pr R(d_i, d_{n + 1})(0) = P(e_i)", True, ok)


def _recipe_holonomy(report: Report, label: str, recipe: MetricRecipe, expect_dim: Optional[int] = None) -> None:
    metric = build_metric(recipe)
    rep = holonomy(metric, max_order=suggested_max_order(recipe, metric))
    expected = build_algebra(recipe.family)
    if expect_dim is not None:
        report.check(f"{label}: holonomy dim", expect_dim, rep.algebra.dim)
    report.check(f"{label}: holonomy equals the family algebra", True, rep.algebra == expected)


def _sod_euclidean(k: int) -> MatrixLieAlgebra:
    """sod(1..k) acting on R^k + R^k with the Euclidean metric."""
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


# ============================================
# 1) GROUPS
# ============================================

def _liegroup(report: Report, seed: int) -> None:
    for name, expect in (("g1", "n0-hol2"), ("g2", "n0-gamma:0:1")):
        path = LIEGROUP_FILES[name]
        data, _ = liegroup_from_json(read_json(path), path)
        _ident(report, f"liegroup {name}: holonomy", lg_holonomy(data), expect)
    data, _ = liegroup_from_json(read_json(LIEGROUP_FILES["abelian"]), LIEGROUP_FILES["abelian"])
    report.check("liegroup abelian: holonomy dim", 0, lg_holonomy(data).dim)


def _lorentz_example(report: Report, seed: int) -> None:
    gens = rho_so3_generators()
    report.check("rho(so(3)): closure dim", 3, lie_closure(gens, MetricStructure(5, eye(5, QQ_SQRT3))).dim)
    recipe = ikemakhen_recipe()
    metric = build_metric(recipe)
    _weak_projection_checks(report, "ikemakhen construction", recipe, metric)
    rep = holonomy(metric, max_order=suggested_max_order(recipe, metric))
    report.check("ikemakhen construction: holonomy dim", 8, rep.algebra.dim)
    _ident(report, "ikemakhen construction: identification", rep.algebra, "lorentz2")


def _n0_rows(report: Report, seed: int) -> None:
    rows = (
        ("n0-row1", 0, 0, 3, "n0-hol1"),
        ("n0-row2", 0, 0, 2, "n0-hol2"),
        ("n0-row3", 0, 1, 2, "n0-gamma:0:1"),
        ("n0-row4", 0, 0, 1, "n0-gamma:0:0"),
    )
    for row, g1, g2, dim, expect in rows:
        recipe = n0_recipe(row, g1, g2)
        metric = build_metric(recipe)
        rep = holonomy(metric, max_order=suggested_max_order(recipe, metric))
        report.check(f"{row}: holonomy dim", dim, rep.algebra.dim)
        _ident(report, f"{row}: identification", rep.algebra, expect)


def _curvspace(report: Report, seed: int) -> None:
    report.check("dim R(u(1,1)_<p1,p2>)", 5, curvature_space(build_algebra(FamilySpec("u-pp", n=0))).dim)
    for k in (2, 3):
        sod = _sod_euclidean(k)
        report.check(f"dim R(sod({k}))", 0, curvature_space(sod).dim)
        report.check(f"dim P(sod({k}))", 0, weak_curvature_space(sod).dim)
        report.check(f"sod({k}) is weak-Berger", False, is_weak_berger(sod))
    frame = build_frame(PSEUDO_KAEHLER, 0)
    diag = make_algebra(frame.structure(), [build_pk_element(0, a1=1, a2=1)])
    report.check("R(A1 + A2) is Berger", False, is_berger(diag))
    report.check("n0-hol1 is Berger", True, is_berger(build_algebra(FamilySpec("n0-hol1", n=0))))
    report.check("n0-hol2 is Berger", True, is_berger(build_algebra(FamilySpec("n0-hol2", n=0))))
    for g1, g2 in ((0, 0), (0, 1), (1, 0), (1, 1)):
        alg = build_algebra(FamilySpec("n0-gamma", n=0, gamma1=g1, gamma2=g2))
        report.check(f"n0-gamma({g1},{g2}) is Berger", True, is_berger(alg))


def _symmetric(report: Report, seed: int) -> None:
    report.check("dim R0(hol1)", 1, r0_dimension(hol1()))
    report.check("dim R0(hol2)", 2, r0_dimension(hol2()))
    report.check("dim R0(n0-hol2)", 2, r0_dimension(build_algebra(FamilySpec("n0-hol2", n=0))))
    for name in ("hol1-pos", "hol2"):
        hol, R, _ = builtin_pair(name)
        report.check(f"pair {name}", True, verify_symmetric_pair(hol, R).passed)
    for m, n in ((0, 0), (0, 1), (1, 1)):
        hol, R, frame = builtin_pair("hol3", m=m, n=n)
        report.check(f"pair hol3 (m={m}, n={n})", True, verify_symmetric_pair(hol, R).passed)
        q1 = frame.index["q1"]
        value = entries(ricci(R, frame))[q1][q1]
        report.check(f"Ric(R_1)(q1,q1) at m={m}, n={n}", str(m - 2 * n - 4), str(QQ.to_sympy(value)))
    hol, R, frame = builtin_pair("hol1c-lambda1")
    ric = entries(ricci(R, frame))
    report.check("Ric(R_lambda1)(p1,q1) with lambda1 = -1/2", "-1", str(QQ.to_sympy(ric[frame.index["p1"]][frame.index["q1"]])))


def _pk_metrics(report: Report, seed: int) -> None:
    for preset in ("zero", "J"):
        u = u_preset(preset, 1, 1, QQ)
        specs = [
            FamilySpec("hol-m-u-A1-A2t", n=1, m=1, u_basis=u),
            FamilySpec("hol-m-u-A1-phihat", n=1, m=1, u_basis=u, phihat=[1] * len(u)),
            FamilySpec("hol-m-u-lambda", n=1, m=1, u_basis=u, lam=1),
        ]
        for spec in specs:
            _recipe_holonomy(report, f"{spec.family} (u={preset})", MetricRecipe(spec))


def _lorentz_metrics(report: Report, seed: int) -> None:
    h = h_preset("so", 2, 2, QQ)
    _recipe_holonomy(report, "lorentz1 h=so(2), n=2", MetricRecipe(FamilySpec("lorentz1", n=2, h_basis=h)), 4)
    _recipe_holonomy(report, "lorentz2 h=so(2), n=2", MetricRecipe(FamilySpec("lorentz2", n=2, h_basis=h)), 3)


def _properties(report: Report, seed: int, count: int = 5) -> None:
    rng = random.Random(seed)
    ok = {"nabla g = 0": True, "Gamma symmetric": True, "R antisymmetric": True, "first Bianchi": True,
          "pair symmetry at 0": True, "generators eta-skew": True}
    for _ in range(count):
        d = rng.randint(2, 4)
        signs = [rng.choice([1, -1]) for _ in range(d)]
        eta = matrix([[signs[i] if i == j else 0 for j in range(d)] for i in range(d)])
        m = random_unimodular_metric(eta, rng)
        cf = christoffel(m)
        t = curvature(cf)
        ok["nabla g = 0"] &= metric_compatible(m, cf)
        ok["Gamma symmetric"] &= christoffel_symmetric(cf)
        ok["R antisymmetric"] &= curvature_antisymmetric(t)
        ok["first Bianchi"] &= first_bianchi_holds(t)
        ok["pair symmetry at 0"] &= pair_symmetric_at_origin(t, eta)
        rep = holonomy(m, max_order=2)
        ok["generators eta-skew"] &= all((eta * b + b.transpose() * eta).is_zero_matrix for b in rep.algebra.basis)
    for name, value in ok.items():
        report.check(f"random metrics: {name}", True, value)


def _weakirr(report: Report, seed: int) -> None:
    n = 1
    frame = build_frame(PSEUDO_KAEHLER, n)
    ms = frame.structure()
    n1c = make_algebra(ms, pk_ideal(n, QQ, n1=[1], with_c=True))
    report.check("N1 + C is weakly irreducible", WEAKLY_IRREDUCIBLE, weak_irreducibility(n1c, seed=seed).kind)

    n1 = make_algebra(ms, pk_ideal(n, QQ, n1=[1], with_c=False))
    report.check("N1 is reducible", REDUCIBLE, weak_irreducibility(n1, seed=seed).kind)
    witness = span([frame.combo({"p1": 1, "p2": 1}), frame.combo({"e1": 1, "f1": 1}), frame.combo({"q1": 1, "q2": 1})], frame.dim)
    report.check("N1 preserves span{p1+p2, e1+f1, q1+q2}", InvariantVerdict.NON_DEGENERATE.value, check_invariant_subspace(n1, witness).value)

    frame0 = build_frame(PSEUDO_KAEHLER, 0)
    a1 = make_algebra(frame0.structure(), [build_pk_element(0, a1=1)])
    v = weak_irreducibility(a1, seed=seed)
    report.check("A1 in su(1,1) is reducible", REDUCIBLE, v.kind)
    if v.witness is not None:
        report.check("A1 witness is invariant and non-degenerate", InvariantVerdict.NON_DEGENERATE.value, check_invariant_subspace(a1, v.witness).value)
    pq = span([frame0.vector("p1"), frame0.vector("q1")], frame0.dim)
    report.check("A1 preserves span{p1, q1}", InvariantVerdict.NON_DEGENERATE.value, check_invariant_subspace(a1, pq).value)


def _stretch(report: Report, seed: int) -> None:
    for label, make, dim in (("g2", g2_recipe, 21), ("spin7", spin7_recipe, 29)):
        recipe = make()
        metric = build_metric(recipe)
        _weak_projection_checks(report, label, recipe, metric)
        rep = holonomy(metric, max_order=suggested_max_order(recipe, metric))
        report.results[f"{label}_stabilized"] = rep.stabilized
        report.results[f"{label}_order_reached"] = rep.max_order_used
        if rep.stabilized:
            report.check(f"{label}: holonomy dim", dim, rep.algebra.dim)
    rep = holonomy(ikemakhen_original_metric())
    report.check("ikemakhen original: holonomy dim", 8, rep.algebra.dim)


_GROUP_FUNCS: Dict[str, Callable[[Report, int], None]] = {
    "liegroup": _liegroup,
    "lorentz-example": _lorentz_example,
    "n0-rows": _n0_rows,
    "curvspace": _curvspace,
    "symmetric": _symmetric,
    "pk-metrics": _pk_metrics,
    "lorentz-metrics": _lorentz_metrics,
    "properties": _properties,
    "weakirr": _weakirr,
    "stretch": _stretch,
}


# ============================================
# 2) ENTRY
# ============================================

def handle(groups: Optional[Sequence[str]] = None, stretch: bool = False, seed: int = DEFAULT_SEED) -> Report:
    selected: List[str] = list(groups) if groups else list(GROUPS)
    if stretch and "stretch" not in selected:
        selected.append("stretch")
    unknown = [g for g in selected if g not in _GROUP_FUNCS]
    if unknown:
        raise HolokitBaseException(f"unknown repro group(s): {', '.join(unknown)}", {"known": list(_GROUP_FUNCS)})

    report = Report("repro", inputs={"selection": digest_obj({"groups": selected, "seed": seed})})
    report.results["groups"] = selected
    report.results["seed"] = seed
    for name in selected:
        start = time.perf_counter()
        before = len(report.checks)
        try:
            _GROUP_FUNCS[name](report, seed)
        except HolokitBaseException as e:
            logger.error(f"repro group {name} failed: {e.message}")
            report.check(f"{name}: completed", "ok", f"error: {e.message}", passed=False)
        failed = sum(1 for c in report.checks[before:] if not c.passed)
        logger.info(f"repro group {name}: {len(report.checks) - before} checks, {failed} failed, {time.perf_counter() - start:.1f}s")
    return report
