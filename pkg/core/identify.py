"""
Identification of a computed algebra against catalog families.

Candidates are instantiated from a bounded parameter sweep and compared with
the algebra as canonical subspaces in the standard frame. No conjugation is
attempted: an algebra that is a catalog member only up to a change of basis
comes back Unknown.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from core.catalog import FamilySpec, build_algebra, family_info, h_preset, u_preset
from core.config import DEFAULT_SWEEP_FILE
from core.errors import FrameMismatchError, HolokitBaseException
from core.exactnum import common_field, rational
from core.frames import LORENTZ, PSEUDO_KAEHLER, StandardFrame, build_frame
from core.liealg import MatrixLieAlgebra
from core.logs import get_logger
from core.recipes import PRESETS

logger = get_logger("identify")

EXACT = "Exact"
UNKNOWN = "Unknown"

# first match wins, so the specific families come before their degenerate cousins
_N0_ORDER = ("n0-hol1", "n0-hol2", "n0-gamma", "n0-c", "n0-su11")
_HOL_FAMILIES = (
    "hol-m-u-A1-A2t",
    "hol-m-u-A1-phihat",
    "hol-m-u-phi-A2t",
    "hol-m-u-phi-phihat",
    "hol-m-u-lambda",
    "special-m-u-A1-phihat",
    "special-m-u-phi-phihat",
)


@dataclass
class SweepBounds:
    """Parameter ranges of the generated sweep."""
    max_n: int = 2
    max_m: int = 1
    u_presets: List[str] = field(default_factory=lambda: ["zero", "J", "full"])
    h_presets: List[str] = field(default_factory=lambda: ["zero", "so"])
    scalars: List[Any] = field(default_factory=lambda: [0, 1])
    lambdas: List[Any] = field(default_factory=lambda: [1, -1])
    gammas: List[List[Any]] = field(default_factory=lambda: [[0, 0], [0, 1], [1, 0], [1, 1]])
    include_presets: bool = True


@dataclass
class Sweep:
    bounds: Optional[SweepBounds] = field(default_factory=SweepBounds)
    candidates: List[FamilySpec] = field(default_factory=list)


@dataclass
class Identification:
    kind: str
    spec: Optional[FamilySpec] = None
    key: str = ""
    matches: List[str] = field(default_factory=list)
    tried: int = 0

    @property
    def exact(self) -> bool:
        return self.kind == EXACT

    def matches_expectation(self, expect: str) -> bool:
        """True if `expect` names the matched family id or one of the matched keys."""
        if not self.exact:
            return False
        return any(expect == k or expect == k.split(":")[0] for k in self.matches)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "family": self.spec.family if self.spec else None,
            "key": self.key,
            "label": self.spec.label() if self.spec else None,
            "matches": list(self.matches),
            "candidates_tried": self.tried,
        }


def candidate_key(spec: FamilySpec) -> str:
    """Family id plus the scalar parameters that distinguish members at fixed n."""
    K = spec.domain
    if spec.family == "n0-gamma":
        return f"{spec.family}:{_fmt(spec.gamma1, K)}:{_fmt(spec.gamma2, K)}"
    if spec.family == "hol-m-u-lambda":
        return f"{spec.family}:{_fmt(spec.lam, K)}"
    return spec.family


def _fmt(v: Any, K) -> str:
    x = rational(v, K) if isinstance(v, (int, str)) else K.convert(v)
    return str(K.to_sympy(x))


# ============================================
# 1) SWEEP GENERATION
# ============================================

def _values(choices: Sequence[Any], count: int) -> Iterator[List[Any]]:
    for combo in product(choices, repeat=count):
        yield list(combo)


def _pk_candidates(n: int, b: SweepBounds) -> Iterator[FamilySpec]:
    if n == 0:
        for fam in _N0_ORDER:
            if fam == "n0-gamma":
                for g1, g2 in b.gammas:
                    yield FamilySpec(fam, n=0, gamma1=g1, gamma2=g2)
            else:
                yield FamilySpec(fam, n=0)
        return
    for m in range(0, min(n, b.max_m) + 1):
        seen = set()
        for preset in b.u_presets:
            u = u_preset(preset, m, n, QQ)
            sig = tuple(str(x) for B, C in u for row in B + C for x in row)
            if sig in seen:
                continue
            seen.add(sig)
            d = len(u)
            for fam in _HOL_FAMILIES:
                if fam == "hol-m-u-A1-A2t" or fam == "special-m-u-A1-phihat":
                    yield FamilySpec(fam, n=n, m=m, u_basis=u)
                elif fam == "hol-m-u-A1-phihat":
                    for ph in _values(b.scalars, d):
                        yield FamilySpec(fam, n=n, m=m, u_basis=u, phihat=ph)
                elif fam == "hol-m-u-phi-A2t" or fam == "special-m-u-phi-phihat":
                    for fi in _values(b.scalars, d):
                        yield FamilySpec(fam, n=n, m=m, u_basis=u, phi=fi)
                elif fam == "hol-m-u-phi-phihat":
                    for fi, ph in product(list(_values(b.scalars, d)), list(_values(b.scalars, d))):
                        yield FamilySpec(fam, n=n, m=m, u_basis=u, phi=fi, phihat=ph)
                elif fam == "hol-m-u-lambda":
                    for lam in b.lambdas:
                        yield FamilySpec(fam, n=n, m=m, u_basis=u, lam=lam)
    yield FamilySpec("u-pp", n=n)
    yield FamilySpec("su-pp", n=n)


def _lorentz_candidates(n: int, b: SweepBounds) -> Iterator[FamilySpec]:
    for preset in b.h_presets:
        h = h_preset(preset, n, n, QQ)
        if preset != "zero" and not h:
            continue
        yield FamilySpec("lorentz1", n=n, h_basis=h)
        yield FamilySpec("lorentz2", n=n, h_basis=h)
        for fi in _values([s for s in b.scalars if s], len(h)):
            if h:
                yield FamilySpec("lorentz3", n=n, h_basis=h, phi=fi)


def sweep_candidates(frame: StandardFrame, sweep: Sweep) -> Iterator[FamilySpec]:
    """Explicit candidates first, then the generated ones for the frame's n."""
    for spec in sweep.candidates:
        if family_info(spec.family).frame == frame.case and spec.n == frame.n:
            yield spec
    b = sweep.bounds
    if b is None:
        return
    if frame.n <= b.max_n:
        if frame.case == PSEUDO_KAEHLER:
            yield from _pk_candidates(frame.n, b)
        else:
            yield from _lorentz_candidates(frame.n, b)
    if b.include_presets and frame.case == LORENTZ:
        for name, make in PRESETS.items():
            spec = make().family
            if spec.n == frame.n:
                yield spec


def load_default_sweep() -> Sweep:
    from core.schemas import load_sweep
    if os.path.exists(DEFAULT_SWEEP_FILE):
        return load_sweep(DEFAULT_SWEEP_FILE)
    logger.warning(f"default sweep file {DEFAULT_SWEEP_FILE} is missing; using built-in bounds")
    return Sweep()


# ============================================
# 2) IDENTIFICATION
# ============================================

def frame_of(eta: DomainMatrix) -> Optional[StandardFrame]:
    """The standard frame whose Gram matrix is exactly `eta`, if any."""
    d = eta.shape[0]
    sizes = []
    if d >= 4 and d % 2 == 0:
        sizes.append((PSEUDO_KAEHLER, (d - 4) // 2))
    if d >= 2:
        sizes.append((LORENTZ, d - 2))
    for case, n in sizes:
        frame = build_frame(case, n)
        K = common_field(eta.domain, frame.domain)
        if eta.convert_to(K) == frame.eta.convert_to(K):
            return frame
    return None


def _check_frame(alg: MatrixLieAlgebra, frame: StandardFrame) -> None:
    if alg.n != frame.dim:
        raise FrameMismatchError(f"algebra lives in so({alg.n}), frame has dim {frame.dim}")
    K = common_field(alg.domain, frame.domain)
    if alg.ambient.eta.convert_to(K) != frame.eta.convert_to(K):
        raise FrameMismatchError("algebra ambient metric differs from the frame metric")


def identify(alg: MatrixLieAlgebra, frame: StandardFrame, sweep: Optional[Sweep] = None) -> Identification:
    _check_frame(alg, frame)
    sweep = sweep if sweep is not None else load_default_sweep()
    first: Optional[FamilySpec] = None
    matches: List[str] = []
    tried = 0
    for spec in sweep_candidates(frame, sweep):
        try:
            cand = build_algebra(spec)
        except HolokitBaseException as e:
            logger.debug(f"skipping candidate {spec.label()}: {e}")
            continue
        tried += 1
        if cand.dim != alg.dim:
            continue
        if cand == alg:
            key = candidate_key(spec)
            matches.append(key)
            if first is None:
                first = spec
    if first is None:
        logger.info(f"no catalog match for a {alg.dim}-dim algebra among {tried} candidates")
        return Identification(UNKNOWN, tried=tried)
    logger.info(f"identified as {first.label()} ({len(matches)} matching candidates)")
    return Identification(EXACT, first, candidate_key(first), matches, tried)
