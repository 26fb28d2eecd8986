from __future__ import annotations

import random

import pytest
from sympy.polys.domains import QQ

from core.config import DEFAULT_SEED
from core.frames import LORENTZ, PSEUDO_KAEHLER, build_frame
from core.linalg import matrix


@pytest.fixture
def rng() -> random.Random:
    return random.Random(DEFAULT_SEED)


@pytest.fixture
def eta_pk0():
    """Gram matrix of the n = 0 pseudo-Kähler frame (p1, p2, q1, q2)."""
    return matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], QQ)


@pytest.fixture
def pk1():
    return build_frame(PSEUDO_KAEHLER, 1)


@pytest.fixture
def lorentz2():
    return build_frame(LORENTZ, 2)
