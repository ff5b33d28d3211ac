"""Shared session fixtures: the expensive algebra builds are reused."""

from fractions import Fraction

import pytest

from qhcalc.qfield import QRing
from qhcalc.hyperboloid import Hyperboloid, QHParams
from qhcalc.tangent import build_tangent

SPEC_Q = Fraction(3, 2)


@pytest.fixture(scope="session")
def sym_ring():
    return QRing()


@pytest.fixture(scope="session")
def spec_ring():
    return QRing(SPEC_Q)


@pytest.fixture(scope="session")
def sym_alg5(sym_ring):
    return Hyperboloid(QHParams(sym_ring, 1, 0, 5))


@pytest.fixture(scope="session")
def spec_alg5(spec_ring):
    return Hyperboloid(QHParams(spec_ring, 1, 0, 5))


@pytest.fixture(scope="session")
def sym_tangents(sym_alg5):
    return build_tangent(sym_alg5, "left"), build_tangent(sym_alg5, "right")


@pytest.fixture(scope="session")
def spec_tangents(spec_alg5):
    return (build_tangent(spec_alg5, "left"),
            build_tangent(spec_alg5, "right"))
