"""Hecke symmetries, quadratic algebras and their Koszul complexes."""

from fractions import Fraction

import pytest

from qhcalc.qfield import QRing, limit_q1
from qhcalc.quadratic import (HeckeError, HeckeSymmetry, QuadraticData,
                              algebra_dims, complementarity_check,
                              d_squared_is_zero, koszul_homology,
                              poincare_identity, re_algebra_dims,
                              standard_hecke)

RINGS = [QRing(), QRing(Fraction(3, 2))]


def test_hecke_axioms_and_eigenspaces():
    for ring in RINGS:
        for n in (2, 3):
            h = standard_hecke(n, ring)  # verify() runs in the constructor
            assert len(h.eigenspace("plus")) == n * (n + 1) // 2
            assert len(h.eigenspace("minus")) == n * (n - 1) // 2


def test_hecke_limit_is_flip():
    h = standard_hecke(2, QRing())
    S1 = h.limit_q1()
    n = 2
    for i in range(n):
        for j in range(n):
            col = i * n + j
            for r in range(n * n):
                assert S1[r][col] == (1 if r == j * n + i else 0)


def test_non_hecke_rejected():
    ring = QRing()
    # the identity is not a Hecke symmetry for generic q
    S = [[ring.one if i == j else ring.zero for j in range(4)]
         for i in range(4)]
    with pytest.raises(HeckeError):
        HeckeSymmetry(2, S, ring)


def test_algebra_dimensions():
    for ring in RINGS:
        data = standard_hecke(2, ring).quadratic_data()
        # A+ = q-symmetric algebra, A- = q-exterior algebra on 2 letters
        assert algebra_dims(data, "minus", 5) == [1, 2, 3, 4, 5, 6]
        assert algebra_dims(data, "plus", 5) == [1, 2, 1, 0, 0, 0]


def test_complementarity():
    for n, top in ((2, 5), (3, 4)):
        data = standard_hecke(n, QRing(Fraction(3, 2))).quadratic_data()
        for deg in range(2, top + 1):
            ok, report = complementarity_check(data, deg)
            assert ok, report


def test_koszul_homology_interior_vanishes():
    data = standard_hecke(2, QRing(Fraction(3, 2))).quadratic_data()
    for which in ("plus", "minus"):
        for total in range(2, 5):
            for m in range(total):
                assert d_squared_is_zero(data, which, m, total - m)
            h, dims, ranks = koszul_homology(data, which, total)
            assert not any(h[1:-1]), (which, total, h)


def test_poincare_identity():
    for ring in RINGS:
        data = standard_hecke(2, ring).quadratic_data()
        ok, dp, dm, coeffs = poincare_identity(data, 5)
        assert ok
        assert coeffs[0] == 1 and not any(coeffs[1:])


def test_re_algebra_flat():
    for ring in RINGS:
        dims, classical = re_algebra_dims(standard_hecke(2, ring), 3)
        assert dims == [1, 4, 10, 20]
        assert dims == classical
