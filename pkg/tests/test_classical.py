"""The commutative q=1 oracle stands on its own."""

from fractions import Fraction

import pytest

from qhcalc.classical import ClassicalAlgebra, d0_ambient, d1_ambient


def test_fields_preserve_quadric_and_bracket_table():
    assert ClassicalAlgebra(1, 4).check_fields()
    assert ClassicalAlgebra(0, 4).check_fields()


def test_coords_round_trip():
    calg = ClassicalAlgebra(1, 4)
    assert len(calg.labels()) == 25
    for lab in calg.labels():
        assert calg.coords(calg.w_poly(*lab)) == {lab: Fraction(1)}
    poly = calg.mul(calg.w_poly(1, 1), calg.w_poly(2, 3))
    back = calg.from_coords(calg.coords(poly))
    assert back == poly


def test_product_commutative():
    calg = ClassicalAlgebra(1, 4)
    a, b = calg.w_poly(1, 2), calg.w_poly(2, 1)
    assert calg.mul(a, b) == calg.mul(b, a)


def test_normal_form_rewrites_quadric():
    calg = ClassicalAlgebra(Fraction(5, 2), 4)
    # a1^2 = 2 a0 a2 - c
    nf = calg.nf({(0, 2, 0): Fraction(1)})
    assert nf == {(1, 0, 1): Fraction(2), (0, 0, 0): Fraction(-5, 2)}


def test_gram_symmetric():
    calg = ClassicalAlgebra(1, 4)
    for m in range(3):
        for n in range(3):
            assert calg.gram(m, n) == calg.gram(n, m)


def test_classical_complex_is_a_complex():
    calg = ClassicalAlgebra(1, 5)
    for lab in calg.labels():
        if lab[0] > 3:
            continue
        two_form = d1_ambient(calg, d0_ambient(calg, {lab: Fraction(1)}))
        assert not {k: x for k, x in two_form.items() if x}, lab
