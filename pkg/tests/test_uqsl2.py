"""Representation theory: irreps, tensor products, decompositions."""

from fractions import Fraction

from qhcalc.linalg import mat_vec
from qhcalc.qfield import QRing
from qhcalc.uqsl2 import (classical_multiplicities, decompose, hom_basis,
                          highest_weight_vectors, irrep, tensor)

RINGS = [QRing(), QRing(Fraction(3, 2)), QRing(Fraction(-5, 7))]


def test_irrep_relations():
    for ring in RINGS:
        for j2 in range(0, 7):
            rep = irrep(Fraction(j2, 2), ring)
            assert rep.check()
            assert rep.dim == j2 + 1


def test_tensor_multiplicities_match_classical():
    for ring in (QRing(), QRing(Fraction(3, 2))):
        for j2a in range(0, 5):
            for j2b in range(0, 5):
                m = tensor(irrep(Fraction(j2a, 2), ring),
                           irrep(Fraction(j2b, 2), ring))
                assert m.check()
                dec = decompose(m)
                want = classical_multiplicities(j2a, j2b)
                got = {s: dec.multiplicity(s) for s in dec.spins()}
                assert got == {s: 1 for s in want}


def test_highest_weight_vectors():
    ring = QRing()
    m = tensor(irrep(1, ring), irrep(1, ring))
    for j2 in (0, 2, 4):
        hws = highest_weight_vectors(m, j2)
        assert len(hws) == 1
        v = hws[0]
        assert all(not x for x in mat_vec(m.E, v))
        # weight: K acts by q^j2
        kv = mat_vec(m.K, v)
        assert kv == [ring.q ** j2 * x for x in v]


def test_hom_basis_dimensions():
    ring = QRing()
    a = tensor(irrep(1, ring), irrep(1, ring))
    for j, want in ((0, 1), (1, 1), (2, 1), (3, 0)):
        homs = hom_basis(a, irrep(j, ring))
        assert len(homs) == want
        for h in homs:
            assert h.check()


def test_hom_maps_are_equivariant_on_vectors():
    ring = QRing(Fraction(2, 3))
    a = tensor(irrep(1, ring), irrep(1, ring))
    b = irrep(2, ring)
    (h,) = hom_basis(a, b)
    v = [ring.one if i == 4 else ring.zero for i in range(a.dim)]
    for gen in ("E", "F", "K"):
        lhs = h(mat_vec(a.gen(gen), v))
        rhs = mat_vec(b.gen(gen), h(v))
        assert lhs == rhs
