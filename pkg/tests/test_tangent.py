"""Tangent modules, braided vector fields, metric, identification,
connection and the projectivity certificate (specialized q for speed;
the symbolic runs live in the acceptance suite)."""

from fractions import Fraction

import pytest

from qhcalc.qfield import QRing, limit_q1, parse_scalar
from qhcalc.hyperboloid import Hyperboloid, QHParams
from qhcalc.derham import NoSolution
from qhcalc.tangent import (alpha_classical_flip_check, build_alpha,
                            build_tangent, component_basis,
                            connection_linearity_check,
                            metric_classical_check, projectivity_certificate,
                            module_associativity_check, qg_generator_negative_test,
                            solve_braided_action, solve_connection,
                            solve_metric)

Q0 = Fraction(3, 2)

# golden structure constants, as symbolic expressions in q
GOLD_SIGMA = "(q^4 - q^2 + 1)/(q^4 + 1)"
GOLD_B = {
    (1, 1): "-2",
    (2, 2): "(-2*q^6 + 2*q^4 - 2*q^2)/(q^8 - q^6 + q^4 - q^2 + 1)",
    (3, 3): "(-2*q^8 + 2*q^6 - 2*q^4)"
            "/(q^12 - q^10 + q^8 - q^6 + q^4 - q^2 + 1)",
}
GOLD_METRIC_RATIO = "-q^4/(q^4 + 1)^2"
GOLD_CONNECTION = {
    (1, 0): "(2*q^4 + 2)/q^2",
    (1, 1): "0",
    (2, 1): "0",
    (2, 2): "(2*q^4 + 2)/(q^4 - q^2 + 1)",
}


def _gold(expr):
    return parse_scalar(expr).eval(Q0)


def test_tangent_multiplicities(spec_tangents):
    tl, tr = spec_tangents
    for tm in (tl, tr):
        assert [tm.multiplicity(j) for j in range(tm.cutoff + 1)] == \
            [0] + [2] * tm.cutoff
        for j in range(1, tm.cutoff + 1):
            assert len(component_basis(tm, j)) == 2


def test_braided_action(spec_tangents, spec_alg5):
    tl, _ = spec_tangents
    act = solve_braided_action(tl, spec_alg5, cap=3)
    assert act.sigma == _gold(GOLD_SIGMA)
    assert act.nu == act.sigma
    for key, expr in GOLD_B.items():
        assert act.b[key] == _gold(expr), key
    # the per-spin annihilation kernels alone leave a 2-dim freedom;
    # the braided relation is what pins the diagonal scales
    assert act.nullspace_dims[1] == 2
    assert module_associativity_check(act, tl)


def test_qg_generators_are_not_braided_fields(spec_alg5):
    assert qg_generator_negative_test(spec_alg5)


def test_metric(spec_tangents, spec_alg5):
    tl, tr = spec_tangents
    md = solve_metric(tl, tr, spec_alg5)
    assert md.solution_dim == 1
    assert md.a / md.b == _gold(GOLD_METRIC_RATIO)
    pair = md.pairing(spec_alg5)
    # q-symmetry is not plain symmetry: the off-diagonal entries differ
    assert pair[(0, 2)] != pair[(2, 0)]


def test_metric_classical_scale(sym_tangents, sym_alg5):
    tl, tr = sym_tangents
    md = solve_metric(tl, tr, sym_alg5)
    scale = metric_classical_check(md, sym_alg5)
    assert scale  # one global nonzero rational


def test_alpha_identification(spec_tangents):
    tl, tr = spec_tangents
    alpha = build_alpha(tl, tr)
    for (block, j), lam in alpha.scalars.items():
        assert lam, (block, j)  # invertible componentwise
        if block == j - 1:
            assert lam == spec_tangents[0].alg.ring.one
    q = Q0
    assert alpha.scalars[(1, 1)] == -1
    assert alpha.scalars[(2, 2)] == -q ** 2 / (q ** 4 + 1)
    assert alpha.scalars[(3, 3)] == -q ** 4 / (q ** 8 + q ** 4 + 1)


def test_alpha_classical_flip(sym_tangents):
    tl, tr = sym_tangents
    alpha = build_alpha(tl, tr)
    assert alpha_classical_flip_check(tl, tr, alpha)


def test_connection(spec_tangents, spec_alg5):
    tl, _ = spec_tangents
    cd = solve_connection(tl, spec_alg5)
    assert cd.solution_dim == 0  # golden: the solution is unique
    for key, expr in GOLD_CONNECTION.items():
        assert cd.coeffs[key] == _gold(expr), key
    assert connection_linearity_check(cd, tl, spec_alg5)


def test_projectivity(spec_tangents, spec_alg5):
    tl, _ = spec_tangents
    cert = projectivity_certificate(tl, spec_alg5)
    assert cert.ok
    assert cert.gamma == spec_alg5.ring.one


def test_projectivity_fails_on_the_cone():
    alg = Hyperboloid(QHParams(QRing(Q0), 0, 0, 4))
    tl = build_tangent(alg, "left")
    cert = projectivity_certificate(tl, alg)
    assert not cert.ok
    assert "cone" in cert.reason
