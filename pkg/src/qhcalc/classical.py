"""Independent commutative oracle for every q=1 regression.

Works in plain polynomial arithmetic over Q in three weight coordinates
a0, a1, a2 (highest to lowest weight), modulo the invariant quadric
Q0 - c with Q0 = 2 a0 a2 - a1^2.  Q0 is re-derived here from the
classical sl(2) action rather than imported, so this module shares no
computational path with the quantum normal-form machinery.

Monomial normal form: the rewriting a1^2 -> 2 a0 a2 - c, which is
confluent since the ideal is principal.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import SpanSolver

ZERO = Fraction(0)
ONE = Fraction(1)

# classical generator action on the linear span (a0, a1, a2): images of
# E, H, F in the spin-1 module with F a_k = a_{k+1}, E a_k = k(3-k) a_{k-1}
_E_ACTION = {1: (0, Fraction(2)), 2: (1, Fraction(2))}
_F_ACTION = {0: (1, ONE), 1: (2, ONE)}
_WEIGHT = (2, 0, -2)


def _invariant_quadric():
    """Kernel of E on the weight-0 part of the symmetric square: the
    coefficients of Q0 on (a0 a2, a1 a1)."""
    # E(x a0a2 + y a1^2) = 2x a0a1 + 4y a0a1  =>  x = 2, y = -1
    return {(1, 0, 1): Fraction(2), (0, 2, 0): Fraction(-1)}


class ClassicalAlgebra:
    """Q[a0,a1,a2]/(Q0 - c), filtered by total degree <= N."""

    def __init__(self, c=1, N=4):
        self.c = Fraction(c)
        self.N = N
        self.Q0 = _invariant_quadric()
        # monomial basis of the quotient: a1-exponent <= 1
        self.monos = []
        for d in range(N + 1):
            for i in range(d, -1, -1):
                for e in (0, 1):
                    k = d - i - e
                    if k >= 0 and i + e + k == d:
                        self.monos.append((i, e, k))
        self.monos.sort(key=lambda m: (sum(m), m))
        self.mindex = {m: i for i, m in enumerate(self.monos)}
        self._wcache = {}
        self._solver = None

    # -- polynomial arithmetic -------------------------------------------------
    def nf(self, poly):
        """Normal form: eliminate a1-exponents >= 2 via a1^2 = 2a0a2 - c."""
        out = {}
        work = dict(poly)
        while work:
            (i, e, k), x = work.popitem()
            if not x:
                continue
            if e >= 2:
                work[(i + 1, e - 2, k + 1)] = \
                    work.get((i + 1, e - 2, k + 1), ZERO) + 2 * x
                work[(i, e - 2, k)] = work.get((i, e - 2, k), ZERO) - self.c * x
            else:
                out[(i, e, k)] = out.get((i, e, k), ZERO) + x
        return {m: x for m, x in out.items() if x}

    def mul(self, p, q):
        out = {}
        for (i1, e1, k1), x in p.items():
            for (i2, e2, k2), y in q.items():
                m = (i1 + i2, e1 + e2, k1 + k2)
                out[m] = out.get(m, ZERO) + x * y
        return self.nf(out)

    # -- derivations --------------------------------------------------------------
    @staticmethod
    def _derive(images, poly):
        """Extend a linear map on generators to a derivation; images maps
        variable index -> polynomial dict."""
        out = {}
        for (i, e, k), x in poly.items():
            exps = (i, e, k)
            for var in range(3):
                n = exps[var]
                if not n:
                    continue
                img = images.get(var)
                if not img:
                    continue
                lowered = list(exps)
                lowered[var] -= 1
                for m, y in img.items():
                    mm = (lowered[0] + m[0], lowered[1] + m[1],
                          lowered[2] + m[2])
                    out[mm] = out.get(mm, ZERO) + n * x * y
        return out

    def field(self, m, poly):
        """The classical rotation fields: derivations extending the
        actions of E, -H and -2F on the coordinates."""
        if m == 0:
            images = {1: {(1, 0, 0): Fraction(2)},
                      2: {(0, 1, 0): Fraction(2)}}
        elif m == 1:
            images = {0: {(1, 0, 0): Fraction(-2)},
                      2: {(0, 0, 1): Fraction(2)}}
        elif m == 2:
            images = {0: {(0, 1, 0): Fraction(-2)},
                      1: {(0, 0, 1): Fraction(-2)}}
        else:
            raise ValueError("field index must be 0, 1 or 2")
        return self.nf(self._derive(images, poly))

    def lower(self, poly):
        """The derivation extending F (a0 -> a1 -> a2 -> 0)."""
        images = {0: {(0, 1, 0): ONE}, 1: {(0, 0, 1): ONE}}
        return self.nf(self._derive(images, poly))

    def partial(self, t, poly):
        """d/da_t on a normal-form representative."""
        out = {}
        for (i, e, k), x in poly.items():
            exps = [i, e, k]
            n = exps[t]
            if not n:
                continue
            exps[t] -= 1
            m = tuple(exps)
            out[m] = out.get(m, ZERO) + n * x
        return self.nf(out)

    # -- the lowering-orbit basis ---------------------------------------------------
    def w_poly(self, i, k):
        """Normal form of F^k(a0^i), the classical counterpart of the
        canonical basis element w_{i,k}."""
        key = (i, k)
        if key not in self._wcache:
            if k == 0:
                self._wcache[key] = self.nf({(i, 0, 0): ONE})
            else:
                self._wcache[key] = self.lower(self.w_poly(i, k - 1))
        return self._wcache[key]

    def labels(self):
        return [(i, k) for i in range(self.N + 1) for k in range(2 * i + 1)]

    def coords(self, poly):
        """Coordinates of a normal-form polynomial in the w basis."""
        if self._solver is None:
            basis = []
            for lab in self.labels():
                p = self.w_poly(*lab)
                basis.append({self.mindex[m]: x for m, x in p.items()})
            self._solver = SpanSolver(basis)
        res = self._solver.coords(
            {self.mindex[m]: x for m, x in self.nf(poly).items()})
        if res is None:
            raise ValueError("polynomial escapes the truncated basis")
        labs = self.labels()
        return {labs[j]: x for j, x in res.items() if x}

    def from_coords(self, coeffs):
        out = {}
        for lab, x in coeffs.items():
            for m, y in self.w_poly(*lab).items():
                out[m] = out.get(m, ZERO) + x * y
        return {m: x for m, x in out.items() if x}

    # -- oracles used by the acceptance suite ------------------------------------
    def product_coords(self, la, lb):
        """Classical product table entry in w coordinates."""
        return self.coords(self.mul(self.w_poly(*la), self.w_poly(*lb)))

    def field_coords(self, m, lab):
        """The rotation field D_m applied to w_lab, in w coordinates."""
        return self.coords(self.field(m, self.w_poly(*lab)))

    def gram(self, m, n):
        """Pairing of the rotation fields under the quadric's symmetric
        coefficient form: g(D_m, D_n) = sum B_st D_m(a_s) D_n(a_t)."""
        B = {(0, 2): ONE, (2, 0): ONE, (1, 1): Fraction(-1)}
        gen = [{(1, 0, 0): ONE}, {(0, 1, 0): ONE}, {(0, 0, 1): ONE}]
        out = {}
        for (s, t), w in B.items():
            p = self.mul(self.field(m, gen[s]), self.field(n, gen[t]))
            for mm, x in p.items():
                out[mm] = out.get(mm, ZERO) + w * x
        return self.nf(out)

    def check_fields(self):
        """The fields preserve the quadric and realize the bracket table."""
        from .hyperboloid import classical_bracket_table
        gen = [{(1, 0, 0): ONE}, {(0, 1, 0): ONE}, {(0, 0, 1): ONE}]
        for m in range(3):
            img = self.field(m, dict(self.Q0))
            if self.nf(img):
                raise AssertionError("field %d moves the quadric" % m)
        tbl = classical_bracket_table()
        for a in range(3):
            for b in range(3):
                for t in range(3):
                    lhs = _psub(self.field(a, self.field(b, gen[t])),
                                self.field(b, self.field(a, gen[t])))
                    rhs = {}
                    for cidx, coef in enumerate(tbl[(a, b)]):
                        if coef:
                            for mm, x in self.field(cidx, gen[t]).items():
                                rhs[mm] = rhs.get(mm, ZERO) + coef * x
                    if self.nf(_psub(lhs, rhs)):
                        raise AssertionError(
                            "commutator table fails at (%d,%d)" % (a, b))
        return True


def _psub(p, q):
    out = dict(p)
    for m, x in q.items():
        out[m] = out.get(m, ZERO) - x
    return {m: x for m, x in out.items() if x}


# ---------------------------------------------------------------------------
# classical exterior derivative in the weight-coordinate presentation
#
# one-forms carry the letter basis dx_0, dx_1, dx_2; two-forms the wedge
# basis eps_0 = dx0^dx1, eps_1 = dx0^dx2, eps_2 = dx1^dx2 (the lowering
# orbit of the highest-weight wedge).

_WEDGE = {
    (0, 1): (0, 1), (1, 0): (0, -1),
    (0, 2): (1, 1), (2, 0): (1, -1),
    (1, 2): (2, 1), (2, 1): (2, -1),
}


def d0_ambient(calg, coeffs):
    """Exterior derivative of a function in w coordinates; returns an
    ambient one-form {(label, t): Fraction}."""
    poly = calg.from_coords(coeffs)
    out = {}
    for t in range(3):
        for lab, x in calg.coords(calg.partial(t, poly)).items():
            out[(lab, t)] = out.get((lab, t), ZERO) + x
    return {k: x for k, x in out.items() if x}


def d1_ambient(calg, omega):
    """Exterior derivative of an ambient one-form {(label, t): x};
    returns an ambient two-form {(label, e): Fraction}."""
    out = {}
    for (lab, t), x in omega.items():
        poly = {m: x * y for m, y in calg.w_poly(*lab).items()}
        for s in range(3):
            hit = _WEDGE.get((s, t))
            if hit is None:
                continue
            e, sign = hit
            for lab2, y in calg.coords(calg.partial(s, poly)).items():
                key = (lab2, e)
                out[key] = out.get(key, ZERO) + sign * y
    return {k: x for k, x in out.items() if x}
