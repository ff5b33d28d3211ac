"""The quantum hyperboloid: the covariant algebra on a spin-1 module
cut out by fixing the spin-0 part of v x v to a constant c and the
spin-1 part to hbar times v.

The algebra is handled through a filtered normal form: the two-sided
ideal generated by the relation vectors is spanned degree by degree
inside the word basis of T(V) up to a cap N, and the quotient is flat
exactly when its filtered dimensions are (d+1)^2.  Elements are then
written in the canonical basis w_{i,k} = F^k (v_0^i), the lowering
orbit of the i-th power of the highest-weight generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .qfield import SYMBOLIC, QRing, Scalar, parse_scalar
from .linalg import SpanSolver, SparseEchelon
from .tensorspace import FilteredBasis, act, add_into, concat, graded_words
from .uqsl2 import hom_basis, irrep, tensor


class DegenerateRelations(ValueError):
    """The relation vectors or canonical classes are linearly dependent."""


class TruncationOverflow(RuntimeError):
    """A product left the filtration window of the precomputed algebra."""


class FlatnessViolation(RuntimeError):
    """Filtered dimensions differ from the classical count (d+1)^2."""


@dataclass(frozen=True)
class QHParams:
    """Parameters of the algebra: coefficient ring, c, hbar, degree cap."""

    ring: QRing
    c: Fraction = Fraction(1)
    hbar: Fraction = Fraction(0)
    N: int = 4

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "hbar", Fraction(self.hbar))
        if self.N < 2:
            raise ValueError("degree cap must be at least 2")

    def key(self):
        return "q=%s;c=%s;hbar=%s;N=%d" % (
            self.ring.key(), self.c, self.hbar, self.N)


def relation_vectors(params):
    """The defining relations as word-keyed vectors of degree <= 2.

    One spin-0 relation (quadratic Casimir element minus c) and the
    three-dimensional lowering orbit of the spin-1 relation (spin-1 part
    of v x v minus hbar v).
    """
    ring = params.ring
    V = irrep(1, ring)
    VV = tensor(V, V)
    from .uqsl2 import highest_weight_vectors
    hw0 = highest_weight_vectors(VV, 0)
    hw2 = highest_weight_vectors(VV, 2)
    if len(hw0) != 1 or len(hw2) != 1:
        raise DegenerateRelations("unexpected multiplicities in V x V")
    words2 = graded_words(3, 2)
    c = ring.from_fraction(params.c)
    hbar = ring.from_fraction(params.hbar)
    rels = []
    r0 = {words2[i]: x for i, x in enumerate(hw0[0]) if x}
    add_into(r0, {(): -c})
    rels.append(r0)
    # lowering orbit of the spin-1 relation; the linear part follows the
    # same orbit starting from the first basis letter
    quad = {words2[i]: x for i, x in enumerate(hw2[0]) if x}
    lin = {(0,): ring.one}
    for _ in range(3):
        r = dict(quad)
        add_into(r, lin, -hbar)
        rels.append(r)
        quad = act("F", quad, ring)
        lin = act("F", lin, ring)
    return rels


class Hyperboloid:
    """Filtered normal forms and the canonical basis, up to degree N."""

    def __init__(self, params):
        self.params = params
        self.ring = params.ring
        self.N = params.N
        self.basis = FilteredBasis(3, self.N)
        self.rels = relation_vectors(params)
        self._build_ideal()
        self._build_canonical()
        self._table = {}
        self._table_dirty = False

    # -- ideal span and flatness ----------------------------------------------
    def _build_ideal(self):
        ech = SparseEchelon()
        fb = self.basis
        for total in range(2, self.N + 1):
            for a in range(total - 1):
                b = total - 2 - a
                for u in graded_words(3, a):
                    for w in graded_words(3, b):
                        for r in self.rels:
                            gen = {}
                            for mid, x in r.items():
                                gen[fb.index[u + mid + w]] = x
                            ech.insert(gen)
        self.ideal = ech
        pivs = sorted(ech.pivots())
        self.dims = []
        for d in range(self.N + 1):
            cut = fb.dim_le(d)
            below = sum(1 for p in pivs if p < cut)
            self.dims.append(cut - below)
        self.flat = all(self.dims[d] == (d + 1) ** 2
                        for d in range(self.N + 1))

    def require_flat(self):
        if not self.flat:
            raise FlatnessViolation(
                "filtered dims %s != %s" % (
                    self.dims,
                    [(d + 1) ** 2 for d in range(self.N + 1)]))

    # -- normal forms ----------------------------------------------------------
    def nf(self, wordvec):
        """Normal form of a word-keyed vector against the ideal span."""
        idx = self.basis.to_indices(wordvec)
        return self.basis.to_words(self.ideal.reduce(idx))

    # -- canonical basis --------------------------------------------------------
    def _build_canonical(self):
        self.require_flat()
        ring = self.ring
        self.labels = []  # (i, k) in a fixed order
        self._lift = {}   # (i, k) -> normal-form word vector
        for i in range(self.N + 1):
            vec = {(0,) * i: ring.one}
            for k in range(2 * i + 1):
                self.labels.append((i, k))
                self._lift[(i, k)] = self.nf(vec)
                vec = act("F", vec, ring)
        try:
            self._solver = SpanSolver(
                [self.basis.to_indices(self._lift[lab])
                 for lab in self.labels])
        except ValueError:
            raise DegenerateRelations("canonical classes are dependent")

    def coords(self, wordvec):
        """Canonical coordinates {(i,k): x} of a word-keyed vector."""
        res = self._solver.coords(self.basis.to_indices(self.nf(wordvec)))
        if res is None:
            raise DegenerateRelations(
                "element escapes the canonical basis span")
        return {self.labels[j]: x for j, x in res.items()}

    def element(self, coeffs):
        return CanonicalElement(self, dict(coeffs))

    def generator(self, t):
        """The canonical image of the basis letter e_t, t in {0, 1, 2}."""
        return self.element(self.coords({(t,): self.ring.one}))

    def one(self):
        return self.element({(0, 0): self.ring.one})

    # -- products ----------------------------------------------------------------
    def product_pair(self, la, lb):
        """Canonical coordinates of w_la * w_lb (cached)."""
        key = la + lb
        hit = self._table.get(key)
        if hit is not None:
            return hit
        if la[0] + lb[0] > self.N:
            raise TruncationOverflow(
                "degree %d product exceeds cap %d" % (la[0] + lb[0], self.N))
        out = self.coords(concat(self._lift[la], self._lift[lb]))
        self._table[key] = out
        self._table_dirty = True
        return out

    # -- module structure -----------------------------------------------------------
    def act_coords(self, gen, coeffs):
        """Action of E, F or K on canonical coordinates: block sum of
        irreps, one spin-i block for each power of the generator."""
        ring = self.ring
        q = ring.q
        out = {}
        for (i, k), x in coeffs.items():
            if not x:
                continue
            if gen == "K":
                add_into(out, {(i, k): q ** (2 * i - 2 * k) * x})
            elif gen == "F":
                if k < 2 * i:
                    add_into(out, {(i, k + 1): x})
            elif gen == "E":
                if k > 0:
                    add_into(out, {(i, k - 1):
                                   ring.qint(k) * ring.qint(2 * i - k + 1) * x})
            else:
                raise ValueError("unknown generator %r" % gen)
        return out

    def check_equivariance(self, labels=None):
        """The normal-form lifts intertwine the word action with the
        block-irrep action on coordinates."""
        for lab in (labels or self.labels):
            for gen in ("E", "F", "K"):
                lhs = self.coords(act(gen, self._lift[lab], self.ring))
                rhs = self.act_coords(gen, {lab: self.ring.one})
                if _csub(lhs, rhs):
                    raise AssertionError(
                        "canonical basis fails equivariance at %s, %s"
                        % (lab, gen))
        return True

    # -- product table persistence -----------------------------------------------
    def table_state(self):
        """JSON-ready snapshot of the cached product table."""
        entries = {}
        for key, coeffs in sorted(self._table.items()):
            entries["%d,%d,%d,%d" % key] = {
                "%d,%d" % lab: _scalar_dump(x)
                for lab, x in sorted(coeffs.items()) if x}
        return {"params": self.params.key(), "entries": entries}

    def load_table(self, state):
        if state.get("params") != self.params.key():
            raise ValueError("product table was built for other parameters")
        for key, coeffs in state["entries"].items():
            ik = tuple(int(t) for t in key.split(","))
            self._table[ik] = {
                tuple(int(t) for t in lab.split(",")):
                    _scalar_load(x, self.ring)
                for lab, x in coeffs.items()}
        self._table_dirty = False


def _scalar_dump(x):
    if isinstance(x, Scalar):
        return str(x)
    fr = Fraction(x)
    return "%d/%d" % (fr.numerator, fr.denominator)


def _scalar_load(s, ring):
    if ring.symbolic:
        return parse_scalar(s)
    n, _, d = s.partition("/")
    if d:
        return Fraction(int(n), int(d))
    return parse_scalar(s).eval(ring.q)


def _csub(a, b):
    out = dict(a)
    for lab, x in b.items():
        add_into(out, {lab: -x})
    return out


class CanonicalElement:
    """An element of the quotient in canonical coordinates."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg, coeffs):
        self.alg = alg
        self.coeffs = {lab: x for lab, x in coeffs.items() if x}

    def degree(self):
        return max((i for i, _ in self.coeffs), default=0)

    def __add__(self, other):
        out = dict(self.coeffs)
        for lab, x in other.coeffs.items():
            add_into(out, {lab: x})
        return CanonicalElement(self.alg, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for lab, x in other.coeffs.items():
            add_into(out, {lab: -x})
        return CanonicalElement(self.alg, out)

    def __neg__(self):
        return CanonicalElement(self.alg, {l: -x for l, x in self.coeffs.items()})

    def scale(self, c):
        return CanonicalElement(self.alg, {l: x * c for l, x in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, CanonicalElement):
            return self.scale(other)
        out = {}
        for la, xa in self.coeffs.items():
            for lb, xb in other.coeffs.items():
                add_into(out, self.alg.product_pair(la, lb), xa * xb)
        return CanonicalElement(self.alg, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return self.alg is other.alg and not _csub(self.coeffs, other.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def apply(self, gen):
        return CanonicalElement(self.alg, self.alg.act_coords(gen, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = ["(%s) w[%d,%d]" % (x, i, k)
                 for (i, k), x in sorted(self.coeffs.items())]
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# the q-deformed Lie bracket on the spin-1 generator space

def qlie_bracket_map(ring=SYMBOLIC):
    """The unique (up to scale) equivariant map V x V -> V, normalized so
    its q=1 limit is the classical sl(2) bracket under v_0, v_1, v_2 ->
    E, -H, -2F.  Returns the 3 x 9 matrix.

    At a specialized q the normalizing factor is the symbolic one
    evaluated at that point, so the matrix agrees with the symbolic
    bracket across all modes."""
    V = irrep(1, ring)
    homs = hom_basis(tensor(V, V), V)
    if len(homs) != 1:
        raise DegenerateRelations("bracket intertwiner is not unique")
    mat = homs[0].matrix
    # classical bracket in this basis: [v0, v1] = 2 v0
    target = Fraction(2)
    from .qfield import limit_q1
    if ring.symbolic or ring.q == 1:
        got = limit_q1(mat[0][0 * 3 + 1])
        if got == 0:
            raise DegenerateRelations(
                "bracket intertwiner degenerates at q=1")
        factor = ring.from_fraction(target / got)
    else:
        sym = qlie_bracket_map(SYMBOLIC)
        pivot = sym[0][0 * 3 + 1].eval(ring.q)
        factor = pivot / mat[0][0 * 3 + 1]
    return [[x * factor for x in row] for row in mat]


def classical_bracket_table():
    """Structure constants of sl(2) in the basis E, -H, -2F, as an
    independent oracle computed from 2 x 2 matrix commutators."""
    import itertools
    E = [[0, 1], [0, 0]]
    H = [[1, 0], [0, -1]]
    F = [[0, 0], [1, 0]]
    basis = [E, [[-x for x in r] for r in H], [[-2 * x for x in r] for r in F]]

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)]
                for i in range(2)]

    def comm(a, b):
        ab, ba = mul(a, b), mul(b, a)
        return [[ab[i][j] - ba[i][j] for j in range(2)] for i in range(2)]

    def coords(m):
        # in the basis above: m = x E + y (-H) + z (-2F)
        return (Fraction(m[0][1]), Fraction(-m[0][0]), Fraction(-m[1][0], 2))

    table = {}
    for a, b in itertools.product(range(3), repeat=2):
        table[(a, b)] = coords(comm(basis[a], basis[b]))
    return table


def qlie_bracket(x, y, ring=SYMBOLIC, _mat=None):
    """Bracket of two coordinate vectors in the spin-1 generator space."""
    mat = _mat if _mat is not None else qlie_bracket_map(ring)
    out = []
    for r in range(3):
        acc = ring.zero
        for i in range(3):
            if not x[i]:
                continue
            for j in range(3):
                if y[j] and mat[r][i * 3 + j]:
                    acc = acc + mat[r][i * 3 + j] * x[i] * y[j]
        out.append(acc)
    return out
