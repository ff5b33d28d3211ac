"""Quadratic algebras, Koszul complexes, Hecke symmetries and the
reflection-equation algebra, all as graded exact linear algebra.

Subspaces of tensor powers are bases of sparse vectors over graded word
bases; algebras T(V)/{I} are handled through degreewise normal forms
against the span of the relation ideal.
"""

from __future__ import annotations

from itertools import product
from math import comb

from .qfield import SYMBOLIC
from .linalg import (SparseEchelon, SpanSolver, kernel_basis, rank,
                     sparse_rank, vec_axpy)
from .tensorspace import graded_index, graded_words


class HeckeError(ValueError):
    """The supplied matrix fails the Yang-Baxter or Hecke identity."""


class HeckeSymmetry:
    """An n^2 x n^2 Yang-Baxter operator S with (S - q)(S + 1/q) = 0."""

    def __init__(self, n, S, ring=SYMBOLIC, check=True):
        self.n = n
        self.S = S
        self.ring = ring
        if check:
            self.verify()

    # -- certified invariants -------------------------------------------------
    def verify(self):
        n, S, ring = self.n, self.S, self.ring
        q = ring.q
        # Hecke: (S - q)(S + q^-1) = 0
        m = len(S)
        for i in range(m):
            for j in range(m):
                acc = ring.zero
                for k in range(m):
                    if S[i][k] and S[k][j]:
                        acc = acc + S[i][k] * S[k][j]
                acc = acc + (1 / q - q) * S[i][j]
                if i == j:
                    acc = acc - ring.one
                if acc:
                    raise HeckeError("Hecke condition fails at (%d,%d)" % (i, j))
        # Yang-Baxter braid relation on V^3
        s12 = self._embed(S, n, left=True)
        s23 = self._embed(S, n, left=False)
        lhs = _mm(_mm(s12, s23), s12)
        rhs = _mm(_mm(s23, s12), s23)
        for i in range(n ** 3):
            for j in range(n ** 3):
                if lhs[i].get(j, ring.zero) != rhs[i].get(j, ring.zero):
                    raise HeckeError("Yang-Baxter relation fails")
        return True

    @staticmethod
    def _embed(S, n, left):
        """S12 or S23 on V^3 as sparse row dicts."""
        rows = []
        for i in range(n ** 3):
            a, rem = divmod(i, n * n)
            b, c = divmod(rem, n)
            row = {}
            if left:
                src = a * n + b
                for j in range(n * n):
                    x = S[src][j]
                    if x:
                        row[j * n + c] = x
            else:
                src = b * n + c
                for j in range(n * n):
                    x = S[src][j]
                    if x:
                        row[a * n * n + j] = x
            rows.append(row)
        return rows

    # -- eigenspaces ----------------------------------------------------------
    def eigenspace(self, which):
        """Basis of ker(S - q) ("plus") or ker(S + 1/q) ("minus")."""
        ring = self.ring
        lam = ring.q if which == "plus" else -1 / ring.q
        m = self.n * self.n
        rows = [[self.S[i][j] - (lam if i == j else ring.zero)
                 for j in range(m)] for i in range(m)]
        ker = kernel_basis(rows, m)
        return [{j: x for j, x in enumerate(v) if x} for v in ker]

    def quadratic_data(self):
        plus = self.eigenspace("plus")
        minus = self.eigenspace("minus")
        return QuadraticData(self.n, plus, minus, ring=self.ring)

    def limit_q1(self):
        from .qfield import limit_q1 as lim
        return [[lim(x) for x in row] for row in self.S]


def _mm(a, b):
    """Product of sparse row-dict matrices."""
    out = []
    for row in a:
        acc = {}
        for k, x in row.items():
            for j, y in b[k].items():
                v = x * y
                prev = acc.get(j)
                if prev is None:
                    acc[j] = v
                else:
                    prev = prev + v
                    if prev:
                        acc[j] = prev
                    else:
                        del acc[j]
        out.append(acc)
    return out


def standard_hecke(n, ring=SYMBOLIC):
    """The Drinfeld-Jimbo Hecke symmetry on an n-dimensional space.

    S(e_i x e_j) = q e_i x e_i for i = j, e_j x e_i for i < j, and
    e_j x e_i + (q - 1/q) e_i x e_j for i > j; its q=1 limit is the flip.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    q = ring.q
    zero = ring.zero
    m = n * n
    S = [[zero] * m for _ in range(m)]
    for i in range(n):
        for j in range(n):
            col = i * n + j
            if i == j:
                S[col][col] = q
            elif i < j:
                S[j * n + i][col] = ring.one
            else:
                S[j * n + i][col] = ring.one
                S[col][col] = q - 1 / q
    return HeckeSymmetry(n, S, ring)


class QuadraticData:
    """A subspace I of V x V, optionally split as I+ (+) I- = V x V.

    When a split is present the convention is I+ = the q-eigenspace
    ("symmetric" tensors) and I- = the (-1/q)-eigenspace; the algebras
    are A+ = T(V)/{I-} and A- = T(V)/{I+}.
    """

    def __init__(self, v_dim, I_plus=None, I_minus=None, I=None, ring=SYMBOLIC):
        self.v_dim = v_dim
        self.ring = ring
        if I is not None:
            self.I = I
            self.plus = None
            self.minus = None
        else:
            self.plus = I_plus
            self.minus = I_minus
            self.I = None
            if sparse_rank(list(I_plus) + list(I_minus)) != v_dim ** 2:
                raise ValueError("split subspaces are not complementary")
        self._sum_cache = {}
        self._int_cache = {}
        self._nf_cache = {}

    def subspace(self, which):
        if which == "plus":
            if self.plus is None:
                raise ValueError("no split present")
            return self.plus
        if which == "minus":
            if self.minus is None:
                raise ValueError("no split present")
            return self.minus
        if which == "flat" and self.I is not None:
            return self.I
        raise ValueError("which must be plus|minus")


def _dual_functionals(basis, ncols, ring):
    """Covectors spanning the annihilator of span(basis) in (V x V)*."""
    rows = [[vec.get(j, ring.zero) for j in range(ncols)] for vec in basis]
    return kernel_basis(rows, ncols)


def intersection_space(data, which, n):
    """Basis of I^(n) = the iterated two-sided intersection, degree n."""
    key = (which, n)
    if key in data._int_cache:
        return data._int_cache[key]
    ring = data.ring
    nv = data.v_dim
    if n == 0:
        out = [{(): ring.one}]
    elif n == 1:
        out = [{(t,): ring.one} for t in range(nv)]
    elif n == 2:
        out = [dict(_pairs_to_words(v, nv)) for v in data.subspace(which)]
    else:
        prev = intersection_space(data, which, n - 1)
        I2 = data.subspace(which)
        psi = _dual_functionals(I2, nv * nv, ring)
        # candidates: prev x V, constrained by the annihilator of I at the
        # last two positions
        cand = []
        for b in prev:
            for t in range(nv):
                cand.append({w + (t,): x for w, x in b.items()})
        rows = {}
        for j, vec in enumerate(cand):
            for w, x in vec.items():
                u, tail = w[:-2], w[-2:]
                pair = tail[0] * nv + tail[1]
                for p, f in enumerate(psi):
                    if f[pair]:
                        rows.setdefault((u, p), {})[j] = None
        dense = []
        for (u, p), cols in rows.items():
            f = psi[p]
            row = [ring.zero] * len(cand)
            for j in cols:
                acc = ring.zero
                for w, x in cand[j].items():
                    if w[:-2] == u:
                        acc = acc + x * f[w[-2] * nv + w[-1]]
                row[j] = acc
            if any(row):
                dense.append(row)
        ker = kernel_basis(dense, len(cand)) if dense else \
            kernel_basis([], len(cand))
        out = []
        for k in ker:
            v = {}
            for j, coeff in enumerate(k):
                if coeff:
                    for w, x in cand[j].items():
                        prev_val = v.get(w, ring.zero)
                        nv2 = prev_val + coeff * x
                        if nv2:
                            v[w] = nv2
                        elif w in v:
                            del v[w]
            if v:
                out.append(v)
    data._int_cache[key] = out
    return out


def _pairs_to_words(vec, nv):
    for j, x in vec.items():
        yield (j // nv, j % nv), x


def _sum_echelon(data, which, n):
    """Echelon of I^n = sum over positions of V^a x I x V^b in degree n."""
    key = (which, n)
    if key in data._sum_cache:
        return data._sum_cache[key]
    ring = data.ring
    nv = data.v_dim
    I2 = [dict(_pairs_to_words(v, nv)) for v in data.subspace(which)]
    ech = SparseEchelon()
    for a in range(n - 1):
        b = n - 2 - a
        for u in graded_words(nv, a):
            for w in graded_words(nv, b):
                for vec in I2:
                    gen = {}
                    for mid, x in vec.items():
                        gen[graded_index(u + mid + w, nv)] = x
                    ech.insert(gen)
    data._sum_cache[key] = ech
    return ech


def sum_space(data, which, n):
    """Basis of I^n (the degree-n span of the two-sided ideal)."""
    ech = _sum_echelon(data, which, n)
    return [dict(row) for row in ech.rows.values()]


def algebra_dims(data, which, N):
    """Graded dimensions of T(V)/{I_which} up to degree N."""
    dims = [1, data.v_dim]
    for d in range(2, N + 1):
        dims.append(data.v_dim ** d - _sum_echelon(data, which, d).nrank)
    return dims[:N + 1]


def _normal_form_basis(data, which, m):
    """(basis words of A^(m), normal-form map) for A = T(V)/{I_which}."""
    key = (which, m)
    if key in data._nf_cache:
        return data._nf_cache[key]
    nv = data.v_dim
    words = graded_words(nv, m)
    if m < 2:
        ech = SparseEchelon()
    else:
        ech = _sum_echelon(data, which, m)
    pivots = ech.pivots()
    basis = [w for w in words if graded_index(w, nv) not in pivots]
    index = {graded_index(w, nv): i for i, w in enumerate(basis)}
    data._nf_cache[key] = (basis, index, ech)
    return data._nf_cache[key]


def complementarity_check(data, n):
    """I^(n)_+ (+) I^n_- = V^n and I^(n)_- (+) I^n_+ = V^n, by rank."""
    nv = data.v_dim
    full = nv ** n
    report = {}
    ok = True
    for caps, sums in (("plus", "minus"), ("minus", "plus")):
        icap = intersection_space(data, caps, n)
        isum = sum_space(data, sums, n)
        vecs = [{graded_index(w, nv): x for w, x in v.items()} for v in icap]
        vecs += [dict(v) for v in isum]
        r = sparse_rank(vecs)
        good = (len(icap) + len(isum) == full) and r == full
        report["I^(%d)_%s + I^%d_%s" % (n, caps, n, sums)] = {
            "dim_intersection": len(icap), "dim_sum": len(isum),
            "rank": r, "complementary": good}
        ok = ok and good
    return ok, report


def koszul_differential(data, which, m, n):
    """Matrix of d: A^(m) x I^(n) -> A^(m+1) x I^(n-1), d(a x x x y) = ax x y.

    A = T(V)/{I_which} and I^(n) is built from the same subspace.  Rows
    are indexed by (A^(m+1) basis word, I^(n-1) basis vector), columns by
    (A^(m) basis word, I^(n) basis vector).
    """
    ring = data.ring
    nv = data.v_dim
    a_basis, _, _ = _normal_form_basis(data, which, m)
    a1_basis, a1_index, a1_ech = _normal_form_basis(data, which, m + 1)
    i_basis = intersection_space(data, which, n)
    i1_basis = intersection_space(data, which, n - 1)
    if not a_basis or not i_basis:
        return [], (len(a1_basis) * len(i1_basis), 0)
    solver = SpanSolver(
        [{graded_index(w, nv): x for w, x in v.items()} for v in i1_basis],
        nv ** (n - 1)) if i1_basis else None
    ncols = len(a_basis) * len(i_basis)
    nrows = len(a1_basis) * len(i1_basis)
    cols = []
    for aw in a_basis:
        # ax for each leading letter: normal form of the degree m+1 word
        prods = []
        for t in range(nv):
            vec = {graded_index(aw + (t,), nv): ring.one}
            res = a1_ech.reduce(vec)
            prods.append({a1_index[c]: x for c, x in res.items()})
        for ivec in i_basis:
            # split ivec on its first letter
            tails = {}
            for w, x in ivec.items():
                tails.setdefault(w[0], {})[graded_index(w[1:], nv)] = x
            col = {}
            for t, tail in tails.items():
                coords = solver.coords(tail)
                if coords is None:
                    raise AssertionError(
                        "I^(n) not contained in V x I^(n-1)")
                for ci, cx in coords.items():
                    for ai, ax in prods[t].items():
                        r = ai * len(i1_basis) + ci
                        prev = col.get(r, ring.zero)
                        val = prev + cx * ax
                        if val:
                            col[r] = val
                        elif r in col:
                            del col[r]
            cols.append(col)
    rows = [[ring.zero] * ncols for _ in range(nrows)]
    for j, col in enumerate(cols):
        for r, x in col.items():
            rows[r][j] = x
    return rows, (nrows, ncols)


def koszul_homology(data, which, total):
    """Homology dimensions of the total-degree subcomplex A^m x I^(n),
    m + n = total, listed from m = 0 to m = total."""
    dims = []
    mats = []
    for m in range(total + 1):
        n = total - m
        a_basis, _, _ = _normal_form_basis(data, which, m)
        i_basis = intersection_space(data, which, n)
        dims.append(len(a_basis) * len(i_basis))
    for m in range(total):
        n = total - m
        mat, shape = koszul_differential(data, which, m, n)
        mats.append((mat, shape))
    ranks = []
    for mat, shape in mats:
        ranks.append(rank(mat) if mat else 0)
    out = []
    for m in range(total + 1):
        r_out = ranks[m] if m < total else 0
        r_in = ranks[m - 1] if m > 0 else 0
        out.append(dims[m] - r_out - r_in)
    return out, dims, ranks


def d_squared_is_zero(data, which, m, n):
    """Check the composite of consecutive Koszul differentials vanishes."""
    if n < 2:
        return True
    d1, shape1 = koszul_differential(data, which, m, n)
    d2, shape2 = koszul_differential(data, which, m + 1, n - 1)
    if not d1 or not d2:
        return True
    for i in range(len(d2)):
        for j in range(len(d1[0])):
            acc = data.ring.zero
            for k in range(len(d1)):
                if d2[i][k] and d1[k][j]:
                    acc = acc + d2[i][k] * d1[k][j]
            if acc:
                return False
    return True


def poincare_identity(data, N):
    """P+(t) P-(-t) = 1 mod t^(N+1), from computed graded dimensions."""
    dp = algebra_dims(data, "minus", N)   # A+ = T/{I-}
    dm = algebra_dims(data, "plus", N)    # A- = T/{I+}
    ok = True
    coeffs = []
    for k in range(N + 1):
        acc = 0
        for i in range(k + 1):
            acc += dp[i] * dm[k - i] * (-1) ** (k - i)
        coeffs.append(acc)
        if k == 0:
            ok = ok and acc == 1
        else:
            ok = ok and acc == 0
    return ok, dp, dm, coeffs


# ---------------------------------------------------------------------------
# reflection-equation algebra of a Hecke symmetry

def re_relations(hecke):
    """Degree-2 relation space of S L1 S L1 - L1 S L1 S = 0 inside W x W,
    where W = span(l_i^j) has dimension n^2."""
    n, S, ring = hecke.n, hecke.S, hecke.ring
    m = n * n
    # entries of matrices over the degree-<=2 free algebra: dict word->coeff,
    # word a tuple of generator indices g = i*n+j for l_i^j
    def mat_mul_poly(A, B):
        out = [[{} for _ in range(m)] for _ in range(m)]
        for i in range(m):
            for k in range(m):
                if not A[i][k]:
                    continue
                for j in range(m):
                    if not B[k][j]:
                        continue
                    cell = out[i][j]
                    for wa, xa in A[i][k].items():
                        for wb, xb in B[k][j].items():
                            w = wa + wb
                            val = cell.get(w, ring.zero) + xa * xb
                            if val:
                                cell[w] = val
                            elif w in cell:
                                del cell[w]
        return out

    Smat = [[{(): S[i][j]} if S[i][j] else {} for j in range(m)]
            for i in range(m)]
    L1 = [[{} for _ in range(m)] for _ in range(m)]
    for i in range(n):
        for jj in range(n):
            g = i * n + jj
            for a in range(n):
                L1[i * n + a][jj * n + a] = {(g,): ring.one}
    SL = mat_mul_poly(Smat, L1)
    SLSL = mat_mul_poly(mat_mul_poly(SL, Smat), L1)
    LS = mat_mul_poly(L1, Smat)
    LSLS = mat_mul_poly(mat_mul_poly(LS, L1), Smat)
    rels = []
    for i in range(m):
        for j in range(m):
            cell = dict(SLSL[i][j])
            for w, x in LSLS[i][j].items():
                val = cell.get(w, ring.zero) - x
                if val:
                    cell[w] = val
                elif w in cell:
                    del cell[w]
            vec = {}
            for w, x in cell.items():
                if len(w) != 2:
                    raise AssertionError("RE relation is not quadratic")
                vec[w[0] * m + w[1]] = x
            if vec:
                rels.append(vec)
    return rels


def re_algebra_dims(hecke, N):
    """Graded dimensions of the RE algebra of a Hecke symmetry up to
    degree N; flat iff dims equal those of Sym on n^2 generators."""
    if N > 4:
        raise ValueError("degree cap for RE dimensions is 4")
    m = hecke.n ** 2
    rels = re_relations(hecke)
    data = QuadraticData(m, I=rels, ring=hecke.ring)
    dims = [1, m]
    for k in range(2, N + 1):
        ech = SparseEchelon()
        nv = m
        for a in range(k - 1):
            b = k - 2 - a
            for u in graded_words(nv, a):
                for w in graded_words(nv, b):
                    for vec in rels:
                        gen = {}
                        for pair, x in vec.items():
                            word = u + (pair // nv, pair % nv) + w
                            gen[graded_index(word, nv)] = x
                        ech.insert(gen)
        dims.append(nv ** k - ech.nrank)
    classical = [comb(m + k - 1, k) for k in range(N + 1)]
    return dims, classical
