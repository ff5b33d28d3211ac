"""Finite-dimensional U_q(sl(2)) modules: irreps, tensor products,
decomposition into isotypic components, Hom spaces and projectors.

Everything is done by exact linear solves over the coefficient ring; no
closed-form Clebsch-Gordan tables.  The coproduct is fixed once and for
all to

    D(E) = E x 1 + K x E,   D(F) = F x K^-1 + 1 x F,   D(K) = K x K,

so highest-weight vectors of a tensor product are found as the kernel
of E on a weight subspace.  All structure constants downstream depend
on this choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .qfield import SYMBOLIC, QRing
from .linalg import (identity, inverse, kernel_basis, mat_mul, mat_sub,
                     mat_vec, zeros)


class IncompleteDecomposition(RuntimeError):
    """Isotypic pieces fail to span: q specialization was not generic."""


@dataclass
class Rep:
    """A module given by generator matrices in a fixed weight basis."""

    ring: QRing
    dim: int
    E: list
    F: list
    K: list
    weights: list

    def Kinv(self):
        one = self.ring.one
        zero = self.ring.zero
        n = self.dim
        out = zeros(n, n, zero)
        for i in range(n):
            out[i][i] = one / self.K[i][i]
        return out

    def gen(self, name):
        return {"E": self.E, "F": self.F, "K": self.K}[name]

    def check(self):
        """The three defining relations of U_q(sl(2)), exactly."""
        ring = self.ring
        q = ring.q
        Ki = self.Kinv()
        lhs = mat_sub(mat_mul(mat_mul(self.K, self.E), Ki),
                      [[x * q * q for x in row] for row in self.E])
        if any(x for row in lhs for x in row):
            raise AssertionError("KEK^-1 != q^2 E")
        lhs = mat_sub(mat_mul(mat_mul(self.K, self.F), Ki),
                      [[x / (q * q) for x in row] for row in self.F])
        if any(x for row in lhs for x in row):
            raise AssertionError("KFK^-1 != q^-2 F")
        comm = mat_sub(mat_mul(self.E, self.F), mat_mul(self.F, self.E))
        target = [[(self.K[i][j] - Ki[i][j]) / (q - ring.one / q)
                   for j in range(self.dim)] for i in range(self.dim)]
        if any(x for row in mat_sub(comm, target) for x in row):
            raise AssertionError("EF - FE != (K - K^-1)/(q - q^-1)")
        for i in range(self.dim):
            if self.K[i][i] != q ** self.weights[i]:
                raise AssertionError("K is not diag(q^weight)")
        return True


@dataclass
class EquivariantMap:
    source: Rep
    target: Rep
    matrix: list

    def check(self):
        for g in ("E", "F", "K"):
            lhs = mat_mul(self.matrix, self.source.gen(g))
            rhs = mat_mul(self.target.gen(g), self.matrix)
            if any(x for row in mat_sub(lhs, rhs) for x in row):
                raise AssertionError("map fails to intertwine %s" % g)
        return True

    def __call__(self, vec):
        return mat_vec(self.matrix, vec)


@dataclass
class Decomposition:
    rep: Rep
    # list of (twice_spin, multiplicity, [embedding matrices])
    pieces: list = field(default_factory=list)

    def multiplicity(self, j2):
        for s, m, _ in self.pieces:
            if s == j2:
                return m
        return 0

    def spins(self):
        return [s for s, _, _ in self.pieces]


def _twice(j):
    j2 = int(round(2 * float(j)))
    if abs(2 * float(j) - j2) > 1e-9 or j2 < 0:
        raise ValueError("spin must be a nonnegative half-integer")
    return j2


def irrep(j, ring=SYMBOLIC):
    """Spin-j module: v_0 highest, F v_k = v_{k+1}, E v_k = [k][2j-k+1] v_{k-1}."""
    j2 = _twice(j)
    n = j2 + 1
    zero, one = ring.zero, ring.one
    E = zeros(n, n, zero)
    F = zeros(n, n, zero)
    K = zeros(n, n, zero)
    weights = [j2 - 2 * k for k in range(n)]
    for k in range(n):
        K[k][k] = ring.q ** weights[k]
        if k + 1 < n:
            F[k + 1][k] = one
            E[k][k + 1] = ring.qint(k + 1) * ring.qint(j2 - k)
    return Rep(ring, n, E, F, K, weights)


def tensor(a, b):
    """Tensor product module under the fixed coproduct."""
    ring = a.ring
    zero = ring.zero
    n = a.dim * b.dim
    E = zeros(n, n, zero)
    F = zeros(n, n, zero)
    K = zeros(n, n, zero)
    bKi = b.Kinv()
    for i in range(a.dim):
        for j in range(b.dim):
            r = i * b.dim + j
            for i2 in range(a.dim):
                for j2 in range(b.dim):
                    c = i2 * b.dim + j2
                    # D(E) = E x 1 + K x E
                    v = zero
                    if j == j2 and a.E[i][i2]:
                        v = v + a.E[i][i2]
                    if a.K[i][i2] and b.E[j][j2]:
                        v = v + a.K[i][i2] * b.E[j][j2]
                    if v:
                        E[r][c] = v
                    # D(F) = F x K^-1 + 1 x F
                    v = zero
                    if a.F[i][i2] and bKi[j][j2]:
                        v = v + a.F[i][i2] * bKi[j][j2]
                    if i == i2 and b.F[j][j2]:
                        v = v + b.F[j][j2]
                    if v:
                        F[r][c] = v
                    if a.K[i][i2] and b.K[j][j2]:
                        K[r][c] = a.K[i][i2] * b.K[j][j2]
    weights = [wa + wb for wa in a.weights for wb in b.weights]
    return Rep(ring, n, E, F, K, weights)


def direct_sum(*reps):
    ring = reps[0].ring
    zero = ring.zero
    n = sum(r.dim for r in reps)
    E = zeros(n, n, zero)
    F = zeros(n, n, zero)
    K = zeros(n, n, zero)
    weights = []
    off = 0
    for r in reps:
        for i in range(r.dim):
            for j in range(r.dim):
                if r.E[i][j]:
                    E[off + i][off + j] = r.E[i][j]
                if r.F[i][j]:
                    F[off + i][off + j] = r.F[i][j]
                if r.K[i][j]:
                    K[off + i][off + j] = r.K[i][j]
        weights.extend(r.weights)
        off += r.dim
    return Rep(ring, n, E, F, K, weights)


def highest_weight_vectors(m, j2):
    """Basis of {v of weight 2j : E v = 0}, normalized to a unit leading
    coordinate (lexicographically first nonzero index)."""
    idx = [i for i in range(m.dim) if m.weights[i] == j2]
    if not idx:
        return []
    # columns restricted to the weight subspace
    rows = [[m.E[r][c] for c in idx] for r in range(m.dim)]
    ker = kernel_basis(rows, len(idx))
    out = []
    for k in ker:
        v = [m.ring.zero] * m.dim
        for pos, c in zip(idx, k):
            v[pos] = c
        lead = next(i for i in range(m.dim) if v[i])
        inv = v[lead]
        out.append([x / inv for x in v])
    return out


def decompose(m):
    """Isotypic decomposition via highest-weight solves."""
    pieces = []
    total = 0
    maxw = max(m.weights) if m.dim else 0
    for j2 in range(maxw, -1, -1):
        hws = highest_weight_vectors(m, j2)
        if not hws:
            continue
        embeds = []
        for hw in hws:
            cols = [hw]
            v = hw
            for _ in range(j2):
                v = mat_vec(m.F, v)
                cols.append(v)
            # embedding matrix: irrep(j2/2) basis vector k -> F^k hw
            mat = [[cols[k][r] for k in range(j2 + 1)] for r in range(m.dim)]
            embeds.append(EquivariantMap(irrep(Fractionish(j2), m.ring), m, mat))
        pieces.append((j2, len(hws), embeds))
        total += len(hws) * (j2 + 1)
    if total != m.dim:
        raise IncompleteDecomposition(
            "spanned %d of %d dimensions" % (total, m.dim))
    return Decomposition(m, pieces)


def Fractionish(j2):
    from fractions import Fraction
    return Fraction(j2, 2)


def hom_basis(a, b):
    """Basis of the intertwiner space Hom(a, b) via one kernel solve."""
    ring = a.ring
    zero = ring.zero
    nvar = a.dim * b.dim  # T[r][c], index r * a.dim + c
    rows = []
    for g in ("E", "F", "K"):
        ga, gb = a.gen(g), b.gen(g)
        for r in range(b.dim):
            for c in range(a.dim):
                row = [zero] * nvar
                for t in range(a.dim):
                    if ga[t][c]:
                        row[r * a.dim + t] = row[r * a.dim + t] + ga[t][c]
                for t in range(b.dim):
                    if gb[r][t]:
                        row[t * a.dim + c] = row[t * a.dim + c] - gb[r][t]
                if any(row):
                    rows.append(row)
    ker = kernel_basis(rows, nvar) if rows else kernel_basis([], nvar)
    out = []
    for k in ker:
        mat = [[k[r * a.dim + c] for c in range(a.dim)] for r in range(b.dim)]
        out.append(EquivariantMap(a, b, mat))
    return out


def isotypic_projector(m, j, decomposition=None):
    """Idempotent equivariant endomorphism with image the spin-j part."""
    j2 = _twice(j)
    dec = decomposition if decomposition is not None else decompose(m)
    cols = []
    flags = []
    for s, _, embeds in dec.pieces:
        for emb in embeds:
            for k in range(s + 1):
                cols.append([emb.matrix[r][k] for r in range(m.dim)])
                flags.append(s == j2)
    B = [[cols[c][r] for c in range(len(cols))] for r in range(m.dim)]
    Binv = inverse(B)
    ring = m.ring
    D = zeros(m.dim, m.dim, ring.zero)
    for i, f in enumerate(flags):
        D[i][i] = ring.one if f else ring.zero
    P = mat_mul(mat_mul(B, D), Binv)
    return EquivariantMap(m, m, P)


def classical_multiplicities(j2a, j2b):
    """Clebsch-Gordan multiplicities from classical character arithmetic.

    Independent oracle: multiplies the Laurent character polynomials and
    peels off highest terms.
    """
    char = {}
    for wa in range(-j2a, j2a + 1, 2):
        for wb in range(-j2b, j2b + 1, 2):
            w = wa + wb
            char[w] = char.get(w, 0) + 1
    mults = {}
    while any(char.values()):
        top = max(w for w, c in char.items() if c)
        mults[top] = mults.get(top, 0) + 1
        for w in range(-top, top + 1, 2):
            char[w] -= 1
    return mults  # twice-spin -> multiplicity
