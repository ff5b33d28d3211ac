"""Exact linear algebra over any exact field (Scalar or Fraction entries).

Dense matrices are plain lists of row lists; sparse vectors are dicts
mapping column index to a nonzero entry.  Elimination is fraction-free
in spirit: every pivot row is rescaled to a reduced canonical form, and
Scalar arithmetic reduces by polynomial gcd on each operation, which
keeps intermediate expressions from swelling.
"""

from __future__ import annotations


# ---------------------------------------------------------------------------
# dense helpers

def mat_mul(a, b):
    n, m = len(a), len(b[0])
    k = len(b)
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = ai[0] * b[0][j]
            for t in range(1, k):
                if ai[t]:
                    s = s + ai[t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = row[0] * v[0]
        for t in range(1, len(v)):
            if row[t] and v[t]:
                s = s + row[t] * v[t]
        out.append(s)
    return out


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def identity(n, one):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(n, m, zero):
    return [[zero] * m for _ in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def is_zero_matrix(a):
    return all(not x for row in a for x in row)


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (pivot column list, reduced rows).

    The input rows are not modified.  Zero rows are dropped.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots, rows[:r]


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[0])


def kernel_basis(rows, ncols):
    """Basis of the right kernel {v : M v = 0} as dense vectors."""
    pivots, red = rref(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    if not red:
        one = None
        for row in rows:
            for x in row:
                one = x - x + 1 if not isinstance(x, int) else 1
                break
            if one is not None:
                break
        if one is None:
            one = 1
    else:
        one = red[0][pivots[0]]
    zero = one - one
    out = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        out.append(v)
    return out


def solve(rows, rhs, ncols=None):
    """One particular solution of M x = rhs, or None if inconsistent."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots, red = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    zero = rhs[0] - rhs[0]
    x = [zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][ncols]
    return x


def inverse(a):
    n = len(a)
    one = a[0][0] ** 0 if a[0][0] else (a[0][0] + 1)
    # robust unit: scan for a nonzero entry
    found = None
    for row in a:
        for x in row:
            if x:
                found = x
                break
        if found is not None:
            break
    if found is None:
        raise ZeroDivisionError("singular matrix")
    one = found / found
    aug = [list(r) + list(i) for r, i in zip(a, identity(n, one))]
    pivots, red = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# sparse echelon structures

def vec_axpy(target, coeff, src):
    """target -= coeff * src, for sparse dict vectors (in place)."""
    for c, x in src.items():
        y = target.get(c)
        if y is None:
            target[c] = -coeff * x
        else:
            y = y - coeff * x
            if y:
                target[c] = y
            else:
                del target[c]


class SparseEchelon:
    """Row space in echelon form over sparse dict vectors.

    The pivot of a row is its largest column index, so with columns
    ordered by (degree, lex) the normal form of a vector is its
    canonical lower-order residue.  Rows are kept fully reduced against
    each other, giving a deterministic complement.
    """

    def __init__(self):
        self.rows = {}  # pivot column -> dict vector with pivot entry 1

    @property
    def nrank(self):
        return len(self.rows)

    def pivots(self):
        return set(self.rows)

    def reduce(self, vec):
        """Return the normal form of vec against the current row space."""
        v = dict(vec)
        while True:
            hit = None
            for c in v:
                if c in self.rows:
                    if hit is None or c > hit:
                        hit = c
            if hit is None:
                return v
            vec_axpy(v, v[hit], self.rows[hit])

    def insert(self, vec):
        """Reduce and insert; returns True if the rank grew."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = max(v)
        inv = v[piv]
        v = {c: x / inv for c, x in v.items()}
        # keep previous rows fully reduced
        for p, row in self.rows.items():
            if piv in row:
                vec_axpy(row, row[piv], v)
        self.rows[piv] = v
        return True

    def contains(self, vec):
        return not self.reduce(vec)


class SpanSolver:
    """Tracks coordinates: writes queries as combinations of basis vectors.

    Marker columns live at negative indices, below every real column, so
    the echelon pivots stay on the real columns and a query reduces to a
    pure marker residue exactly when it lies in the span.
    """

    def __init__(self, basis, ncols=None):
        """basis: list of sparse dict vectors, assumed independent."""
        self.ncols = ncols
        self.ech = SparseEchelon()
        self.nbasis = len(basis)
        for i, b in enumerate(basis):
            v = dict(b)
            v[-1 - i] = _unit_of(b)
            r = self.ech.reduce(v)
            if not r or max(r) < 0:
                raise ValueError("basis vectors are dependent")
            self.ech.insert(r)

    def coords(self, vec):
        """Coordinates of vec in the basis, or None if not in the span."""
        res = self.ech.reduce(dict(vec))
        coeffs = {}
        for c, x in res.items():
            if c < 0:
                coeffs[-1 - c] = -x
            else:
                return None
        return coeffs


def _unit_of(vec):
    for x in vec.values():
        return x / x
    raise ValueError("zero basis vector")


def sparse_rank(vectors):
    ech = SparseEchelon()
    for v in vectors:
        ech.insert(v)
    return ech.nrank


def span_intersection(a_basis, b_basis, ncols):
    """Basis of span(A) & span(B); inputs and output are sparse vectors."""
    cols = len(a_basis) + len(b_basis)
    rows = {}
    for j, v in enumerate(a_basis):
        for c, x in v.items():
            rows.setdefault(c, {})[j] = x
    for j, v in enumerate(b_basis):
        for c, x in v.items():
            rows.setdefault(c, {})[len(a_basis) + j] = -x
    dense = []
    zero = None
    for v in a_basis + b_basis:
        for x in v.values():
            zero = x - x
            break
        if zero is not None:
            break
    for c in sorted(rows):
        dense.append([rows[c].get(j, zero) for j in range(cols)])
    ker = kernel_basis(dense, cols) if dense else kernel_basis([], cols)
    out = []
    for k in ker:
        v = {}
        for j, coeff in enumerate(k[:len(a_basis)]):
            if coeff:
                vec_axpy(v, -coeff, a_basis[j])
        if v:
            out.append(v)
    return out


def dense_to_sparse(row):
    return {i: x for i, x in enumerate(row) if x}


def sparse_to_dense(vec, ncols, zero):
    out = [zero] * ncols
    for c, x in vec.items():
        out[c] = x
    return out


def solve_linear(matrix, mode):
    """Exact rank/kernel/image of a dense Scalar (or Fraction) matrix.

    mode: "rank" -> int, "kernel" -> list of vectors, "image" -> basis of
    the column space (as dense column vectors).
    """
    if mode == "rank":
        return rank(matrix)
    if mode == "kernel":
        ncols = len(matrix[0]) if matrix else 0
        return kernel_basis(matrix, ncols)
    if mode == "image":
        cols = transpose(matrix)
        _, red = rref(cols)
        return [list(r) for r in red]
    raise ValueError("mode must be kernel|rank|image")
