"""Indexing of tensor-word bases and sparse vectors over them.

Words are tuples of letters 0..n-1; the filtered basis of T(V)_{<=N}
orders words by (length, lex), so a SparseEchelon pivot (the largest
index) is always the highest-degree, lex-largest monomial of a vector
and normal forms live on lower-order monomials.
"""

from __future__ import annotations

from itertools import product


def graded_words(n, d):
    return [tuple(w) for w in product(range(n), repeat=d)]


def graded_index(word, n):
    """Index of a word inside its own degree block (lex order)."""
    idx = 0
    for letter in word:
        idx = idx * n + letter
    return idx


class FilteredBasis:
    """Words of length <= N over an n-letter alphabet, (degree, lex) order."""

    def __init__(self, n, N):
        self.n = n
        self.N = N
        self.words = []
        self.offset = []  # offset of each degree block
        for d in range(N + 1):
            self.offset.append(len(self.words))
            self.words.extend(graded_words(n, d))
        self.index = {w: i for i, w in enumerate(self.words)}

    @property
    def dim(self):
        return len(self.words)

    def dim_le(self, d):
        return self.offset[d] + self.n ** d if d <= self.N else self.dim

    def to_indices(self, wordvec):
        return {self.index[w]: x for w, x in wordvec.items()}

    def to_words(self, idxvec):
        return {self.words[i]: x for i, x in idxvec.items()}


def concat(u, v):
    """Tensor product of two word-keyed sparse vectors."""
    out = {}
    for wu, xu in u.items():
        for wv, xv in v.items():
            w = wu + wv
            c = xu * xv
            prev = out.get(w)
            if prev is None:
                out[w] = c
            else:
                prev = prev + c
                if prev:
                    out[w] = prev
                else:
                    del out[w]
    return out


def scale(vec, c):
    return {w: x * c for w, x in vec.items()} if c else {}


def add_into(target, vec, c=None):
    for w, x in vec.items():
        y = x if c is None else x * c
        prev = target.get(w)
        if prev is None:
            if y:
                target[w] = y
        else:
            prev = prev + y
            if prev:
                target[w] = prev
            else:
                del target[w]
    return target


# ---------------------------------------------------------------------------
# the iterated-coproduct action of E, F, K on tensor words of spin-1 letters
#
# letter weights are (2, 0, -2); E e_1 = [2] e_0, E e_2 = [2] e_1;
# F e_0 = e_1, F e_1 = e_2.

_LETTER_WEIGHT = (2, 0, -2)


def act_word(gen, word, ring):
    """Action of one generator on a single word, as a word-keyed vector."""
    q = ring.q
    if gen == "K":
        wt = sum(_LETTER_WEIGHT[t] for t in word)
        return {word: q ** wt}
    out = {}
    q2 = ring.qint(2)
    if gen == "E":
        # position k gets E, positions before it get K
        for k, t in enumerate(word):
            if t == 0:
                continue
            pref = sum(_LETTER_WEIGHT[s] for s in word[:k])
            coeff = q2 * q ** pref
            add_into(out, {word[:k] + (t - 1,) + word[k + 1:]: coeff})
        return out
    if gen == "F":
        # position k gets F, positions after it get K^-1
        for k, t in enumerate(word):
            if t == 2:
                continue
            suf = sum(_LETTER_WEIGHT[s] for s in word[k + 1:])
            coeff = q ** (-suf)
            add_into(out, {word[:k] + (t + 1,) + word[k + 1:]: coeff})
        return out
    raise ValueError("unknown generator %r" % gen)


def act(gen, vec, ring):
    """Action of a generator on a word-keyed vector (degree preserving)."""
    out = {}
    for w, x in vec.items():
        add_into(out, act_word(gen, w, ring), x)
    return out


def word_weight(word):
    return sum(_LETTER_WEIGHT[t] for t in word)
