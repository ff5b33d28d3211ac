"""Exact arithmetic in Q(q): rational functions of one variable q.

Scalars are stored as a reduced fraction of integer-coefficient
polynomials (ascending coefficient tuples).  The representation is
canonical: the polynomial gcd of numerator and denominator is 1, the
integer contents of the two sides are coprime, and the denominator has a
positive leading coefficient.  Equal scalars therefore compare equal as
tuples.  Negative powers of q need no special casing since 1/q is just
another rational function.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction


class PoleAtOne(ArithmeticError):
    """Raised when a scalar with a pole at q=1 is evaluated there."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient tuples, ascending, no trailing zeros)

def _pnorm(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    return _pnorm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                   for i in range(n)])


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pnorm(out)


def _pcontent(a):
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g


def _pprim(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    g = _pcontent(a)
    if a[-1] < 0:
        g = -g
    return tuple(x // g for x in a)


def _pdiv_exact(a, b):
    """Exact division of integer polynomials over Q[q] (b must divide a)."""
    if not a:
        return ()
    num = [Fraction(x) for x in a]
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = Fraction(b[-1])
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(b) - 1] / lb
        out[i] = c
        if c:
            for j, y in enumerate(b):
                num[i + j] -= c * y
    if any(num[:len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return _pnorm([int(x) for x in out])


def _prem(a, b):
    """Pseudo-remainder of integer polynomials."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        a = [x * lb for x in a]
        shift = len(a) - 1 - db
        for j, y in enumerate(b):
            a[shift + j] -= la * y
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def _pgcd(a, b):
    """Primitive gcd in Q[q], positive leading coefficient."""
    a, b = _pprim(a), _pprim(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pprim(_prem(a, b))
        a, b = b, r
    return a


def _peval(a, x):
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


# ---------------------------------------------------------------------------

class Scalar:
    """An element of Q(q), immutable and canonically normalized."""

    __slots__ = ("n", "d")

    def __init__(self, num, den=(1,)):
        num = _pnorm(num)
        den = _pnorm(den)
        if not den:
            raise ZeroDivisionError("zero denominator polynomial")
        if not num:
            self.n, self.d = (), (1,)
            return
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdiv_exact(num, g)
            den = _pdiv_exact(den, g)
        ci = math.gcd(_pcontent(num), _pcontent(den))
        if den[-1] < 0:
            ci = -ci
        if ci != 1:
            num = tuple(x // ci for x in num)
            den = tuple(x // ci for x in den)
        self.n, self.d = num, den

    # -- construction helpers ------------------------------------------------
    @staticmethod
    def from_fraction(fr):
        fr = Fraction(fr)
        return Scalar((fr.numerator,), (fr.denominator,))

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.from_fraction(x)
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.n:
            return o
        if not o.n:
            return self
        return Scalar(_padd(_pmul(self.n, o.d), _pmul(o.n, self.d)),
                      _pmul(self.d, o.d))

    __radd__ = __add__

    def __neg__(self):
        s = Scalar.__new__(Scalar)
        s.n, s.d = _pneg(self.n), self.d
        return s

    def __sub__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.n or not o.n:
            return _ZERO
        return Scalar(_pmul(self.n, o.n), _pmul(self.d, o.d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o.n:
            raise ZeroDivisionError("division by zero scalar")
        if not self.n:
            return _ZERO
        return Scalar(_pmul(self.n, o.d), _pmul(self.d, o.n))

    def __rtruediv__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return _ONE
        base = self if k > 0 else _ONE / self
        out = _ONE
        for _ in range(abs(k)):
            out = out * base
        return out

    # -- predicates / conversions ---------------------------------------------
    def __bool__(self):
        return bool(self.n)

    def __eq__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.n == o.n and self.d == o.d

    def __hash__(self):
        return hash((self.n, self.d))

    def eval(self, q0):
        """Evaluate at a rational point q0 (must not hit the denominator)."""
        q0 = Fraction(q0)
        den = _peval(self.d, q0)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at q=%s" % q0)
        return _peval(self.n, q0) / den

    def limit_q1(self):
        den = _peval(self.d, Fraction(1))
        if den == 0:
            raise PoleAtOne("pole at q=1: %s" % self)
        return _peval(self.n, Fraction(1)) / den

    def is_regular_at_one(self):
        return _peval(self.d, Fraction(1)) != 0

    # -- formatting ------------------------------------------------------------
    @staticmethod
    def _poly_str(c):
        if not c:
            return "0"
        parts = []
        for e in range(len(c) - 1, -1, -1):
            x = c[e]
            if not x:
                continue
            if e == 0:
                term = str(abs(x))
            else:
                mag = "" if abs(x) == 1 else "%d*" % abs(x)
                term = "%sq" % mag if e == 1 else "%sq^%d" % (mag, e)
            parts.append(("-" if x < 0 else "+", term))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += sign + term
        return out

    def __str__(self):
        if self.d == (1,):
            return self._poly_str(self.n)
        return "(%s)/(%s)" % (self._poly_str(self.n), self._poly_str(self.d))

    def __repr__(self):
        return "Scalar(%s)" % self


_ZERO = Scalar(())
_ONE = Scalar((1,))
Q = Scalar((0, 1))


# ---------------------------------------------------------------------------
# parsing of the canonical string form

_TOKEN = re.compile(r"\s*(\d+|q|\^|\+|-|\*|/|\(|\))")


def _tokenize(s):
    out, pos = [], 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError("bad scalar syntax at %r" % s[pos:])
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self):
        t = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            u = self.term()
            t = t + u if op == "+" else t - u
        return t

    def term(self):
        t = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            u = self.factor()
            t = t * u if op == "*" else t / u
        return t

    def factor(self):
        tok = self.peek()
        if tok == "-":
            self.take()
            return -self.factor()
        if tok == "+":
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            e = int(self.take())
            base = base ** (-e if neg else e)
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            t = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parentheses")
            return t
        if tok == "q":
            return Q
        if tok is not None and tok.isdigit():
            return Scalar((int(tok),))
        raise ValueError("unexpected token %r" % tok)


def parse_scalar(s):
    """Parse the canonical string form, e.g. "(q^2+1)/(q)"."""
    p = _Parser(_tokenize(s))
    t = p.expr()
    if p.peek() is not None:
        raise ValueError("trailing input in %r" % s)
    return t


# ---------------------------------------------------------------------------
# scalar rings: symbolic Q(q) or Q at a fixed rational q

class QRing:
    """Ambient coefficient ring: symbolic Q(q) or Q specialized at q=q0.

    Downstream code is generic over the element type (Scalar or
    Fraction); this object carries the distinguished element q and a few
    factory helpers.
    """

    def __init__(self, q0=None, _allow_one=False):
        if q0 is None:
            self.q = Q
            self.symbolic = True
        else:
            q0 = Fraction(q0)
            if q0 in (0, 1, -1) and not (q0 == 1 and _allow_one):
                raise ValueError("q must avoid 0 and +-1")
            self.q = q0
            self.symbolic = False
        self.zero = self.q * 0
        self.one = self.q ** 0

    @classmethod
    def classical(cls):
        """The q=1 ring, for classical-limit cross checks only."""
        return cls(1, _allow_one=True)

    def from_fraction(self, fr):
        fr = Fraction(fr)
        if self.symbolic:
            return Scalar.from_fraction(fr)
        return fr

    def qint(self, n):
        """Symmetric q-integer [n] = (q^n - q^-n)/(q - q^-1)."""
        if n < 0:
            return -self.qint(-n)
        out = self.zero
        for k in range(n):
            out = out + self.q ** (n - 1 - 2 * k)
        return out

    def key(self):
        """Stable identifier used for cache addressing."""
        return "symbolic" if self.symbolic else "%d/%d" % (
            self.q.numerator, self.q.denominator)

    def __repr__(self):
        return "QRing(%s)" % self.key()


SYMBOLIC = QRing()


def qint(n, ring=SYMBOLIC):
    return ring.qint(n)


def limit_q1(s):
    """Value at q=1; accepts Scalars and plain rationals."""
    if isinstance(s, Scalar):
        return s.limit_q1()
    return Fraction(s)


class SpecializationPoint:
    """A rational evaluation point for q (or the q->1 limit marker)."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        if value is not None:
            value = Fraction(value)
            if value == 0 or abs(value) == 1:
                raise ValueError("specialization point must avoid 0, +-1")
        self.value = value

    @property
    def is_limit(self):
        return self.value is None

    def apply(self, s):
        if self.value is None:
            return limit_q1(s)
        if isinstance(s, Scalar):
            return s.eval(self.value)
        return Fraction(s)
