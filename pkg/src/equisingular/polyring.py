"""Exact bivariate polynomials over the rationals.

Polynomials live in Q[x, y] and are ordered by a *local* degree ordering:
monomials of lower total degree are larger, ties go to the larger power
of ``x``.  With this ordering the leading term of a polynomial is the
lowest-order part, which is what the local ring at the origin needs.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import PolySyntaxError

Monomial = tuple[int, int]
Coefficient = Union[int, Fraction]

INFINITE = math.inf


class LocalOrder:
    """Local degree ordering on monomials ``x^i y^j``.

    The ordering is encoded by :meth:`key`: ``m1 > m2`` iff
    ``key(m1) > key(m2)``.  Since the key is additive in the exponents the
    ordering is multiplicative, and ``1`` is the largest monomial.
    """

    name = "local-degree-lex"

    @staticmethod
    def key(m: Monomial) -> tuple[int, int]:
        return (-(m[0] + m[1]), m[0])

    @classmethod
    def greater(cls, m1: Monomial, m2: Monomial) -> bool:
        return cls.key(m1) > cls.key(m2)

    def __repr__(self):
        return "LocalOrder()"

    def __eq__(self, other):
        return isinstance(other, LocalOrder)

    def __hash__(self):
        return hash(LocalOrder)


LOCAL_ORDER = LocalOrder()


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return (a[0] + b[0], a[1] + b[1])


def monomial_quotient(b: Monomial, a: Monomial) -> Monomial:
    return (b[0] - a[0], b[1] - a[1])


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return (max(a[0], b[0]), max(a[1], b[1]))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


class Poly:
    """An immutable element of Q[x, y].

    Terms are stored as a mapping from exponent pairs to non-zero
    :class:`fractions.Fraction` coefficients.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coefficient] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            i, j = mono
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {mono}")
            c = _as_fraction(coeff)
            key = (int(i), int(j))
            total = clean.get(key, 0) + c
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _from_clean(cls, terms: dict) -> "Poly":
        p = object.__new__(cls)
        object.__setattr__(p, "_terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    # construction helpers

    @classmethod
    def constant(cls, c: Coefficient) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, m: Monomial, c: Coefficient = 1) -> "Poly":
        return cls({m: c})

    @classmethod
    def x(cls) -> "Poly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "Poly":
        return cls({(0, 1): 1})

    # inspection

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def monomials(self) -> list[Monomial]:
        """Monomials in descending local order."""
        return sorted(self._terms, key=LocalOrder.key, reverse=True)

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        return [(m, self._terms[m]) for m in self.monomials()]

    def items(self):
        return self._terms.items()

    @property
    def support(self) -> frozenset:
        return frozenset(self._terms)

    @property
    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=LocalOrder.key)

    @property
    def leading_coeff(self) -> Fraction:
        return self._terms[self.leading_monomial]

    @property
    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._terms), default=-1)

    def ecart(self) -> int:
        lm = self.leading_monomial
        return self.degree - (lm[0] + lm[1])

    # arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._from_clean({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                m = (a1 + a2, b1 + b2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._from_clean({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Coefficient) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return Poly()
        return Poly._from_clean({m: c * v for m, v in self._terms.items()})

    def shift(self, m: Monomial, c: Coefficient = 1) -> "Poly":
        """Multiply by the term ``c * x^m[0] * y^m[1]``."""
        c = _as_fraction(c)
        if not c:
            return Poly()
        return Poly._from_clean(
            {(a + m[0], b + m[1]): c * v for (a, b), v in self._terms.items()}
        )

    def monic(self) -> "Poly":
        """Scale so the leading coefficient (local order) is 1."""
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coeff)

    def truncate(self, degree: int) -> "Poly":
        """Drop every term of total degree >= ``degree``."""
        return Poly._from_clean({m: c for m, c in self._terms.items() if m[0] + m[1] < degree})

    def swap_variables(self) -> "Poly":
        return Poly._from_clean({(b, a): c for (a, b), c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"Poly({serialize(self)!r})"


def _format_monomial(m: Monomial) -> str:
    parts = []
    for var, e in zip("xy", m):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "*".join(parts)


def serialize(p: Poly) -> str:
    """Render ``p`` with terms in descending local order, e.g. ``y^2 - x^3``."""
    if p.is_zero:
        return "0"
    out = []
    for k, (m, c) in enumerate(p.terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_monomial(m)
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{a}*{mono}"
        else:
            body = str(a)
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([xy])|(\^|\*|\+|-|/|\(|\)))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    # expr   := term (("+" | "-") term)*
    # term   := factor ("*" factor)*
    # factor := ("+" | "-") factor | power
    # power  := atom ("^" INT)?
    # atom   := INT ("/" INT)? | "x" | "y" | "(" expr ")"

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return PolySyntaxError(message, self.text, tok[2])

    def expect(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise self.error(f"expected {want!r}, got {got!r}")
        return self.advance()

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.advance()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.advance()
            p = p * self.factor()
        return p

    def factor(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.advance()
            p = self.factor()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] != "num":
                raise self.error("exponent must be a non-negative integer")
            self.advance()
            return base ** int(tok[1])
        return base

    def atom(self) -> Poly:
        tok = self.peek()
        if tok[0] == "num":
            self.advance()
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.advance()
                den = self.expect("num")
                if int(den[1]) == 0:
                    raise self.error("zero denominator", den)
                value = Fraction(int(tok[1]), int(den[1]))
            return Poly.constant(value)
        if tok[0] == "var":
            self.advance()
            return Poly.x() if tok[1] == "x" else Poly.y()
        if tok[0] == "op" and tok[1] == "(":
            self.advance()
            p = self.expr()
            self.expect("op", ")")
            return p
        got = tok[1] or "end of input"
        raise self.error(f"unexpected {got!r}")


def parse_poly(text: str) -> Poly:
    """Parse a polynomial in ``x`` and ``y`` with rational coefficients.

    >>> parse_poly("(x+y)^2 - x^2 - 2*x*y")
    Poly('y^2')
    """
    return _Parser(text).parse()


def partial_derivative(f: Poly, var: str) -> Poly:
    if var not in ("x", "y"):
        raise ValueError(f"unknown variable {var!r}")
    k = 0 if var == "x" else 1
    out = {}
    for m, c in f.items():
        e = m[k]
        if e:
            dm = (m[0] - 1, m[1]) if k == 0 else (m[0], m[1] - 1)
            out[dm] = c * e
    return Poly._from_clean(out)


def order_of_vanishing(f: Poly) -> Union[int, float]:
    """Lowest total degree of a term, or ``INFINITE`` for zero."""
    if f.is_zero:
        return INFINITE
    return min(i + j for i, j in f.support)


def iter_monomials_below(total_degree: int) -> Iterator[Monomial]:
    """All monomials of total degree < ``total_degree``."""
    for d in range(total_degree):
        for i in range(d, -1, -1):
            yield (i, d - i)
