"""Exact numbers of the form p + q*sqrt(r) and exactly decided inequalities."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt
from typing import Union

Rat = Fraction


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def rational_sqrt(r: Fraction):
    """Exact square root of a non-negative rational, or None if irrational."""
    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


class QuadRat:
    """The real number ``p + q*sqrt(radicand)`` with rational p, q, radicand >= 0.

    A perfect-square radicand is folded into ``p``, so ``q == 0`` exactly
    when the number is rational.  Comparisons never use floating point.
    """

    __slots__ = ("p", "q", "radicand")

    def __init__(self, p=0, q=0, radicand=0):
        p, q, radicand = Fraction(p), Fraction(q), Fraction(radicand)
        if radicand < 0:
            raise ValueError("radicand must be non-negative")
        root = rational_sqrt(radicand)
        if root is not None:
            p, q, radicand = p + q * root, Fraction(0), Fraction(0)
        elif q == 0:
            radicand = Fraction(0)
        else:
            # sqrt(n/d) = sqrt(n*d)/d keeps the radicand integral
            d = radicand.denominator
            q, radicand = q / d, Fraction(radicand.numerator * d)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("QuadRat is immutable")

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def sign(self) -> int:
        """Sign of p + q*sqrt(r): compares p^2 with q^2*r when signs differ."""
        sp, sq = _sign(self.p), _sign(self.q)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        diff = self.p * self.p - self.q * self.q * self.radicand
        if diff > 0:
            return sp
        if diff < 0:
            return sq
        return 0

    def __neg__(self):
        return QuadRat(-self.p, -self.q, self.radicand)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadRat(self.p + other, self.q, self.radicand)
        if isinstance(other, QuadRat):
            if other.q == 0:
                return QuadRat(self.p + other.p, self.q, self.radicand)
            if self.q == 0:
                return QuadRat(self.p + other.p, other.q, other.radicand)
            if self.radicand == other.radicand:
                return QuadRat(self.p + other.p, self.q + other.q, self.radicand)
            raise ValueError("cannot add QuadRats with different radicands")
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QuadRat)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadRat(self.p * other, self.q * other, self.radicand)
        if isinstance(other, QuadRat):
            if other.q == 0:
                return self * other.p
            if self.q == 0:
                return other * self.p
            if self.radicand == other.radicand:
                return QuadRat(
                    self.p * other.p + self.q * other.q * self.radicand,
                    self.p * other.q + self.q * other.p,
                    self.radicand,
                )
            raise ValueError("cannot multiply QuadRats with different radicands")
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def compare(self, other) -> int:
        """-1, 0 or 1 as self is less than, equal to, or greater than ``other``."""
        if isinstance(other, (int, Fraction)):
            return (self - other).sign()
        if not isinstance(other, QuadRat):
            raise TypeError(f"cannot compare QuadRat with {type(other).__name__}")
        if other.q == 0 or self.q == 0 or self.radicand == other.radicand:
            return (self - other).sign()
        # sign of A + B*sqrt(r) - C*sqrt(s) with distinct irrational roots
        head = QuadRat(self.p - other.p, self.q, self.radicand)
        sh, st = head.sign(), -_sign(other.q)
        if sh == 0:
            return st
        if sh == st:
            return sh
        square = head * head
        d = (square - other.q * other.q * other.radicand).sign()
        if d > 0:
            return sh
        if d < 0:
            return st
        return 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadRat)):
            return self.compare(other) == 0
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        # q*sqrt(r) is determined by sign(q) and q^2*r, whatever square factors r carries
        return hash((self.p, _sign(self.q), self.q * self.q * self.radicand))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __float__(self):
        return float(self.p) + float(self.q) * float(self.radicand) ** 0.5

    def to_decimal(self, digits: int = 50) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            p = Decimal(self.p.numerator) / Decimal(self.p.denominator)
            if self.q == 0:
                return +p
            r = Decimal(self.radicand.numerator) / Decimal(self.radicand.denominator)
            q = Decimal(self.q.numerator) / Decimal(self.q.denominator)
            return p + q * r.sqrt()

    def to_dict(self) -> dict:
        return {"p": str(self.p), "q": str(self.q), "radicand": str(self.radicand)}

    @classmethod
    def from_dict(cls, data) -> "QuadRat":
        return cls(Fraction(data["p"]), Fraction(data["q"]), Fraction(data["radicand"]))

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        sign = "-" if self.q < 0 else "+"
        return f"{self.p} {sign} {abs(self.q)}*sqrt({self.radicand})"

    def __repr__(self):
        return f"QuadRat({self.p!s}, {self.q!s}, {self.radicand!s})"


Number = Union[Fraction, QuadRat]


def exact_compare(lhs: Number, rhs: Number) -> int:
    if isinstance(lhs, QuadRat):
        return lhs.compare(rhs)
    if isinstance(rhs, QuadRat):
        return -rhs.compare(lhs)
    return _sign(Fraction(lhs) - Fraction(rhs))


@dataclass(frozen=True)
class ConditionResult:
    """One named inequality ``lhs < rhs`` (strict) or ``lhs <= rhs``."""

    name: str
    lhs: Number
    rhs: Number
    strict: bool
    anchor: str

    @property
    def passed(self) -> bool:
        c = exact_compare(self.lhs, self.rhs)
        return c < 0 if self.strict else c <= 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": number_to_json(self.lhs),
            "rhs": number_to_json(self.rhs),
            "relation": "<" if self.strict else "<=",
            "strict": self.strict,
            "pass": self.passed,
            "anchor": self.anchor,
        }

    @classmethod
    def from_dict(cls, data) -> "ConditionResult":
        return cls(
            data["name"],
            number_from_json(data["lhs"]),
            number_from_json(data["rhs"]),
            data["strict"],
            data["anchor"],
        )


def number_to_json(v: Number):
    if isinstance(v, QuadRat):
        out = v.to_dict()
        out["approx"] = format(v.to_decimal(30), ".25g")
        return out
    return str(Fraction(v))


def number_from_json(v) -> Number:
    if isinstance(v, dict):
        return QuadRat.from_dict(v)
    return Fraction(v)
