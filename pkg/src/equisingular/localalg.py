"""Standard bases in the local ring Q[x, y]_(x, y) and colength counts.

Standard bases are computed with Mora's tangent cone algorithm: Buchberger's
pair loop where division is replaced by Mora's normal form, which picks the
reducer of least ecart and keeps intermediate remainders as extra reducers.

As soon as the leading monomials of the partial basis contain all monomials
of some degree N, the ideal contains m^N (a highest corner); from then on
every term of degree >= N is discarded, which keeps the remainders small.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import NotAtOrigin
from .polyring import (
    INFINITE,
    LOCAL_ORDER,
    LocalOrder,
    Monomial,
    Poly,
    monomial_divides,
    monomial_lcm,
    monomial_quotient,
    partial_derivative,
)

QuotientDim = Union[int, float]


@dataclass(frozen=True)
class IdealBasis:
    generators: tuple[Poly, ...]
    order: LocalOrder = field(default=LOCAL_ORDER)

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("an ideal basis needs at least one generator")
        if any(g.is_zero for g in gens):
            raise ValueError("generators must be non-zero")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, polys: Sequence[Poly]) -> "IdealBasis":
        """Build a basis from ``polys``, silently dropping zeros."""
        return cls(tuple(p for p in polys if not p.is_zero))

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial for g in self.generators]


def _reduce_step(h: Poly, g: Poly) -> Poly:
    lm_h, lm_g = h.leading_monomial, g.leading_monomial
    factor = h.leading_coeff / g.leading_coeff
    return h - g.shift(monomial_quotient(lm_h, lm_g), factor)


def mora_normal_form(f: Poly, basis: Sequence[Poly], corner: Optional[int] = None) -> Poly:
    """Weak normal form of ``f`` with respect to ``basis``.

    Returns ``h`` with ``u*f - h`` in the ideal for some unit ``u`` and such
    that ``h`` is zero or its leading monomial is not divisible by any
    leading monomial of ``basis``.  If ``corner`` is given, the caller
    guarantees that m^corner lies in the ideal and terms of that degree
    or more are dropped.
    """
    h = f if corner is None else f.truncate(corner)
    reducers = list(basis)
    while not h.is_zero:
        lm = h.leading_monomial
        candidates = [g for g in reducers if monomial_divides(g.leading_monomial, lm)]
        if not candidates:
            break
        # min() keeps the first of equal ecarts, so the choice is deterministic
        g = min(candidates, key=Poly.ecart)
        if g.ecart() > h.ecart():
            reducers.append(h)
        h = _reduce_step(h, g).monic()
        if corner is not None:
            h = h.truncate(corner)
    return h


def _s_poly(f: Poly, g: Poly) -> Poly:
    lf, lg = f.leading_monomial, g.leading_monomial
    lcm = monomial_lcm(lf, lg)
    return f.shift(monomial_quotient(lcm, lf), 1 / f.leading_coeff) - g.shift(
        monomial_quotient(lcm, lg), 1 / g.leading_coeff
    )


def _minimize(basis: list[Poly]) -> list[Poly]:
    ordered = sorted(basis, key=lambda p: (LocalOrder.key(p.leading_monomial), -len(p)), reverse=True)
    kept: list[Poly] = []
    for p in ordered:
        lm = p.leading_monomial
        if not any(monomial_divides(q.leading_monomial, lm) for q in kept):
            kept.append(p)
    return kept


def highest_corner(leading: Sequence[Monomial]) -> Optional[int]:
    """Least N with every monomial of degree N divisible by some of ``leading``."""
    x_pow = min((m[0] for m in leading if m[1] == 0), default=None)
    y_pow = min((m[1] for m in leading if m[0] == 0), default=None)
    if x_pow is None or y_pow is None:
        return None
    # degree x_pow + y_pow - 1 always works
    for n in range(x_pow + y_pow):
        if all(any(monomial_divides(m, (i, n - i)) for m in leading) for i in range(n + 1)):
            return n
    return max(x_pow + y_pow - 1, 0)


def _add_corner(basis: list[Poly], pairs: list[tuple[int, int]], corner: int) -> None:
    """Append the monomials of degree ``corner`` (all in the ideal) with their pairs."""
    for k in range(corner + 1):
        pairs.extend((idx, len(basis)) for idx in range(len(basis)))
        basis.append(Poly.monomial((k, corner - k)))


def standard_basis(ideal: IdealBasis) -> IdealBasis:
    """Minimal standard basis with monic generators, sorted by leading monomial."""
    basis = [g.monic() for g in ideal.generators]
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    corner = highest_corner([g.leading_monomial for g in basis])
    if corner is not None:
        _add_corner(basis, pairs, corner)
    while pairs:
        pairs.sort(
            key=lambda ij: sum(monomial_lcm(basis[ij[0]].leading_monomial, basis[ij[1]].leading_monomial))
        )
        i, j = pairs.pop(0)
        li, lj = basis[i].leading_monomial, basis[j].leading_monomial
        if li[0] * lj[0] == 0 and li[1] * lj[1] == 0:
            # coprime leading monomials: Buchberger's product criterion
            continue
        h = mora_normal_form(_s_poly(basis[i], basis[j]), basis, corner)
        if h.is_zero:
            continue
        pairs.extend((k, len(basis)) for k in range(len(basis)))
        basis.append(h.monic())
        if corner is None:
            corner = highest_corner([g.leading_monomial for g in basis])
            if corner is not None:
                _add_corner(basis, pairs, corner)
    if corner == 0:
        return IdealBasis((Poly.constant(1),), ideal.order)
    if corner is not None:
        basis = [g.truncate(corner) for g in basis]
        basis = [g for g in basis if not g.is_zero] + [Poly.monomial((k, corner - k)) for k in range(corner + 1)]
    return IdealBasis(tuple(_minimize(basis)), ideal.order)


def staircase_size(leading: Sequence[Monomial]) -> QuotientDim:
    """Number of monomials outside the monomial ideal generated by ``leading``."""
    if any(m == (0, 0) for m in leading):
        return 0
    x_pow = min((m[0] for m in leading if m[1] == 0), default=None)
    y_pow = min((m[1] for m in leading if m[0] == 0), default=None)
    if x_pow is None or y_pow is None:
        return INFINITE
    return sum(
        1
        for i in range(x_pow)
        for j in range(y_pow)
        if not any(monomial_divides(m, (i, j)) for m in leading)
    )


def quotient_dimension(ideal: IdealBasis) -> QuotientDim:
    """dim_Q of the local ring at the origin modulo ``ideal``."""
    return staircase_size(standard_basis(ideal).leading_monomials)


def _check_at_origin(f: Poly) -> None:
    if f.is_zero:
        raise ValueError("the zero polynomial does not define a curve germ")
    if f.coeff((0, 0)):
        raise NotAtOrigin(f"{f} does not vanish at the origin")


def jacobian_ideal(f: Poly) -> IdealBasis:
    return IdealBasis.of([partial_derivative(f, "x"), partial_derivative(f, "y")])


def tjurina_ideal(f: Poly) -> IdealBasis:
    return IdealBasis.of([f, partial_derivative(f, "x"), partial_derivative(f, "y")])


def milnor_number(f: Poly) -> QuotientDim:
    """Milnor number of the germ of ``f = 0`` at the origin.

    0 means the germ is smooth, ``INFINITE`` a non-isolated singularity.
    """
    _check_at_origin(f)
    return quotient_dimension(jacobian_ideal(f))


def tjurina_number(f: Poly) -> QuotientDim:
    _check_at_origin(f)
    return quotient_dimension(tjurina_ideal(f))
