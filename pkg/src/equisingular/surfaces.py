"""Surface models: Neron-Severi lattices, canonical classes, divisor hypotheses.

Three families are covered.  ``PicardRankOne`` has NS = Z*L with L ample
(the plane, surfaces in P^3, K3 surfaces); ``ProductOfCurves`` is
C1 x C2 with NS generated by the two fibre classes; ``RuledSurface`` is a
geometrically ruled surface with invariant e <= 0, NS generated by a
section C0 and a fibre F.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence, Union

from .errors import ArityMismatch, DomainError, MissingInvariant, NotRankOne
from .exact import ConditionResult
from .sings import SingularityType

STANDARD, PAPER_COMPAT = "standard", "paper_compat"
CHI_MODES = (STANDARD, PAPER_COMPAT)


@dataclass(frozen=True)
class PicardRankOne:
    l_squared: int
    kappa: int
    chi: Fraction
    name: str = "rank-one"
    chi_paper_compat: Optional[Fraction] = None
    chi_mode: str = STANDARD

    def __post_init__(self):
        if not isinstance(self.l_squared, int) or self.l_squared < 1:
            raise DomainError(f"L^2 must be a positive integer, got {self.l_squared!r}")
        if self.chi_mode not in CHI_MODES:
            raise DomainError(f"unknown chi mode {self.chi_mode!r}")
        if self.l_squared * (1 + self.kappa) % 2:
            # adjunction: L^2 + K.L = 2p_a(L) - 2 is even
            raise DomainError(f"L^2 + K.L = {self.l_squared * (1 + self.kappa)} must be even")
        object.__setattr__(self, "chi", Fraction(self.chi))

    arity = 1

    def with_chi_mode(self, mode: str) -> "PicardRankOne":
        return replace(self, chi_mode=mode)

    def summary(self) -> dict:
        return {
            "family": "picard_rank_one",
            "name": self.name,
            "l_squared": self.l_squared,
            "kappa": self.kappa,
            "chi": str(self.chi),
            "chi_used": str(chi_structure_sheaf(self)),
            "chi_mode": self.chi_mode,
        }


@dataclass(frozen=True)
class ProductOfCurves:
    g1: int
    g2: int

    def __post_init__(self):
        if not (isinstance(self.g1, int) and isinstance(self.g2, int)) or not self.g1 >= self.g2 >= 0:
            raise DomainError(f"need g1 >= g2 >= 0, got g1={self.g1}, g2={self.g2}")

    arity = 2
    name = property(lambda self: f"product:{self.g1},{self.g2}")

    def summary(self) -> dict:
        return {"family": "product", "name": self.name, "g1": self.g1, "g2": self.g2}


@dataclass(frozen=True)
class RuledSurface:
    g: int
    e: int

    def __post_init__(self):
        if not (isinstance(self.g, int) and isinstance(self.e, int)) or self.g < 0:
            raise DomainError(f"need an integer genus g >= 0, got {self.g!r}")
        if self.e > 0:
            raise DomainError(f"ruled surfaces with e > 0 are not covered (e={self.e})")
        if self.e < -self.g:
            raise DomainError(f"need e >= -g, got e={self.e}, g={self.g}")

    arity = 2
    name = property(lambda self: f"ruled:{self.g},{self.e}")

    def summary(self) -> dict:
        return {"family": "ruled", "name": self.name, "g": self.g, "e": self.e}


SurfaceModel = Union[PicardRankOne, ProductOfCurves, RuledSurface]


def projective_plane() -> PicardRankOne:
    return PicardRankOne(l_squared=1, kappa=-3, chi=Fraction(1), name="P2")


def surface_in_p3(n: int) -> PicardRankOne:
    """Smooth degree-n surface in P^3 with Picard number one (n >= 4)."""
    if n < 4:
        raise DomainError(f"surfaces in P^3 need degree n >= 4, got {n}")
    return PicardRankOne(
        l_squared=n,
        kappa=n - 4,
        chi=Fraction(1 + comb(n - 1, 3)),
        name=f"P3:{n}",
        chi_paper_compat=Fraction(comb(n - 1, 3)),
    )


def k3_surface(n: int) -> PicardRankOne:
    if n < 2 or n % 2:
        raise DomainError(f"K3 needs an even L^2 = n >= 2, got {n}")
    return PicardRankOne(l_squared=n, kappa=0, chi=Fraction(2), name=f"K3:{n}")


def surface_from_preset(text: str) -> SurfaceModel:
    """Parse ``P2``, ``P3:n``, ``K3:n``, ``product:g1,g2`` or ``ruled:g,e``."""
    s = text.strip()
    head, _, rest = s.partition(":")
    head = head.lower()
    try:
        args = [int(v) for v in rest.split(",")] if rest else []
    except ValueError:
        raise DomainError(f"bad surface preset {text!r}") from None
    if head == "p2" and not args:
        return projective_plane()
    if head == "p3" and len(args) == 1:
        return surface_in_p3(args[0])
    if head == "k3" and len(args) == 1:
        return k3_surface(args[0])
    if head == "product" and len(args) == 2:
        return ProductOfCurves(*args)
    if head == "ruled" and len(args) == 2:
        return RuledSurface(*args)
    raise DomainError(f"unknown surface preset {text!r}")


@dataclass(frozen=True)
class DivisorClass:
    """Integer coordinates in the model's NS basis: (d,) or (a, b)."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords or not all(isinstance(c, int) for c in coords):
            raise ValueError(f"divisor coordinates must be integers, got {self.coords!r}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: int) -> "DivisorClass":
        return cls(tuple(coords))

    def __add__(self, other):
        self._match(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._match(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def _match(self, other):
        if len(self.coords) != len(other.coords):
            raise ArityMismatch(f"{self.coords} and {other.coords} have different arity")

    def to_json(self) -> dict:
        if len(self.coords) == 1:
            return {"d": self.coords[0]}
        return {"a": self.coords[0], "b": self.coords[1]}


def _check_arity(model: SurfaceModel, *divisors: DivisorClass) -> None:
    for D in divisors:
        if len(D.coords) != model.arity:
            raise ArityMismatch(
                f"{type(model).__name__} divisors have {model.arity} coordinate(s), got {D.coords}"
            )


def intersection_matrix(model: SurfaceModel) -> tuple[tuple[int, ...], ...]:
    if isinstance(model, PicardRankOne):
        return ((model.l_squared,),)
    if isinstance(model, ProductOfCurves):
        return ((0, 1), (1, 0))
    return ((-model.e, 1), (1, 0))


def intersect(model: SurfaceModel, D1: DivisorClass, D2: DivisorClass) -> int:
    _check_arity(model, D1, D2)
    m = intersection_matrix(model)
    return sum(u * m[i][j] * v for i, u in enumerate(D1.coords) for j, v in enumerate(D2.coords))


def canonical_class(model: SurfaceModel) -> DivisorClass:
    if isinstance(model, PicardRankOne):
        return DivisorClass((model.kappa,))
    if isinstance(model, ProductOfCurves):
        return DivisorClass((2 * model.g2 - 2, 2 * model.g1 - 2))
    return DivisorClass((-2, 2 * model.g - 2 - model.e))


def d_minus_k_squared(model: SurfaceModel, D: DivisorClass) -> int:
    """Self-intersection (D - K)^2."""
    _check_arity(model, D)
    E = D - canonical_class(model)
    return intersect(model, E, E)


def chi_structure_sheaf(model: SurfaceModel) -> Fraction:
    """chi(O_S) of a rank-one model, honouring its ``chi_mode``."""
    if not isinstance(model, PicardRankOne):
        raise NotRankOne(f"{type(model).__name__} has no chi in its criterion")
    if model.chi_mode == PAPER_COMPAT and model.chi_paper_compat is not None:
        return model.chi_paper_compat
    return model.chi


def euler_characteristic(model: SurfaceModel) -> Fraction:
    """The true chi(O_S), independent of any compatibility mode."""
    if isinstance(model, PicardRankOne):
        return model.chi
    if isinstance(model, ProductOfCurves):
        return Fraction((1 - model.g1) * (1 - model.g2))
    return Fraction(1 - model.g)


def hypothesis_check(model: SurfaceModel, D: DivisorClass) -> list[ConditionResult]:
    """The positivity hypotheses on D, each as an exact inequality."""
    _check_arity(model, D)
    F = Fraction
    if isinstance(model, PicardRankOne):
        d, k = D.coords[0], model.kappa
        return [
            ConditionResult("D-K big and nef", F(0), F(d - k), True, "0 < d - kappa  (D - K_S big and nef, L ample)"),
            ConditionResult("D+K nef", F(0), F(d + k), False, "0 <= d + kappa  (D + K_S nef)"),
        ]
    a, b = D.coords
    if isinstance(model, ProductOfCurves):
        g1, g2 = model.g1, model.g2
        bound_a = max(2 * g2 - 2, 2 - 2 * g2)
        bound_b = max(2 * g1 - 2, 2 - 2 * g1)
        return [
            ConditionResult("a bound", F(bound_a), F(a), True, "a > max{2g2-2, 2-2g2}"),
            ConditionResult("b bound", F(bound_b), F(b), True, "b > max{2g1-2, 2-2g1}"),
        ]
    g, e = model.g, model.e
    out = [
        ConditionResult("a >= 2", F(2), F(a), False, "a >= 2"),
        # b > 2g - 2 + a*e/2, kept integral as 2b > 4g - 4 + a*e
        ConditionResult("b bound", F(4 * g - 4 + a * e), F(2 * b), True, "b > 2g - 2 + a*e/2"),
    ]
    if g == 0:
        out.append(ConditionResult("g=0 => b >= 2", F(2), F(b), False, "if g = 0 then b >= 2"))
    return out


def linear_system_dimension(model: SurfaceModel, D: DivisorClass) -> Fraction:
    """dim |D| by Riemann-Roch, valid for non-special D."""
    K = canonical_class(model)
    return euler_characteristic(model) + Fraction(intersect(model, D, D) - intersect(model, D, K), 2) - 1


def expected_dimension(
    model: SurfaceModel,
    D: DivisorClass,
    types: Iterable[tuple[SingularityType, int]],
) -> int:
    """dim |D| minus the total degree of the equisingular (or equianalytic) schemes.

    D must satisfy :func:`hypothesis_check`, which makes it non-special so
    that Riemann-Roch computes dim |D|.
    """
    total = 0
    for t, k in types:
        if t.deg_x_star is None:
            raise MissingInvariant(f"{t.name}: deg X* unknown, no expected dimension")
        total += k * t.deg_x_star
    dim = linear_system_dimension(model, D) - total
    if dim.denominator != 1:
        raise ValueError(f"non-integral dimension {dim}; is the model consistent?")
    return int(dim)
