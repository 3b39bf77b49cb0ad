"""Numerical irreducibility criteria for equisingular families.

For a surface model, a divisor D and a list of singularity types with
multiplicities, :func:`evaluate` decides whether the sufficient condition

    sum_i k_i * deg X(S_i)^2  <  gamma * (D - K)^2

holds, with gamma from the closed formula (Picard rank one) or from the
tables for products of curves and ruled surfaces.  All arithmetic is exact;
the square root appearing in the rank-one gamma is handled by
:class:`~equisingular.exact.QuadRat`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import BetaRange, DomainError, MissingInvariant, MixedFlavors
from .exact import ConditionResult, Number, QuadRat, number_from_json, number_to_json
from .sings import Catalog, Flavor, SingularitySpec, SingularityType, resolve_type
from .surfaces import (
    PAPER_COMPAT,
    PicardRankOne,
    ProductOfCurves,
    RuledSurface,
    SurfaceModel,
    DivisorClass,
    canonical_class,
    chi_structure_sheaf,
    d_minus_k_squared,
    expected_dimension,
    hypothesis_check,
)

SCHEMA_VERSION = 1

BOUND_MODES = ("deg_x", "tau_sq", "mu_sq")
QUARTER = Fraction(1, 4)


class Verdict(str, enum.Enum):
    CRITERION_SATISFIED = "CRITERION_SATISFIED"
    NOT_SATISFIED = "NOT_SATISFIED"
    HYPOTHESES_VIOLATED = "HYPOTHESES_VIOLATED"

    def __str__(self):
        return self.value


# gamma for Picard rank one


def _rank_one_denominator(model: PicardRankOne) -> Fraction:
    """4*chi + max{0, 2*K.L} + 6*L^2."""
    L2 = model.l_squared
    return 4 * chi_structure_sheaf(model) + max(0, 2 * model.kappa * L2) + 6 * L2


def _gamma_rank_one(model: PicardRankOne, beta: Fraction) -> QuadRat:
    # (1 + sqrt(1 - 4b))^2 = (2 - 4b) + 2*sqrt(1 - 4b)
    c = Fraction(model.l_squared) / _rank_one_denominator(model)
    return QuadRat(c * (2 - 4 * beta), 2 * c, 1 - 4 * beta)


def gamma_rank_one(model: PicardRankOne, beta) -> QuadRat:
    """gamma(beta) = (1 + sqrt(1 - 4*beta))^2 * L^2 / (4*chi + max{0, 2*K.L} + 6*L^2)."""
    if not isinstance(model, PicardRankOne):
        raise DomainError("gamma_rank_one needs a Picard rank one model")
    beta = Fraction(beta)
    if not 0 < beta <= QUARTER:
        raise BetaRange(f"beta must lie in (0, 1/4], got {beta}")
    return _gamma_rank_one(model, beta)


def rank_one_alpha(model: PicardRankOne) -> Fraction:
    return _rank_one_denominator(model) / model.l_squared


def gamma_remark(model: PicardRankOne) -> tuple[Fraction, Fraction]:
    """The rational choice gamma = 36a/(3a+4)^2, together with beta = gamma/3.

    With this beta the first-order condition on sum k_i deg X(S_i) follows
    from the quadratic one, because every deg X(S_i) is at least 3.
    """
    alpha = rank_one_alpha(model)
    gamma = 36 * alpha / (3 * alpha + 4) ** 2
    return gamma, gamma / 3


# gamma tables for products and ruled surfaces


def gamma_product(g1: int, g2: int, alpha) -> Fraction:
    """gamma for C1 x C2 as a function of the genera and alpha = (a-2g2+2)/(b-2g1+2)."""
    if not (g1 >= g2 >= 0):
        raise DomainError(f"need g1 >= g2 >= 0, got ({g1}, {g2})")
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if g2 == 0:
        if g1 == 0:
            return Fraction(1, 24)
        if g1 == 1:
            return 1 / max(Fraction(32), 2 * alpha)
        return 1 / max(Fraction(24 + 16 * g1), 4 * g1 * alpha)
    if g1 == 1:
        return 1 / max(Fraction(32), 2 * alpha, 2 / alpha)
    return 1 / max(Fraction(24 + 16 * g1 + 16 * g2), 4 * g1 * alpha, 4 * g2 / alpha)


def gamma_ruled(g: int, e: int, alpha) -> Fraction:
    """gamma for a ruled surface with invariant e <= 0 and alpha = (a+2)/(b+2-2g-ae/2)."""
    if e > 0 or e < -g:
        raise DomainError(f"need -g <= e <= 0, got g={g}, e={e}")
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if g == 0:
        return Fraction(1, 24)
    if g == 1 and e == 0:
        return 1 / max(Fraction(24), 2 * alpha)
    if g == 1:
        inner = min(30 + 16 / alpha + 4 * alpha, 40 + 9 * alpha)
        return 1 / max(inner, Fraction(13, 2) * alpha)
    if e == 0:
        return 1 / max(Fraction(24 + 16 * g), 4 * g * alpha)
    inner = min(24 + 16 * g - 9 * e * alpha, 18 + 16 * g - 9 * e * alpha - 16 / (e * alpha))
    return 1 / max(inner, 4 * g * alpha - 9 * e * alpha)


def divisor_alpha(model: Union[ProductOfCurves, RuledSurface], D: DivisorClass) -> Fraction:
    a, b = D.coords
    if isinstance(model, ProductOfCurves):
        num, den = Fraction(a - 2 * model.g2 + 2), Fraction(b - 2 * model.g1 + 2)
    else:
        num, den = Fraction(a + 2), b + 2 - 2 * model.g - Fraction(a * model.e, 2)
    if den <= 0 or num <= 0:
        raise DomainError(f"alpha = {num}/{den} is not positive for D = {D.coords}")
    return num / den


def table_gamma(model: Union[ProductOfCurves, RuledSurface], D: DivisorClass) -> Fraction:
    alpha = divisor_alpha(model, D)
    if isinstance(model, ProductOfCurves):
        return gamma_product(model.g1, model.g2, alpha)
    return gamma_ruled(model.g, model.e, alpha)


# report


@dataclass
class CriterionReport:
    surface: dict
    divisor: dict
    options: dict
    types: list
    hypotheses: list
    conditions: list
    verdict: Verdict
    d_minus_k_squared: int
    gamma: Optional[Number] = None
    beta: Optional[Number] = None
    expected_dimension: Optional[int] = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "verdict": self.verdict.value,
            "surface": self.surface,
            "divisor": self.divisor,
            "options": self.options,
            "d_minus_k_squared": self.d_minus_k_squared,
            "gamma": None if self.gamma is None else number_to_json(self.gamma),
            "beta": None if self.beta is None else number_to_json(self.beta),
            "types": self.types,
            "hypotheses": [c.to_dict() for c in self.hypotheses],
            "conditions": [c.to_dict() for c in self.conditions],
            "expected_dimension": self.expected_dimension,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CriterionReport":
        return cls(
            surface=data["surface"],
            divisor=data["divisor"],
            options=data["options"],
            types=data["types"],
            hypotheses=[ConditionResult.from_dict(c) for c in data["hypotheses"]],
            conditions=[ConditionResult.from_dict(c) for c in data["conditions"]],
            verdict=Verdict(data["verdict"]),
            d_minus_k_squared=data["d_minus_k_squared"],
            gamma=None if data["gamma"] is None else number_from_json(data["gamma"]),
            beta=None if data["beta"] is None else number_from_json(data["beta"]),
            expected_dimension=data["expected_dimension"],
            notes=list(data["notes"]),
        )


def _merge(resolved: Sequence[tuple[SingularityType, int]]) -> list[tuple[SingularityType, int]]:
    merged: list[tuple[SingularityType, int]] = []
    for t, k in resolved:
        for idx, (u, n) in enumerate(merged):
            if u.to_dict() == t.to_dict():
                merged[idx] = (u, n + k)
                break
        else:
            merged.append((t, k))
    return merged


def _degree_sums(types, bound_mode):
    """(linear sum, quadratic LHS, factor on gamma) for the chosen bound mode.

    The quadratic condition reads ``quadratic < factor * gamma * (D-K)^2``.
    The linear sum always bounds sum k_i deg X(S_i).
    """
    if bound_mode == "deg_x":
        s1 = sum(k * t.deg_x for t, k in types)
        s2 = sum(k * t.deg_x**2 for t, k in types)
        return Fraction(s1), Fraction(s2), Fraction(1)
    if bound_mode == "tau_sq":
        s1 = sum(k * 3 * t.tau for t, k in types)
        s2 = sum(k * t.tau**2 for t, k in types)
        return Fraction(s1), Fraction(s2), Fraction(1, 9)
    if bound_mode == "mu_sq":
        s1 = sum(k * (Fraction(3, 2) * t.mu + 2) for t, k in types)
        s2 = sum(k * (t.mu + Fraction(4, 3)) ** 2 for t, k in types)
        return Fraction(s1), Fraction(s2), Fraction(4, 9)
    raise ValueError(f"unknown bound mode {bound_mode!r}; expected one of {BOUND_MODES}")


_QUAD_ANCHOR = {
    "deg_x": "sum k_i deg X(S_i)^2 < gamma (D-K)^2",
    "tau_sq": "sum k_i tau(S_i)^2 < gamma/9 (D-K)^2  (deg X <= 3 tau)",
    "mu_sq": "sum k_i (mu(S_i) + 4/3)^2 < 4 gamma/9 (D-K)^2  (deg X <= 3/2 mu + 2)",
}
_LINEAR_ANCHOR = "sum k_i deg X(S_i) < beta (D-K)^2 for some 0 < beta <= 1/4"


def _parse_beta(beta) -> Union[str, Fraction]:
    if isinstance(beta, str) and beta in ("auto", "remark"):
        return beta
    try:
        value = Fraction(beta)
    except (TypeError, ValueError):
        raise BetaRange(f"beta must be 'auto', 'remark' or a rational, got {beta!r}") from None
    if not 0 < value <= QUARTER:
        raise BetaRange(f"beta must lie in (0, 1/4], got {value}")
    return value


def _rank_one_conditions(model, X, s1, s2, factor, bound_mode, beta):
    X = Fraction(X)
    if beta == "remark":
        gamma, b = gamma_remark(model)
        conditions = [
            ConditionResult("linear degree bound", s1, b * X, True, _LINEAR_ANCHOR + " (beta = gamma/3)"),
            ConditionResult("quadratic degree bound", s2, factor * gamma * X, True, _QUAD_ANCHOR[bound_mode]),
        ]
        return conditions, gamma, b
    if beta == "auto":
        b = s1 / X
        gamma = _gamma_rank_one(model, min(b, QUARTER))
        conditions = [
            ConditionResult("linear degree bound", s1, QUARTER * X, True, _LINEAR_ANCHOR + " (some beta exists)"),
            ConditionResult(
                "quadratic degree bound",
                s2,
                gamma * (factor * X),
                True,
                _QUAD_ANCHOR[bound_mode] + " (gamma at beta = linear sum/(D-K)^2)",
            ),
        ]
        return conditions, gamma, b
    gamma = gamma_rank_one(model, beta)
    conditions = [
        ConditionResult("linear degree bound", s1, beta * X, True, _LINEAR_ANCHOR + f" (beta = {beta})"),
        ConditionResult("quadratic degree bound", s2, gamma * (factor * X), True, _QUAD_ANCHOR[bound_mode]),
    ]
    return conditions, gamma, beta


def evaluate(
    model: SurfaceModel,
    D: DivisorClass,
    specs: Iterable[Union[SingularitySpec, tuple[SingularityType, int]]],
    bound_mode: str = "deg_x",
    beta="auto",
    chi_mode: Optional[str] = None,
    catalog: Optional[Catalog] = None,
) -> CriterionReport:
    """Decide the irreducibility criterion for ``specs`` on ``|D|``.

    ``beta`` only matters for Picard rank one: ``"auto"`` decides whether
    some admissible beta works, ``"remark"`` uses gamma = 36a/(3a+4)^2 with
    beta = gamma/3, and a rational value fixes beta.
    """
    if bound_mode not in BOUND_MODES:
        raise ValueError(f"unknown bound mode {bound_mode!r}; expected one of {BOUND_MODES}")
    beta = _parse_beta(beta)
    if chi_mode is not None and isinstance(model, PicardRankOne):
        model = model.with_chi_mode(chi_mode)

    resolved = []
    for s in specs:
        if isinstance(s, SingularitySpec):
            resolved.append((resolve_type(s, catalog), s.count))
        else:
            t, k = s
            resolved.append((t, k))
    flavors = {t.flavor for t, _ in resolved}
    if len(flavors) > 1:
        raise MixedFlavors("topological and analytical types cannot be mixed in one family")
    types = _merge(resolved)

    X = d_minus_k_squared(model, D)
    hypotheses = hypothesis_check(model, D)
    notes: list[str] = []
    options = {
        "bound_mode": bound_mode,
        "beta": beta if isinstance(beta, str) else str(beta),
        "chi_mode": getattr(model, "chi_mode", "standard"),
    }
    type_rows = [dict(t.to_dict(), count=k) for t, k in types]

    report = CriterionReport(
        surface=model.summary(),
        divisor=D.to_json(),
        options=options,
        types=type_rows,
        hypotheses=hypotheses,
        conditions=[],
        verdict=Verdict.HYPOTHESES_VIOLATED,
        d_minus_k_squared=X,
        notes=notes,
    )
    if not all(h.passed for h in hypotheses):
        notes.append("divisor hypotheses fail; the criterion does not apply")
        return report

    s1, s2, factor = _degree_sums(types, bound_mode)
    if isinstance(model, PicardRankOne):
        conditions, gamma, b = _rank_one_conditions(model, X, s1, s2, factor, bound_mode, beta)
        report.beta = b
    else:
        gamma = table_gamma(model, D)
        conditions = [
            ConditionResult("quadratic degree bound", s2, factor * gamma * X, True, _QUAD_ANCHOR[bound_mode]),
        ]
        if beta != "auto":
            notes.append("beta is ignored for this surface; gamma comes from the table")
    report.conditions = conditions
    report.gamma = gamma
    report.verdict = (
        Verdict.CRITERION_SATISFIED if all(c.passed for c in conditions) else Verdict.NOT_SATISFIED
    )

    try:
        report.expected_dimension = expected_dimension(model, D, types)
    except MissingInvariant as exc:
        notes.append(f"expected dimension unavailable: {exc}")

    if bound_mode == "deg_x" and any(not t.deg_x_exact for t, _ in types):
        notes.append("some deg X values are upper bounds; a satisfied criterion remains valid")
    if any(t.flavor is Flavor.TOPOLOGICAL and t.provenance.get("deg_x_star") == "catalog" for t, _ in types):
        notes.append("deg X* is taken as tau_es (catalog convention) for topological types")
    if len(types) > 1:
        notes.append("types are assumed pairwise distinct; this is not verified from invariants")
    if isinstance(model, PicardRankOne) and model.chi_mode == PAPER_COMPAT:
        notes.append("chi(O_S) replaced by its compatibility value in gamma; dimensions use the true chi")
    if report.verdict is Verdict.CRITERION_SATISFIED:
        notes.append("criterion satisfied: the family is empty or irreducible of the expected dimension")
    return report
