"""Singularity types: invariant records, the built-in catalog, branch counting.

A :class:`SingularityType` bundles the numerical invariants of a plane
curve singularity that the irreducibility criteria consume.  Records come
from the catalog (simple singularities and ordinary multiple points), from
a local equation, or from a manual record, and every field remembers
whether it was computed, read from the catalog, or supplied by the user.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Union

import sympy

from .errors import (
    InexactDegree,
    InvariantViolation,
    MissingInvariant,
    MissingOverride,
    NotIsolated,
    ParityError,
    PolySyntaxError,
    UnknownType,
)
from .localalg import milnor_number, tjurina_number
from .polyring import INFINITE, Poly, parse_poly, serialize


class Flavor(str, enum.Enum):
    TOPOLOGICAL = "topological"
    ANALYTICAL = "analytical"

    def __str__(self):
        return self.value


COMPUTED, CATALOG, USER = "computed", "catalog", "user"

_INT_FIELDS = ("mu", "tau", "r", "delta", "tau_es", "deg_x", "deg_x_star")


@dataclass(frozen=True)
class SingularityType:
    name: str
    flavor: Flavor
    mu: int
    tau: int
    r: int
    delta: int
    deg_x: int
    deg_x_exact: bool = False
    tau_es: Optional[int] = None
    deg_x_star: Optional[int] = None
    equation: Optional[str] = None
    provenance: dict = field(default_factory=dict, hash=False)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "flavor": self.flavor.value,
            "mu": self.mu,
            "tau": self.tau,
            "r": self.r,
            "delta": self.delta,
            "tau_es": self.tau_es,
            "deg_x": self.deg_x,
            "deg_x_exact": self.deg_x_exact,
            "deg_x_star": self.deg_x_star,
            "equation": self.equation,
            "provenance": dict(sorted(self.provenance.items())),
        }
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SingularityType":
        kwargs = {f.name: data[f.name] for f in fields(cls) if f.name in data}
        kwargs["flavor"] = Flavor(kwargs["flavor"])
        kwargs["provenance"] = dict(kwargs.get("provenance") or {})
        return cls(**kwargs)


@dataclass(frozen=True)
class SingularitySpec:
    """A requested singularity: where its invariants come from, and how often.

    ``source`` is a catalog name (``"A1"``, ``"D5"``, ``"ord_4"``), a local
    equation in ``x, y``, a mapping holding a manual invariant record, or an
    already resolved :class:`SingularityType`.
    """

    source: Union[str, Mapping[str, Any], SingularityType]
    flavor: Flavor = Flavor.TOPOLOGICAL
    count: int = 1
    overrides: Mapping[str, Any] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        if not isinstance(self.count, int) or self.count < 1:
            raise ValueError(f"count must be a positive integer, got {self.count!r}")


# invariant relations


def delta_invariant(mu: int, r: int) -> int:
    """delta from Milnor's relation ``2*delta = mu + r - 1``."""
    twice = mu + r - 1
    if twice % 2:
        raise ParityError(f"mu + r - 1 = {twice} is odd; (mu={mu}, r={r}) is inconsistent")
    if twice <= 0:
        raise InvariantViolation(f"2*delta = mu + r - 1 = {twice} must be positive")
    return twice // 2


def deg_bound(flavor: Flavor, mu: int, tau: int) -> int:
    """Upper bound for the degree of the singularity scheme.

    Analytical types: ``3*tau``.  Topological types: ``floor(3/2*mu + 2)``.
    Never below 3, the degree of the scheme of a node.
    """
    if Flavor(flavor) is Flavor.ANALYTICAL:
        bound = 3 * tau
    else:
        bound = (3 * mu + 4) // 2
    return max(bound, 3)


def validate_type(t: SingularityType) -> SingularityType:
    """Raise :class:`InvariantViolation` naming the first relation that fails."""
    for name in ("mu", "tau", "r", "delta", "deg_x"):
        value = getattr(t, name)
        if not isinstance(value, int) or value < 1:
            raise InvariantViolation(f"{t.name}: {name} must be a positive integer, got {value!r}")
    for name in ("tau_es", "deg_x_star"):
        value = getattr(t, name)
        if value is not None and (not isinstance(value, int) or value < 1):
            raise InvariantViolation(f"{t.name}: {name} must be a positive integer, got {value!r}")
    if 2 * t.delta != t.mu + t.r - 1:
        raise InvariantViolation(
            f"{t.name}: 2*delta = mu + r - 1 fails ({2 * t.delta} != {t.mu + t.r - 1})"
        )
    if t.mu > 2 * t.delta:
        raise InvariantViolation(f"{t.name}: mu <= 2*delta fails")
    if t.tau_es is not None and 2 * t.delta > 2 * t.tau_es:
        raise InvariantViolation(f"{t.name}: 2*delta <= 2*tau_es fails ({t.delta} > {t.tau_es})")
    if t.tau > t.mu:
        raise InvariantViolation(f"{t.name}: tau <= mu fails ({t.tau} > {t.mu})")
    if t.deg_x < 3:
        raise InvariantViolation(f"{t.name}: deg X >= 3 fails ({t.deg_x})")
    ceiling = deg_bound(t.flavor, t.mu, t.tau)
    if t.deg_x > ceiling:
        rel = "deg X <= 3*tau" if t.flavor is Flavor.ANALYTICAL else "deg X <= floor(3/2*mu + 2)"
        raise InvariantViolation(f"{t.name}: {rel} fails ({t.deg_x} > {ceiling})")
    return t


def hilbert_family_dimension(t: SingularityType) -> int:
    """Dimension of the family of singularity schemes of type ``t`` on the surface."""
    if not t.deg_x_exact:
        raise InexactDegree(f"{t.name}: deg X = {t.deg_x} is only an upper bound")
    if t.deg_x_star is None:
        raise MissingInvariant(f"{t.name}: deg X* unknown")
    return t.deg_x - t.deg_x_star


# branch counting


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_boundary(f: Poly) -> list[tuple[int, int]]:
    """Vertices of the compact Newton boundary of a convenient ``f``, left to right."""
    support = f.support
    n0 = min(j for i, j in support if i == 0)
    m0 = min(i for i, j in support if j == 0)
    lowest: dict[int, int] = {}
    for i, j in support:
        if i <= m0 and j <= n0:
            lowest[i] = min(j, lowest.get(i, j))
    hull: list[tuple[int, int]] = []
    for p in sorted(lowest.items()):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


_U = sympy.Symbol("u")


def _face_is_reduced(coeffs: list[Fraction]) -> bool:
    h = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], _U, domain="QQ")
    return sympy.gcd(h, h.diff(_U)).degree() == 0


def _newton_branch_count(f: Poly) -> Optional[int]:
    """Branches of a Newton non-degenerate germ; None if degenerate or non-reduced."""
    support = f.support
    a = min(i for i, _ in support)
    b = min(j for _, j in support)
    if a > 1 or b > 1:
        return None
    g = Poly({(i - a, j - b): c for (i, j), c in f.items()})
    if g.coeff((0, 0)):
        return a + b
    count = a + b
    vertices = newton_boundary(g)
    for (i0, j0), (i1, j1) in zip(vertices, vertices[1:]):
        length = gcd(i1 - i0, j0 - j1)
        q, p = (i1 - i0) // length, (j0 - j1) // length
        coeffs = [g.coeff((i0 + q * s, j0 - p * s)) for s in range(length + 1)]
        if not _face_is_reduced(coeffs):
            return None
        count += length
    return count


_X, _Y = sympy.symbols("x y")


def _to_sympy(f: Poly):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * _X**i * _Y**j for (i, j), c in f.items()),
        sympy.Integer(0),
    )


def _from_sympy(expr) -> Poly:
    p = sympy.Poly(expr, _X, _Y, domain="QQ")
    return Poly({m: Fraction(int(c.p), int(c.q)) for m, c in p.terms()})


def branch_count(f: Poly) -> Optional[int]:
    """Number of analytic branches of ``f = 0`` at the origin, or None if undecided.

    Decided when ``f`` is Newton non-degenerate (after splitting off the
    coordinate axes), or when every rational factor of ``f`` through the
    origin is.
    """
    mu = milnor_number(f)
    if mu == INFINITE:
        raise NotIsolated(f"{f} has a non-isolated singularity at the origin")
    direct = _newton_branch_count(f)
    if direct is not None:
        return direct
    _, factors = sympy.factor_list(_to_sympy(f), _X, _Y)
    total = 0
    for expr, multiplicity in factors:
        factor = _from_sympy(expr)
        if factor.coeff((0, 0)):
            continue
        if multiplicity > 1:
            return None
        n = _newton_branch_count(factor)
        if n is None:
            return None
        total += n
    return total


# catalog

_FAMILY_RE = re.compile(r"^\s*([ADE])_?(\d+)\s*$", re.IGNORECASE)
_ORD_RE = re.compile(r"^\s*ord_?(\d+)\s*$", re.IGNORECASE)


def canonical_name(name: str) -> Optional[str]:
    m = _FAMILY_RE.match(name)
    if m:
        return f"{m.group(1).upper()}{int(m.group(2))}"
    m = _ORD_RE.match(name)
    if m:
        return f"ord_{int(m.group(1))}"
    return name.strip() or None


def _family_entry(name: str) -> Optional[dict]:
    """Catalog entry for parametric names outside the shipped data file."""
    m = _FAMILY_RE.match(name)
    if m:
        letter, k = m.group(1).upper(), int(m.group(2))
        if letter == "A" and k >= 1:
            return {"name": name, "equation": f"y^2 - x^{k + 1}", "r": 2 if k % 2 else 1, "tau_es": k}
        if letter == "D" and k >= 4:
            return {"name": name, "equation": f"x*(y^2 - x^{k - 2})", "r": 3 if k % 2 == 0 else 2, "tau_es": k}
        return None
    m = _ORD_RE.match(name)
    if m and int(m.group(1)) >= 2:
        k = int(m.group(1))
        eq = "*".join(f"(y - {j}*x)" for j in range(1, k + 1))
        return {"name": name, "equation": eq, "r": k, "tau_es": k * (k + 1) // 2 - 2}
    return None


@lru_cache(maxsize=None)
def equation_invariants(equation: str) -> tuple:
    """(mu, tau) of a local equation; cached on the equation text."""
    f = parse_poly(equation)
    return milnor_number(f), tjurina_number(f)


class Catalog:
    """Named singularity types, keyed by canonical name."""

    def __init__(self, entries: Iterable[Mapping[str, Any]] = ()):
        self._entries: dict[str, dict] = {}
        for e in entries:
            self.add(e)

    def add(self, entry: Mapping[str, Any]) -> None:
        if "name" not in entry or "equation" not in entry:
            raise ValueError("catalog entries need 'name' and 'equation'")
        entry = dict(entry)
        entry["name"] = canonical_name(entry["name"])
        self._entries[entry["name"]] = entry

    @classmethod
    def from_json(cls, source: Union[str, Path, Mapping]) -> "Catalog":
        data = source if isinstance(source, Mapping) else json.loads(Path(source).read_text())
        return cls(data["entries"])

    @classmethod
    def default(cls) -> "Catalog":
        text = resources.files("equisingular").joinpath("data/catalog.json").read_text()
        return cls(json.loads(text)["entries"])

    def extended(self, other: "Catalog") -> "Catalog":
        merged = Catalog(self._entries.values())
        for e in other._entries.values():
            merged.add(e)
        return merged

    def names(self) -> list[str]:
        return list(self._entries)

    def __contains__(self, name: str) -> bool:
        return self.entry(name) is not None

    def entry(self, name: str) -> Optional[dict]:
        key = canonical_name(name)
        if key is None:
            return None
        return self._entries.get(key) or _family_entry(key)

    def by_equation(self, f: Poly) -> Optional[dict]:
        """The entry whose equation is ``f`` after normalisation, if any."""
        text = serialize(f)
        for e in self._entries.values():
            if serialize(parse_poly(e["equation"])) == text:
                return e
        return None

    def lookup(self, name: str, flavor: Flavor = Flavor.TOPOLOGICAL) -> SingularityType:
        return _lookup_cached(self, canonical_name(name) or "", Flavor(flavor))

    def __hash__(self):
        return id(self)


@lru_cache(maxsize=4096)
def _lookup_cached(catalog: Catalog, name: str, flavor: Flavor) -> SingularityType:
    entry = catalog.entry(name)
    if entry is None:
        raise UnknownType(f"unknown singularity type {name!r}")
    return _type_from_entry(entry, flavor)


def _type_from_entry(entry: Mapping[str, Any], flavor: Flavor) -> SingularityType:
    name = entry["name"]
    mu, tau = equation_invariants(entry["equation"])
    for key, value in (("mu", mu), ("tau", tau)):
        if key in entry and entry[key] != value:
            raise InvariantViolation(f"{name}: catalog {key}={entry[key]} but the equation gives {value}")
    prov = {"mu": COMPUTED, "tau": COMPUTED, "r": CATALOG, "delta": COMPUTED}
    r = entry["r"]
    delta = delta_invariant(mu, r)
    tau_es = entry.get("tau_es")
    if tau_es is not None:
        prov["tau_es"] = CATALOG
    if "deg_x" in entry:
        deg_x, exact = entry["deg_x"], bool(entry.get("deg_x_exact", True))
        prov["deg_x"] = CATALOG
    else:
        deg_x = deg_bound(flavor, mu, tau)
        exact = deg_x == 3
        prov["deg_x"] = COMPUTED
    if flavor is Flavor.ANALYTICAL:
        deg_x_star = tau
        prov["deg_x_star"] = COMPUTED
    else:
        deg_x_star = tau_es
        if tau_es is not None:
            prov["deg_x_star"] = CATALOG
    t = SingularityType(
        name=name,
        flavor=flavor,
        mu=mu,
        tau=tau,
        r=r,
        delta=delta,
        deg_x=deg_x,
        deg_x_exact=exact,
        tau_es=tau_es,
        deg_x_star=deg_x_star,
        equation=serialize(parse_poly(entry["equation"])),
        provenance=prov,
    )
    return validate_type(t)


_DEFAULT_CATALOG: Optional[Catalog] = None


def default_catalog() -> Catalog:
    global _DEFAULT_CATALOG
    if _DEFAULT_CATALOG is None:
        _DEFAULT_CATALOG = Catalog.default()
    return _DEFAULT_CATALOG


def catalog_lookup(name: str, flavor: Flavor = Flavor.TOPOLOGICAL, catalog: Optional[Catalog] = None) -> SingularityType:
    return (catalog or default_catalog()).lookup(name, flavor)


# resolution

_OVERRIDABLE = {"name", "mu", "tau", "r", "delta", "tau_es", "deg_x", "deg_x_exact", "deg_x_star"}


def _apply_overrides(t: SingularityType, overrides: Mapping[str, Any]) -> SingularityType:
    unknown = set(overrides) - _OVERRIDABLE
    if unknown:
        raise ValueError(f"unknown override fields: {sorted(unknown)}")
    if not overrides:
        return t
    prov = dict(t.provenance)
    changes = dict(overrides)
    for key in changes:
        if key != "name":
            prov[key] = USER
    if "deg_x" in changes and "deg_x_exact" not in changes:
        changes["deg_x_exact"] = True
    # derived fields follow the overridden ones unless pinned themselves
    if ("mu" in changes or "r" in changes) and "delta" not in changes:
        changes["delta"] = delta_invariant(changes.get("mu", t.mu), changes.get("r", t.r))
        prov["delta"] = COMPUTED
    if "deg_x_star" not in changes:
        if t.flavor is Flavor.ANALYTICAL and "tau" in changes:
            changes["deg_x_star"] = changes["tau"]
            prov["deg_x_star"] = USER
        elif t.flavor is Flavor.TOPOLOGICAL and "tau_es" in changes:
            changes["deg_x_star"] = changes["tau_es"]
            prov["deg_x_star"] = USER
    if "deg_x" not in changes and ({"mu", "tau"} & set(changes)) and not t.deg_x_exact:
        bound = deg_bound(t.flavor, changes.get("mu", t.mu), changes.get("tau", t.tau))
        changes["deg_x"], changes["deg_x_exact"] = bound, bound == 3
    changes["provenance"] = prov
    return replace(t, **changes)


def _type_from_equation(
    text: str, flavor: Flavor, overrides: Mapping[str, Any], catalog: Optional[Catalog] = None
) -> SingularityType:
    f = parse_poly(text)
    mu = overrides.get("mu")
    if mu is None:
        mu = milnor_number(f)
        if mu == INFINITE:
            raise NotIsolated(f"{serialize(f)} has a non-isolated singularity at the origin")
        if mu == 0:
            raise InvariantViolation(f"{serialize(f)} defines a smooth germ (mu = 0), not a singularity")
    tau = overrides.get("tau")
    if tau is None:
        tau = tjurina_number(f)
    prov = {k: USER if k in overrides else COMPUTED for k in ("mu", "tau")}
    r = overrides.get("r")
    if r is None:
        r = branch_count(f)
        if r is None:
            raise MissingOverride(
                f"cannot determine the branch count of {serialize(f)}; supply an 'r' override"
            )
        prov["r"] = COMPUTED
    else:
        prov["r"] = USER
    tau_es = overrides.get("tau_es")
    known = catalog.by_equation(f) if catalog is not None else None
    inherited = (
        flavor is Flavor.TOPOLOGICAL and tau_es is None and known is not None and known.get("tau_es") is not None
    )
    if inherited:
        # a catalog equation typed out verbatim inherits the catalog tau_es
        overrides = {**overrides, "tau_es": known["tau_es"]}
    elif flavor is Flavor.TOPOLOGICAL and tau_es is None and overrides.get("deg_x_star") is None:
        raise MissingOverride(
            f"topological type {serialize(f)} needs a 'tau_es' override (codimension of the mu-constant stratum)"
        )
    deg_x = deg_bound(flavor, mu, tau)
    base = SingularityType(
        name=serialize(f),
        flavor=flavor,
        mu=mu,
        tau=tau,
        r=r,
        delta=delta_invariant(mu, r),
        deg_x=deg_x,
        deg_x_exact=deg_x == 3,
        tau_es=None,
        deg_x_star=tau if flavor is Flavor.ANALYTICAL else None,
        equation=serialize(f),
        provenance={**prov, "delta": COMPUTED, "deg_x": COMPUTED, "deg_x_star": COMPUTED},
    )
    remaining = {k: v for k, v in overrides.items() if k not in ("mu", "tau", "r")}
    t = _apply_overrides(base, remaining)
    if inherited:
        t = replace(t, provenance={**t.provenance, "tau_es": CATALOG, "deg_x_star": CATALOG})
    return t


def _type_from_record(record: Mapping[str, Any], flavor: Flavor) -> SingularityType:
    data = dict(record)
    flavor = Flavor(data.pop("flavor", flavor))
    missing = [k for k in ("mu", "tau", "r") if data.get(k) is None]
    if missing:
        raise MissingOverride(f"manual record lacks {missing}")
    given = {k for k, v in data.items() if v is not None and k in _INT_FIELDS + ("deg_x_exact",)}
    mu, tau, r = data["mu"], data["tau"], data["r"]
    delta = data.get("delta")
    if delta is None:
        delta = delta_invariant(mu, r)
    deg_x = data.get("deg_x")
    exact = data.get("deg_x_exact")
    if deg_x is None:
        deg_x = deg_bound(flavor, mu, tau)
        exact = deg_x == 3
    elif exact is None:
        exact = True
    tau_es = data.get("tau_es")
    deg_x_star = data.get("deg_x_star")
    if deg_x_star is None:
        deg_x_star = tau if flavor is Flavor.ANALYTICAL else tau_es
    prov = dict(data.get("provenance") or {})
    for k in _INT_FIELDS:
        prov.setdefault(k, USER if k in given else COMPUTED)
    if deg_x_star is None:
        prov.pop("deg_x_star", None)
    if tau_es is None:
        prov.pop("tau_es", None)
    return SingularityType(
        name=data.get("name") or f"manual(mu={mu},tau={tau},r={r})",
        flavor=flavor,
        mu=mu,
        tau=tau,
        r=r,
        delta=delta,
        deg_x=deg_x,
        deg_x_exact=bool(exact),
        tau_es=tau_es,
        deg_x_star=deg_x_star,
        equation=data.get("equation"),
        provenance=prov,
    )


def resolve_type(spec: SingularitySpec, catalog: Optional[Catalog] = None) -> SingularityType:
    """Turn a :class:`SingularitySpec` into a validated :class:`SingularityType`."""
    catalog = catalog or default_catalog()
    source = spec.source
    if isinstance(source, SingularityType):
        t = _apply_overrides(source, spec.overrides)
    elif isinstance(source, Mapping):
        t = _apply_overrides(_type_from_record(source, spec.flavor), spec.overrides)
    elif source in catalog:
        t = _apply_overrides(catalog.lookup(source, spec.flavor), spec.overrides)
    elif _FAMILY_RE.match(source) or _ORD_RE.match(source):
        raise UnknownType(f"unknown singularity type {source!r}")
    else:
        try:
            return validate_type(_type_from_equation(source, spec.flavor, spec.overrides, catalog))
        except PolySyntaxError as exc:
            if re.fullmatch(r"\s*[A-Za-z_]\w*\s*", source):
                raise UnknownType(f"unknown singularity type {source!r}") from exc
            raise
    if t.flavor is Flavor.TOPOLOGICAL and t.deg_x_star is None:
        raise MissingOverride(f"{t.name}: topological type needs tau_es")
    return validate_type(t)
