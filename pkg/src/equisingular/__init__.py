"""Irreducibility criteria for equisingular families of curves on surfaces."""

__version__ = "0.1.0"

from .criteria import CriterionReport, Verdict, evaluate, gamma_product, gamma_rank_one, gamma_remark, gamma_ruled
from .exact import ConditionResult, QuadRat
from .localalg import milnor_number, quotient_dimension, standard_basis, tjurina_number
from .polyring import Poly, parse_poly, serialize
from .sings import Catalog, Flavor, SingularitySpec, SingularityType, branch_count, catalog_lookup, resolve_type
from .surfaces import (
    DivisorClass,
    PicardRankOne,
    ProductOfCurves,
    RuledSurface,
    d_minus_k_squared,
    expected_dimension,
    hypothesis_check,
    k3_surface,
    projective_plane,
    surface_from_preset,
    surface_in_p3,
)

__all__ = [
    "Catalog",
    "ConditionResult",
    "CriterionReport",
    "DivisorClass",
    "Flavor",
    "PicardRankOne",
    "Poly",
    "ProductOfCurves",
    "QuadRat",
    "RuledSurface",
    "SingularitySpec",
    "SingularityType",
    "Verdict",
    "branch_count",
    "catalog_lookup",
    "d_minus_k_squared",
    "evaluate",
    "expected_dimension",
    "gamma_product",
    "gamma_rank_one",
    "gamma_remark",
    "gamma_ruled",
    "hypothesis_check",
    "k3_surface",
    "milnor_number",
    "parse_poly",
    "projective_plane",
    "quotient_dimension",
    "resolve_type",
    "serialize",
    "standard_basis",
    "surface_from_preset",
    "surface_in_p3",
    "tjurina_number",
]
