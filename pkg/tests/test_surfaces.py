from fractions import Fraction

import pytest

from equisingular.errors import ArityMismatch, DomainError, NotRankOne
from equisingular.sings import Flavor, catalog_lookup
from equisingular.surfaces import (
    DivisorClass,
    PicardRankOne,
    ProductOfCurves,
    RuledSurface,
    canonical_class,
    chi_structure_sheaf,
    d_minus_k_squared,
    euler_characteristic,
    expected_dimension,
    hypothesis_check,
    intersect,
    k3_surface,
    linear_system_dimension,
    projective_plane,
    surface_from_preset,
    surface_in_p3,
)

D = DivisorClass.of


def test_intersections():
    assert intersect(RuledSurface(1, -1), D(1, 0), D(1, 0)) == 1
    assert intersect(ProductOfCurves(0, 0), D(2, 3), D(1, 1)) == 5
    assert intersect(PicardRankOne(4, 0, 2), D(2), D(3)) == 24
    with pytest.raises(ArityMismatch):
        intersect(projective_plane(), D(1), D(1, 2))


def test_canonical_classes():
    assert canonical_class(projective_plane()) == D(-3)
    assert canonical_class(ProductOfCurves(1, 0)) == D(-2, 0)
    assert canonical_class(RuledSurface(0, 0)) == D(-2, -2)


def test_d_minus_k_squared():
    assert d_minus_k_squared(projective_plane(), D(10)) == 169
    assert d_minus_k_squared(ProductOfCurves(0, 0), D(10, 10)) == 288
    assert d_minus_k_squared(RuledSurface(1, -1), D(2, 3)) == 32


def test_hypotheses():
    assert all(h.passed for h in hypothesis_check(projective_plane(), D(3)))
    assert not all(h.passed for h in hypothesis_check(projective_plane(), D(2)))
    assert not all(h.passed for h in hypothesis_check(surface_in_p3(5), D(1)))
    assert all(h.passed for h in hypothesis_check(RuledSurface(1, -1), D(2, 3)))
    ruled = hypothesis_check(RuledSurface(0, 0), D(2, 1))
    assert [h.passed for h in ruled] == [True, True, False]
    product = hypothesis_check(ProductOfCurves(2, 1), D(1, 3))
    assert [h.passed for h in product] == [True, True]
    assert not all(h.passed for h in hypothesis_check(ProductOfCurves(2, 1), D(1, 2)))


def test_chi():
    assert chi_structure_sheaf(projective_plane()) == 1
    assert chi_structure_sheaf(k3_surface(4)) == 2
    quintic = surface_in_p3(5)
    assert chi_structure_sheaf(quintic) == 5
    assert chi_structure_sheaf(quintic.with_chi_mode("paper_compat")) == 4
    assert euler_characteristic(quintic.with_chi_mode("paper_compat")) == 5
    with pytest.raises(NotRankOne):
        chi_structure_sheaf(ProductOfCurves(0, 0))
    assert euler_characteristic(ProductOfCurves(2, 2)) == 1
    assert euler_characteristic(RuledSurface(3, -1)) == -2


def test_linear_system_dimension_on_the_plane():
    # plane curves of degree d: d(d+3)/2
    for d in range(1, 15):
        assert linear_system_dimension(projective_plane(), D(d)) == Fraction(d * (d + 3), 2)


def test_linear_system_dimension_on_p1xp1():
    # bidegree (a, b) forms: (a+1)(b+1) - 1
    for a in range(4):
        for b in range(4):
            assert linear_system_dimension(ProductOfCurves(0, 0), D(a, b)) == (a + 1) * (b + 1) - 1


def test_expected_dimension():
    node = catalog_lookup("A1", Flavor.TOPOLOGICAL)
    assert expected_dimension(surface_in_p3(4), D(1), [(node, 3)]) == 0
    assert expected_dimension(projective_plane(), D(4), []) == 14
    assert expected_dimension(projective_plane(), D(10), [(node, 5)]) == 60


@pytest.mark.parametrize(
    "text, expected",
    [
        ("P2", projective_plane()),
        ("p3:5", surface_in_p3(5)),
        ("K3:6", k3_surface(6)),
        ("product:2,1", ProductOfCurves(2, 1)),
        ("ruled:3,-2", RuledSurface(3, -2)),
    ],
)
def test_presets(text, expected):
    assert surface_from_preset(text) == expected


@pytest.mark.parametrize("text", ["P4", "P3:3", "K3:5", "product:1,2", "ruled:0,-1", "ruled:2,1", "P3:x"])
def test_bad_presets(text):
    with pytest.raises(DomainError):
        surface_from_preset(text)


def test_rank_one_parity():
    with pytest.raises(DomainError):
        PicardRankOne(3, 0, 2)
