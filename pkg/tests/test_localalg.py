from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equisingular.errors import NotAtOrigin
from equisingular.localalg import (
    IdealBasis,
    milnor_number,
    mora_normal_form,
    quotient_dimension,
    standard_basis,
    staircase_size,
    tjurina_number,
)
from equisingular.polyring import INFINITE, Poly, parse_poly
from oracles import oracle_milnor, oracle_quotient_dimension, oracle_tjurina

P = parse_poly


def basis(*texts):
    return IdealBasis(tuple(P(t) for t in texts))


@pytest.mark.parametrize(
    "gens, expected",
    [
        (("-3*x^2", "2*y"), ["y", "x^2"]),
        (("y^2 - x^3", "x^2", "y"), ["y", "x^2"]),
        (("2*x*y", "x^2"), ["x^2", "x*y"]),
    ],
)
def test_standard_basis_examples(gens, expected):
    sb = standard_basis(basis(*gens))
    assert sorted(map(str, sb.generators)) == sorted(expected)


@pytest.mark.parametrize(
    "gens, expected",
    [(("x", "y"), 1), (("x^2", "y"), 2), (("2*x*y", "x^2"), INFINITE), (("1 + x", "y"), 0)],
)
def test_quotient_dimension(gens, expected):
    assert quotient_dimension(basis(*gens)) == expected


def test_units_are_invertible_locally():
    # 1 + x is a unit in the local ring, so (x + x^2) = (x)
    assert quotient_dimension(basis("x + x^2", "y^3")) == 3


@pytest.mark.parametrize(
    "f, mu, tau",
    [
        ("y^2 - x^2", 1, 1),
        ("y^2 - x^3", 2, 2),
        ("x^3 + y^5", 8, 8),
        ("x^2*y", INFINITE, INFINITE),
        ("x + y^2", 0, 0),
        # x^4 + y^5 + x^2*y^3 is not quasi-homogeneous: tau < mu
        ("x^4 + y^5 + x^2*y^3", 12, 11),
    ],
)
def test_milnor_tjurina(f, mu, tau):
    assert milnor_number(P(f)) == mu
    assert tjurina_number(P(f)) == tau


def test_not_at_origin():
    with pytest.raises(NotAtOrigin):
        milnor_number(P("1 + x^2 + y^2"))
    with pytest.raises(NotAtOrigin):
        tjurina_number(P("y^2 - x^3 - 2"))


def test_zero_rejected():
    with pytest.raises(ValueError):
        milnor_number(Poly())
    with pytest.raises(ValueError):
        IdealBasis((Poly(),))


def test_staircase():
    assert staircase_size([(2, 0), (1, 1), (0, 3)]) == 4
    assert staircase_size([(0, 0)]) == 0
    assert staircase_size([(2, 0), (1, 1)]) == INFINITE


def test_normal_form_reduces_ideal_members():
    sb = standard_basis(basis("y^2 - x^3", "x*y")).generators
    f = P("(y^2 - x^3)*(1 + x) + x*y*y^4")
    assert mora_normal_form(f, sb).is_zero


# semi-quasihomogeneous germs: x^a + y^b plus terms strictly above the
# Newton diagonal, so mu = (a-1)(b-1) while tau varies


@st.composite
def sqh_germs(draw):
    a = draw(st.integers(2, 5))
    b = draw(st.integers(a, 6))
    above = [(i, j) for i in range(a + 1) for j in range(b + 1) if i * b + j * a > a * b and i + j >= 2]
    chosen = draw(st.lists(st.sampled_from(above), max_size=3, unique=True))
    coeffs = draw(st.lists(st.integers(-3, 3).filter(bool), min_size=len(chosen), max_size=len(chosen)))
    terms = {(a, 0): 1, (0, b): 1}
    for m, c in zip(chosen, coeffs):
        terms[m] = terms.get(m, 0) + c
    return a, b, Poly(terms)


@given(sqh_germs())
@settings(max_examples=40, deadline=None)
def test_engine_agrees_with_oracle(germ):
    a, b, f = germ
    mu = milnor_number(f)
    assert mu == (a - 1) * (b - 1) == oracle_milnor(f)
    tau = tjurina_number(f)
    assert tau == oracle_tjurina(f)
    assert tau <= mu


@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(-2, 2)), max_size=4),
)
@settings(max_examples=40, deadline=None)
def test_m_primary_ideals_agree_with_oracle(a, b, extra):
    # (x^a + h1, y^b + h2, g) with h1, h2 of high order is m-primary
    top = max(a, b) + 1
    h = Poly({(i, j): Fraction(c) for i, j, c in extra if i + j >= top})
    g = Poly({(i, j): Fraction(c) for i, j, c in extra if i + j >= 1})
    gens = [Poly({(a, 0): 1}) + h, Poly({(0, b): 1}) + h.swap_variables()]
    if not g.is_zero:
        gens.append(g)
    assert quotient_dimension(IdealBasis(tuple(gens))) == oracle_quotient_dimension(gens)
