import json
from fractions import Fraction

import pytest

from equisingular.errors import BetaRange, DomainError, MixedFlavors
from equisingular.criteria import (
    CriterionReport,
    Verdict,
    divisor_alpha,
    evaluate,
    gamma_product,
    gamma_rank_one,
    gamma_remark,
    gamma_ruled,
    rank_one_alpha,
)
from equisingular.exact import QuadRat
from equisingular.sings import Flavor, SingularitySpec
from equisingular.surfaces import (
    DivisorClass,
    PicardRankOne,
    ProductOfCurves,
    RuledSurface,
    k3_surface,
    projective_plane,
    surface_in_p3,
)

D = DivisorClass.of
TOP, ANA = Flavor.TOPOLOGICAL, Flavor.ANALYTICAL


def nodes(k, flavor=TOP):
    return [SingularitySpec("A1", flavor, k)]


def test_gamma_rank_one_at_quarter():
    assert gamma_rank_one(projective_plane(), Fraction(1, 4)) == Fraction(1, 10)


def test_gamma_rank_one_range():
    for beta in (0, Fraction(1, 3), -1):
        with pytest.raises(BetaRange):
            gamma_rank_one(projective_plane(), beta)


def test_gamma_rank_one_is_decreasing_in_beta():
    model = k3_surface(6)
    values = [gamma_rank_one(model, Fraction(k, 100)) for k in range(1, 26)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_gamma_remark_values():
    assert gamma_remark(projective_plane()) == (Fraction(90, 289), Fraction(30, 289))
    for n in (4, 6, 8):
        gamma, _ = gamma_remark(k3_surface(n))
        assert gamma == Fraction(54 * n**2 + 72 * n, (11 * n + 12) ** 2)


def test_gamma_remark_boundary():
    # alpha = A/L^2 = 4/3 for L^2 = 2, kappa = -1, chi = -7/3: not geometric, only a formula check
    model = PicardRankOne(l_squared=2, kappa=-1, chi=Fraction(-7, 3))
    assert rank_one_alpha(model) == Fraction(4, 3)
    assert gamma_remark(model) == (Fraction(3, 4), Fraction(1, 4))


def test_gamma_product_rows():
    assert gamma_product(0, 0, 5) == Fraction(1, 24)
    assert gamma_product(1, 0, 1) == Fraction(1, 32)
    assert gamma_product(2, 1, 1) == Fraction(1, 72)
    assert gamma_product(1, 1, Fraction(1, 100)) == Fraction(1, 200)
    with pytest.raises(DomainError):
        gamma_product(1, 2, 1)


def test_gamma_ruled_rows():
    assert gamma_ruled(0, 0, 3) == Fraction(1, 24)
    assert gamma_ruled(1, -1, 2) == Fraction(1, 46)
    assert gamma_ruled(2, -1, 1) == Fraction(1, 65)
    for g, e in ((0, -1), (1, -2), (2, 1)):
        with pytest.raises(DomainError):
            gamma_ruled(g, e, 1)


def test_divisor_alpha():
    assert divisor_alpha(ProductOfCurves(2, 1), D(4, 6)) == Fraction(4, 4)
    assert divisor_alpha(RuledSurface(1, -1), D(2, 3)) == Fraction(4, 4)


@pytest.mark.parametrize("beta", ["remark", "auto"])
def test_plane_nodes(beta):
    yes = evaluate(projective_plane(), D(10), nodes(5), beta=beta)
    no = evaluate(projective_plane(), D(10), nodes(6), beta=beta)
    assert yes.verdict is Verdict.CRITERION_SATISFIED
    assert no.verdict is Verdict.NOT_SATISFIED
    assert yes.expected_dimension == 60


def test_closed_form_rhs_is_rational():
    report = evaluate(projective_plane(), D(10), nodes(5), beta="remark")
    assert report.conditions[-1].rhs == Fraction(90, 289) * 169
    assert report.conditions[-1].lhs == 45


def test_quartic_three_nodes():
    report = evaluate(surface_in_p3(4), D(1), nodes(3))
    assert report.verdict is Verdict.NOT_SATISFIED
    assert report.expected_dimension == 0


def test_empty_list_is_satisfied():
    for model, divisor in ((projective_plane(), D(5)), (ProductOfCurves(1, 1), D(3, 3)), (RuledSurface(2, -1), D(3, 4))):
        assert evaluate(model, divisor, []).verdict is Verdict.CRITERION_SATISFIED


def test_product_of_lines():
    assert evaluate(ProductOfCurves(0, 0), D(10, 10), nodes(1)).verdict is Verdict.CRITERION_SATISFIED
    assert evaluate(ProductOfCurves(0, 0), D(10, 10), nodes(2)).verdict is Verdict.NOT_SATISFIED


def test_hypotheses_violated():
    report = evaluate(projective_plane(), D(2), nodes(1))
    assert report.verdict is Verdict.HYPOTHESES_VIOLATED
    assert report.conditions == [] and report.expected_dimension is None


def test_bound_modes():
    # 2 x A2 analytical: the tau^2 mode compares 2*2^2 = 8 with gamma/9 (D-K)^2
    for mode in ("deg_x", "tau_sq", "mu_sq"):
        r = evaluate(projective_plane(), D(12), [SingularitySpec("A2", ANA, 2)], bound_mode=mode, beta="remark")
        assert r.options["bound_mode"] == mode
    tau = evaluate(projective_plane(), D(12), [SingularitySpec("A2", ANA, 2)], bound_mode="tau_sq", beta="remark")
    assert tau.conditions[-1].lhs == 8
    assert tau.conditions[-1].rhs == Fraction(90, 289) * 225 / 9
    with pytest.raises(ValueError):
        evaluate(projective_plane(), D(12), [], bound_mode="delta")


def test_fixed_beta():
    r = evaluate(projective_plane(), D(10), nodes(2), beta="1/20")
    assert r.beta == Fraction(1, 20)
    assert isinstance(r.gamma, QuadRat) and not r.gamma.is_rational
    with pytest.raises(BetaRange):
        evaluate(projective_plane(), D(10), nodes(2), beta="1/2")


def test_auto_beta_above_quarter_fails_linear_condition():
    r = evaluate(projective_plane(), D(4), nodes(5))
    assert r.beta > Fraction(1, 4)
    assert not r.conditions[0].passed and r.verdict is Verdict.NOT_SATISFIED


def test_paper_compat_only_changes_gamma():
    std = evaluate(surface_in_p3(5), D(6), nodes(1), beta="remark")
    compat = evaluate(surface_in_p3(5), D(6), nodes(1), beta="remark", chi_mode="paper_compat")
    assert std.gamma != compat.gamma
    assert std.expected_dimension == compat.expected_dimension


def test_mixed_flavors():
    with pytest.raises(MixedFlavors):
        evaluate(projective_plane(), D(10), [SingularitySpec("A1", TOP), SingularitySpec("A1", ANA)])


def test_equal_types_are_merged():
    r = evaluate(projective_plane(), D(10), [SingularitySpec("A1", TOP, 2), SingularitySpec("A1", TOP, 3)])
    assert len(r.types) == 1 and r.types[0]["count"] == 5


def test_report_round_trip():
    for report in (
        evaluate(projective_plane(), D(10), nodes(5)),
        evaluate(RuledSurface(1, -1), D(4, 5), nodes(1)),
        evaluate(projective_plane(), D(1), nodes(1)),
    ):
        data = json.loads(json.dumps(report.to_dict()))
        again = CriterionReport.from_dict(data)
        assert again.to_dict() == report.to_dict()


def test_bound_mode_consistency():
    # analytical deg_x = 3 tau, so tau_sq and deg_x agree; mu_sq is the coarser bound for topological types
    import random

    rng = random.Random(467)
    names = ["A1", "A2", "A3", "A5", "D4", "D6", "E6", "E7", "E8", "ord_3", "ord_4"]
    for _ in range(200):
        model = rng.choice([projective_plane(), surface_in_p3(5), k3_surface(4)])
        divisor = D(rng.randint(3, 40))
        beta = rng.choice(["auto", "remark", "1/8"])
        ana = [SingularitySpec(rng.choice(names), ANA, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        by_tau = evaluate(model, divisor, ana, bound_mode="tau_sq", beta=beta).verdict
        by_deg = evaluate(model, divisor, ana, bound_mode="deg_x", beta=beta).verdict
        assert by_tau is by_deg
        top = [SingularitySpec(s.source, TOP, s.count) for s in ana]
        by_mu = evaluate(model, divisor, top, bound_mode="mu_sq", beta=beta).verdict
        if by_mu is Verdict.CRITERION_SATISFIED:
            assert evaluate(model, divisor, top, bound_mode="deg_x", beta=beta).verdict is by_mu
