"""Command line interface: ``check``, ``verify-tables`` and ``catalog``.

Exit status of ``check``: 0 criterion satisfied, 1 not satisfied,
2 divisor hypotheses violated, 3 invalid input or resolution error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Sequence

import jsonschema

from . import __version__
from .criteria import (
    SCHEMA_VERSION,
    CriterionReport,
    Verdict,
    evaluate,
    gamma_rank_one,
    gamma_remark,
)
from .errors import EquisingularError
from .exact import QuadRat
from .sings import Catalog, Flavor, SingularitySpec, default_catalog
from .surfaces import (
    DivisorClass,
    PicardRankOne,
    ProductOfCurves,
    RuledSurface,
    SurfaceModel,
    d_minus_k_squared,
    k3_surface,
    projective_plane,
    surface_from_preset,
    surface_in_p3,
)

EXIT_CODES = {
    Verdict.CRITERION_SATISFIED: 0,
    Verdict.NOT_SATISFIED: 1,
    Verdict.HYPOTHESES_VIOLATED: 2,
}
EXIT_ERROR = 3

_BOUND_FLAGS = {"degx": "deg_x", "tau2": "tau_sq", "mu2": "mu_sq"}
_CHI_FLAGS = {"standard": "standard", "paper-compat": "paper_compat"}


def load_schema(name: str) -> dict:
    return json.loads(resources.files("equisingular").joinpath(f"schemas/{name}.schema.json").read_text())


# config ingestion


def model_from_config(surface: Any) -> SurfaceModel:
    if isinstance(surface, str):
        return surface_from_preset(surface)
    family = surface["family"]
    if family == "picard_rank_one":
        compat = surface.get("chi_paper_compat")
        return PicardRankOne(
            l_squared=surface["l_squared"],
            kappa=surface["kappa"],
            chi=Fraction(surface["chi"]),
            name=surface.get("name", "rank-one"),
            chi_paper_compat=None if compat is None else Fraction(compat),
        )
    if family == "product":
        return ProductOfCurves(surface["g1"], surface["g2"])
    return RuledSurface(surface["g"], surface["e"])


def divisor_from_config(divisor: dict) -> DivisorClass:
    if "d" in divisor:
        return DivisorClass((divisor["d"],))
    return DivisorClass((divisor["a"], divisor["b"]))


def specs_from_config(config: dict) -> list[SingularitySpec]:
    default_flavor = config.get("flavor", "topological")
    specs = []
    for item in config.get("singularities", []):
        source = item.get("type") or item.get("equation") or item.get("manual")
        specs.append(
            SingularitySpec(
                source=source,
                flavor=Flavor(item.get("flavor", default_flavor)),
                count=item.get("count", 1),
                overrides=item.get("overrides", {}),
            )
        )
    return specs


def catalog_from_config(config: dict, base_dir: Optional[Path], extra: Optional[str]) -> Catalog:
    catalog = default_catalog()
    sources = []
    if "catalog" in config:
        sources.append(config["catalog"])
    if extra:
        sources.append(extra)
    for src in sources:
        if isinstance(src, list):
            data = {"entries": src}
        else:
            path = Path(src)
            if not path.is_absolute() and base_dir is not None:
                path = base_dir / path
            data = json.loads(path.read_text())
        jsonschema.validate(data, load_schema("catalog"))
        catalog = catalog.extended(Catalog.from_json(data))
    return catalog


def run(
    config: dict,
    fmt: Optional[str] = None,
    chi_mode: Optional[str] = None,
    bound_mode: Optional[str] = None,
    beta: Optional[str] = None,
    catalog_path: Optional[str] = None,
    base_dir: Optional[Path] = None,
) -> tuple[str, int]:
    """Evaluate a run configuration; return (rendered output, exit status)."""
    options = dict(config.get("options", {})) if isinstance(config, dict) else {}
    fmt = fmt or options.get("report_format", "text")
    try:
        jsonschema.validate(config, load_schema("run_config"))
        report = evaluate(
            model_from_config(config["surface"]),
            divisor_from_config(config["divisor"]),
            specs_from_config(config),
            bound_mode=bound_mode or options.get("bound_mode", "deg_x"),
            beta=beta or options.get("beta", "auto"),
            chi_mode=chi_mode or options.get("chi_mode"),
            catalog=catalog_from_config(config, base_dir, catalog_path),
        )
    except (EquisingularError, jsonschema.ValidationError, ValueError, OSError) as exc:
        return render_error(exc), EXIT_ERROR
    text = render_json(report) if fmt == "json" else render_text(report)
    return text, EXIT_CODES[report.verdict]


# rendering


def render_error(exc: BaseException) -> str:
    message = exc.message if isinstance(exc, jsonschema.ValidationError) else str(exc)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "error": {"type": type(exc).__name__, "message": message},
    }
    return json.dumps(payload, indent=2, ensure_ascii=False)


def render_json(report: CriterionReport) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False)


def _num(v) -> str:
    if isinstance(v, QuadRat) and not v.is_rational:
        return f"{v}  (~{format(v.to_decimal(20), '.12g')})"
    return str(v)


def _cond_line(c) -> str:
    mark = "PASS" if c.passed else "FAIL"
    rel = "<" if c.strict else "<="
    return f"  [{mark}] {c.name}: {_num(c.lhs)} {rel} {_num(c.rhs)}\n         {c.anchor}"


def render_text(report: CriterionReport) -> str:
    s = report.surface
    params = ", ".join(f"{k}={v}" for k, v in s.items() if k not in ("family", "name"))
    lines = [
        f"Surface: {s['name']} ({params})" if params else f"Surface: {s['name']}",
        "Divisor: " + ", ".join(f"{k}={v}" for k, v in report.divisor.items())
        + f"   (D-K)^2 = {report.d_minus_k_squared}",
        "Options: " + " ".join(f"{k}={v}" for k, v in report.options.items()),
        "Singularities:",
    ]
    if not report.types:
        lines.append("  (none)")
    for t in report.types:
        exact = "exact" if t["deg_x_exact"] else "bound"
        lines.append(
            f"  {t['count']} x {t['name']} [{t['flavor']}]  mu={t['mu']} tau={t['tau']} r={t['r']} "
            f"delta={t['delta']} tau_es={t['tau_es']} degX={t['deg_x']} ({exact}) degX*={t['deg_x_star']}"
        )
    lines.append("Hypotheses:")
    lines.extend(_cond_line(c) for c in report.hypotheses)
    if report.conditions:
        lines.append("Conditions:")
        lines.extend(_cond_line(c) for c in report.conditions)
    if report.gamma is not None:
        lines.append(f"gamma = {_num(report.gamma)}")
    if report.beta is not None:
        lines.append(f"beta = {_num(report.beta)}")
    if report.expected_dimension is not None:
        lines.append(f"Expected dimension: {report.expected_dimension}")
    lines.append(f"Verdict: {report.verdict.value}")
    if report.notes:
        lines.append("Notes:")
        lines.extend(f"  - {n}" for n in report.notes)
    return "\n".join(lines)


# self checks


def _p3_reference(n: int) -> tuple[int, int]:
    """Numerator and denominator of the reference P^3 coefficient, unreduced."""
    return 6 * (n**3 - 3 * n**2 + 8 * n - 6) * n**2, (n**3 - 3 * n**2 + 10 * n - 6) ** 2


def _closed_form_coefficient(model: PicardRankOne) -> Fraction:
    """gamma * L^2, the coefficient of d'^2 in gamma*(D-K)^2 where D-K = d'L."""
    return gamma_remark(model)[0] * model.l_squared


def verify_tables() -> tuple[bool, list[str]]:
    """Recompute the rank-one constants and cross-check them."""
    lines: list[str] = []
    ok = True

    def check(cond: bool, text: str, detail: str = ""):
        nonlocal ok
        ok = ok and cond
        lines.append(f"{text} {'OK' if cond else 'MISMATCH'}" + (f"  ({detail})" if detail else ""))

    p2 = projective_plane()
    g = gamma_remark(p2)[0]
    check(g == Fraction(90, 289), f"P2: {g}")
    rhs_ok = all(g * d_minus_k_squared(p2, DivisorClass((d,))) == Fraction(90, 289) * (d + 3) ** 2 for d in range(3, 21))
    check(rhs_ok, "P2 RHS = 90/289*(d+3)^2 for d=3..20:")

    for n in (4, 6, 8):
        coeff = _closed_form_coefficient(k3_surface(n))
        expected = Fraction(54 * n**2 + 72 * n, (11 * n + 12) ** 2) * n
        check(coeff == expected, f"K3({n}): {coeff}")

    for n in (4, 5, 6):
        model = surface_in_p3(n)
        compat = _closed_form_coefficient(model.with_chi_mode("paper_compat"))
        standard = _closed_form_coefficient(model)
        num, den = _p3_reference(n)
        check(
            compat == Fraction(num, den),
            f"P3({n}): {num}/{den}",
            f"paper_compat, = {Fraction(num, den)}; standard mode gives {standard}",
        )
        expected_std = Fraction(6 * n**2 * (n**3 - 3 * n**2 + 8 * n), (n**3 - 3 * n**2 + 10 * n) ** 2)
        check(standard == expected_std, f"P3({n}) standard: 6n^2(n^3-3n^2+8n)/(n^3-3n^2+10n)^2 = {standard}")

    std4, k3 = _closed_form_coefficient(surface_in_p3(4)), _closed_form_coefficient(k3_surface(4))
    check(std4 == k3, f"P3(4) standard = K3(4): {std4} vs {k3}")

    samples = [Fraction(p, q) for p in range(1, 13) for q in range(1, 7)]
    identity = all(
        (3 * a + 4) ** 2 - 48 * a == (3 * a - 4) ** 2 >= 0 and (((3 * a - 4) ** 2 == 0) == (a == Fraction(4, 3)))
        for a in samples
    )
    presets = [p2, surface_in_p3(4), surface_in_p3(5), surface_in_p3(6), k3_surface(4), k3_surface(6), k3_surface(8)]
    fixed_point = all(gamma_rank_one(m, gamma_remark(m)[1]) == gamma_remark(m)[0] for m in presets)
    check(identity and fixed_point, f"closed-form identity ({len(samples)} alphas, {len(presets)} presets):")
    return ok, lines


def list_catalog(catalog: Optional[Catalog] = None, prefix: str = "", flavor: Flavor = Flavor.TOPOLOGICAL) -> list[str]:
    catalog = catalog or default_catalog()
    lines = []
    for name in catalog.names():
        if prefix and not name.lower().startswith(prefix.lower()):
            continue
        t = catalog.lookup(name, flavor)
        deg = f"degX={t.deg_x}" + ("" if t.deg_x_exact else " (bound)")
        lines.append(
            f"{t.name}: μ={t.mu} τ={t.tau} r={t.r} δ={t.delta} {deg} τes={t.tau_es}  f = {t.equation}"
        )
    return lines


# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equisingular", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="evaluate the irreducibility criterion for a JSON config")
    check.add_argument("config", help="path to a RunConfig JSON file, or - for standard input")
    check.add_argument("--format", choices=["text", "json"], default=None)
    check.add_argument("--chi-mode", choices=sorted(_CHI_FLAGS), default=None)
    check.add_argument("--bound-mode", choices=sorted(_BOUND_FLAGS), default=None)
    check.add_argument("--beta", default=None, help="auto, remark, or a rational p/q in (0, 1/4]")
    check.add_argument("--catalog", default=None, help="extra catalog JSON file")

    sub.add_parser("verify-tables", help="recompute and check the closed-form constants")

    cat = sub.add_parser("catalog", help="list the built-in singularity catalog")
    cat.add_argument("--filter", default="", help="only names starting with this prefix")
    cat.add_argument("--flavor", choices=[f.value for f in Flavor], default="topological")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify-tables":
        ok, lines = verify_tables()
        print("\n".join(lines))
        return 0 if ok else 1
    if args.command == "catalog":
        print("\n".join(list_catalog(prefix=args.filter, flavor=Flavor(args.flavor))))
        return 0

    try:
        if args.config == "-":
            config, base_dir = json.load(sys.stdin), None
        else:
            path = Path(args.config)
            config, base_dir = json.loads(path.read_text()), path.parent
    except (OSError, json.JSONDecodeError) as exc:
        print(render_error(exc))
        return EXIT_ERROR
    text, status = run(
        config,
        fmt=args.format,
        chi_mode=_CHI_FLAGS.get(args.chi_mode) if args.chi_mode else None,
        bound_mode=_BOUND_FLAGS.get(args.bound_mode) if args.bound_mode else None,
        beta=args.beta,
        catalog_path=args.catalog,
        base_dir=base_dir,
    )
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
