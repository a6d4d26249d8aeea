"""Command-line front end: ``bound``, ``verify`` and ``tables``.

Angles are in radians.  Exit codes: 0 success, 1 a check failed, 2 invalid
input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import jsonschema
import numpy as np

from . import comparison, eigensolver, geometry, link, rearrange, sector
from .report import VerificationReport, dumps, to_csv
from .specfun import BesselError
from .weight import ConeGeometry, cone, sector_weighted_volume

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

NUMERIC_ERRORS = (
    BesselError,
    link.ShootingError,
    eigensolver.ConvergenceError,
    comparison.ShootingFailure,
    ArithmeticError,
)

_angle = {"type": "number", "exclusiveMinimum": 0}

CASE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["geometry", "domain"],
    "properties": {
        "geometry": {
            "type": "object",
            "additionalProperties": False,
            "required": ["n", "link"],
            "properties": {
                "n": {"type": "integer", "enum": [2, 3]},
                "link": {
                    "oneOf": [
                        {"type": "object", "additionalProperties": False,
                         "required": ["interval"], "properties": {"interval": _angle}},
                        {"type": "object", "additionalProperties": False,
                         "required": ["cap"], "properties": {"cap": _angle}},
                    ]
                },
            },
        },
        "domain": {
            "oneOf": [
                {"type": "object", "additionalProperties": False,
                 "required": ["sector"], "properties": {"sector": {"type": "number", "exclusiveMinimum": 0}}},
                {"type": "object", "additionalProperties": False,
                 "required": ["profile"],
                 "properties": {
                     "profile": {
                         "type": "object", "additionalProperties": False,
                         "required": ["theta", "R"],
                         "properties": {
                             "theta": {"type": "array", "items": {"type": "number"}, "minItems": 2},
                             "R": {"type": "array", "items": {"type": "number"}, "minItems": 2},
                         },
                     }
                 }},
            ]
        },
        "checks": {"type": "array", "items": {"type": "string"}, "uniqueItems": True},
        "resolution": {"type": "integer", "minimum": 16},
        "tolerances": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "budget": {"type": "number", "exclusiveMinimum": 0},
                "isoperimetric": {"type": "number", "minimum": 0},
                "identity": {"type": "number", "minimum": 0},
            },
        },
        "output": {"type": "string"},
    },
}

CASES_SCHEMA = {"oneOf": [CASE_SCHEMA, {"type": "array", "items": CASE_SCHEMA, "minItems": 1}]}


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# case construction


def geometry_from(spec: dict) -> ConeGeometry:
    n, lk = spec["n"], spec["link"]
    kind, angle = next(iter(lk.items()))
    if (kind == "interval") != (n == 2):
        raise InputError(f"link {kind!r} does not live in dimension n = {n}")
    try:
        return cone(**{kind: float(angle)})
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def domain_from(geom: ConeGeometry, spec: dict) -> geometry.RadialGraphDomain:
    try:
        if "sector" in spec:
            return geometry.RadialGraphDomain.sector(geom, float(spec["sector"]))
        prof = spec["profile"]
        return geometry.RadialGraphDomain(geom, np.array(prof["theta"], float), np.array(prof["R"], float))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _sector_checks(geom, domain, ctx):
    r0 = float(domain.R[0]) if domain.is_sector else 1.0
    V = sector_weighted_volume(geom, r0)
    lam_r = sector.sector_eigenvalue(geom, r0)
    lam_v = sector.sector_eigenvalue_from_volume(geom, V)
    spec = sector.sector_spectrum(geom, r0)
    f = sector.radial_profile(geom, spec.lambda1)
    res = max(abs(sector.sector_ode_residual(geom, spec.lambda1, f, r))
              for r in np.linspace(0.1 * r0, 0.9 * r0, 9))
    return [
        VerificationReport.identity("sector_volume_form", "sector-eigenvalue-volume-form",
                                    lam_r, lam_v, 1e-12 * lam_r, details={"r0": r0, "j_a": spec.j_a}),
        VerificationReport.identity("sector_ode_residual", "sector-radial-ode",
                                    res, 0.0, 1e-8, details={"r0": r0}),
    ]


def _halfspace_checks(geom, domain, ctx):
    n = geom.n
    out = [geometry.halfspace_isoperimetric_check(geometry.HalfBall(n, 1.0))]
    if n == 2:
        square = geometry.Polygon(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))
        out.append(geometry.halfspace_isoperimetric_check(square))
    else:
        ax = np.linspace(0.0, 1.0, 9)
        box = rearrange.SlabDomain.from_function(3, (ax, ax), lambda y, t: [(0.0, 1.0)])
        out.append(geometry.halfspace_isoperimetric_check(box))
    R, c = 1.0, 0.3
    phi = lambda x: math.sqrt(R * R - (x - c) ** 2)
    res = max(abs(geometry.euler_lagrange_residual(phi, 3 / R, x)) for x in np.linspace(c - 0.8, c + 0.8, 17))
    out.append(VerificationReport.identity("euler_lagrange", "half-disc-euler-lagrange", res, 0.0, 1e-8))
    return out


def _szego_checks(geom, domain, ctx):
    beta, gam = geometry.slice_parameters(geom)
    return [
        rearrange.szego_check(rearrange.IntervalUnion(((0.0, 1.0),)), beta, gam),
        rearrange.szego_check(rearrange.IntervalUnion(((0.25, 0.5), (1.0, 2.0))), beta, gam),
    ]


def _steiner_checks(geom, domain, ctx):
    n = geom.n
    t = np.linspace(0.0, 1.0, 17)

    def lines(*x):
        s = float(sum(x))
        return [(-1.0 - 0.3 * s, -0.2 + 0.1 * s), (0.4 + 0.2 * s, 1.5 - 0.1 * s)]

    base = (t,) if n == 2 else (np.linspace(-1.0, 1.0, 9), t)
    slab = rearrange.SlabDomain.from_function(n, base, lines)
    return [rearrange.symmetrization_check(slab)]


def _opening_checks(geom, domain, ctx):
    return [geometry.area_ratio_scan(geom), geometry.injectivity_scan(geom), geometry.jacobian_scan(geom)]


def _comparison_checks(geom, domain, ctx):
    V = geometry.weighted_volume(domain)
    closed = comparison.comparison_eigenvalue_closed_form(geom, V)
    shot = comparison.comparison_eigenvalue_shooting(comparison.ComparisonProblem.from_geometry(geom, V))
    lower = comparison.rayleigh_lower_bound(geom, V)
    return [
        VerificationReport.identity("comparison_shooting", "comparison-ode-least-eigenvalue",
                                    shot, closed, 1e-6 * closed, details={"zeta_bar": V}),
        VerificationReport.identity("comparison_sector_identity", "comparison-matches-sector-volume-form",
                                    lower, sector.sector_eigenvalue_from_volume(geom, V), 1e-12 * lower),
    ]


def _energy_checks(geom, domain, ctx):
    rc = 0.9 * float(np.min(domain.radius(np.linspace(0, geom.link.extent, 257))))

    def bump(r, th):
        return np.where(r < rc, np.cos(0.5 * math.pi * r / rc) ** 4, 0.0) * (1 + 0.3 * np.cos(th))

    # trapezoid/difference error is O(h^2); below 256 steps the 1e-3 default is not met
    return [eigensolver.test_function_identity(domain, bump, max(256, ctx["resolution"]),
                                               tol=ctx["tolerances"].get("identity", 1e-3))]


CHECKS = {
    "link": lambda g, d, c: [link.mu_lower_bound_check(g.link), link.log_concavity_check(g.link)],
    "sector": _sector_checks,
    "isoperimetric": lambda g, d, c: [geometry.isoperimetric_check(
        d, tol=c["tolerances"].get("isoperimetric", 1e-7))],
    "holder": lambda g, d, c: [geometry.holder_check(d)],
    "halfspace": _halfspace_checks,
    "szego": _szego_checks,
    "steiner": _steiner_checks,
    "opening": _opening_checks,
    "comparison": _comparison_checks,
    "energy_identity": _energy_checks,
    "main_theorem": lambda g, d, c: [comparison.verify_main_theorem(
        d, c["resolution"], budget=c["tolerances"].get("budget", 0.02))],
}


def run_case(case: dict, suite: list[str] | None = None) -> list[VerificationReport]:
    geom = geometry_from(case["geometry"])
    domain = domain_from(geom, case["domain"])
    names = case.get("checks", list(CHECKS))
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise InputError(f"unknown checks {unknown}; available: {sorted(CHECKS)}")
    if suite:
        names = [c for c in names if c in suite]
    ctx = {"resolution": case.get("resolution", 256), "tolerances": case.get("tolerances", {})}
    out = []
    for name in names:
        reports = CHECKS[name](geom, domain, ctx)
        for r in reports:
            r.details.setdefault("suite", name)
        out.extend(reports)
    return out


def _workers(count: int) -> int:
    cap = os.environ.get("CONEKRAHN_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = max(1, int(cap))
        except ValueError as exc:
            raise InputError("CONEKRAHN_THREADS must be an integer") from exc
    return max(1, min(n, count))


def run_cases(cases: list[dict], suite: list[str] | None = None) -> list[list[VerificationReport]]:
    """Runs cases on a thread pool; results come back in input order."""
    with ThreadPoolExecutor(max_workers=_workers(len(cases))) as pool:
        return list(pool.map(lambda c: run_case(c, suite), cases))


# ---------------------------------------------------------------------------
# subcommands


def _link_kwargs(args) -> dict:
    if (args.interval is None) == (args.cap is None):
        raise InputError("give exactly one of --interval or --cap (radians)")
    if args.n is not None and (args.n == 2) != (args.interval is not None):
        raise InputError("--interval needs n = 2 and --cap needs n = 3")
    return {"interval": args.interval} if args.interval is not None else {"cap": args.cap}


def cmd_bound(args) -> int:
    kw = _link_kwargs(args)
    if (args.r0 is None) == (args.volume is None):
        raise InputError("give exactly one of --r0 or --volume")
    try:
        geom = cone(**kw)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.r0 is not None:
        if not args.r0 > 0:
            raise InputError("--r0 must be positive")
        r0, V = args.r0, sector_weighted_volume(geom, args.r0)
    else:
        if not args.volume > 0:
            raise InputError("--volume must be positive")
        V = args.volume
        r0 = sector.sector_radius(geom, V)
    out = {
        "n": geom.n,
        "link": kw,
        "mu": geom.link.mu,
        "alpha": geom.alpha,
        "a": geom.a,
        "r0": r0,
        "weighted_volume": V,
        "sector_eigenvalue": sector.sector_eigenvalue(geom, r0),
        "lower_bound": comparison.rayleigh_lower_bound(geom, V),
    }
    print(dumps(out))
    return EXIT_OK


def load_cases(path: str) -> list[dict]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read case file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"case file is not JSON: {exc}") from exc
    try:
        jsonschema.validate(data, CASES_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InputError(f"schema error: {exc.message}") from exc
    return data if isinstance(data, list) else [data]


def cmd_verify(args) -> int:
    cases = load_cases(args.case)
    results = run_cases(cases, args.suite)
    records = []
    flat = []
    for i, reports in enumerate(results):
        for r in reports:
            d = r.to_dict(meta=not args.no_meta)
            d["case"] = i
            records.append(d)
            flat.append(r)
    text = dumps(records) + "\n"
    target = args.out or (cases[0].get("output") if len(cases) == 1 else None)
    if target:
        with open(target, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(to_csv(flat))
    for r in flat:
        print(r.line(), file=sys.stderr)
    return EXIT_OK if all(r.passed or r.skipped for r in flat) else EXIT_CHECK


def cmd_tables(args) -> int:
    if not args.links:
        raise InputError("give at least one --interval or --cap (radians)")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "link", "angle", "mu", "alpha", "a", "j_a", "lambda1_unit_sector"])
    for kind, angle in args.links:
        try:
            geom = cone(**{kind: angle})
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        j = sector.sector_spectrum(geom, 1.0)
        w.writerow([geom.n, kind] + [format(x, ".17g") for x in
                                     (angle, geom.link.mu, geom.alpha, geom.a, j.j_a, j.lambda1)])
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def _link_arg(kind):
    def parse(text):
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{text!r} is not a number (radians)")
        return (kind, value)

    return parse


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conekrahn", description="Eigenvalue bounds on cone domains.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="sector eigenvalue and the lower bound for a weighted volume")
    b.add_argument("--n", type=int, choices=(2, 3))
    b.add_argument("--interval", type=float, help="opening angle of the interval link (radians)")
    b.add_argument("--cap", type=float, help="polar cap radius (radians)")
    b.add_argument("--r0", type=float)
    b.add_argument("--volume", type=float, help="weighted volume int w^2 dV")
    b.set_defaults(func=cmd_bound)

    v = sub.add_parser("verify", help="run the checks listed in a JSON case file")
    v.add_argument("case")
    v.add_argument("--suite", nargs="+", choices=sorted(CHECKS), help="restrict to these checks")
    v.add_argument("--out", help="write the JSON report array here instead of stdout")
    v.add_argument("--csv", help="also write a CSV summary")
    v.add_argument("--no-meta", action="store_true", help="omit wall times for byte-stable output")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tables", help="CSV of link eigenvalues, exponents and sector eigenvalues")
    t.add_argument("--interval", dest="links", action="append", type=_link_arg("interval"))
    t.add_argument("--cap", dest="links", action="append", type=_link_arg("cap"))
    t.set_defaults(func=cmd_tables)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NUMERIC_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
