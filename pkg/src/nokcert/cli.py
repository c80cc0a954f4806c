"""Command-line interface: ``nokcert verify | profile | bounds``.

Exit codes: 0 when every certificate holds, 1 when one fails, 2 on invalid
input.  Numbers are exact rationals written ``p/q``; decimals are refused.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    abelian_hodge_cap,
    adjunction_eps_cap,
    debarre_min_mult,
    mu_floor_from_volume,
    seshadri_width_cap,
)
from .exact import Polynomial, format_decimal, format_rational, parse_rational
from .piecewise import area_at
from .slice_model import SurfaceCollapse, Surface, VCurve, collapse_time, vcurve_breakpoint, vcurve_pieces
from .certificates.engine import DEFAULT_SEED, DEFAULT_WIDTH_TOL, run_builtin_suite, run_suite
from .certificates.expr import parse_param_expr
from .certificates.scenario import ScenarioError, builtin_names, builtin_path, load_scenario

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _seed() -> int:
    raw = os.environ.get("NOK_SEED")
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"NOK_SEED must be an integer, got {raw!r}") from None


def _scenario_source(spec: str):
    path = Path(spec)
    if path.exists():
        return path
    if spec in builtin_names(include_stretch=True):
        return builtin_path(spec)
    raise InputError(f"no such scenario file or built-in: {spec}")


def _show(label: str, value, var: str = "t") -> None:
    if isinstance(value, Polynomial):
        if value.is_constant():
            value = value.constant_value()
        else:
            print(f"{label} = {value.to_str(var)}")
            return
    value = Fraction(value)
    print(f"{label} = {format_rational(value)} ({format_decimal(value)})")


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    seed = _seed()
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds") if args.timestamp else None
    if args.all_builtin:
        report = run_builtin_suite(seed, args.margin_tol, include_stretch=args.include_stretch, timestamp=stamp)
    else:
        scenario = load_scenario(_scenario_source(args.scenario))
        report = run_suite([scenario], seed, args.margin_tol, structural=False, timestamp=stamp)
    text = report.to_json()
    if args.report:
        Path(args.report).write_text(text)
    for r in report.results:
        mark = "PASS" if r["holds"] else "FAIL"
        print(f"{mark}  {r['name']}: sup in [{r['sup_enclosure'][0]}, {r['sup_enclosure'][1]}], "
              f"margin >= {r['margin_lower_bound']} ({r['margin_decimal']})")
        for v in r["violations"]:
            print(f"      {v}")
    for s in report.structural:
        print(f"{'PASS' if s['holds'] else 'FAIL'}  {s['name']}: {s.get('detail', '')}")
    print(f"status: {report.status}")
    return report.exit_code


# ---------------------------------------------------------------------------
# profile


def cmd_profile(args) -> int:
    scenario = load_scenario(_scenario_source(args.scenario))
    s0 = args.param_value
    if s0 not in scenario.interval:
        raise InputError(f"{scenario.param} = {format_rational(s0)} lies outside {scenario.interval}")
    branch = scenario.branch_for(s0)
    mu = branch.profile.mu_cap(s0)
    n = args.samples
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["t", "area"])
        for k in range(n + 1):
            t = mu * Fraction(k, n)
            w.writerow([format_decimal(t), format_decimal(area_at(branch.profile, s0, t))])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# bounds


def _parse_surfaces(items, param: str) -> SurfaceCollapse:
    surfaces = []
    for item in items:
        for part in item.split(";"):
            fields = part.split(":")
            if len(fields) != 3:
                raise InputError(f"surface {part!r} must look like m:t1:m0")
            try:
                m = int(fields[0])
            except ValueError:
                raise InputError(f"surface multiplicity {fields[0]!r} is not an integer") from None
            surfaces.append(Surface(m, parse_param_expr(fields[1], param), parse_param_expr(fields[2], param)))
    return SurfaceCollapse(tuple(surfaces))


def cmd_bounds(args) -> int:
    kind = args.bound
    if kind == "debarre":
        print(f"q = {debarre_min_mult(args.b3, args.eps)}")
    elif kind == "adjunction-cap":
        _show("eps_cap", adjunction_eps_cap(args.t, args.deg))
    elif kind == "mu-cap":
        sc = _parse_surfaces(args.surfaces, args.param)
        ct = collapse_time(sc)
        _show("mu_cap", ct(args.eps) if args.eps is not None else ct, args.param)
    elif kind == "vc-profile":
        v = VCurve(Polynomial.const(args.t_c), args.q)
        rising, flat = vcurve_pieces(v)
        _show("breakpoint", vcurve_breakpoint(v))
        print(f"rising = {rising.at_param(0).to_str('t')}  on [{format_rational(args.t_c)}, breakpoint]")
        _show("flat", flat.at_param(0).constant_value())
        if args.t is not None:
            t = args.t
            if t < args.t_c:
                _show("area", t * t / 2)
            else:
                bp = vcurve_breakpoint(v).constant_value()
                _show("area", rising(0, t) if t <= bp else flat(0, t))
    elif kind == "seshadri-width":
        _show("mu_cap", seshadri_width_cap(args.q, args.eps))
    elif kind == "mu-floor":
        ok = mu_floor_from_volume(args.b3, args.m)
        print(f"mu > {format_rational(args.m)}: {'certified' if ok else 'not certified'}")
        if not ok:
            return EXIT_FAIL
    elif kind == "hodge":
        q, cap = abelian_hodge_cap(args.eps)
        print(f"q = {q}")
        _show("t_S_cap", cap)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nokcert", description="Exact slice-volume certificates.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify certificates and write a JSON report")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--all-builtin", action="store_true", help="the five built-in certificates and structural suites")
    src.add_argument("--scenario", help="scenario JSON file or built-in name")
    v.add_argument("--report", help="where to write the JSON report")
    v.add_argument("--margin-tol", type=_rational, default=DEFAULT_WIDTH_TOL,
                   help="width of the supremum enclosure (default 1/1000000000)")
    v.add_argument("--include-stretch", action="store_true", help="also run the B^3 > 56 stretch certificate")
    v.add_argument("--timestamp", action="store_true", help="record the wall-clock time (breaks byte reproducibility)")
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("profile", help="sample a slice-area profile as CSV")
    pr.add_argument("--scenario", required=True)
    pr.add_argument("--param-value", type=_rational, required=True)
    pr.add_argument("--samples", type=_positive_int, default=200)
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_profile)

    b = sub.add_parser("bounds", help="bound calculators")
    bs = b.add_subparsers(dest="bound", required=True)
    x = bs.add_parser("debarre", help="least curve multiplicity forced by the degree bound")
    x.add_argument("--b3", type=_rational, required=True)
    x.add_argument("--eps", type=_rational, required=True)
    x = bs.add_parser("adjunction-cap", help="Seshadri cap t(1 - d) + 3d after failed cutting")
    x.add_argument("--t", type=_rational, required=True)
    x.add_argument("--deg", type=_rational, required=True)
    x = bs.add_parser("mu-cap", help="collapse time of surfaces through the point")
    x.add_argument("--surfaces", action="append", required=True, help='"m:t1:m0", repeat or separate with ";"')
    x.add_argument("--eps", type=_rational)
    x.add_argument("--param", default="eps")
    x = bs.add_parser("vc-profile", help="two-piece slice bound of a curve of multiplicity q")
    x.add_argument("--t-c", type=_rational, required=True)
    x.add_argument("--q", type=int, required=True)
    x.add_argument("--t", type=_rational)
    x = bs.add_parser("seshadri-width", help="width cap q eps/(q - 1)")
    x.add_argument("--q", type=int, required=True)
    x.add_argument("--eps", type=_rational, required=True)
    x = bs.add_parser("mu-floor", help="certify mu > m from mu^3 >= B^3")
    x.add_argument("--b3", type=_rational, required=True)
    x.add_argument("--m", type=_rational, required=True)
    x = bs.add_parser("hodge", help="surface entry cap on an abelian threefold")
    x.add_argument("--eps", type=_rational, required=True)
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (InputError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
