"""Scenario documents: parameter range, per-branch slice profiles, threshold.

A scenario is loaded from a JSON object::

    {
      "name": "thm-main-case-3.1",
      "param": "eps",
      "param_interval": ["0", "3/2"], "open_lo": true, "open_hi": false,
      "threshold": "29/3",
      "strict": true,
      "branches": [
        {"param_interval": ["0", "3/2"],
         "closed_form": "45*eps^3/32",
         "segments": [
           {"t_from": "0", "t_to": "eps", "area": "t^2/2",
            "constraints": [{"kind": "simplex_cap"}]}, ...]}
      ],
      "notes": "..."
    }

Loading checks structure only (syntax, branch partition, contiguity, ordering
and nonnegativity of every segment).  Whether the declared areas are backed
by their constraints is decided by :func:`nokcert.certificates.engine.verify`
so that an unsupported area makes the certificate fail rather than the input
invalid.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from ..exact import Polynomial, RationalInterval, parse_rational
from ..piecewise import PiecewiseProfile, Segment, Violation, profile_validate
from ..slice_model import CurveHull, SimplexCap, SliceConstraint, Surface, SurfaceCollapse, VCurve
from .expr import ExprSyntaxError, parse_expr, parse_param_expr

BUILTIN_ORDER = (
    "thm-main-case-3.1",
    "thm-main-case-3.2",
    "thm-main-case-3.3",
    "cor-main-case-1",
    "cor-main-case-2",
)
STRETCH_BUILTINS = ("thm-main-case-3.3-b56",)


class ScenarioError(ValueError):
    """A scenario document is malformed or its profiles are structurally invalid."""

    def __init__(self, name: str, violations, param: str = "s"):
        self.name = name
        self.violations = tuple(violations)
        lines = "\n  ".join(v.render(param) for v in self.violations)
        super().__init__(f"scenario {name!r} rejected:\n  {lines}")


@dataclass(frozen=True)
class Branch:
    interval: RationalInterval
    profile: PiecewiseProfile
    closed_form: Polynomial | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    param: str
    interval: RationalInterval
    threshold: Fraction
    strict: bool
    branches: tuple[Branch, ...]
    notes: str = ""
    stretch: bool = False
    document: Any = None

    def branch_for(self, s0) -> Branch:
        s0 = Fraction(s0)
        for br in self.branches:
            if s0 in br.interval.closure():
                return br
        raise ValueError(f"{self.param} = {s0} lies outside {self.interval}")

    def with_threshold(self, threshold) -> "Scenario":
        doc = copy.deepcopy(self.document)
        doc["threshold"] = str(Fraction(threshold))
        return load_scenario(doc)


def _interval(raw, where: str, open_lo=False, open_hi=False) -> RationalInterval:
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise ValueError(f"{where}: expected a [lo, hi] pair of rational strings")
    return RationalInterval(parse_rational(raw[0]), parse_rational(raw[1]), bool(open_lo), bool(open_hi))


def _constraint(raw: dict, param: str) -> SliceConstraint:
    kind = raw.get("kind")
    if kind == "simplex_cap":
        return SimplexCap()
    if kind == "curve_hull":
        return CurveHull(parse_param_expr(str(raw["t_C"]), param))
    if kind == "vcurve":
        return VCurve(parse_param_expr(str(raw["t_C"]), param), int(raw["q"]))
    if kind == "surface_collapse":
        return SurfaceCollapse(
            tuple(
                Surface(int(sf["m"]), parse_param_expr(str(sf["t1"]), param), parse_param_expr(str(sf["m0"]), param))
                for sf in raw["surfaces"]
            )
        )
    raise ValueError(f"unknown constraint kind {kind!r}")


def constraint_to_document(c: SliceConstraint, param: str) -> dict:
    if isinstance(c, SimplexCap):
        return {"kind": "simplex_cap"}
    if isinstance(c, CurveHull):
        return {"kind": "curve_hull", "t_C": c.t_C.to_str(param)}
    if isinstance(c, VCurve):
        return {"kind": "vcurve", "t_C": c.t_C.to_str(param), "q": c.q}
    return {
        "kind": "surface_collapse",
        "surfaces": [{"m": sf.m, "t1": sf.t1.to_str(param), "m0": sf.m0.to_str(param)} for sf in c.surfaces],
    }


def _read_document(source) -> dict:
    if isinstance(source, dict):
        return source
    if isinstance(source, Path):
        return json.loads(source.read_text())
    if isinstance(source, str):
        text = source.lstrip()
        if text.startswith("{"):
            return json.loads(source)
        return json.loads(Path(source).read_text())
    raise TypeError(f"cannot load a scenario from {type(source).__name__}")


def load_scenario(source) -> Scenario:
    """Build and structurally validate a scenario from a dict, JSON text or path."""
    doc = _read_document(source)
    name = str(doc.get("name", "<unnamed>"))
    try:
        return _build(doc, name)
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError, ArithmeticError, ExprSyntaxError) as exc:
        detail = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        raise ScenarioError(name, [Violation("malformed", detail)]) from exc


def _build(doc: dict, name: str) -> Scenario:
    param = str(doc["param"])
    if not param.isidentifier() or param == "t":
        raise ValueError(f"invalid parameter name {param!r}")
    interval = _interval(doc["param_interval"], "param_interval", doc.get("open_lo", False), doc.get("open_hi", False))
    threshold = parse_rational(doc["threshold"])
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    strict = bool(doc.get("strict", True))
    raw_branches = doc["branches"]
    if not raw_branches:
        raise ValueError("scenario has no branches")

    violations: list[Violation] = []
    branches = []
    for k, rb in enumerate(raw_branches):
        lo, hi = _interval(rb["param_interval"], f"branch {k}").lo, _interval(rb["param_interval"], f"branch {k}").hi
        expected_lo = interval.lo if k == 0 else branches[-1].interval.hi
        if lo != expected_lo:
            violations.append(Violation("partition", f"branch {k} starts at {lo}, expected {expected_lo}"))
        if k == len(raw_branches) - 1 and hi != interval.hi:
            violations.append(Violation("partition", f"last branch ends at {hi}, expected {interval.hi}"))
        b_int = RationalInterval(
            lo, hi, interval.open_lo and lo == interval.lo, interval.open_hi and hi == interval.hi
        )
        segments = []
        for j, rs in enumerate(rb["segments"]):
            area = parse_expr(str(rs["area"]), param)
            segments.append(
                Segment(
                    parse_param_expr(str(rs["t_from"]), param),
                    parse_param_expr(str(rs["t_to"]), param),
                    area,
                    tuple(_constraint(c, param) for c in rs.get("constraints", ())),
                )
            )
        profile = PiecewiseProfile(tuple(segments), b_int)
        for v in profile_validate(profile).violations:
            violations.append(Violation(v.kind, f"branch {b_int}: {v.message}", v.segment, v.witness, v.sample))
        closed = rb.get("closed_form")
        branches.append(Branch(b_int, profile, parse_param_expr(str(closed), param) if closed is not None else None))
    if violations:
        raise ScenarioError(name, violations, param)
    return Scenario(
        name=name,
        param=param,
        interval=interval,
        threshold=threshold,
        strict=strict,
        branches=tuple(branches),
        notes=str(doc.get("notes", "")),
        stretch=bool(doc.get("stretch", False)),
        document=copy.deepcopy(doc),
    )


def builtin_path(name: str) -> Path:
    ref = resources.files("nokcert") / "scenarios" / f"{name}.json"
    if not ref.is_file():
        raise KeyError(f"no built-in scenario named {name!r}")
    return Path(str(ref))


def load_builtin(name: str) -> Scenario:
    return load_scenario(builtin_path(name))


def builtin_names(include_stretch: bool = False) -> list[str]:
    return list(BUILTIN_ORDER) + (list(STRETCH_BUILTINS) if include_stretch else [])
