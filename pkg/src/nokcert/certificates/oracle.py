"""Floating-point oracles, independent of the exact pipeline.

Volumes are recomputed by adaptive Simpson quadrature of the piecewise area
evaluated in floats, and slice areas by the shoelace formula on explicit
polygons.  Nothing here touches Sturm sequences or symbolic integration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from ..exact import Polynomial, RationalInterval
from ..piecewise import profile_volume
from ..slice_model import CurveHull, VCurve, curve_hull_area, vcurve_breakpoint, vcurve_pieces
from .scenario import Scenario


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12, max_depth: int = 48) -> float:
    """Adaptive Simpson rule with Richardson correction."""
    if a == b:
        return 0.0

    def simpson(fa, fm, fb, h):
        return h * (fa + 4.0 * fm + fb) / 6.0

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, m - a)
        right = simpson(fm, frm, fb, b - m)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return recurse(a, m, fa, flm, fm, left, tol / 2, depth - 1) + recurse(m, b, fm, frm, fb, right, tol / 2, depth - 1)

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, max_depth)


def _float_poly(p: Polynomial) -> Callable[[float], float]:
    coeffs = [float(c) for c in reversed(p.coeffs)]

    def ev(x: float) -> float:
        acc = 0.0
        for c in coeffs:
            acc = acc * x + c
        return acc

    return ev


def quadrature_volume(scenario: Scenario, s0: Fraction, tol: float = 1e-13) -> float:
    """Float volume of the profile at ``s0`` by quadrature, segment by segment."""
    branch = scenario.branch_for(s0)
    total = 0.0
    for seg in branch.profile.segments:
        a, b = float(seg.t_from(s0)), float(seg.t_to(s0))
        if b <= a:
            continue
        total += adaptive_simpson(_float_poly(seg.area.at_param(s0)), a, b, tol)
    return total


def _random_params(interval: RationalInterval, n: int, rng: random.Random) -> list[Fraction]:
    lo, hi = interval.lo, interval.hi
    out = []
    while len(out) < n:
        x = lo + (hi - lo) * Fraction(rng.randrange(10**9 + 1), 10**9)
        if x in interval:
            out.append(x)
    return out


@dataclass(frozen=True)
class CrossCheck:
    name: str
    samples: int
    max_deviation: float
    worst_param: Fraction | None
    rel_tol: Fraction

    @property
    def ok(self) -> bool:
        return self.max_deviation <= self.rel_tol


def numeric_crosscheck(
    scenario: Scenario,
    n_samples: int = 100,
    rel_tol=Fraction(1, 10**9),
    seed: int = 0,
    params: Iterable | None = None,
) -> CrossCheck:
    """Largest relative gap between the exact volume and its quadrature.

    Parameter values are drawn uniformly (as rationals) from the scenario's
    interval, or taken from ``params`` when given.
    """
    if params is None:
        if n_samples < 1:
            raise ValueError("n_samples must be at least 1")
        points = _random_params(scenario.interval, n_samples, random.Random(seed))
    else:
        points = [Fraction(p) for p in params]
    volumes = {id(br): profile_volume(br.profile) for br in scenario.branches}
    worst, worst_at = 0.0, None
    for s0 in points:
        exact = float(volumes[id(scenario.branch_for(s0))](s0))
        approx = quadrature_volume(scenario, s0)
        dev = abs(approx - exact) / max(abs(exact), 1e-300)
        if dev > worst or worst_at is None:
            worst, worst_at = dev, s0
    return CrossCheck(scenario.name, len(points), worst, worst_at, Fraction(rel_tol))


def shoelace(vertices: list[tuple[float, float]]) -> float:
    n = len(vertices)
    acc = 0.0
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        acc += x1 * y2 - x2 * y1
    return abs(acc) / 2.0


@dataclass(frozen=True)
class SuiteResult:
    name: str
    holds: bool
    cases: int
    detail: str


def shoelace_suite(n: int = 500, seed: int = 0, tol: float = 1e-12) -> SuiteResult:
    """Slice of the simplex with a corner of size ``m`` removed has area ``(t^2 - m^2)/2``.

    The polygon is the trapezoid ``(m,0), (t,0), (0,t), (0,m)``; the exact side
    is the curve-hull area with entry time ``t - m``.
    """
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n):
        t = Fraction(rng.randrange(1, 10**6), 10**5)
        m = t * Fraction(rng.randrange(0, 10**6 + 1), 10**6)
        exact = curve_hull_area(CurveHull(Polynomial.const(t - m))).at_param(0)(t)
        poly = shoelace([(float(m), 0.0), (float(t), 0.0), (0.0, float(t)), (0.0, float(m))])
        worst = max(worst, abs(poly - float(exact)) / max(float(exact), 1.0))
    return SuiteResult("shoelace-oracle", worst <= tol, n, f"max relative deviation {worst:.3e}")


def vc_continuity_suite(qs: Iterable[int] = range(2, 11), n_tc: int = 20, seed: int = 0) -> SuiteResult:
    """Both ``V_C`` pieces agree exactly at the breakpoint ``q t_C/(q-1)``."""
    rng = random.Random(seed)
    t_cs = [Fraction(rng.randrange(1, 10**4), rng.randrange(1, 10**3)) for _ in range(n_tc)]
    bad = []
    cases = 0
    for q in qs:
        for t_c in t_cs:
            v = VCurve(Polynomial.const(t_c), q)
            bp = vcurve_breakpoint(v).constant_value()
            rising, flat = vcurve_pieces(v)
            cases += 1
            if rising(0, bp) != flat(0, bp):
                bad.append((q, t_c))
    detail = "all breakpoints continuous" if not bad else f"discontinuous at {bad[:3]}"
    return SuiteResult("vc-continuity", not bad, cases, detail)

