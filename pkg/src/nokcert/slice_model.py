"""Slice-area constraints and their polynomial area bounds.

Each constraint turns a geometric fact about the body at height ``t`` into an
upper bound for the area of the slice at ``t``:

* the simplex cap ``t**2/2`` (the body sits inside an inverted simplex),
* a curve entering the base locus at ``t_C`` (hull area, multiplicity ``t - t_C``),
* a curve through the origin of multiplicity ``q >= 2`` (the two-piece ``V_C``),
* one or more surfaces through the origin, which shrink the slice to a
  triangle of width ``t - sum(m_i * m_i(t))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import (
    ParamPolynomial,
    Polynomial,
    RationalInterval,
    Sign,
    is_nonnegative,
    negative_witness,
    sign_on_interval,
    sup_enclosure,
)
from .piecewise import RegionCheck, Segment, Violation, poly_le, region_nonnegative

_T = ParamPolynomial.t()


@dataclass(frozen=True)
class SimplexCap:
    kind = "simplex_cap"


@dataclass(frozen=True)
class CurveHull:
    t_C: Polynomial
    kind = "curve_hull"

    def __post_init__(self):
        object.__setattr__(self, "t_C", Polynomial.coerce(self.t_C))


@dataclass(frozen=True)
class VCurve:
    t_C: Polynomial
    q: int
    kind = "vcurve"

    def __post_init__(self):
        object.__setattr__(self, "t_C", Polynomial.coerce(self.t_C))
        if int(self.q) != self.q or self.q < 2:
            raise ValueError(f"VCurve needs an integer q >= 2 (got {self.q}); use CurveHull for q = 1")
        object.__setattr__(self, "q", int(self.q))


@dataclass(frozen=True)
class Surface:
    m: int
    t1: Polynomial
    m0: Polynomial

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"surface multiplicity must be an integer >= 1 (got {self.m})")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "t1", Polynomial.coerce(self.t1))
        object.__setattr__(self, "m0", Polynomial.coerce(self.m0))

    def multiplicity(self) -> ParamPolynomial:
        """Slope-one lower bound ``m0 + (t - t1)`` for the multiplicity along the surface."""
        return _T + (self.m0 - self.t1)


@dataclass(frozen=True)
class SurfaceCollapse:
    surfaces: tuple[Surface, ...]
    kind = "surface_collapse"

    def __post_init__(self):
        object.__setattr__(self, "surfaces", tuple(self.surfaces))
        if not self.surfaces:
            raise ValueError("SurfaceCollapse needs at least one surface")

    @property
    def total_multiplicity(self) -> int:
        return sum(sf.m for sf in self.surfaces)


SliceConstraint = Union[SimplexCap, CurveHull, VCurve, SurfaceCollapse]


@dataclass(frozen=True)
class VolumeTarget:
    threshold: Fraction
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "threshold", Fraction(self.threshold))
        if self.threshold <= 0:
            raise ValueError("volume threshold must be positive")


# ---------------------------------------------------------------------------
# constructors


def simplex_cap_area() -> ParamPolynomial:
    return _T**2 / 2


def curve_hull_area(c: CurveHull) -> ParamPolynomial:
    return (_T**2 - (_T - c.t_C) ** 2) / 2


def vcurve_breakpoint(v: VCurve) -> Polynomial:
    return v.t_C * Fraction(v.q, v.q - 1)


def vcurve_pieces(v: VCurve) -> tuple[ParamPolynomial, ParamPolynomial]:
    rising = (_T**2 - v.q * (_T - v.t_C) ** 2) / 2
    flat = ParamPolynomial.coerce(v.t_C**2 * Fraction(v.q, 2 * (v.q - 1)))
    return rising, flat


def vcurve_profile(v: VCurve, t_end=None) -> tuple[Segment, Segment]:
    """The two ``V_C`` pieces: rising on ``[t_C, q t_C/(q-1)]``, then constant.

    The constant piece has no natural end; it runs to ``t_end`` (default
    ``3 t_C``, the width bound for a non-degenerate curve through the origin).
    """
    bp = vcurve_breakpoint(v)
    end = Polynomial.coerce(t_end) if t_end is not None else v.t_C * 3
    rising, flat = vcurve_pieces(v)
    return Segment(v.t_C, bp, rising, (v,)), Segment(bp, end, flat, (v,))


def surface_width(sc: SurfaceCollapse) -> ParamPolynomial:
    width = _T
    for sf in sc.surfaces:
        width = width - sf.multiplicity() * sf.m
    return width


def collapse_time(sc: SurfaceCollapse) -> Polynomial:
    """The t at which the triangle width reaches zero."""
    width = surface_width(sc)
    slope = width.coeff(1)
    if slope.is_zero():
        raise ValueError("total surface multiplicity 1 gives a constant width; no collapse time")
    return -width.coeff(0) / slope.constant_value()


def surface_collapse_area(sc: SurfaceCollapse) -> tuple[ParamPolynomial, Polynomial | None]:
    area = surface_width(sc) ** 2 / 2
    ct = collapse_time(sc) if sc.total_multiplicity >= 2 else None
    return area, ct


# ---------------------------------------------------------------------------
# per-segment use of a constraint


def _require_le(kind, a, b, I, seg_index, what) -> list[Violation]:
    if poly_le(a, b, I):
        return []
    diff = Polynomial.coerce(b) - Polynomial.coerce(a)
    return [Violation(kind, what, seg_index, diff, negative_witness(diff, I))]


def constraint_bound(
    c: SliceConstraint, t_from, t_to, I: RationalInterval, seg_index: int | None = None
) -> tuple[ParamPolynomial | None, list[Violation]]:
    """Area bound that ``c`` provides on ``[t_from, t_to]``, plus domain violations."""
    t_from, t_to = Polynomial.coerce(t_from), Polynomial.coerce(t_to)
    if isinstance(c, SimplexCap):
        return simplex_cap_area(), []
    if isinstance(c, CurveHull):
        v = _require_le("constraint-domain", Polynomial(), c.t_C, I, seg_index, f"curve entry time {c.t_C} is negative")
        v += _require_le("constraint-domain", c.t_C, t_from, I, seg_index, f"segment starts before curve entry time {c.t_C}")
        return curve_hull_area(c), v
    if isinstance(c, VCurve):
        v = _require_le("constraint-domain", c.t_C, t_from, I, seg_index, f"segment starts before curve entry time {c.t_C}")
        bp = vcurve_breakpoint(c)
        rising, flat = vcurve_pieces(c)
        if poly_le(t_to, bp, I):
            return rising, v
        if poly_le(bp, t_from, I):
            return flat, v
        v.append(Violation("constraint-domain", f"segment straddles the V_C breakpoint {bp} (q = {c.q})", seg_index))
        return None, v
    if isinstance(c, SurfaceCollapse):
        v = []
        for sf in c.surfaces:
            v += _require_le("constraint-domain", Polynomial(), sf.t1, I, seg_index, f"surface entry time {sf.t1} is negative")
            v += _require_le("constraint-domain", Polynomial(), sf.m0, I, seg_index, f"surface entry multiplicity {sf.m0} is negative")
            v += _require_le("constraint-domain", sf.t1, t_from, I, seg_index, f"segment starts before surface entry time {sf.t1}")
        width = surface_width(c)
        for end in (t_from, t_to):
            w = width.substitute_t(end)
            if not is_nonnegative(w, I):
                v.append(Violation("negative-width", "surface triangle width is negative; split at the collapse time", seg_index, w, negative_witness(w, I)))
        return width**2 / 2, v
    raise TypeError(f"unknown slice constraint {c!r}")


@dataclass(frozen=True)
class SoundnessCheck:
    """Whether a segment's declared area covers the bound of some valid constraint."""

    ok: bool
    active: SliceConstraint | None
    violations: tuple[Violation, ...]


def segment_soundness(seg: Segment, I: RationalInterval, seg_index: int | None = None) -> SoundnessCheck:
    """The declared area must be at least one constraint's bound on the whole segment.

    The simplex cap holds everywhere and is always tried last.  Declared
    constraints whose domain conditions fail are reported even when another
    constraint is active.
    """
    violations: list[Violation] = []
    candidates = list(seg.constraints)
    if not any(isinstance(c, SimplexCap) for c in candidates):
        candidates.append(SimplexCap())
    active = None
    for c in candidates:
        bound, v = constraint_bound(c, seg.t_from, seg.t_to, I, seg_index)
        violations += v
        if v or bound is None or active is not None:
            continue
        if region_nonnegative(seg.area - bound, seg.t_from, seg.t_to, I).ok:
            active = c
    if active is None:
        violations.append(
            Violation("unsound", f"area {seg.area} does not cover the bound of any declared constraint", seg_index)
        )
    return SoundnessCheck(not violations, active, tuple(violations))


def cap_inclusion(seg: Segment, I: RationalInterval) -> RegionCheck:
    """Area never exceeds the simplex cap ``t**2/2``."""
    return region_nonnegative(simplex_cap_area() - seg.area, seg.t_from, seg.t_to, I)


# ---------------------------------------------------------------------------
# volume against threshold


@dataclass(frozen=True)
class VolumeComparison:
    verdict: Sign
    holds: bool
    sup_lo: Fraction
    sup_hi: Fraction
    argmax: Fraction
    sup_exact: bool
    margin_lo: Fraction
    margin_hi: Fraction


def compare_volume(vol, target, I: RationalInterval, width_tol=Fraction(1, 10**9)) -> VolumeComparison:
    """Decide ``vol < threshold`` (or ``<=`` when not strict) over ``I``.

    ``target`` may be a VolumeTarget, a rational, or a polynomial threshold.
    """
    vol = Polynomial.coerce(vol)
    if isinstance(target, VolumeTarget):
        threshold, strict = Polynomial.const(target.threshold), target.strict
    else:
        threshold, strict = Polynomial.coerce(target), True
    gap = threshold - vol
    verdict = sign_on_interval(gap, I)
    holds = verdict is Sign.POSITIVE if strict else is_nonnegative(gap, I)
    if not strict and holds:
        verdict = Sign.POSITIVE
    enc = sup_enclosure(vol, I, width_tol)
    if threshold.is_constant():
        th = threshold.constant_value()
        m_lo, m_hi = th - enc.hi, th - enc.lo
    else:
        g = sup_enclosure(-gap, I, width_tol)
        m_lo, m_hi = -g.hi, -g.lo
    return VolumeComparison(verdict, holds, enc.lo, enc.hi, enc.argmax, enc.exact, m_lo, m_hi)
