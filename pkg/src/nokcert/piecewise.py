"""Piecewise slice-area profiles over the t-axis and their validity checks.

A profile is a list of segments ``[t_from(s), t_to(s)]`` with a polynomial area
bound on each.  All checks are exact and quantify over the whole parameter
interval; bivariate questions are reduced to univariate sign decisions in s.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .exact import (
    ParamPolynomial,
    Polynomial,
    RationalInterval,
    Sign,
    is_nonnegative,
    negative_witness,
    param_definite_integral,
)


@dataclass(frozen=True)
class Segment:
    t_from: Polynomial
    t_to: Polynomial
    area: ParamPolynomial
    constraints: tuple[Any, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "t_from", Polynomial.coerce(self.t_from))
        object.__setattr__(self, "t_to", Polynomial.coerce(self.t_to))
        object.__setattr__(self, "area", ParamPolynomial.coerce(self.area))
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def length(self) -> Polynomial:
        return self.t_to - self.t_from


@dataclass(frozen=True)
class PiecewiseProfile:
    segments: tuple[Segment, ...]
    param_interval: RationalInterval

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def mu_cap(self) -> Polynomial:
        """Right end of the last segment: the profile's width bound."""
        return self.segments[-1].t_to if self.segments else Polynomial()


_PARAM_RE = re.compile(r"(?<![\w'])s(?![\w'])")


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    segment: int | None = None
    witness: Any = None
    sample: Fraction | None = None

    def __str__(self):
        return self.render()

    def render(self, param: str = "s") -> str:
        """Human-readable text with the parameter printed as ``param``."""
        out = self.message
        if self.segment is not None:
            out = f"segment {self.segment}: {out}"
        if self.witness is not None:
            out += f" [witness: {self.witness}"
            if self.sample is not None:
                out += f" < 0 at s = {self.sample}"
            out += "]"
        return _PARAM_RE.sub(param, out) if param != "s" else out


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    violations: tuple[Violation, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class RegionCheck:
    """Outcome of deciding ``D(t, s) >= 0`` over a region between two t-curves."""

    verdict: Sign
    strategy: str
    witness: Polynomial | None = None
    sample_s: Fraction | None = None
    sample_t: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.verdict is Sign.POSITIVE


def _witness_samples(interval: RationalInterval) -> list[Fraction]:
    lo, hi = interval.lo, interval.hi
    return sorted({lo + (hi - lo) * Fraction(k, 8) for k in range(9)})


def _search_counterexample(D, t_lo, t_hi, interval) -> RegionCheck | None:
    for s0 in _witness_samples(interval):
        a, b = t_lo(s0), t_hi(s0)
        if a > b:
            continue
        g = D.at_param(s0)
        sub = RationalInterval(a, b)
        if not is_nonnegative(g, sub):
            return RegionCheck(Sign.MIXED, "counterexample", sample_s=s0, sample_t=negative_witness(g, sub))
    return None


def region_nonnegative(
    D: ParamPolynomial,
    t_lo: Polynomial,
    t_hi: Polynomial,
    interval: RationalInterval,
    depth: int = 2,
) -> RegionCheck:
    """Decide ``D(t, s) >= 0`` for ``s`` in the interval and ``t_lo(s) <= t <= t_hi(s)``.

    Reductions, tried in order: zero / t-free difference, perfect square in t,
    endpoint values plus linearity or concavity, vertex location for convex
    quadratics with a polynomial vertex, and monotonicity in t (recursively on
    the t-derivative).  When none applies and no counterexample turns up on a
    parameter grid, the verdict is UNKNOWN; callers must treat that as failure.
    """
    D = ParamPolynomial.coerce(D)
    t_lo, t_hi = Polynomial.coerce(t_lo), Polynomial.coerce(t_hi)
    if D.is_zero():
        return RegionCheck(Sign.POSITIVE, "identically-zero")
    if D.is_t_free():
        d = D.as_param_poly()
        if is_nonnegative(d, interval):
            return RegionCheck(Sign.POSITIVE, "t-free")
        return RegionCheck(Sign.MIXED, "t-free", d, negative_witness(d, interval))

    n = D.degree_t
    c2 = D.coeff(2)
    vertex = None
    if n == 2 and c2.is_constant() and c2.constant_value() > 0:
        vertex = -D.coeff(1) / (2 * c2.constant_value())
        if D.substitute_t(vertex).is_zero():
            return RegionCheck(Sign.POSITIVE, "perfect-square")

    for end in (t_lo, t_hi):
        e = D.substitute_t(end)
        if not is_nonnegative(e, interval):
            s0 = negative_witness(e, interval)
            return RegionCheck(Sign.MIXED, "endpoint", e, s0, end(s0) if s0 is not None else None)

    if n == 1:
        return RegionCheck(Sign.POSITIVE, "linear-in-t")
    if n == 2:
        if is_nonnegative(-c2, interval):
            return RegionCheck(Sign.POSITIVE, "concave-in-t")
        if vertex is not None:
            if is_nonnegative(t_lo - vertex, interval) or is_nonnegative(vertex - t_hi, interval):
                return RegionCheck(Sign.POSITIVE, "monotone-past-vertex")
            if is_nonnegative(D.substitute_t(vertex), interval):
                return RegionCheck(Sign.POSITIVE, "vertex")
    if depth > 0:
        dD = D.derivative_t()
        if region_nonnegative(dD, t_lo, t_hi, interval, depth - 1).ok:
            return RegionCheck(Sign.POSITIVE, "nondecreasing-in-t")
        if region_nonnegative(-dD, t_lo, t_hi, interval, depth - 1).ok:
            return RegionCheck(Sign.POSITIVE, "nonincreasing-in-t")
    found = _search_counterexample(D, t_lo, t_hi, interval)
    return found or RegionCheck(Sign.UNKNOWN, "no-reduction", D)


def poly_le(a: Polynomial, b: Polynomial, interval: RationalInterval) -> bool:
    """``a(s) <= b(s)`` throughout the (closed) interval."""
    return is_nonnegative(Polynomial.coerce(b) - Polynomial.coerce(a), interval)


# ---------------------------------------------------------------------------
# operations


def profile_validate(p: PiecewiseProfile) -> ValidationResult:
    I = p.param_interval
    out: list[Violation] = []
    if not p.segments:
        out.append(Violation("empty", "profile has no segments"))
        return ValidationResult(False, tuple(out))
    if not p.segments[0].t_from.is_zero():
        out.append(Violation("contiguity", f"first segment starts at {p.segments[0].t_from}, not 0", 0))
    for i, seg in enumerate(p.segments):
        if i and seg.t_from != p.segments[i - 1].t_to:
            out.append(
                Violation(
                    "contiguity",
                    f"starts at {seg.t_from} but previous segment ends at {p.segments[i - 1].t_to}",
                    i,
                )
            )
        length = seg.length
        if not is_nonnegative(length, I):
            out.append(
                Violation("ordering", "breakpoints cross inside the parameter range", i, length, negative_witness(length, I))
            )
            continue
        chk = region_nonnegative(seg.area, seg.t_from, seg.t_to, I)
        if not chk.ok:
            out.append(
                Violation(
                    "negative-area" if chk.verdict is Sign.MIXED else "undecided-area",
                    f"area {seg.area} is not certified nonnegative ({chk.strategy})",
                    i,
                    chk.witness if chk.witness is not None else seg.area,
                    chk.sample_s,
                )
            )
    return ValidationResult(not out, tuple(out))


def profile_volume(p: PiecewiseProfile) -> Polynomial:
    vol = Polynomial()
    for seg in p.segments:
        vol = vol + param_definite_integral(seg.area, seg.t_from, seg.t_to)
    return vol


def area_at(p: PiecewiseProfile, s0, t0) -> Fraction:
    """Value of the profile at ``(s0, t0)``; segments are closed on the left.

    Points past the last breakpoint evaluate to 0.
    """
    s0, t0 = Fraction(s0), Fraction(t0)
    live = [seg for seg in p.segments if seg.t_to(s0) > seg.t_from(s0)]
    for k, seg in enumerate(live):
        a, b = seg.t_from(s0), seg.t_to(s0)
        if a <= t0 < b or (k == len(live) - 1 and t0 == b):
            return seg.area(s0, t0)
    return Fraction(0)


def profile_continuity(p: PiecewiseProfile, s0) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Breakpoints ``(t, left value, right value)`` where the profile jumps at ``s = s0``."""
    s0 = Fraction(s0)
    if s0 not in p.param_interval.closure():
        raise ValueError(f"s0 = {s0} lies outside {p.param_interval}")
    live = [seg for seg in p.segments if seg.t_to(s0) > seg.t_from(s0)]
    jumps = []
    for left, right in zip(live, live[1:]):
        t = left.t_to(s0)
        a, b = left.area(s0, t), right.area(s0, t)
        if a != b:
            jumps.append((t, a, b))
    return jumps


def _clip(seg: Segment, t_range, I: RationalInterval):
    lo, hi = seg.t_from, seg.t_to
    if t_range is not None:
        r_lo, r_hi = t_range
        if r_lo is not None:
            r_lo = Polynomial.coerce(r_lo)
            if poly_le(lo, r_lo, I):
                lo = r_lo
            elif not poly_le(r_lo, lo, I):
                raise ValueError(f"range start {r_lo} crosses segment start {lo}")
        if r_hi is not None:
            r_hi = Polynomial.coerce(r_hi)
            if poly_le(r_hi, hi, I):
                hi = r_hi
            elif not poly_le(hi, r_hi, I):
                raise ValueError(f"range end {r_hi} crosses segment end {hi}")
    if poly_le(lo, hi, I):
        return lo, hi
    if poly_le(hi, lo, I):
        return None
    raise ValueError("clipped segment changes orientation inside the parameter range")


def _combine(checks: Sequence[RegionCheck]) -> Sign:
    verdicts = {c.verdict for c in checks}
    if Sign.MIXED in verdicts:
        return Sign.MIXED
    if Sign.UNKNOWN in verdicts:
        return Sign.UNKNOWN
    return Sign.POSITIVE


def segment_dominance(seg: Segment, cap, I: RationalInterval, t_range=None) -> RegionCheck:
    """Check ``cap - area >= 0`` on one segment (optionally clipped to ``t_range``)."""
    span = _clip(seg, t_range, I)
    if span is None:
        return RegionCheck(Sign.POSITIVE, "empty")
    return region_nonnegative(ParamPolynomial.coerce(cap) - seg.area, span[0], span[1], I)


def profile_dominance(p: PiecewiseProfile, cap=None, t_range=None) -> Sign:
    """POSITIVE iff every segment's area lies under ``cap`` (default ``t**2/2``)."""
    if cap is None:
        cap = ParamPolynomial.t() ** 2 / 2
    return _combine([segment_dominance(seg, cap, p.param_interval, t_range) for seg in p.segments])


def profile_nonincreasing_after(p: PiecewiseProfile, t0) -> Sign:
    I = p.param_interval
    checks = []
    for seg in p.segments:
        span = _clip(seg, (t0, None), I)
        if span is None:
            continue
        checks.append(region_nonnegative(-seg.area.derivative_t(), span[0], span[1], I))
    return _combine(checks)
