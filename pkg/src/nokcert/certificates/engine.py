"""Verification engine: turns a scenario into an exact verdict.

For each branch the engine checks that every declared area is backed by one
of its constraints and stays under the simplex cap, integrates the profile,
compares the volume polynomial with the threshold by Sturm root counting, and
encloses its supremum.  Anything the region reductions cannot decide counts
as a failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..exact import Polynomial, RationalInterval, Sign, format_decimal, format_rational, isolate_roots
from ..piecewise import Violation, profile_dominance, profile_volume
from ..slice_model import VolumeComparison, VolumeTarget, cap_inclusion, compare_volume, segment_soundness
from .oracle import numeric_crosscheck, shoelace_suite, vc_continuity_suite
from .report import VerificationReport
from .scenario import Scenario, builtin_names, load_builtin

DEFAULT_SEED = 1729
DEFAULT_WIDTH_TOL = Fraction(1, 10**9)


@dataclass(frozen=True)
class BranchResult:
    interval: RationalInterval
    volume: Polynomial
    comparison: VolumeComparison
    active: tuple[str, ...]
    violations: tuple[Violation, ...]

    @property
    def holds(self) -> bool:
        return self.comparison.holds and not self.violations


@dataclass(frozen=True)
class VerificationResult:
    name: str
    param: str
    threshold: Fraction
    branches: tuple[BranchResult, ...]
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def violations(self) -> tuple[Violation, ...]:
        return tuple(v for br in self.branches for v in br.violations)

    @property
    def holds(self) -> bool:
        return all(br.holds for br in self.branches)

    @property
    def verdict(self) -> Sign:
        if self.holds:
            return Sign.POSITIVE
        verdicts = {br.comparison.verdict for br in self.branches}
        if self.violations and Sign.UNKNOWN not in verdicts:
            return Sign.MIXED
        for s in (Sign.NEGATIVE, Sign.MIXED, Sign.IDENTICALLY_ZERO, Sign.UNKNOWN):
            if s in verdicts:
                return s
        return Sign.MIXED

    @property
    def sup_enclosure(self) -> tuple[Fraction, Fraction]:
        return (max(br.comparison.sup_lo for br in self.branches), max(br.comparison.sup_hi for br in self.branches))

    @property
    def argmax(self) -> Fraction:
        best = max(self.branches, key=lambda br: br.comparison.sup_lo)
        return best.comparison.argmax

    @property
    def margin_lower_bound(self) -> Fraction:
        return min(br.comparison.margin_lo for br in self.branches)

    def to_dict(self) -> dict:
        lo, hi = self.sup_enclosure
        return {
            "name": self.name,
            "holds": self.holds,
            "verdict": self.verdict.name.lower(),
            "param": self.param,
            "threshold": format_rational(self.threshold),
            "volume_poly": {
                str(br.interval): [format_rational(c) for c in br.volume.coeffs] for br in self.branches
            },
            "sup_enclosure": [format_rational(lo), format_rational(hi)],
            "argmax": format_rational(self.argmax),
            "margin_lower_bound": format_rational(self.margin_lower_bound),
            "margin_decimal": format_decimal(self.margin_lower_bound),
            "notes": list(self.notes),
            "violations": [v.render(self.param) for v in self.violations],
        }


def _critical_note(vol: Polynomial, I: RationalInterval, param: str) -> str:
    df = vol.derivative()
    if df.is_zero():
        return f"volume is constant on {I}"
    roots = [(a, b) for a, b in isolate_roots(df, I.closure(), Fraction(1, 10**6)) if a != b or a in I]
    if not roots:
        return f"volume has no critical point in {I}; the supremum sits at an endpoint"
    where = ", ".join(
        format_rational(a) if a == b else f"~{format_decimal((a + b) / 2, 8)}" for a, b in roots
    )
    return f"critical points of the volume in {I}: {param} = {where}"


def verify_branch(branch, scenario: Scenario, width_tol=DEFAULT_WIDTH_TOL) -> tuple[BranchResult, list[str]]:
    I = branch.interval
    violations: list[Violation] = []
    active = []
    for i, seg in enumerate(branch.profile.segments):
        sound = segment_soundness(seg, I, i)
        violations += sound.violations
        active.append(sound.active.kind if sound.active is not None else "none")
        inc = cap_inclusion(seg, I)
        if not inc.ok:
            violations.append(
                Violation(
                    "cap-inclusion" if inc.verdict is Sign.MIXED else "undecided-cap-inclusion",
                    f"area exceeds t^2/2 or cannot be certified below it ({inc.strategy})",
                    i,
                    inc.witness,
                    inc.sample_s,
                )
            )
    vol = profile_volume(branch.profile)
    notes = []
    if branch.closed_form is not None:
        if vol == branch.closed_form:
            notes.append(f"volume on {I} matches the declared closed form exactly")
        else:
            violations.append(
                Violation(
                    "closed-form",
                    f"volume {vol.to_str(scenario.param)} differs from the declared closed form",
                    None,
                    vol - branch.closed_form,
                )
            )
    cmp = compare_volume(vol, VolumeTarget(scenario.threshold, scenario.strict), I, width_tol)
    notes.append(_critical_note(vol, I, scenario.param))
    return BranchResult(I, vol, cmp, tuple(active), tuple(violations)), notes


def verify(scenario: Scenario, width_tol=DEFAULT_WIDTH_TOL) -> VerificationResult:
    """Check every branch of ``scenario``; the result holds only if all branches do."""
    branches, notes = [], []
    if scenario.notes:
        notes.append(scenario.notes)
    for br in scenario.branches:
        res, extra = verify_branch(br, scenario, width_tol)
        branches.append(res)
        notes += extra
    result = VerificationResult(scenario.name, scenario.param, scenario.threshold, tuple(branches), ())
    lo, hi = result.sup_enclosure
    rel = "<" if scenario.strict else "<="
    if lo == hi:
        sup_text = f"sup of the volume is {format_rational(lo)} at {scenario.param} = {format_rational(result.argmax)}"
    else:
        sup_text = (
            f"sup of the volume lies in [{format_rational(lo)}, {format_rational(hi)}] "
            f"(~{format_decimal(lo)}) near {scenario.param} = {format_decimal(result.argmax, 8)}"
        )
    notes.append(f"{sup_text}; target volume {rel} {format_rational(scenario.threshold)}")
    return VerificationResult(scenario.name, scenario.param, scenario.threshold, tuple(branches), tuple(notes))


def structural_checks(scenarios, seed: int = DEFAULT_SEED) -> list[dict]:
    """V_C continuity, shoelace oracle, cap dominance and the quadrature cross-check."""
    out = []
    for suite in (vc_continuity_suite(seed=seed), shoelace_suite(seed=seed)):
        out.append({"name": suite.name, "holds": suite.holds, "cases": suite.cases, "detail": suite.detail})
    for sc in scenarios:
        verdicts = [profile_dominance(br.profile) for br in sc.branches]
        ok = all(v is Sign.POSITIVE for v in verdicts)
        out.append(
            {
                "name": f"cap-dominance:{sc.name}",
                "holds": ok,
                "detail": ", ".join(v.name.lower() for v in verdicts),
            }
        )
        cc = numeric_crosscheck(sc, 100, Fraction(1, 10**9), seed)
        out.append(
            {
                "name": f"quadrature:{sc.name}",
                "holds": cc.ok,
                "cases": cc.samples,
                "detail": f"max relative deviation {cc.max_deviation:.3e}",
            }
        )
    return out


def run_suite(scenarios, seed: int = DEFAULT_SEED, width_tol=DEFAULT_WIDTH_TOL, structural: bool = True,
              timestamp: str | None = None) -> VerificationReport:
    scenarios = list(scenarios)
    report = VerificationReport(seed=seed, timestamp=timestamp)
    report.results = [verify(sc, width_tol).to_dict() for sc in scenarios]
    if structural:
        report.structural = structural_checks(scenarios, seed)
    return report


def run_builtin_suite(seed: int = DEFAULT_SEED, width_tol=DEFAULT_WIDTH_TOL, include_stretch: bool = False,
                      timestamp: str | None = None) -> VerificationReport:
    """Verify the built-in certificates plus the structural suites."""
    report = run_suite(
        [load_builtin(n) for n in builtin_names(include_stretch)], seed, width_tol, timestamp=timestamp
    )
    if not include_stretch:
        report.extra["disabled"] = [
            "thm-main-case-3.3-b56: stretch target B^3 > 56 (threshold 28/3), off by default; "
            "the case 3.3 profile peaks at 788/81, so it is expected to fail"
        ]
    return report
