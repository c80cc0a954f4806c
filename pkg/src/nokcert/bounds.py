"""Numeric gates and caps for multiplicity dynamics.

Every comparison is exact.  Boundary cases return the conservative verdict:
a strict gate evaluated at equality fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    ParamPolynomial,
    Polynomial,
    RationalInterval,
    Scalar,
    Sign,
    is_nonnegative,
    is_nonnegative_from,
    sign_on_interval,
)


@dataclass(frozen=True)
class LinearBound:
    """``m(t) >= base + slope * (t - start)`` for ``t >= start``."""

    start: Polynomial
    base: Polynomial
    slope: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "start", Polynomial.coerce(self.start))
        object.__setattr__(self, "base", Polynomial.coerce(self.base))
        object.__setattr__(self, "slope", Fraction(self.slope))
        if self.slope < 1:
            raise ValueError("multiplicity functions have slope at least one")


@dataclass(frozen=True)
class GeometricGates:
    """Normalized hypotheses: ``B^3``, and strict floors on ``B.C`` and ``B^2.S``."""

    B_cubed: Fraction
    curve_degree_floor: Fraction
    surface_degree_floor: Fraction

    def __post_init__(self):
        for name in ("B_cubed", "curve_degree_floor", "surface_degree_floor"):
            v = Fraction(getattr(self, name))
            if v <= 0:
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, v)


# L^3 > 59 (p+2)^3, L^2.S > 4 (p+2)^2, L.C > 2 (p+2) after dividing by p + 2
MAIN_THEOREM_GATES = GeometricGates(59, 2, 4)


def _le_on(a, b, interval) -> bool:
    a, b = ParamPolynomial.coerce(a), ParamPolynomial.coerce(b)
    diff = b - a
    if diff.is_zero():
        return True
    if not diff.is_t_free():
        raise ValueError("comparison involves the slice variable t")
    d = diff.as_param_poly()
    if d.is_constant():
        return d.constant_value() >= 0
    if interval is None:
        raise ValueError("a parameter interval is needed to compare parameter-dependent values")
    return is_nonnegative(d, interval)


def slope_propagate(b: LinearBound, t, interval: RationalInterval | None = None):
    """Guaranteed multiplicity at ``t``: ``base + (t - start)``.

    Only the slope-one floor is used, whatever slope is declared.  ``t`` may
    be a rational, a polynomial in the parameter, or an expression in the
    slice variable; in the last case the range check is left to the caller.
    """
    t = ParamPolynomial.coerce(t)
    if t.is_t_free() and not _le_on(b.start, t, interval):
        raise ValueError(f"t = {t.as_param_poly()} lies before the entry time {b.start}")
    out = t + (b.base - b.start)
    return out.as_param_poly() if out.is_t_free() else out


def mult_cap_check(b: LinearBound, interval: RationalInterval | None = None) -> Sign:
    """Multiplicity at a point never exceeds t: ``t - m(t) = start - base >= 0``."""
    d = b.start - b.base
    if d.is_constant():
        return Sign.POSITIVE if d.constant_value() >= 0 else Sign.NEGATIVE
    if interval is None:
        raise ValueError("a parameter interval is needed for parameter-dependent bounds")
    if is_nonnegative(d, interval):
        return Sign.POSITIVE
    return Sign.NEGATIVE if sign_on_interval(d, interval) is Sign.NEGATIVE else Sign.MIXED


def sum_locus_time(threshold, b: LinearBound, interval: RationalInterval | None = None) -> Polynomial:
    """First t with ``base + (t - start) >= threshold``, never earlier than ``start``."""
    threshold = Polynomial.coerce(threshold)
    excess = threshold - b.base
    if excess.is_constant():
        return b.start + max(excess.constant_value(), Fraction(0))
    if interval is not None and is_nonnegative(excess, interval):
        return b.start + excess
    if interval is not None and is_nonnegative(-excess, interval):
        return b.start
    raise ValueError("threshold and base cross; pass a parameter interval on which they are ordered")


def adjunction_eps_cap(t, degree_floor: Scalar):
    """Strict upper bound ``t (1 - d) + 3 d`` on the Seshadri constant.

    Failing both cutting-down gates at level ``t > 3`` leaves
    ``d < B.C <= (t - eps)/(t - 3)``, which rearranges to this cap.
    """
    d = Fraction(degree_floor)
    if d < 1:
        raise ValueError("degree floor must be at least 1")
    if isinstance(t, (int, Fraction)):
        t = Fraction(t)
        if t <= 3:
            raise ValueError("adjunction cap needs t > 3")
        return t * (1 - d) + 3 * d
    if isinstance(t, ParamPolynomial):
        return t * (1 - d) + 3 * d
    return Polynomial.coerce(t) * (1 - d) + 3 * d


def adjunction_success_gate(t: Scalar, c: Scalar, eps: Scalar, dim: int = 3) -> bool:
    """Strict gate ``t c + eps (1 - c) > dim``."""
    c = Fraction(c)
    if not 0 < c <= 1:
        raise ValueError("log-canonical threshold c must lie in (0, 1]")
    return Fraction(t) * c + Fraction(eps) * (1 - c) > dim


def adjunction_failure_c_bound(t: Scalar, eps: Scalar, dim: int = 3) -> Fraction:
    """Largest c for which the success gate fails: ``(dim - eps)/(t - eps)``."""
    t, eps = Fraction(t), Fraction(eps)
    if t <= eps:
        raise ValueError("need t > eps")
    return (dim - eps) / (t - eps)


def curve_cut_gate(one_minus_c: Scalar, deg_BC: Scalar) -> bool:
    a, d = Fraction(one_minus_c), Fraction(deg_BC)
    if a <= 0 or d <= 0:
        raise ValueError("inputs must be positive")
    return a * d > 1


def debarre_min_mult(B_cubed: Scalar, eps_cap: Scalar) -> int:
    """Least integer q with ``(q eps_cap)^3 >= 27 B^3 / 6``.

    A non-degenerate curve has ``B.C >= 3 (B^3/6)^(1/3)``; with
    ``B.C = q eps`` and ``eps <= eps_cap`` this forces ``q`` up.  Cubes are
    compared exactly.
    """
    B3, e = Fraction(B_cubed), Fraction(eps_cap)
    if B3 <= 0 or e <= 0:
        raise ValueError("inputs must be positive")
    need = 27 * B3 / 6
    q = 1
    while (q * e) ** 3 < need:
        q += 1
    return q


def debarre_degree_exceeds(B_cubed: Scalar, d: Scalar) -> bool:
    """Whether ``3 (B^3/6)^(1/3) > d``, i.e. ``27 B^3 / 6 > d^3``."""
    return 27 * Fraction(B_cubed) / 6 > Fraction(d) ** 3


def hodge_surface_cap(deg_BC: Scalar, C_sq_floor: Scalar) -> Fraction:
    """``B^2.S <= (B.C)^2 / C^2``."""
    c2 = Fraction(C_sq_floor)
    if c2 <= 0:
        raise ValueError("C^2 floor must be positive")
    return Fraction(deg_BC) ** 2 / c2


def abelian_hodge_cap(eps: Scalar, q_scan: int = 12) -> tuple[int, Fraction]:
    """Maximize ``(q eps)^2 / (q^2 - q + 2)`` over integers ``q >= 2``.

    Returns the maximizing q and the cap.  The scan is certified: the value at
    the best q bounds every larger q by an exact check on ``[q_scan, inf)``.
    """
    eps = Fraction(eps)
    values = {q: hodge_surface_cap(q * eps, q * q - q + 2) for q in range(2, q_scan + 1)}
    q_best = max(values, key=lambda q: (values[q], -q))
    ratio = values[q_best] / eps**2
    # ratio * (q^2 - q + 2) - q^2 >= 0 for all real q >= q_scan
    tail = Polynomial((2 * ratio, -ratio, ratio - 1))
    if not is_nonnegative_from(tail, q_scan):
        raise ArithmeticError("scan range too small to certify the maximum")
    return q_best, values[q_best]


def seshadri_width_cap(q: int, eps: Scalar) -> Fraction:
    """``mu <= q eps / (q - 1)`` for a Seshadri curve of multiplicity q."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return Fraction(q) * Fraction(eps) / (q - 1)


def remark_ts_cap(q: int, eps: Scalar) -> Fraction:
    """``t_S <= q^2 eps / (q^2 - q + 2)`` when ``S = C + C`` is abelian."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return Fraction(q * q) * Fraction(eps) / (q * q - q + 2)


def mu_floor_from_volume(B_cubed: Scalar, m: Scalar) -> bool:
    """Certify ``mu > m`` from ``mu^3 >= B^3``: holds iff ``m^3 < B^3``."""
    B3 = Fraction(B_cubed)
    if B3 <= 0:
        raise ValueError("B^3 must be positive")
    return Fraction(m) ** 3 < B3
