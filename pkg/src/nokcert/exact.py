"""Exact rational scalars, dense polynomials and real-root decision procedures.

Scalars are :class:`fractions.Fraction`.  Polynomials store their coefficients
constant term first.  Everything here is immutable.
"""

from __future__ import annotations

import enum
import math
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class ExactArithmeticError(ArithmeticError):
    """Raised for undefined exact operations (division by zero and friends)."""


# ---------------------------------------------------------------------------
# rationals

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")

_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "−": operator.sub,
    "*": operator.mul,
    "×": operator.mul,
    "/": operator.truediv,
    "÷": operator.truediv,
}


def rat_arith(a: Scalar, b: Scalar, op: str) -> Fraction:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    a, b = Fraction(a), Fraction(b)
    if fn is operator.truediv and b == 0:
        raise ExactArithmeticError(f"division of {format_rational(a)} by zero")
    return fn(a, b)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Decimals and exponents are rejected."""
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    m = _RATIONAL_RE.match(str(text))
    if m is None:
        raise ValueError(f"not a rational literal: {text!r} (expected p or p/q)")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Scalar) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_decimal(x: Scalar, digits: int = 12) -> str:
    """Render an exact rational with ``digits`` significant digits."""
    import decimal

    x = Fraction(x)
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        d = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
    out = format(d, "f") if abs(d.adjusted()) < digits else str(d)
    if "." in out and "E" not in out:
        out = out.rstrip("0").rstrip(".")
    return "0" if out in ("-0", "") else out


# ---------------------------------------------------------------------------
# univariate polynomials


def _strip(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Polynomial:
    """Dense univariate polynomial over Q.  ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def coerce(cls, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Polynomial")

    # -- structure
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # -- arithmetic
    def __add__(self, other):
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ExactArithmeticError("polynomial division by zero")
            return Polynomial(c / other for c in self.coeffs)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = Polynomial.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        other = Polynomial.coerce(other)
        if other.is_zero():
            raise ExactArithmeticError("polynomial division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lc
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- evaluation and calculus
    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def antiderivative(self) -> "Polynomial":
        return Polynomial([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """Return ``self(inner(x))``."""
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, a: Scalar) -> "Polynomial":
        """Taylor coefficients at ``a``: returns ``g`` with ``g(x) = self(x + a)``."""
        return self.compose(Polynomial((a, 1)))

    def monic(self) -> "Polynomial":
        return self / self.lc if self.coeffs else self

    def primitive(self) -> "Polynomial":
        """Positive rational multiple with coprime integer coefficients."""
        if not self.coeffs:
            return self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        return Polynomial(Fraction(v, g) for v in ints)

    # -- printing
    def to_str(self, var: str = "s") -> str:
        return _format_terms([(c, {var: i}) for i, c in enumerate(self.coeffs)])

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"


def _format_terms(terms) -> str:
    parts = []
    for c, powers in terms:
        if c == 0:
            continue
        mono = "*".join(
            v if p == 1 else f"{v}^{p}" for v, p in sorted(powers.items()) if p
        )
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        elif mag.denominator == 1:
            body = f"{mag.numerator}*{mono}"
        else:
            body = f"{mag.numerator}*{mono}/{mag.denominator}" if mag.numerator != 1 else f"{mono}/{mag.denominator}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_eval(f: Polynomial, x: Scalar) -> Fraction:
    return Fraction(f(Fraction(x)))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(f: Polynomial) -> Polynomial:
    if f.degree <= 0:
        return f
    return (f // poly_gcd(f, f.derivative())).primitive()


def squarefree_decomposition(f: Polynomial) -> list[Polynomial]:
    """Yun's algorithm: monic ``a[0], a[1], ...`` with ``f = lc * prod a[i]**(i+1)``."""
    if f.degree <= 0:
        return []
    f = f.monic()
    fp = f.derivative()
    b = poly_gcd(f, fp)
    c = f // b
    d = fp // b - c.derivative()
    factors = []
    while c.degree > 0:
        a = poly_gcd(c, d)
        factors.append(a)
        c = c // a
        d = d // a - c.derivative()
    return factors


def odd_part(f: Polynomial) -> Polynomial:
    """Product of the squarefree factors that occur with odd multiplicity."""
    out = Polynomial.const(1)
    for i, a in enumerate(squarefree_decomposition(f)):
        if i % 2 == 0:
            out = out * a
    return out


# ---------------------------------------------------------------------------
# intervals and verdicts


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction
    open_lo: bool = False
    open_hi: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")
        if self.lo == self.hi and (self.open_lo or self.open_hi):
            raise ValueError("degenerate interval cannot have an open endpoint")

    @classmethod
    def closed(cls, lo: Scalar, hi: Scalar) -> "RationalInterval":
        return cls(Fraction(lo), Fraction(hi))

    def closure(self) -> "RationalInterval":
        return RationalInterval(self.lo, self.hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and self.open_lo:
            return False
        return not (x == self.hi and self.open_hi)

    def __str__(self):
        return (
            ("(" if self.open_lo else "[")
            + f"{format_rational(self.lo)}, {format_rational(self.hi)}"
            + (")" if self.open_hi else "]")
        )


class Sign(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    IDENTICALLY_ZERO = "identically_zero"
    MIXED = "mixed"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


# ---------------------------------------------------------------------------
# Sturm sequences


def sturm_sequence(f: Polynomial) -> list[Polynomial]:
    """Sturm chain of the squarefree part of ``f``, each member scaled primitive."""
    p0 = squarefree_part(f).primitive()
    if p0.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p0]
    if p0.degree == 0:
        return seq
    seq.append(p0.derivative().primitive())
    while True:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            return seq
        seq.append((-r).primitive())


def sign_variations(seq: Sequence[Polynomial], x: Fraction) -> int:
    count, prev = 0, 0
    for p in seq:
        v = p(x)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _count_half_open(seq, a: Fraction, b: Fraction) -> int:
    # distinct roots in (a, b]
    return sign_variations(seq, a) - sign_variations(seq, b)


def sturm_root_count(f: Polynomial, interval: RationalInterval) -> int:
    """Number of distinct real roots of ``f`` in ``(lo, hi]``."""
    if f.is_zero():
        raise ValueError("root count of the zero polynomial is undefined")
    if interval.lo == interval.hi:
        return 0
    return _count_half_open(sturm_sequence(f), interval.lo, interval.hi)


def roots_in(f: Polynomial, interval: RationalInterval) -> int:
    """Distinct roots in the interval honouring its open/closed endpoints."""
    if interval.lo == interval.hi:
        return int(f(interval.lo) == 0)
    n = sturm_root_count(f, interval)
    if not interval.open_lo and f(interval.lo) == 0:
        n += 1
    if interval.open_hi and f(interval.hi) == 0:
        n -= 1
    return n


def _sample_point(interval: RationalInterval) -> Fraction:
    return interval.midpoint


def sign_on_interval(f: Polynomial, interval: RationalInterval) -> Sign:
    """Exact sign of ``f`` on the interval.

    POSITIVE means ``f(x) > 0`` at every point of the interval (open endpoints
    excluded); MIXED covers any zero or sign change.
    """
    if f.is_zero():
        return Sign.IDENTICALLY_ZERO
    if roots_in(f, interval):
        return Sign.MIXED
    v = f(_sample_point(interval))
    return Sign.POSITIVE if v > 0 else Sign.NEGATIVE


def is_nonnegative(f: Polynomial, interval: RationalInterval) -> bool:
    """Decide ``f >= 0`` on the closure of ``interval``."""
    if f.is_zero():
        return True
    if interval.lo == interval.hi:
        return f(interval.lo) >= 0
    h = odd_part(f)
    if h.degree > 0:
        inner = RationalInterval(interval.lo, interval.hi, True, True)
        if roots_in(h, inner):
            return False
    # f = h * q where q has only even-multiplicity roots, so sign(q) = sign(lc q)
    q = f // h if h.degree > 0 else f
    return (q.lc > 0) == (h(interval.midpoint) > 0)


def cauchy_root_bound(f: Polynomial) -> Fraction:
    if f.degree <= 0:
        return Fraction(0)
    lc = abs(f.lc)
    return 1 + max(abs(c) / lc for c in f.coeffs[:-1])


def is_nonnegative_from(f: Polynomial, a: Scalar) -> bool:
    """Decide ``f >= 0`` on the unbounded ray ``[a, +inf)``."""
    a = Fraction(a)
    if f.degree <= 0:
        return f.is_zero() or f.lc > 0
    if f.lc < 0:
        return False
    hi = max(a, cauchy_root_bound(f)) + 1
    return is_nonnegative(f, RationalInterval(a, hi))


def negative_witness(f: Polynomial, interval: RationalInterval) -> Fraction | None:
    """A point of the closed interval where ``f < 0``, if one is found."""
    candidates = [interval.lo, interval.hi, interval.midpoint]
    if f.degree > 0 and interval.lo < interval.hi:
        for lo, hi in isolate_roots(f, interval.closure()):
            candidates += [lo, hi, (lo + hi) / 2]
    for x in sorted(set(candidates)):
        if f(x) < 0:
            return x
    return None


# ---------------------------------------------------------------------------
# root isolation and suprema


def isolate_roots(
    f: Polynomial, interval: RationalInterval, width: Fraction | None = None
) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the distinct roots of ``f`` in the closed interval.

    Each ``(l, r)`` either has ``l == r`` (an exact rational root) or contains
    exactly one root, strictly inside ``(l, r)``.
    """
    if f.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    lo, hi = interval.lo, interval.hi
    seq = sturm_sequence(f)
    g = seq[0]
    out: list[tuple[Fraction, Fraction]] = []
    if g(lo) == 0:
        out.append((lo, lo))
    if lo == hi:
        return out
    stack = [(lo, hi, _count_half_open(seq, lo, hi))]
    found = []
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            found.append(_refine_one(seq, a, b, width))
            continue
        m = (a + b) / 2
        stack.append((a, m, _count_half_open(seq, a, m)))
        stack.append((m, b, _count_half_open(seq, m, b)))
    return out + sorted(found)


def _refine_one(seq, a: Fraction, b: Fraction, width: Fraction | None):
    # one root in (a, b]; shrink until it is exact or strictly interior
    g = seq[0]
    if g(b) == 0:
        return (b, b)
    while g(a) == 0 or (width is not None and b - a > width):
        m = (a + b) / 2
        if g(m) == 0:
            return (m, m)
        if _count_half_open(seq, a, m):
            b = m
        else:
            a = m
    return (a, b)


@dataclass(frozen=True)
class SupEnclosure:
    """``lo <= max f <= hi``; when ``exact`` both equal ``f(argmax)``."""

    lo: Fraction
    hi: Fraction
    argmax: Fraction
    exact: bool


def simplest_between(a: Scalar, b: Scalar) -> Fraction:
    """The rational with the smallest denominator in ``[a, b]``."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("empty range")
    if a <= 0 <= b:
        return Fraction(0)
    if b < 0:
        return -simplest_between(-b, -a)
    n = math.floor(a)
    if a == n or n + 1 <= b:
        return Fraction(math.ceil(a))
    return n + 1 / simplest_between(1 / (b - n), 1 / (a - n))


def _taylor_upper(f: Polynomial, a: Fraction, b: Fraction) -> Fraction:
    m = (a + b) / 2
    h = (b - a) / 2
    g = f.shift(m)
    return g[0] + sum(abs(c) * h**k for k, c in enumerate(g.coeffs) if k)


def sup_enclosure(f: Polynomial, interval: RationalInterval, width_tol: Scalar) -> SupEnclosure:
    """Rigorous enclosure of ``max f`` over the closure of ``interval``.

    Candidates are the endpoints plus interior local maxima, located as the
    roots of ``f'`` where it changes sign from + to -.  Each local maximum is
    bounded above by a Taylor expansion about its isolating interval's
    midpoint and bisected until the enclosure is narrower than ``width_tol``.
    """
    width_tol = Fraction(width_tol)
    if width_tol <= 0:
        raise ValueError("width_tol must be positive")
    lo_x, hi_x = interval.lo, interval.hi
    best_x, best = max(((lo_x, f(lo_x)), (hi_x, f(hi_x))), key=lambda p: p[1])
    df = f.derivative()
    bumps: list[tuple[Fraction, Fraction]] = []
    if df.degree > 0 and lo_x < hi_x:
        inner = RationalInterval(lo_x, hi_x, True, True)
        for a, b in isolate_roots(df, interval.closure()):
            if a == b:
                if a in inner and f(a) > best:
                    best_x, best = a, f(a)
                continue
            if df(a) > 0 > df(b):
                bumps.append((a, b))
    while True:
        for a, b in bumps:
            for x in (a, b, (a + b) / 2):
                v = f(x)
                if v > best:
                    best_x, best = x, v
        uppers = [_taylor_upper(f, a, b) for a, b in bumps]
        hi = max([best] + uppers)
        if hi - best <= width_tol:
            if hi == best:
                return SupEnclosure(best, hi, best_x, True)
            slack = (width_tol - (hi - best)) / 2
            return SupEnclosure(simplest_between(best - slack, best), simplest_between(hi, hi + slack), best_x, False)
        refined = []
        for (a, b), u in zip(bumps, uppers):
            if u <= best:
                continue
            m = (a + b) / 2
            dm = df(m)
            if dm == 0:
                if f(m) > best:
                    best_x, best = m, f(m)
                continue
            refined.append((m, b) if dm > 0 else (a, m))
        bumps = refined


def poly_sup_enclosure(
    f: Polynomial, interval: RationalInterval, width_tol: Scalar
) -> tuple[Fraction, Fraction]:
    enc = sup_enclosure(f, interval, width_tol)
    return enc.lo, enc.hi


# ---------------------------------------------------------------------------
# polynomials in t with coefficients in the parameter s


class ParamPolynomial:
    """Polynomial in the slice variable ``t`` whose coefficients live in Q[s]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Polynomial.coerce(x) for x in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("ParamPolynomial is immutable")

    @classmethod
    def t(cls) -> "ParamPolynomial":
        return cls((Polynomial(), Polynomial.const(1)))

    @classmethod
    def s(cls) -> "ParamPolynomial":
        return cls((Polynomial.x(),))

    @classmethod
    def coerce(cls, value) -> "ParamPolynomial":
        if isinstance(value, ParamPolynomial):
            return value
        if isinstance(value, (int, Fraction, Polynomial)):
            return cls((Polynomial.coerce(value),))
        raise TypeError(f"cannot convert {type(value).__name__} to ParamPolynomial")

    @property
    def degree_t(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Polynomial:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Polynomial()

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_t_free(self) -> bool:
        return len(self.coeffs) <= 1

    def as_param_poly(self) -> Polynomial:
        if not self.is_t_free():
            raise ValueError(f"{self} depends on t")
        return self.coeff(0)

    def __add__(self, other):
        try:
            other = ParamPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return ParamPolynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return ParamPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        try:
            other = ParamPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            return ParamPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, ParamPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ParamPolynomial()
        out = [Polynomial()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ParamPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ExactArithmeticError("division by zero")
            return ParamPolynomial(c / other for c in self.coeffs)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = ParamPolynomial.coerce(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = ParamPolynomial.coerce(other)
        if not isinstance(other, ParamPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("ParamPolynomial", self.coeffs))

    # -- evaluation
    def at_param(self, s0: Scalar) -> Polynomial:
        """Substitute a rational parameter value; returns a polynomial in t."""
        s0 = Fraction(s0)
        return Polynomial(c(s0) for c in self.coeffs)

    def __call__(self, s0: Scalar, t0: Scalar) -> Fraction:
        return self.at_param(s0)(Fraction(t0))

    def substitute_t(self, q) -> Polynomial:
        """Replace t by a polynomial in s; returns a polynomial in s."""
        q = Polynomial.coerce(q)
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def compose_t(self, q: "ParamPolynomial") -> "ParamPolynomial":
        acc = ParamPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * q + ParamPolynomial.coerce(c)
        return acc

    def derivative_t(self) -> "ParamPolynomial":
        return ParamPolynomial(c * i for i, c in enumerate(self.coeffs) if i)

    def antiderivative_t(self) -> "ParamPolynomial":
        return ParamPolynomial(
            [Polynomial()] + [c / (i + 1) for i, c in enumerate(self.coeffs)]
        )

    def to_str(self, param: str = "s", var: str = "t") -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            for i, a in enumerate(c.coeffs):
                terms.append((a, {param: i, var: j}))
        terms.sort(key=lambda item: (-item[1][var], -item[1][param]))
        return _format_terms(terms)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"ParamPolynomial({self.to_str()!r})"


def param_definite_integral(f: ParamPolynomial, lower, upper) -> Polynomial:
    """Signed integral of ``f`` in t from ``lower(s)`` to ``upper(s)``."""
    F = ParamPolynomial.coerce(f).antiderivative_t()
    return F.substitute_t(upper) - F.substitute_t(lower)
