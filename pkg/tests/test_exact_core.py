"""Exact scalar/polynomial layer, checked against sympy and dense sampling."""

from fractions import Fraction as Fr

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import intervals, nonzero_rationals, polynomials, small_rationals
from nokcert.exact import (
    ExactArithmeticError,
    ParamPolynomial,
    Polynomial,
    RationalInterval,
    Sign,
    format_decimal,
    format_rational,
    is_nonnegative,
    is_nonnegative_from,
    isolate_roots,
    odd_part,
    param_definite_integral,
    parse_rational,
    poly_eval,
    poly_gcd,
    poly_sup_enclosure,
    rat_arith,
    sign_on_interval,
    simplest_between,
    squarefree_decomposition,
    squarefree_part,
    sturm_root_count,
    sup_enclosure,
)

X = sp.Symbol("x")
s = Polynomial.x()
T = ParamPolynomial.t()
S = ParamPolynomial.s()


def to_sympy(f: Polynomial):
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(f.coeffs)])


def sympy_distinct_roots(f: Polynomial, lo, hi, open_lo=True, open_hi=False):
    roots = sp.Poly(to_sympy(f), X).real_roots()
    lo, hi = sp.Rational(lo.numerator, lo.denominator), sp.Rational(hi.numerator, hi.denominator)
    out = set()
    for r in roots:
        above = r > lo if open_lo else r >= lo
        below = r < hi if open_hi else r <= hi
        if above and below:
            out.add(r)
    return len(out)


# -- rationals ----------------------------------------------------------------


def test_rat_arith_examples():
    assert rat_arith(58, 6, "/") == Fr(29, 3)
    assert rat_arith(Fr(56, 6), Fr(64, 162), "+") == Fr(788, 81)
    assert rat_arith(Fr(59, 6), Fr(788, 81), "-") == Fr(17, 162)
    assert rat_arith(Fr(3, 4), Fr(2, 3), "×") == Fr(1, 2)


def test_rat_arith_division_by_zero_is_typed():
    with pytest.raises(ExactArithmeticError):
        rat_arith(1, 0, "/")
    with pytest.raises(ValueError):
        rat_arith(1, 2, "%")


@given(small_rationals, small_rationals)
def test_rational_add_sub_roundtrip(a, b):
    assert rat_arith(rat_arith(a, b, "+"), b, "-") == a
    c = rat_arith(a, b, "+")
    assert c.denominator > 0


def test_parse_and_format_rational():
    assert parse_rational("58/6") == Fr(29, 3)
    assert parse_rational("-7") == -7
    assert format_rational(Fr(-29, 3)) == "-29/3"
    assert format_rational(Fr(4, 2)) == "2"
    for bad in ("1.5", "1/0", "", "3/-4", "a"):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rational(bad)


@given(small_rationals)
def test_rational_string_roundtrip(a):
    assert parse_rational(format_rational(a)) == a


def test_format_decimal_significant_digits():
    assert format_decimal(Fr(1, 3)) == "0.333333333333"
    assert format_decimal(Fr(17, 162)) == "0.104938271605"
    assert format_decimal(0) == "0"
    assert format_decimal(Fr(8, 9)) == "0.888888888889"


# -- polynomial arithmetic ------------------------------------------------------


def test_poly_eval_examples():
    assert poly_eval(Polynomial(), Fr(7, 3)) == 0
    assert poly_eval(Fr(45, 32) * s**3, Fr(3, 2)) == Fr(1215, 256)
    assert poly_eval(4 * s**2 - Fr(32, 27) * s**3, 2) == Fr(176, 27)


def test_zero_polynomial_is_empty():
    assert Polynomial([0, 0]).coeffs == ()
    assert (s - s).is_zero()
    assert Polynomial([1, 2, 0]).degree == 1


def test_calculus_examples():
    half_t2 = s**2 / 2
    assert half_t2.derivative() == s
    assert half_t2.antiderivative() == s**3 / 6
    d = (4 * s**2 - Fr(32, 27) * s**3).derivative()
    assert d == 8 * s - Fr(32, 9) * s**2
    (a, b), = isolate_roots(d, RationalInterval(Fr(1, 100), 10))
    assert a <= Fr(9, 4) <= b and d(Fr(9, 4)) == 0


@given(polynomials(), polynomials())
def test_ring_operations_match_sympy(f, g):
    assert sp.expand(to_sympy(f + g) - to_sympy(f) - to_sympy(g)) == 0
    assert sp.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
    assert sp.expand(to_sympy(f - g) - to_sympy(f) + to_sympy(g)) == 0


@given(polynomials(), polynomials())
def test_divmod_identity(f, g):
    assume(not g.is_zero())
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


@given(polynomials(max_degree=6), small_rationals)
def test_antiderivative_then_derivative(f, x):
    assert f.antiderivative().derivative() == f
    assert f.antiderivative()(0) == 0
    assert poly_eval(f, x) == to_sympy(f).subs(X, sp.Rational(x.numerator, x.denominator))


@given(polynomials(max_degree=3), polynomials(max_degree=2), small_rationals)
def test_compose_and_shift(f, g, x):
    assert f.compose(g)(x) == f(g(x))
    assert f.shift(x)(Fr(1, 3)) == f(x + Fr(1, 3))


def test_gcd_and_squarefree():
    f = (s - 1) ** 3 * (s + 2) ** 2 * (s - 5)
    assert poly_gcd(f, f.derivative()) == ((s - 1) ** 2 * (s + 2)).monic()
    assert squarefree_part(f) == ((s - 1) * (s + 2) * (s - 5)).monic()
    parts = squarefree_decomposition(f)
    assert parts[0] == (s - 5).monic() and parts[1] == (s + 2).monic() and parts[2] == (s - 1).monic()
    assert odd_part(f) == ((s - 1) * (s - 5)).monic()


def test_to_str_readable():
    assert (Fr(5, 8) * s**2).to_str("eps") == "5*eps^2/8"
    assert (-s + 3).to_str("t1") == "3 - t1"
    assert Polynomial().to_str() == "0"


# -- Sturm counting and sign decisions ----------------------------------------


def test_sturm_root_count_examples():
    assert sturm_root_count(s - 1, RationalInterval(0, 2)) == 1
    f = Fr(29, 3) - Fr(45, 32) * s**3
    assert sturm_root_count(f, RationalInterval(0, Fr(3, 2))) == 0
    assert sturm_root_count((s - 1) ** 2, RationalInterval(0, 2)) == 1


def test_sturm_count_is_half_open():
    # roots exactly at lo are excluded, at hi included
    assert sturm_root_count(s * (s - 2), RationalInterval(0, 2)) == 1
    assert sturm_root_count(s * (s - 2), RationalInterval(-1, 2)) == 2


@given(polynomials(max_degree=5), intervals())
def test_sturm_count_matches_sympy(f, iv):
    assume(f.degree >= 1)
    lo, hi = iv
    assert sturm_root_count(f, RationalInterval(lo, hi)) == sympy_distinct_roots(f, lo, hi)


@given(
    st.lists(st.integers(-6, 6), min_size=1, max_size=3, unique=True),
    st.lists(st.integers(-6, 6), min_size=1, max_size=3, unique=True),
)
def test_sturm_count_of_product(ra, rb):
    f = Polynomial.const(1)
    for r in ra:
        f = f * (s - Fr(r, 2))
    g = Polynomial.const(1)
    for r in rb:
        g = g * (s - Fr(r, 3) - Fr(1, 7))
    I = RationalInterval(-3, 3)
    shared = sturm_root_count(poly_gcd(f, g), I) if poly_gcd(f, g).degree > 0 else 0
    assert sturm_root_count(f * g, I) == sturm_root_count(f, I) + sturm_root_count(g, I) - shared


def test_sign_on_interval_examples():
    assert sign_on_interval(Fr(29, 3) - Fr(45, 32) * s**3, RationalInterval(0, Fr(3, 2))) is Sign.POSITIVE
    assert sign_on_interval(s - 1, RationalInterval(0, 2)) is Sign.MIXED
    v33 = ((6 - s) ** 3 - (6 - 2 * s) ** 3) / 6 + (2 - s / 3) ** 3 / 6
    assert sign_on_interval(Fr(59, 6) - v33, RationalInterval(2, 3)) is Sign.POSITIVE
    assert sign_on_interval(Polynomial(), RationalInterval(0, 1)) is Sign.IDENTICALLY_ZERO
    assert sign_on_interval(s - 5, RationalInterval(0, 1)) is Sign.NEGATIVE


def test_open_endpoint_root_does_not_fail():
    f = s**3
    assert sign_on_interval(f, RationalInterval(0, 1)) is Sign.MIXED
    assert sign_on_interval(f, RationalInterval(0, 1, open_lo=True)) is Sign.POSITIVE
    assert sign_on_interval(1 - s, RationalInterval(0, 1, open_hi=True)) is Sign.POSITIVE


@given(polynomials(max_degree=4), intervals())
def test_sign_agrees_with_dense_sampling(f, iv):
    lo, hi = iv
    assume(hi > lo)
    I = RationalInterval(lo, hi)
    verdict = sign_on_interval(f, I)
    samples = [f(lo + (hi - lo) * Fr(k, 256)) for k in range(257)]
    if verdict is Sign.POSITIVE:
        assert all(v > 0 for v in samples)
    elif verdict is Sign.NEGATIVE:
        assert all(v < 0 for v in samples)
    elif verdict is Sign.IDENTICALLY_ZERO:
        assert all(v == 0 for v in samples)
    else:
        assert verdict is Sign.MIXED
        # a zero exists in the closed interval
        assert sympy_distinct_roots(f, lo, hi, open_lo=False) > 0
    nonneg = is_nonnegative(f, I)
    assert nonneg == (f.is_zero() or all(v >= 0 for v in samples) and _no_negative_dip(f, lo, hi))


def _no_negative_dip(f, lo, hi):
    # sympy check: min over the closed interval is >= 0
    expr = to_sympy(f)
    if f.degree < 1:
        return f(lo) >= 0
    lo_s, hi_s = sp.Rational(lo.numerator, lo.denominator), sp.Rational(hi.numerator, hi.denominator)
    pts = [lo_s, hi_s] + [r for r in sp.Poly(sp.diff(expr, X), X).real_roots() if lo_s <= r <= hi_s] if f.degree > 1 else [lo_s, hi_s]
    return all(sp.N(expr.subs(X, p), 50) >= -sp.Rational(1, 10**40) for p in pts)


def test_is_nonnegative_handles_double_roots():
    f = (s - 1) ** 2 * (s + 3)
    assert is_nonnegative(f, RationalInterval(-3, 5))
    assert not is_nonnegative(f, RationalInterval(-4, 5))
    assert is_nonnegative_from((s - 2) ** 2 * (s - 1), 1)
    assert not is_nonnegative_from(s**2 - 10, 2)


def test_isolate_roots_contains_sympy_roots():
    f = (s**2 - 2) * (3 * s - 1) * (s + 4)
    iso = isolate_roots(f, RationalInterval(-5, 5), Fr(1, 1000))
    roots = sorted(sp.Poly(to_sympy(f), X).real_roots())
    assert len(iso) == len(roots) == 4
    for (a, b), r in zip(iso, roots):
        assert a <= r <= b and b - a <= Fr(1, 1000)


# -- suprema -------------------------------------------------------------------


def test_sup_enclosure_examples():
    lo, hi = poly_sup_enclosure(s**2, RationalInterval(0, 2), Fr(1, 10**6))
    assert lo <= 4 <= hi
    lo, hi = poly_sup_enclosure(Fr(45, 32) * s**3, RationalInterval(0, Fr(3, 2)), Fr(1, 10**6))
    assert lo == hi == Fr(1215, 256)
    lo, hi = poly_sup_enclosure(4 * s**2 - Fr(32, 27) * s**3, RationalInterval(Fr(3, 2), 2), Fr(1, 10**6))
    assert lo == hi == Fr(176, 27)


def test_sup_enclosure_irrational_maximum():
    f = 2 - (s**2 - 2) ** 2 + s  # interior max near s = 1.47 with irrational location
    enc = sup_enclosure(f, RationalInterval(0, 2), Fr(1, 10**10))
    expr = to_sympy(f)
    crit = [r for r in sp.Poly(sp.diff(expr, X), X).real_roots() if 0 <= r <= 2]
    true_max = max([expr.subs(X, 0), expr.subs(X, 2)] + [expr.subs(X, r) for r in crit])
    assert enc.lo <= sp.N(true_max, 40) <= enc.hi
    assert enc.hi - enc.lo <= Fr(1, 10**10)
    assert not enc.exact


@given(polynomials(max_degree=5), intervals())
def test_sup_enclosure_contains_true_max(f, iv):
    lo, hi = iv
    enc = sup_enclosure(f, RationalInterval(lo, hi), Fr(1, 10**6))
    assert enc.hi - enc.lo <= Fr(1, 10**6)
    assert enc.lo <= f(enc.argmax) or enc.exact
    expr = to_sympy(f)
    lo_s, hi_s = sp.Rational(lo.numerator, lo.denominator), sp.Rational(hi.numerator, hi.denominator)
    pts = [lo_s, hi_s]
    if f.degree >= 2:
        pts += [r for r in sp.Poly(sp.diff(expr, X), X).real_roots() if lo_s <= r <= hi_s]
    true_max = max(sp.N(expr.subs(X, p), 60) for p in pts)
    tol = sp.Rational(1, 10**30)
    assert sp.Rational(enc.lo.numerator, enc.lo.denominator) - tol <= true_max
    assert true_max <= sp.Rational(enc.hi.numerator, enc.hi.denominator) + tol


@given(small_rationals, st.fractions(min_value=0, max_value=5, max_denominator=50))
def test_simplest_between(a, w):
    x = simplest_between(a, a + w)
    assert a <= x <= a + w
    for d in range(1, x.denominator):
        # nothing with a smaller denominator fits
        import math

        assert math.ceil(a * d) > (a + w) * d


# -- parametric polynomials ------------------------------------------------------


def test_param_definite_integral_examples():
    assert param_definite_integral(T**2 / 2, Polynomial(), s) == s**3 / 6
    mid = (T**2 - 5 * (T - S) ** 2) / 2
    assert param_definite_integral(mid, s, 5 * s / 4) == Fr(7, 48) * s**3
    tail = ((24 + 8 * S) / 3 - 3 * T) ** 2 / 2
    got = param_definite_integral(tail, 6 - s, (24 + 8 * s) / 9)
    assert got == (17 * s - 30) ** 3 / 486
    assert got(2) == Fr(32, 243)


@given(polynomials(max_degree=2), polynomials(max_degree=2), polynomials(max_degree=2), small_rationals)
def test_param_integral_additive(a, b, c, k):
    f = ParamPolynomial((a, b, c))
    lo, mid, hi = Polynomial.const(k), s + k, 2 * s + k
    whole = param_definite_integral(f, lo, hi)
    assert whole == param_definite_integral(f, lo, mid) + param_definite_integral(f, mid, hi)


@given(polynomials(max_degree=2), polynomials(max_degree=2), small_rationals, small_rationals)
def test_substitution_commutes_with_ring_ops(a, b, s0, t0):
    f = ParamPolynomial((a, b))
    g = ParamPolynomial((b, a, a))
    assert (f + g).at_param(s0) == f.at_param(s0) + g.at_param(s0)
    assert (f * g).at_param(s0) == f.at_param(s0) * g.at_param(s0)
    assert (f * g)(s0, t0) == f(s0, t0) * g(s0, t0)


def test_param_integral_against_sympy():
    e, t = sp.symbols("e t")
    f = (T**2 - (T - 15 + 4 * S) ** 2) / 2
    got = param_definite_integral(f, 15 - 4 * s, 3)
    want = sp.integrate((t**2 - (t - 15 + 4 * e) ** 2) / 2, (t, 15 - 4 * e, 3))
    assert sp.expand(to_sympy(got).subs(X, e) - want) == 0
