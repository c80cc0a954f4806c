from fractions import Fraction as Fr

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from nokcert.certificates.expr import ExprSyntaxError, format_expr, parse_expr, parse_param_expr
from nokcert.exact import ParamPolynomial, Polynomial

T = ParamPolynomial.t()
S = ParamPolynomial.s()


def test_examples():
    assert parse_expr("t^2/2") == T**2 / 2
    assert parse_expr("(t^2 - 5*(t - eps)^2)/2") == (T**2 - 5 * (T - S) ** 2) / 2
    assert parse_expr("((24 + 8*eps)/3 - 3*t)^2/2") == ((24 + 8 * S) / 3 - 3 * T) ** 2 / 2


def test_rational_literals_and_precedence():
    assert parse_expr("3/4") == ParamPolynomial.coerce(Fr(3, 4))
    assert parse_expr("8*eps/3/2") == 4 * S / 3
    assert parse_expr("3/4^2") == ParamPolynomial.coerce(Fr(3, 16))
    assert parse_expr("-t^2") == -(T**2)


def test_custom_param_name():
    assert parse_param_expr("15 - 4*t1", "t1") == 15 - 4 * Polynomial.x()


@pytest.mark.parametrize(
    "text,pos",
    [
        ("t^", 2),
        ("t^-1", 2),
        ("t^(1/2)", 2),
        ("2*(t", 4),
        ("eps + x", 6),
        ("t / t", 4),
        ("t/(eps - eps)", 2),
        ("1.5*t", 1),
        ("", 0),
    ],
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert info.value.pos == pos


def test_parameter_cannot_be_t():
    with pytest.raises(ValueError):
        parse_expr("t", param="t")


def test_param_expr_rejects_t():
    with pytest.raises(ValueError):
        parse_param_expr("eps + t")


def test_against_sympy():
    e, t = sp.symbols("eps t")
    text = "(4*t1/3 - t)^2/2 + 27/6 - (t1 - 3)/2*(9 - 64*(t1 - 3)^2/3)"
    got = parse_expr(text, "t1")
    want = sp.expand(sp.sympify(text.replace("^", "**"), locals={"t1": e, "t": t}))
    for s0 in (Fr(7, 2), Fr(11, 3)):
        for t0 in (0, Fr(5, 4), 4):
            assert got(s0, t0) == want.subs({e: sp.Rational(s0.numerator, s0.denominator), t: sp.Rational(t0)})


leaf = st.sampled_from(["t", "eps", "1", "2", "3/4", "7"])


def _tree(children):
    return st.one_of(
        st.tuples(children, st.sampled_from(["+", "-", "*"]), children).map(lambda x: f"({x[0]} {x[1]} {x[2]})"),
        st.tuples(children, st.integers(0, 3)).map(lambda x: f"({x[0]})^{x[1]}"),
        st.tuples(children, st.sampled_from(["2", "3", "5/7"])).map(lambda x: f"{x[0]}/{x[1]}"),
        children.map(lambda x: f"-{x}"),
    )


exprs = st.recursive(leaf, _tree, max_leaves=8)


@given(exprs)
def test_print_parse_idempotent(text):
    p = parse_expr(text)
    printed = format_expr(p)
    assert parse_expr(printed) == p
    assert format_expr(parse_expr(printed)) == printed
