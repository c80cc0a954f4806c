"""Recursive-descent parser for slice expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor | '/' factor)*
    factor := '-' factor | base ('^' NONNEG_INT)?
    base   := INT | IDENT | '(' expr ')'

``IDENT`` is ``t`` or the declared parameter name.  A divisor must reduce
to a nonzero rational constant, so every expression is a polynomial and a
literal ``p/q`` reads as a rational.
"""

from __future__ import annotations

import re

from ..exact import ParamPolynomial, Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text, self.pos = text, pos
        super().__init__(f"{message} at position {pos} in {text!r}")


class _Parser:
    def __init__(self, text: str, param: str):
        if param == "t":
            raise ValueError("the parameter cannot be named 't'")
        self.text, self.param = text, param
        self.tokens: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("ident", m.group(2), m.start(2)))
            elif m.group(3):
                self.tokens.append(("op", m.group(3), m.start(3)))
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(message, self.text, tok[2])

    def expect_op(self, op):
        tok = self.take()
        if tok != ("op", op, tok[2]):
            self.fail(f"expected {op!r}", tok)

    def parse(self) -> ParamPolynomial:
        out = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            if op == "*":
                acc = acc * self.factor()
                continue
            tok = self.peek()
            div = self.factor()
            if not div.is_t_free() or not div.as_param_poly().is_constant():
                self.fail("division is only allowed by a rational constant", tok)
            value = div.as_param_poly().constant_value()
            if value == 0:
                self.fail("division by zero", tok)
            acc = acc / value
        return acc

    def factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.factor()
        base = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("exponent must be a non-negative integer", tok)
            base = base ** int(tok[1])
        return base

    def base(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return ParamPolynomial.coerce(int(tok[1]))
        if tok[0] == "ident":
            self.take()
            if tok[1] == "t":
                return ParamPolynomial.t()
            if tok[1] == self.param:
                return ParamPolynomial.s()
            self.fail(f"unknown identifier {tok[1]!r} (expected 't' or {self.param!r})", tok)
        if tok[:2] == ("op", "("):
            self.take()
            inner = self.expr()
            self.expect_op(")")
            return inner
        if tok[0] == "end":
            self.fail("unexpected end of expression")
        self.fail(f"unexpected {tok[1]!r}")


def parse_expr(text: str, param: str = "eps") -> ParamPolynomial:
    """Parse ``text`` into an exact polynomial in ``t`` and ``param``."""
    return _Parser(text, param).parse()


def parse_param_expr(text: str, param: str = "eps") -> Polynomial:
    """Parse an expression that must not mention ``t``."""
    out = parse_expr(text, param)
    if not out.is_t_free():
        raise ValueError(f"{text!r} must not depend on t")
    return out.as_param_poly()


def format_expr(p, param: str = "eps") -> str:
    if isinstance(p, Polynomial):
        return p.to_str(param)
    return ParamPolynomial.coerce(p).to_str(param, "t")
