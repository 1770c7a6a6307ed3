"""Recursive-descent parser for the expression grammar.

::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | VARIABLE | "a" | "(" expr ")"

Variables come from ``{t, w, x, y, u}``; ``a`` is the generator of the
coefficient field.  ``/`` by a non-constant polynomial produces a rational
function (univariate only).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .field import GENERATOR, QQ, Field, FieldElem, elem
from .mpoly import MPoly
from .poly1 import Poly1

ALL_VARS = ("t", "w", "x", "y", "u")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text


class _Frac:
    """Numerator/denominator pair of multivariate polynomials during parsing."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly):
        self.num = num
        self.den = den

    def add(self, o, sign=1):
        if self.den == o.den:
            return _Frac(self.num + o.num.scale(sign), self.den)
        return _Frac(self.num * o.den + (o.num * self.den).scale(sign), self.den * o.den)

    def mul(self, o):
        return _Frac(self.num * o.num, self.den * o.den)

    def div(self, o, pos):
        if o.num.is_zero():
            raise ParseError("division by the zero polynomial", pos)
        return _Frac(self.num * o.den, self.den * o.num)

    def simplify_constant_den(self):
        if self.den.is_constant():
            c = self.den.constant_value()
            return _Frac(self.num.scale(c.inverse()), MPoly.const(1, self.num.vars, self.num.field))
        return self


class _Parser:
    def __init__(self, text: str, vars: tuple[str, ...], field: Field):
        self.text = text
        self.vars = vars
        self.field = field
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def error(self, msg: str, pos: int | None = None):
        if pos is None:
            pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise ParseError(msg, pos, self.text)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def const(self, c) -> _Frac:
        return _Frac(MPoly.const(c, self.vars, self.field), MPoly.const(1, self.vars, self.field))

    def parse(self) -> _Frac:
        if not self.tokens:
            self.error("empty expression", 0)
        value = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self) -> _Frac:
        value = self.term()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.take()
            rhs = self.term()
            value = value.add(rhs, 1 if tok[1] == "+" else -1)
        return value

    def term(self) -> _Frac:
        value = self.unary()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "*/":
            self.take()
            rhs = self.unary()
            value = value.mul(rhs) if tok[1] == "*" else value.div(rhs, tok[2])
            value = value.simplify_constant_den()
        return value

    def unary(self) -> _Frac:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            v = self.unary()
            return v if tok[1] == "+" else _Frac(-v.num, v.den)
        return self.power()

    def power(self) -> _Frac:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.peek()
            if e is None or e[0] != "num":
                self.error("expected a non-negative integer exponent")
            self.take()
            k = int(e[1])
            return _Frac(base.num ** k, base.den ** k)
        return base

    def atom(self) -> _Frac:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        kind, text, pos = tok
        if kind == "num":
            self.take()
            return self.const(int(text))
        if kind == "name":
            self.take()
            if text == GENERATOR:
                if self.field.is_rational:
                    self.error("generator 'a' requires a quadratic field", pos)
                return self.const(self.field.gen)
            if text not in self.vars:
                self.error(f"unknown symbol {text!r}", pos)
            return _Frac(MPoly.var(text, self.vars, self.field), MPoly.const(1, self.vars, self.field))
        if text == "(":
            self.take()
            v = self.expr()
            close = self.peek()
            if close is None or close[1] != ")":
                self.error("expected ')'")
            self.take()
            return v
        self.error(f"unexpected token {text!r}", pos)


def _parse(text: str, vars, field: Field) -> _Frac:
    return _Parser(text, tuple(vars), field).parse()


def parse_poly(text: str, vars=("x", "y"), field: Field = QQ) -> MPoly:
    """Parse a polynomial over the given variable tuple."""
    fr = _parse(text, vars, field).simplify_constant_den()
    if not fr.den.is_constant():
        raise ParseError("expected a polynomial, got a rational function", 0, text)
    return fr.num


def parse_poly1(text: str, var: str = "t", field: Field = QQ) -> Poly1:
    return parse_poly(text, (var,), field).to_poly1(var)


def parse_ratfunc(text: str, var: str = "t", field: Field = QQ):
    from .ratfunc import RatFunc

    fr = _parse(text, (var,), field).simplify_constant_den()
    return RatFunc(fr.num.to_poly1(var), fr.den.to_poly1(var))


def parse_scalar(text: str, field: Field = QQ) -> FieldElem:
    fr = _parse(text, (), field).simplify_constant_den()
    return fr.num.constant_value()


def parse_value(text: str, field: Field = QQ):
    """A sphere value: ``inf`` or a field element."""
    from .ratfunc import INF

    if text.strip().lower() in ("inf", "oo", "infinity"):
        return INF
    return parse_scalar(text, field)


def parse_expression(text: str, vars=ALL_VARS, field: Field = QQ):
    """Parse into :class:`Poly1` (one variable), :class:`MPoly` or a ``RatFunc``."""
    from .ratfunc import RatFunc

    vars = tuple(vars)
    fr = _parse(text, vars, field).simplify_constant_den()
    if not fr.den.is_constant():
        used = _used_vars(fr.num) | _used_vars(fr.den)
        if len(used) > 1:
            raise ParseError("rational functions must be univariate", 0, text)
        v = used.pop()
        return RatFunc(fr.num.to_poly1(v), fr.den.to_poly1(v))
    if len(vars) == 1:
        return fr.num.to_poly1(vars[0])
    return fr.num


def _used_vars(p: MPoly) -> set[str]:
    return {v for i, v in enumerate(p.vars) if any(e[i] for e in p.terms)}
