"""Shared constructors for tests."""

from fractions import Fraction

from pairshare.field import QQ
from pairshare.mpoly import MPoly
from pairshare.parse import parse_poly, parse_poly1, parse_ratfunc, parse_scalar
from pairshare.poly1 import Poly1


def P(text, var="t", field=QQ):
    return parse_poly1(text, var, field)


def R(text, var="t", field=QQ):
    return parse_ratfunc(text, var, field)


def K(text, vars=("x", "y"), field=QQ):
    return parse_poly(text, vars, field)


def S(text, field=QQ):
    return parse_scalar(text, field)


def poly_from_ints(coeffs, var="t", field=QQ):
    return Poly1([Fraction(c) for c in coeffs], var, field)


def to_sympy(p: MPoly):
    """sympy expression of a rational MPoly."""
    import sympy as sp

    syms = sp.symbols(p.vars)
    expr = 0
    for e, c in p.terms.items():
        q = c.to_fraction()
        term = sp.Rational(q.numerator, q.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return expr, syms
