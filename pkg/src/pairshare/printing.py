"""Canonical text form shared by all exact objects.

Expanded, exponent-descending (graded), exact rational coefficients; the
output parses back to the same object with :mod:`pairshare.parse`.
"""

from __future__ import annotations

from .field import FieldElem, format_elem


def _monomial(vars, exps) -> str:
    parts = []
    for v, k in zip(vars, exps):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def _term(c: FieldElem, mono: str) -> str:
    if not mono:
        return format_elem(c)
    if c.is_rational:
        if c == 1:
            return mono
        if c == -1:
            return "-" + mono
        return f"{c.re0}*{mono}"
    if not c.re0:
        return f"{format_elem(c)}*{mono}"
    return f"({format_elem(c)})*{mono}"


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def format_mpoly(p) -> str:
    keys = sorted(p.terms, key=lambda e: (sum(e), e), reverse=True)
    return _join([_term(p.terms[e], _monomial(p.vars, e)) for e in keys])


def format_poly1(p) -> str:
    terms = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c:
            terms.append(_term(c, _monomial((p.var,), (i,))))
    return _join(terms)


def _wrap(s: str) -> str:
    body = s[1:] if s.startswith("-") else s
    if any(ch in body for ch in "+-") or "/" in s or "*" in s:
        return f"({s})"
    return s


def format_ratfunc(q) -> str:
    if q.den.degree == 0:
        return format_poly1(q.num)
    return f"{_wrap(format_poly1(q.num))}/{_wrap(format_poly1(q.den))}"
