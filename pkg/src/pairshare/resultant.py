"""Resultants of multivariate polynomials by the subresultant PRS.

Polynomials are viewed as univariate in the eliminated variable with
coefficients in the polynomial ring of the remaining variables.  All
divisions in the remainder sequence are exact (Collins/Brown bounds), so
coefficients never leave the ring.
"""

from __future__ import annotations

import logging
import warnings

from .mpoly import MPoly
from .poly1 import Poly1

log = logging.getLogger(__name__)


class ResultantWarning(UserWarning):
    """An input had degree 0 in the eliminated variable."""


def _deg(p: list[MPoly]) -> int:
    return len(p) - 1


def _trim(p: list[MPoly]) -> list[MPoly]:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _prem(a: list[MPoly], b: list[MPoly]) -> list[MPoly]:
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b``."""
    r = list(a)
    db = _deg(b)
    lb = b[-1]
    e = _deg(a) - db + 1
    while r and _deg(r) >= db:
        k = _deg(r) - db
        lr = r[-1]
        r = [c * lb for c in r]
        for j, c in enumerate(b):
            r[j + k] = r[j + k] - lr * c
        r.pop()
        _trim(r)
        e -= 1
    if e > 0 and r:
        f = lb ** e
        r = [c * f for c in r]
    return r


def _subresultant(u: list[MPoly], v: list[MPoly], one: MPoly) -> MPoly:
    """Knuth's Algorithm C; requires ``deg u >= deg v >= 1``."""
    g = one
    h = one
    sign = 1
    while True:
        du, dv = _deg(u), _deg(v)
        delta = du - dv
        if du % 2 and dv % 2:
            sign = -sign
        r = _prem(u, v)
        u = v
        if not r:
            return one.scale(0)
        divisor = g * h ** delta
        v = [c.exact_div(divisor) for c in r]
        g = u[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))
        if _deg(v) == 0:
            n = _deg(u)
            if n == 0:
                res = v[0]
            elif n == 1:
                res = v[0]
            else:
                res = (v[0] ** n).exact_div(h ** (n - 1))
            return res if sign > 0 else -res


def resultant(p: MPoly, q: MPoly, eliminate: str) -> MPoly:
    """``Res_v(p, q)`` as a polynomial in the remaining variables.

    Follows the Sylvester convention ``Res(p, q) = lc(p)^deg q * prod q(roots of p)``.
    If an input has degree 0 in ``v`` the corresponding power of that input is
    returned and a :class:`ResultantWarning` is emitted.
    """
    p, q = p._align(q)
    rest = tuple(w for w in p.vars if w != eliminate)
    cp = [c.with_vars(rest) for c in p.coefficients_in(eliminate)]
    cq = [c.with_vars(rest) for c in q.coefficients_in(eliminate)]
    one = MPoly.const(1, rest, p.field)
    if not cp or not cq:
        return one.scale(0)
    m, n = _deg(cp), _deg(cq)
    if m == 0 or n == 0:
        warnings.warn(f"degree 0 in {eliminate}: returning a power of the input", ResultantWarning, stacklevel=2)
        if m == 0:
            return cp[0] ** n
        return cq[0] ** m
    if m >= n:
        return _subresultant(cp, cq, one)
    r = _subresultant(cq, cp, one)
    return -r if (m * n) % 2 else r


def sylvester_resultant(p: MPoly, q: MPoly, eliminate: str) -> MPoly:
    """Resultant as the Sylvester determinant (cofactor-free Bareiss elimination).

    Slow; kept as an independent cross-check of :func:`resultant`.
    """
    p, q = p._align(q)
    rest = tuple(w for w in p.vars if w != eliminate)
    cp = [c.with_vars(rest) for c in p.coefficients_in(eliminate)]
    cq = [c.with_vars(rest) for c in q.coefficients_in(eliminate)]
    m, n = _deg(cp), _deg(cq)
    size = m + n
    zero = MPoly({}, rest, p.field)
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(cp)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(cq)):
            row[i + j] = c
        rows.append(row)
    return bareiss_det(rows, MPoly.const(1, rest, p.field))


def bareiss_det(rows: list[list[MPoly]], one: MPoly) -> MPoly:
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return one.scale(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def resultant_poly1(p: Poly1, q: Poly1) -> "object":
    """Resultant of univariate polynomials as a field element (via the PRS above)."""
    var = p.var
    r = resultant(MPoly.from_poly1(p, (var,)), MPoly.from_poly1(q.with_var(var), (var,)), var)
    return r.constant_value()
