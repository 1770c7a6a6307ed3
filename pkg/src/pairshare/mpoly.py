"""Sparse multivariate polynomials over a field.

:class:`MPoly` stores ``{exponent tuple: FieldElem}`` over an ordered tuple of
variable names.  Bivariate curves ``K(x, y)`` are ``MPoly`` instances over
``("x", "y")``; :data:`Poly2` is an alias kept for readability at call sites.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .field import QQ, Field, FieldElem, common_field, elem
from .poly1 import Poly1


class MPoly:
    __slots__ = ("terms", "vars", "field")

    def __init__(self, terms: Mapping[tuple, object], vars: Iterable[str], field: Field | None = None):
        self.vars: tuple[str, ...] = tuple(vars)
        if field is None:
            field = QQ
            for c in terms.values():
                if isinstance(c, FieldElem):
                    field = common_field(field, c.field)
        self.field = field
        out = {}
        n = len(self.vars)
        for e, c in terms.items():
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            c = elem(c, field)
            if c:
                out[tuple(e)] = c
        self.terms: dict[tuple, FieldElem] = out

    # constructors
    @classmethod
    def const(cls, c, vars, field=QQ) -> "MPoly":
        vars = tuple(vars)
        return cls({(0,) * len(vars): c}, vars, field)

    @classmethod
    def var(cls, name: str, vars, field=QQ) -> "MPoly":
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        if sum(e) != 1:
            raise ValueError(f"{name} not among {vars}")
        return cls({e: 1}, vars, field)

    @classmethod
    def from_poly1(cls, p: Poly1, vars) -> "MPoly":
        vars = tuple(vars)
        i = vars.index(p.var)
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c:
                e = [0] * len(vars)
                e[i] = k
                terms[tuple(e)] = c
        return cls(terms, vars, p.field)

    def _like(self, terms, field=None) -> "MPoly":
        return MPoly(terms, self.vars, field or self.field)

    # properties
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> FieldElem:
        return self.terms.get((0,) * len(self.vars), self.field.zero)

    def _idx(self, v: str) -> int:
        return self.vars.index(v)

    def degree(self, v: str) -> int:
        if not self.terms:
            return -1
        i = self._idx(v)
        return max(e[i] for e in self.terms)

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    @property
    def deg_x(self) -> int:
        return self.degree(self.vars[0])

    @property
    def deg_y(self) -> int:
        return self.degree(self.vars[1])

    def coeff(self, e: tuple) -> FieldElem:
        return self.terms.get(tuple(e), self.field.zero)

    def leading_term(self) -> tuple[tuple, FieldElem]:
        e = max(self.terms)
        return e, self.terms[e]

    # variable handling
    def with_vars(self, vars) -> "MPoly":
        """Re-express over another variable tuple containing all used variables."""
        vars = tuple(vars)
        pos = []
        for i, v in enumerate(self.vars):
            if v in vars:
                pos.append((i, vars.index(v)))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v} in use, cannot drop it")
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, j in pos:
                ne[j] = e[i]
            terms[tuple(ne)] = c
        return MPoly(terms, vars, self.field)

    def rename(self, mapping: Mapping[str, str]) -> "MPoly":
        return MPoly(self.terms, tuple(mapping.get(v, v) for v in self.vars), self.field)

    def _align(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        if self.vars == other.vars:
            return self, other
        vars = list(self.vars)
        for v in other.vars:
            if v not in vars:
                vars.append(v)
        return self.with_vars(vars), other.with_vars(vars)

    def _wrap(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, Poly1):
            return MPoly.from_poly1(other, self.vars if other.var in self.vars else self.vars + (other.var,))
        return MPoly.const(other, self.vars, self.field)

    # arithmetic
    def __add__(self, other):
        a, b = self._align(self._wrap(other))
        f = common_field(a.field, b.field)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return MPoly(terms, a.vars, f)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        a, b = self._align(self._wrap(other))
        f = common_field(a.field, b.field)
        terms: dict[tuple, FieldElem] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                p = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + p
                else:
                    terms[e] = p
        return MPoly(terms, a.vars, f)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MPoly.const(1, self.vars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "MPoly":
        c = elem(c, self.field)
        f = common_field(self.field, c.field)
        return MPoly({e: v * c for e, v in self.terms.items()}, self.vars, f)

    def mul_monomial(self, e: tuple, c) -> "MPoly":
        c = elem(c, self.field)
        return MPoly(
            {tuple(i + j for i, j in zip(k, e)): v * c for k, v in self.terms.items()},
            self.vars,
            common_field(self.field, c.field),
        )

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Exact quotient; raises :class:`ArithmeticError` if ``other`` does not divide."""
        q, r = self.divmod_lex(other)
        if not r.is_zero():
            raise ArithmeticError("inexact multivariate division")
        return q

    def divmod_lex(self, other) -> tuple["MPoly", "MPoly"]:
        """Lex-order division stopping at the first non-divisible leading term.

        The remainder is zero exactly when ``other`` divides ``self``.
        """
        a, b = self._align(self._wrap(other))
        if b.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        f = common_field(a.field, b.field)
        eb, cb = b.leading_term()
        inv = cb.inverse()
        rem = dict(a.terms)
        quot: dict[tuple, FieldElem] = {}
        while rem:
            er = max(rem)
            if any(i < j for i, j in zip(er, eb)):
                break
            qe = tuple(i - j for i, j in zip(er, eb))
            qc = rem[er] * inv
            quot[qe] = qc
            for e, c in b.terms.items():
                k = tuple(i + j for i, j in zip(e, qe))
                v = rem.get(k)
                nv = (-(c * qc)) if v is None else v - c * qc
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return MPoly(quot, a.vars, f), MPoly(rem, a.vars, f)

    def divides(self, other: "MPoly") -> bool:
        return other.divmod_lex(self)[1].is_zero()

    def diff(self, v: str, k: int = 1) -> "MPoly":
        i = self._idx(v)
        terms = {}
        for e, c in self.terms.items():
            if e[i] >= k:
                ne = list(e)
                ne[i] -= k
                terms[tuple(ne)] = c * math.perm(e[i], k)
        return self._like(terms)

    def subs(self, v: str, value) -> "MPoly":
        """Substitute a field element or an :class:`MPoly` for one variable."""
        i = self._idx(v)
        if isinstance(value, MPoly):
            out = MPoly({}, self.vars, self.field)
            by_power: dict[int, dict] = {}
            for e, c in self.terms.items():
                ne = list(e)
                ne[i] = 0
                by_power.setdefault(e[i], {})[tuple(ne)] = c
            # Horner in the substituted variable
            acc = MPoly({}, self.vars, self.field)
            for k in range(max(by_power, default=0), -1, -1):
                acc = acc * value + MPoly(by_power.get(k, {}), self.vars, self.field)
            return acc if by_power else out
        value = elem(value, self.field)
        f = common_field(self.field, value.field)
        terms: dict[tuple, FieldElem] = {}
        powers: dict[int, FieldElem] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            p = c * powers[k]
            terms[ne] = terms[ne] + p if ne in terms else p
        return MPoly(terms, self.vars, f)

    def drop(self, v: str) -> "MPoly":
        """Remove a variable that does not occur."""
        return self.with_vars(tuple(w for w in self.vars if w != v))

    def evaluate(self, point: Mapping[str, object]) -> FieldElem:
        p = self
        for v, val in point.items():
            p = p.subs(v, val)
        if not p.is_constant():
            raise ValueError("evaluation left free variables")
        return p.constant_value()

    def eval_complex(self, point: Mapping[str, complex]) -> complex:
        vals = [point[v] for v in self.vars]
        acc = 0j
        for e, c in self.terms.items():
            t = complex(c)
            for x, k in zip(vals, e):
                if k:
                    t *= x ** k
            acc += t
        return acc

    def to_poly1(self, v: str | None = None) -> Poly1:
        """Univariate view; every other variable must be absent."""
        if v is None:
            used = [w for i, w in enumerate(self.vars) if any(e[i] for e in self.terms)]
            if len(used) > 1:
                raise ValueError("polynomial is not univariate")
            v = used[0] if used else self.vars[0]
        i = self._idx(v)
        deg = self.degree(v)
        cs = [self.field.zero] * (deg + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial is not univariate")
            cs[e[i]] = c
        return Poly1(cs, v, self.field)

    def coefficients_in(self, v: str) -> list["MPoly"]:
        """Coefficients as polynomials (over the same variable tuple) of powers of ``v``."""
        i = self._idx(v)
        deg = self.degree(v)
        out = [dict() for _ in range(max(deg, -1) + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] = 0
            out[e[i]][tuple(ne)] = c
        return [MPoly(t, self.vars, self.field) for t in out]

    @classmethod
    def from_coefficients(cls, coeffs: list["MPoly"], v: str, vars, field) -> "MPoly":
        vars = tuple(vars)
        i = vars.index(v)
        out = MPoly({}, vars, field)
        for k, c in enumerate(coeffs):
            if not c.is_zero():
                e = [0] * len(vars)
                e[i] = k
                out = out + c.with_vars(vars).mul_monomial(tuple(e), 1)
        return out

    def translate(self, shifts: Mapping[str, object]) -> "MPoly":
        """Substitute ``v -> v + shift`` for each given variable."""
        p = self
        for v, s in shifts.items():
            s = elem(s, self.field)
            if s:
                p = p.subs(v, MPoly.var(v, p.vars, p.field) + s)
        return p

    def is_rational(self) -> bool:
        return all(c.is_rational for c in self.terms.values())

    def __eq__(self, other):
        if isinstance(other, MPoly):
            a, b = self._align(other)
            return a.terms == b.terms
        if isinstance(other, (int, Fraction, FieldElem)):
            return self == MPoly.const(other, self.vars, self.field)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        from .printing import format_mpoly

        return format_mpoly(self)

    def __repr__(self):
        return f"MPoly({self})"


Poly2 = MPoly


def content_and_primitive(p: MPoly) -> tuple[FieldElem, MPoly]:
    """Split ``p = content * primitive``.

    Rational polynomials get coprime integer coefficients with positive
    leading coefficient.  Over a quadratic extension the leading coefficient
    is first divided out and the ``re0``/``re1`` parts are then made coprime
    integers.
    """
    if p.is_zero():
        return p.field.zero, p
    _, lc = p.leading_term()
    q = p
    scale = p.field.one
    if not p.is_rational():
        scale = lc
        q = p.scale(lc.inverse())
    parts = []
    for c in q.terms.values():
        parts.extend([c.re0, c.re1])
    den = 1
    for x in parts:
        den = den * x.denominator // math.gcd(den, x.denominator)
    num = 0
    for x in parts:
        num = math.gcd(num, int(x * den))
    factor = Fraction(num, den)
    _, lq = q.leading_term()
    if lq.is_rational and lq.re0 < 0:
        factor = -factor
    prim = q.scale(1 / factor)
    return scale * factor, prim
