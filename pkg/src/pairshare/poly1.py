"""Dense univariate polynomials over a :class:`~pairshare.field.Field`."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .field import QQ, Field, FieldElem, common_field, elem


class Poly1:
    """Univariate polynomial, ``coeffs[i]`` is the coefficient of ``var**i``."""

    __slots__ = ("coeffs", "var", "field")

    def __init__(self, coeffs: Iterable, var: str = "t", field: Field | None = None):
        cs = list(coeffs)
        if field is None:
            field = QQ
            for c in cs:
                if isinstance(c, FieldElem):
                    field = common_field(field, c.field)
        cs = [elem(c, field) for c in cs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[FieldElem, ...] = tuple(cs)
        self.var = var
        self.field = field

    # constructors
    @classmethod
    def zero(cls, var="t", field=QQ) -> "Poly1":
        return cls([], var, field)

    @classmethod
    def const(cls, c, var="t", field=QQ) -> "Poly1":
        return cls([c], var, field)

    @classmethod
    def x(cls, var="t", field=QQ) -> "Poly1":
        return cls([0, 1], var, field)

    @classmethod
    def from_roots(cls, roots: Sequence, var="t", field=QQ) -> "Poly1":
        p = cls.const(1, var, field)
        for r in roots:
            p = p * cls([-elem(r, field), 1], var, field)
        return p

    def _like(self, coeffs, field=None) -> "Poly1":
        return Poly1(coeffs, self.var, field or self.field)

    # basic properties
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> FieldElem:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i: int) -> FieldElem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def monic(self) -> "Poly1":
        if not self.coeffs:
            return self
        inv = self.lc.inverse()
        return self._like([c * inv for c in self.coeffs])

    def _check(self, other: "Poly1") -> Field:
        if self.var != other.var and self.degree > 0 and other.degree > 0:
            raise ValueError(f"variable mismatch {self.var} vs {other.var}")
        return common_field(self.field, other.field)

    def _wrap(self, other) -> "Poly1":
        if isinstance(other, Poly1):
            return other
        return Poly1.const(other, self.var, self.field)

    # arithmetic
    def __add__(self, other):
        o = self._wrap(other)
        f = self._check(o)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly1([self.coeff(i) + o.coeff(i) for i in range(n)], self.var, f)

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        o = self._wrap(other)
        f = self._check(o)
        if not self.coeffs or not o.coeffs:
            return Poly1([], self.var, f)
        out = [f.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly1(out, self.var, f)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly1.const(1, self.var, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly1":
        c = elem(c, self.field)
        return Poly1([a * c for a in self.coeffs], self.var, common_field(self.field, c.field))

    def shift_up(self, k: int) -> "Poly1":
        """Multiply by ``var**k``."""
        if not self.coeffs:
            return self
        return self._like([self.field.zero] * k + list(self.coeffs))

    def divmod(self, other: "Poly1") -> tuple["Poly1", "Poly1"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self._check(other)
        rem = [elem(c, f) for c in self.coeffs]
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly1([], self.var, f), Poly1(rem, self.var, f)
        inv = other.lc.inverse()
        quot = [f.zero] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv
            quot[k - dq] = q
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - q * b
        return Poly1(quot, self.var, f), Poly1(rem[:dq], self.var, f)

    def __floordiv__(self, other):
        return self.divmod(self._wrap(other))[0]

    def __mod__(self, other):
        return self.divmod(self._wrap(other))[1]

    def exact_div(self, other: "Poly1") -> "Poly1":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly1") -> bool:
        return (other % self).is_zero()

    def derivative(self) -> "Poly1":
        return self._like([c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, value):
        """Horner evaluation; works for field elements, complex numbers and polynomials."""
        if isinstance(value, (complex, float)):
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * value + complex(c)
            return acc
        if isinstance(value, Poly1):
            acc = Poly1.zero(value.var, common_field(self.field, value.field))
            for c in reversed(self.coeffs):
                acc = acc * value + c
            return acc
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def reversed(self, degree: int | None = None) -> "Poly1":
        """``var**d * p(1/var)`` with ``d = degree`` (default: own degree)."""
        d = self.degree if degree is None else degree
        cs = list(self.coeffs) + [self.field.zero] * (d + 1 - len(self.coeffs))
        return self._like(list(reversed(cs)))

    def valuation(self) -> int:
        """Order of vanishing at 0."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("valuation of zero polynomial")

    def with_var(self, var: str) -> "Poly1":
        return Poly1(self.coeffs, var, self.field)

    def complex_coeffs(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]

    def conjugate(self) -> "Poly1":
        return self._like([c.conjugate() for c in self.coeffs])

    def is_rational(self) -> bool:
        return all(c.is_rational for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly1):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, FieldElem)):
            return self == Poly1.const(other, self.var, self.field)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        from .printing import format_poly1

        return format_poly1(self)

    def __repr__(self):
        return f"Poly1({self})"


def poly_gcd(p: Poly1, q: Poly1) -> Poly1:
    """Monic gcd by the Euclidean algorithm; ``gcd(0, 0) = 0``."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(p: Poly1, q: Poly1) -> Poly1:
    if p.is_zero() or q.is_zero():
        return Poly1.zero(p.var, p.field)
    return (p * q).exact_div(poly_gcd(p, q)).monic()


def squarefree_decomposition(p: Poly1) -> list[tuple[int, Poly1]]:
    """Yun's algorithm: ``p = lc * prod(f**m)`` with monic, squarefree, coprime ``f``.

    Returns ``[(m, f), ...]`` sorted by multiplicity, constant factors dropped.
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((i, g))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: Poly1) -> Poly1:
    out = Poly1.const(1, p.var, p.field)
    for _, f in squarefree_decomposition(p):
        out = out * f
    return out


def resultant1(p: Poly1, q: Poly1) -> FieldElem:
    """Resultant of two univariate polynomials over a field (Euclidean remainder chain)."""
    f = common_field(p.field, q.field)
    if p.is_zero() or q.is_zero():
        return f.zero
    if p.degree == 0:
        return p.lc ** q.degree
    if q.degree == 0:
        return q.lc ** p.degree
    sign = 1
    acc = f.one
    a, b = p, q
    while b.degree > 0:
        da, db = a.degree, b.degree
        r = a % b
        if r.is_zero():
            return f.zero
        if da % 2 and db % 2:
            sign = -sign
        acc = acc * b.lc ** (da - r.degree)
        a, b = b, r
    # b is a nonzero constant
    acc = acc * b.lc ** a.degree
    return acc if sign > 0 else -acc


def discriminant(p: Poly1) -> FieldElem:
    """``(-1)^(n(n-1)/2) Res(p, p') / lc(p)``; degree one gives 1."""
    n = p.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return p.field.one
    r = resultant1(p, p.derivative()) / p.lc
    return r if (n * (n - 1) // 2) % 2 == 0 else -r
