"""Exact arithmetic in Q and in quadratic extensions Q(a).

A :class:`Field` is either the rationals or Q(a) where ``a`` is a root of a
monic irreducible quadratic ``t^2 + c1*t + c0``.  Elements are pairs of
:class:`fractions.Fraction` ``re0 + re1*a``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

GENERATOR = "a"


class FieldError(ValueError):
    pass


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


@dataclass(frozen=True)
class Field:
    """Coefficient field; ``minpoly=(c0, c1)`` means ``a^2 + c1*a + c0 = 0``."""

    minpoly: tuple[Fraction, Fraction] | None = None

    @property
    def is_rational(self) -> bool:
        return self.minpoly is None

    @property
    def kind(self) -> str:
        return "rationals" if self.minpoly is None else "quadratic-extension"

    def __call__(self, re0=0, re1=0) -> "FieldElem":
        return FieldElem(Fraction(re0), Fraction(re1), self)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(Fraction(0), Fraction(0), self)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(Fraction(1), Fraction(0), self)

    @property
    def gen(self) -> "FieldElem":
        if self.minpoly is None:
            raise FieldError("the rationals have no generator")
        return FieldElem(Fraction(0), Fraction(1), self)

    def embedding(self) -> complex:
        """Complex value chosen for the generator.

        The root with positive imaginary part, or the larger real root.
        """
        if self.minpoly is None:
            return 0j
        c0, c1 = self.minpoly
        disc = float(c1 * c1 - 4 * c0)
        root = cmath.sqrt(disc)
        if disc >= 0:
            return complex((-float(c1) + root.real) / 2, 0.0)
        return complex(-float(c1) / 2, abs(root.imag) / 2)

    def conjugate_embedding(self) -> complex:
        if self.minpoly is None:
            return 0j
        return complex(-float(self.minpoly[1])) - self.embedding()

    def __str__(self) -> str:
        if self.minpoly is None:
            return "QQ"
        c0, c1 = self.minpoly
        return f"QQ[a]/(a^2{_signed(c1)}*a{_signed(c0)})"

    def to_json(self):
        if self.minpoly is None:
            return None
        return [str(self.minpoly[0]), str(self.minpoly[1])]


QQ = Field()


def _signed(q: Fraction) -> str:
    return f"+{q}" if q >= 0 else f"-{-q}"


def field_make(minpoly, degenerate: bool = False) -> Field:
    """Build a field from the minimal polynomial ``(c0, c1)`` of ``t^2+c1*t+c0``.

    ``None`` or ``degenerate=True`` yields the rationals.  A reducible
    quadratic raises :class:`FieldError`.
    """
    if minpoly is None or degenerate:
        return QQ
    c0, c1 = (Fraction(c) for c in minpoly)
    if _is_rational_square(c1 * c1 - 4 * c0):
        raise FieldError(f"t^2 + ({c1})t + ({c0}) is reducible over Q")
    return Field((c0, c1))


def common_field(f: Field, g: Field) -> Field:
    if f == g or g.is_rational:
        return f
    if f.is_rational:
        return g
    raise FieldError(f"incompatible fields {f} and {g}")


Scalar = Union["FieldElem", int, Fraction]


class FieldElem:
    """Element ``re0 + re1*a`` of a :class:`Field`.  Immutable."""

    __slots__ = ("re0", "re1", "field")

    def __init__(self, re0: Fraction, re1: Fraction, field: Field = QQ):
        if field.is_rational and re1:
            raise FieldError("rational field element with nonzero generator part")
        object.__setattr__(self, "re0", re0)
        object.__setattr__(self, "re1", re1)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    # coercion
    def _coerce(self, other) -> "FieldElem | None":
        if isinstance(other, FieldElem):
            return other
        if isinstance(other, (int, Rational)):
            return FieldElem(Fraction(other), Fraction(0), QQ)
        return None

    def _lift(self, field: Field) -> "FieldElem":
        if self.field == field:
            return self
        return FieldElem(self.re0, self.re1, field)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = common_field(self.field, o.field)
        return FieldElem(self.re0 + o.re0, self.re1 + o.re1, f)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.re0, -self.re1, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = common_field(self.field, o.field)
        a0, a1, b0, b1 = self.re0, self.re1, o.re0, o.re1
        if not (a1 and b1):
            return FieldElem(a0 * b0, a0 * b1 + a1 * b0, f)
        c0, c1 = f.minpoly
        # a^2 = -c1*a - c0
        s = a1 * b1
        return FieldElem(a0 * b0 - s * c0, a0 * b1 + a1 * b0 - s * c1, f)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        if not self.re1:
            return self.re0 * self.re0
        c0, c1 = self.field.minpoly
        a, b = self.re0, self.re1
        return a * a - a * b * c1 + b * b * c0

    def conjugate(self) -> "FieldElem":
        if not self.re1:
            return self
        c1 = self.field.minpoly[1]
        return FieldElem(self.re0 - self.re1 * c1, -self.re1, self.field)

    def inverse(self) -> "FieldElem":
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        if not self.re1:
            return FieldElem(1 / self.re0, Fraction(0), self.field)
        n = self.norm()
        c = self.conjugate()
        return FieldElem(c.re0 / n, c.re1 / n, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = FieldElem(Fraction(1), Fraction(0), self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.re0) or bool(self.re1)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re0 == o.re0 and self.re1 == o.re1

    def __hash__(self):
        return hash((self.re0, self.re1))

    @property
    def is_rational(self) -> bool:
        return not self.re1

    def to_fraction(self) -> Fraction:
        if self.re1:
            raise FieldError(f"{self} is not rational")
        return self.re0

    def __complex__(self):
        if not self.re1:
            return complex(float(self.re0))
        return float(self.re0) + float(self.re1) * self.field.embedding()

    def __str__(self):
        return format_elem(self)

    def __repr__(self):
        return f"FieldElem({self})"


def format_elem(e: FieldElem) -> str:
    """Canonical text: ``3/4``, ``a``, ``-2*a``, ``1/2+5/3*a``."""
    if not e.re1:
        return str(e.re0)
    if e.re1 == 1:
        gen = GENERATOR
    elif e.re1 == -1:
        gen = "-" + GENERATOR
    else:
        gen = f"{e.re1}*{GENERATOR}"
    if not e.re0:
        return gen
    return f"{e.re0}{'' if gen.startswith('-') else '+'}{gen}"


def elem(value, field: Field = QQ) -> FieldElem:
    """Coerce ``value`` (int, Fraction, str or FieldElem) into ``field``."""
    if isinstance(value, FieldElem):
        return value._lift(common_field(field, value.field))
    if isinstance(value, str):
        from .parse import parse_scalar

        return parse_scalar(value, field)
    return FieldElem(Fraction(value), Fraction(0), field)
