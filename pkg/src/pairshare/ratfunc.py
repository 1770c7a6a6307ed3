"""Rational functions on the Riemann sphere.

Points and values on the sphere are field elements or :data:`INF`.  A point
class (a Galois-stable set of finite points) is a monic squarefree
:class:`~pairshare.poly1.Poly1`; divisors are lists of point classes with
multiplicities plus an optional multiplicity at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Union

from .field import QQ, Field, FieldElem, common_field, elem
from .mpoly import MPoly
from .poly1 import Poly1, poly_gcd, poly_lcm, squarefree_decomposition, squarefree_part
from .resultant import resultant


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Value = Union[FieldElem, _Infinity]


def is_inf(v) -> bool:
    return v is INF


def value_str(v: Value) -> str:
    return "inf" if v is INF else str(v)


class RatFunc:
    """``num/den`` with coprime numerator and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly1, den: Poly1 | None = None):
        if den is None:
            den = Poly1.const(1, num.var, num.field)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        var = num.var if num.degree > 0 else den.var
        f = common_field(num.field, den.field)
        num = Poly1(num.coeffs, var, f)
        den = Poly1(den.coeffs, var, f)
        if num.is_zero():
            den = Poly1.const(1, var, f)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc
        if lc != 1:
            inv = lc.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @property
    def var(self) -> str:
        return self.num.var

    @property
    def field(self) -> Field:
        return self.num.field

    @classmethod
    def const(cls, c, var="t", field=QQ) -> "RatFunc":
        return cls(Poly1.const(c, var, field))

    @classmethod
    def identity(cls, var="t", field=QQ) -> "RatFunc":
        return cls(Poly1.x(var, field))

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree, 0)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree <= 0

    def constant_value(self) -> FieldElem:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    def _wrap(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly1):
            return RatFunc(other)
        return RatFunc.const(other, self.var, self.field)

    def __add__(self, other):
        o = self._wrap(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        o = self._wrap(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._wrap(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k)

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def compose(self, inner: "RatFunc") -> "RatFunc":
        """``self(inner(t))`` via homogenisation, exact."""
        k = self.degree
        n, d = inner.num, inner.den
        num = Poly1.zero(inner.var, common_field(self.field, inner.field))
        den = Poly1.zero(inner.var, num.field)
        npow = [Poly1.const(1, inner.var, num.field)]
        dpow = [Poly1.const(1, inner.var, num.field)]
        for _ in range(k):
            npow.append(npow[-1] * n)
            dpow.append(dpow[-1] * d)
        for i, c in enumerate(self.num.coeffs):
            num = num + (npow[i] * dpow[k - i]).scale(c)
        for i, c in enumerate(self.den.coeffs):
            den = den + (npow[i] * dpow[k - i]).scale(c)
        return RatFunc(num, den)

    def __call__(self, v):
        """Evaluate at a field element, ``INF`` or a complex number."""
        if isinstance(v, complex) or isinstance(v, float):
            return self.num(complex(v)) / self.den(complex(v))
        if v is INF:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return INF
            if dn < dd:
                return self.field.zero
            return self.num.lc / self.den.lc
        v = elem(v, self.field)
        d = self.den(v)
        if not d:
            return INF
        return self.num(v) / d

    def with_var(self, var: str) -> "RatFunc":
        return RatFunc(self.num.with_var(var), self.den.with_var(var))

    def is_monomial(self) -> tuple[FieldElem, int] | None:
        """``(c, k)`` if this equals ``c * var**k`` (``k`` may be negative)."""
        if self.num.is_zero():
            return None
        for p in (self.num, self.den):
            if sum(1 for c in p.coeffs if c) != 1:
                return None
        return self.num.lc / self.den.lc, self.num.degree - self.den.degree

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, FieldElem)):
            return self == RatFunc.const(other, self.var, self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        from .printing import format_ratfunc

        return format_ratfunc(self)

    def __repr__(self):
        return f"RatFunc({self})"


def normalize(num: Poly1, den: Poly1) -> RatFunc:
    return RatFunc(num, den)


# ----------------------------------------------------------------------------
# Divisors and puncture sets


@dataclass(frozen=True)
class Divisor:
    """Effective divisor: ``entries`` are ``(pointclass, multiplicity)``; ``inf`` is the multiplicity at infinity."""

    entries: tuple[tuple[Poly1, int], ...]
    inf: int = 0

    @property
    def degree(self) -> int:
        return sum(p.degree * m for p, m in self.entries) + self.inf

    def support(self) -> Poly1:
        var = self.entries[0][0].var if self.entries else "t"
        field = self.entries[0][0].field if self.entries else QQ
        s = Poly1.const(1, var, field)
        for p, _ in self.entries:
            s = s * p
        return s

    def by_multiplicity(self) -> dict[int, Poly1]:
        out: dict[int, Poly1] = {}
        for p, m in self.entries:
            out[m] = out[m] * p if m in out else p
        return out

    def restrict(self, punctures: "PunctureSet") -> "Divisor":
        entries = []
        for p, m in self.entries:
            q = p.exact_div(poly_gcd(p, punctures.poly.with_var(p.var))).monic() if punctures.poly.degree > 0 else p
            if q.degree > 0:
                entries.append((q, m))
        return Divisor(tuple(entries), 0 if punctures.infinity else self.inf)

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.inf == other.inf and self.by_multiplicity() == other.by_multiplicity()

    def __hash__(self):
        return hash((self.inf, tuple(sorted((m, p.coeffs) for m, p in self.by_multiplicity().items()))))

    def to_json(self) -> list:
        out: list = [{"factor": str(p), "mult": m} for p, m in self.entries]
        if self.inf:
            out.append({"inf": self.inf})
        return out


@dataclass(frozen=True)
class PunctureSet:
    """Finite set of sphere points: roots of a monic squarefree polynomial, plus maybe infinity."""

    poly: Poly1
    infinity: bool = False

    @classmethod
    def empty(cls, var="t", field=QQ) -> "PunctureSet":
        return cls(Poly1.const(1, var, field), False)

    @classmethod
    def of(cls, points, var="t", field=QQ) -> "PunctureSet":
        p = Poly1.const(1, var, field)
        inf = False
        for pt in points:
            if pt is INF:
                inf = True
            else:
                p = poly_lcm(p, Poly1([-elem(pt, field), 1], var, field))
        return cls(p.monic(), inf)

    @property
    def count(self) -> int:
        return self.poly.degree + (1 if self.infinity else 0)

    def union(self, other: "PunctureSet") -> "PunctureSet":
        return PunctureSet(poly_lcm(self.poly, other.poly.with_var(self.poly.var)), self.infinity or other.infinity)

    def issubset(self, other: "PunctureSet") -> bool:
        if self.infinity and not other.infinity:
            return False
        return self.poly.divides(other.poly.with_var(self.poly.var)) or self.poly.degree == 0

    def contains(self, point) -> bool:
        if point is INF:
            return self.infinity
        return not self.poly(elem(point, self.poly.field))

    def to_json(self) -> dict:
        return {"factor": str(self.poly), "inf": self.infinity, "count": self.count}


def value_divisor(Q: RatFunc, a: Value) -> Divisor:
    """Divisor of ``Q - a`` (poles if ``a`` is ``INF``) on the sphere."""
    if Q.is_constant():
        raise ValueError("value divisor of a constant function")
    n, d = Q.num, Q.den
    if a is INF:
        g = d
        inf = max(n.degree - d.degree, 0)
    else:
        a = elem(a, Q.field)
        g = n - d.scale(a)
        inf = max(d.degree - g.degree, 0)
    entries = tuple((f, m) for m, f in squarefree_decomposition(g))
    return Divisor(entries, inf)


def wronskian(Q: RatFunc) -> Poly1:
    return Q.num.derivative() * Q.den - Q.num * Q.den.derivative()


def local_degree_at_infinity(Q: RatFunc) -> int:
    n, d = Q.num, Q.den
    if n.degree > d.degree:
        return n.degree - d.degree
    c = Q(INF)
    g = n - d.scale(c)
    return d.degree - g.degree


@dataclass(frozen=True)
class CriticalValues:
    poly: Poly1
    infinity_critical: bool

    def contains(self, v: Value) -> bool:
        if v is INF:
            return self.infinity_critical
        return self.poly.degree > 0 and not self.poly(v)


def critical_values(Q: RatFunc, var: str = "v") -> CriticalValues:
    """Monic squarefree polynomial whose roots are the finite critical values of ``Q``.

    Finite critical points are the roots of the Wronskian ``N'D - ND'``; their
    images are the roots of ``Res_t(W, N - v*D)``.  A finite critical value at
    ``t = oo`` is multiplied in separately.
    """
    field = Q.field
    if Q.is_constant():
        return CriticalValues(Poly1.const(1, var, field), False)
    t = Q.var
    vars2 = (t, var)
    W = wronskian(Q)
    out = Poly1.const(1, var, field)
    if W.degree > 0:
        g = MPoly.from_poly1(Q.num, vars2) - MPoly.from_poly1(Q.den, vars2) * MPoly.var(var, vars2, field)
        r = resultant(MPoly.from_poly1(W, vars2), g, t)
        rp = r.to_poly1(var) if not r.is_constant() else Poly1.const(r.constant_value(), var, field)
        if rp.degree > 0:
            out = squarefree_part(rp)
    inf_crit = any(m >= 2 for m, _ in squarefree_decomposition(Q.den)) if Q.den.degree > 0 else False
    e_inf = local_degree_at_infinity(Q)
    v_inf = Q(INF)
    if e_inf >= 2:
        if v_inf is INF:
            inf_crit = True
        else:
            lin = Poly1([-v_inf, 1], var, field)
            if not out.degree > 0 or out(v_inf):
                out = out * lin
    return CriticalValues(out.monic(), inf_crit)


def ramification_total(Q: RatFunc) -> int:
    """Total ramification ``sum(e_p - 1)`` over the sphere; equals ``2*deg - 2``."""
    W = wronskian(Q)
    return max(W.degree, 0) + local_degree_at_infinity(Q) - 1


# ----------------------------------------------------------------------------
# Mobius maps


@dataclass(frozen=True)
class MobiusMap:
    """``z -> (a z + b) / (c z + d)``."""

    a: FieldElem
    b: FieldElem
    c: FieldElem
    d: FieldElem

    def __post_init__(self):
        if not (self.a * self.d - self.b * self.c):
            raise ValueError("Mobius map with zero determinant")

    @classmethod
    def make(cls, a, b, c, d, field: Field = QQ) -> "MobiusMap":
        return cls(elem(a, field), elem(b, field), elem(c, field), elem(d, field))

    @classmethod
    def identity(cls, field=QQ) -> "MobiusMap":
        return cls.make(1, 0, 0, 1, field)

    def __call__(self, z: Value) -> Value:
        if z is INF:
            return INF if not self.c else self.a / self.c
        den = self.c * z + self.d
        if not den:
            return INF
        return (self.a * z + self.b) / den

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """``self o other``."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def as_ratfunc(self, var="t") -> RatFunc:
        f = self.a.field
        return RatFunc(Poly1([self.b, self.a], var, f), Poly1([self.d, self.c], var, f))


def mobius_apply(M: MobiusMap, Q: RatFunc) -> RatFunc:
    """``M o Q``."""
    return RatFunc(Q.num.scale(M.a) + Q.den.scale(M.b), Q.num.scale(M.c) + Q.den.scale(M.d))


def mobius_precompose(Q: RatFunc, M: MobiusMap) -> RatFunc:
    """``Q o M``."""
    return Q.compose(M.as_ratfunc(Q.var))


def asymptotic_values(Q: RatFunc, Qt: RatFunc) -> tuple[tuple[Value, Value], tuple[Value, Value]]:
    """Limits of ``(Q(e^z), Qt(e^z))`` as ``Re z -> +oo`` and ``-oo``."""
    zero = Q.field.zero
    return (Q(INF), Qt(INF)), (Q(zero), Qt(zero))
