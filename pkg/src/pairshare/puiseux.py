"""Newton polygons and Newton-Puiseux branch expansions of plane curves.

A curve ``K(x, y) = 0`` is translated so that the point of interest is the
origin.  Support points are read as ``(j, i)`` for the monomial ``x^i y^j``;
a lower-hull segment of slope ``-mu`` carries branches ``y ~ c x^mu``.
Branches with ``mu < 1`` are expanded in the swapped orientation ``x(y)``
so that integral exponents such as ``x = c y^4`` stay inside the field.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

from .field import FieldElem, elem, format_elem
from .lift import field_nth_root, field_roots
from .mpoly import MPoly
from .poly1 import Poly1


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    exponent: Fraction  # mu in y ~ c x^mu
    points: tuple[tuple[int, int], ...]  # (i, j) exponent pairs on the segment

    @property
    def slope(self) -> Fraction:
        return -self.exponent

    @property
    def width(self) -> int:
        js = [j for _, j in self.points]
        return max(js) - min(js)


def _local(K: MPoly, at) -> MPoly:
    if len(K.vars) != 2:
        raise CurveError("expected a bivariate polynomial")
    x, y = K.vars
    a, b = (elem(v, K.field) for v in at)
    if K.evaluate({x: a, y: b}):
        raise CurveError(f"curve does not pass through ({format_elem(a)}, {format_elem(b)})")
    G = K.translate({x: a, y: b}) if (a or b) else K
    return G.rename({x: "x", y: "y"}) if (x, y) != ("x", "y") else G


def _hull(points: dict[int, int]) -> list[Segment]:
    """Lower-left hull of ``{j: min i}``; only segments with negative slope."""
    js = sorted(points)
    cur = js[0]
    segs = []
    while True:
        best = None
        for j in js:
            if j <= cur:
                continue
            s = Fraction(points[j] - points[cur], j - cur)
            if best is None or s < best[0] or (s == best[0] and j > best[1]):
                best = (s, j)
        if best is None or best[0] >= 0:
            break
        segs.append((best[0], cur, best[1]))
        cur = best[1]
    return segs


def _segments(G: MPoly) -> list[Segment]:
    low: dict[int, int] = {}
    for (i, j) in G.terms:
        if j not in low or i < low[j]:
            low[j] = i
    out = []
    for slope, j0, j1 in _hull(low):
        mu = -slope
        level = low[j0] + mu * j0
        pts = tuple(sorted((i, j) for (i, j) in G.terms if j0 <= j <= j1 and i + mu * j == level))
        out.append(Segment(mu, pts))
    return out


def newton_polygon(K: MPoly, at=(0, 0)) -> list[Segment]:
    """Segments of the Newton polygon of ``K`` at the point ``at``.

    The exponents ``mu`` cover every branch through the point except
    branches contained in the axis ``y = b`` (reported by :func:`puiseux_branches`).
    """
    return _segments(_local(K, at))


def _y_order(G: MPoly) -> int:
    return min(j for (_, j) in G.terms)


@dataclass
class BranchExpansion:
    exponent: Fraction | None  # leading exponent of y in x; None for a branch on the axis
    orientation: str  # "y(x)" or "x(y)"
    terms: list[tuple[Fraction, FieldElem]]  # (exponent, coefficient) in the orientation's variables
    ramification: int = 1
    multiplicity: int = 1
    exact: bool = False  # the series terminates exactly
    residual_order: Fraction | None = None
    extension_needed: str | None = None

    @property
    def leading_coefficient(self) -> FieldElem | None:
        return self.terms[0][1] if self.terms else None

    @property
    def leading_exponent(self) -> Fraction:
        """Leading exponent in the orientation's own parameter."""
        if self.terms:
            return self.terms[0][0]
        if self.exponent is None:
            return None
        return self.exponent if self.orientation == "y(x)" else 1 / self.exponent

    def series(self) -> str:
        dep, ind = ("y", "x") if self.orientation == "y(x)" else ("x", "y")
        parts = []
        for e, c in self.terms:
            parts.append(f"({format_elem(c)})*{ind}^{e}")
        return f"{dep} = " + (" + ".join(parts) if parts else "0")

    def to_json(self) -> dict:
        return {
            "exponent": None if self.exponent is None else str(self.exponent),
            "orientation": self.orientation,
            "terms": [[str(e), format_elem(c)] for e, c in self.terms],
            "ramification": self.ramification,
            "multiplicity": self.multiplicity,
            "exact": self.exact,
            "residual_order": None if self.residual_order is None else str(self.residual_order),
            "extension_needed": self.extension_needed,
        }


def _substitute(G: MPoly, p: int, q: int, c: FieldElem) -> MPoly:
    """``G(s^q, s^p (c + Y)) / s^N`` as a polynomial in ``(x=s, y=Y)``."""
    field = G.field
    maxj = max(j for (_, j) in G.terms)
    powers = [Poly1.const(1, "y", field)]
    base = Poly1([c, field.one], "y", field)
    for _ in range(maxj):
        powers.append(powers[-1] * base)
    acc: dict[tuple[int, int], FieldElem] = {}
    for (i, j), coef in G.terms.items():
        e = q * i + p * j
        for k, ck in enumerate(powers[j].coeffs):
            if ck:
                key = (e, k)
                acc[key] = acc.get(key, field.zero) + coef * ck
    acc = {k: v for k, v in acc.items() if v}
    n = min(e for (e, _) in acc)
    return MPoly({(e - n, k): v for (e, k), v in acc.items()}, ("x", "y"), field)


def _edge_poly(seg: Segment, G: MPoly, q: int) -> Poly1:
    j0 = min(j for _, j in seg.points)
    coeffs: dict[int, FieldElem] = {}
    for (i, j) in seg.points:
        coeffs[(j - j0) // q] = G.terms[(i, j)]
    deg = max(coeffs)
    return Poly1([coeffs.get(k, G.field.zero) for k in range(deg + 1)], "z", G.field)


def _expand(G: MPoly, terms: int, mu_filter, bounds) -> list[BranchExpansion]:
    """Branches ``y(x)`` of ``G`` at the origin whose first exponent passes ``mu_filter``."""
    out: list[BranchExpansion] = []
    r = _y_order(G)
    if r > 0 and mu_filter(None):
        out.append(BranchExpansion(None, "y(x)", [], 1, r, True))

    def rec(H: MPoly, base: Fraction, ram: int, acc: list, first_mu, mult: int, first: bool):
        if len(acc) >= terms:
            out.append(BranchExpansion(first_mu, "y(x)", list(acc), ram, mult))
            return
        ro = _y_order(H)
        if ro > 0 and not first:
            # remaining part vanishes identically: a terminating expansion
            out.append(BranchExpansion(first_mu, "y(x)", list(acc), ram, ro, True))
        segs = _segments(H)
        for seg in segs:
            mu = seg.exponent
            if first and not mu_filter(mu):
                continue
            p, q = mu.numerator, mu.denominator
            F = _edge_poly(seg, H, q)
            roots, rest = field_roots(F, bounds)
            for mult_z, g in rest:
                need = str(g) if q == 1 else f"{g} (z = c^{q})"
                fm = mu if first else first_mu
                out.append(BranchExpansion(fm, "y(x)", list(acc), ram * q, mult_z * g.degree, extension_needed=need))
            for z, mz in roots:
                c = field_nth_root(z, q, bounds)
                e = base + Fraction(p, q * ram)
                fm = mu if first else first_mu
                if c is None:
                    out.append(
                        BranchExpansion(fm, "y(x)", list(acc), ram * q, mz, extension_needed=f"c^{q}-({format_elem(z)})")
                    )
                    continue
                H1 = _substitute(H, p, q, c)
                rec(H1, e, ram * q, acc + [(e, c)], fm, mz, False)

    rec(G, Fraction(0), 1, [], None, 1, True)
    return out


def _residual_order(K: MPoly, br: BranchExpansion) -> Fraction | None:
    """Order in the independent variable of ``K`` along the truncated series.

    Sets ``br.exact`` and returns ``None`` when the series solves ``K`` exactly.
    """
    if not br.terms or br.extension_needed:
        return None
    field = K.field
    ram = br.ramification
    # parameter s with independent variable = s^ram
    ind = Poly1([field.zero] * ram + [field.one], "s", field)
    dep = Poly1.zero("s", field)
    for e, c in br.terms:
        k = e * ram
        if k.denominator != 1:
            return None
        dep = dep + Poly1([field.zero] * int(k) + [c], "s", field)
    X, Y = (ind, dep) if br.orientation == "y(x)" else (dep, ind)
    val = Poly1.zero("s", field)
    for (i, j), coef in K.terms.items():
        val = val + (X ** i) * (Y ** j) * coef
    if val.is_zero():
        br.exact = True
        return None
    return Fraction(val.valuation(), ram)


def puiseux_branches(K: MPoly, at=(0, 0), terms: int = 3, bounds=None) -> list[BranchExpansion]:
    """All branches of ``K = 0`` through ``at`` with up to ``terms`` coefficients.

    Branches with exponent ``mu >= 1`` are expanded as ``y(x)``; the others
    (including ``x`` constant) as ``x(y)`` in the swapped orientation, with
    their ``exponent`` still reported in the ``y(x)`` sense.
    """
    from .lift import DEFAULT_BOUNDS

    bounds = bounds or DEFAULT_BOUNDS
    G = _local(K, at)
    Gs = G.rename({"x": "y", "y": "x"}).with_vars(("x", "y"))
    res = _expand(G, terms, lambda mu: mu is None or mu >= 1, bounds)
    for br in _expand(Gs, terms, lambda mu: mu is None or mu > 1, bounds):
        br.orientation = "x(y)"
        if br.exponent is not None:
            br.exponent = 1 / br.exponent
        res.append(br)
    for br in res:
        br.residual_order = _residual_order(G, br)
    return res

