"""Plane curves attached to rational pairs.

Implicitization by resultants, exact parameterization tests, the fiber
and shape conditions on ``K(x, y)`` at shared pairs, the eliminant of two
copies of a curve, the auxiliary conics through four pairs and the
polynomial ``H0`` built from them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd

from .field import QQ, FieldElem, common_field, elem, format_elem
from .linalg import nullspace, solve
from .mpoly import MPoly, content_and_primitive
from .poly1 import Poly1
from .puiseux import BranchExpansion, CurveError, newton_polygon, puiseux_branches
from .ratfunc import INF, MobiusMap, RatFunc, is_inf, value_str
from .resultant import resultant
from .sharing import SharedPairSpec

__all__ = [
    "AuxQuadratics",
    "BranchExpansion",
    "CurveError",
    "CurveModel",
    "FiberResult",
    "PairCurve",
    "ShapeReport",
    "aux_quadratics",
    "build_H0",
    "fiber_check",
    "fiber_signature",
    "h9_corner",
    "implicitize",
    "newton_polygon",
    "on_curve",
    "power_root",
    "puiseux_branches",
    "resultant_pair",
    "shape_check",
]

XY = ("x", "y")


@dataclass
class CurveModel:
    K: MPoly
    map_degree: int
    content_removed: FieldElem

    @property
    def deg_x(self) -> int:
        return self.K.deg_x

    @property
    def deg_y(self) -> int:
        return self.K.deg_y

    @property
    def proper(self) -> bool:
        return self.map_degree == 1

    def to_json(self) -> dict:
        return {
            "K": str(self.K),
            "deg_x": self.deg_x,
            "deg_y": self.deg_y,
            "map_degree": self.map_degree,
            "content_removed": format_elem(self.content_removed),
        }


def power_root(R: MPoly, d: int) -> MPoly | None:
    """``S`` with ``S^d = R / lc(R)`` (lex leading coefficient 1), or ``None``."""
    if d == 1:
        return R.scale(R.leading_term()[1].inverse())
    er, cr = R.leading_term()
    if any(e % d for e in er):
        return None
    R = R.scale(cr.inverse())
    lead = tuple(e // d for e in er)
    S = MPoly({lead: 1}, R.vars, R.field)
    denom_exp = tuple((d - 1) * e for e in lead)
    inv_d = R.field(d).inverse()
    bound = 1
    for v in R.vars:
        bound *= R.degree(v) // d + 1
    for _ in range(bound + 1):
        E = R - S ** d
        if E.is_zero():
            return S
        ee, ce = E.leading_term()
        ne = tuple(a - b for a, b in zip(ee, denom_exp))
        if any(k < 0 for k in ne) or ne >= lead:
            return None
        S = S + MPoly({ne: ce * inv_d}, R.vars, R.field)
    return None


def _root_with_degree(R: MPoly) -> tuple[MPoly, int]:
    degs = [R.degree(v) for v in R.vars if R.degree(v) > 0]
    g = 0
    for k in degs:
        g = gcd(g, k)
    for d in range(g, 1, -1):
        if g % d:
            continue
        S = power_root(R, d)
        if S is not None:
            return S, d
    return R, 1


def _ratfunc_pair_polys(Q: RatFunc, Qt: RatFunc, vars=XY):
    t = Q.var
    Qt = Qt.with_var(t)
    V = (vars[0], vars[1], t)
    f = common_field(Q.field, Qt.field)
    p = MPoly.var(vars[0], V, f) * MPoly.from_poly1(Q.den, V) - MPoly.from_poly1(Q.num, V)
    q = MPoly.var(vars[1], V, f) * MPoly.from_poly1(Qt.den, V) - MPoly.from_poly1(Qt.num, V)
    return p, q, t


def implicitize(Q: RatFunc, Qt: RatFunc, vars=XY) -> CurveModel:
    """The curve ``K(x, y) = 0`` parameterized by ``t -> (Q(t), Qt(t))``.

    ``Res_t(x*den(Q) - num(Q), y*den(Qt) - num(Qt)) = c * K^d`` with ``d``
    the degree of the parameterization (1 when it is proper).
    """
    if Q.is_constant() and Qt.is_constant():
        raise CurveError("both functions are constant")
    p, q, t = _ratfunc_pair_polys(Q, Qt, vars)
    R = resultant(p, q, t).with_vars(vars)
    if R.is_zero() or R.is_constant():
        raise CurveError("resultant is trivial: malformed input")
    content, prim = content_and_primitive(R)
    K, d = _root_with_degree(prim)
    c2, K = content_and_primitive(K)
    if not on_curve(K, Q, Qt):
        raise CurveError("internal: implicit equation does not vanish on the parameterization")
    return CurveModel(K, d, content)


def on_curve(K: MPoly, Q: RatFunc, Qt: RatFunc) -> bool:
    """Exact test ``K(Q(t), Qt(t)) == 0`` after clearing denominators."""
    if len(K.vars) != 2:
        raise CurveError("expected a bivariate polynomial")
    Qt = Qt.with_var(Q.var)
    field = common_field(common_field(K.field, Q.field), Qt.field)
    dx, dy = K.deg_x, K.deg_y
    if dx < 0:
        return True
    N, D, Nt, Dt = Q.num, Q.den, Qt.num, Qt.den
    pn = [Poly1.const(1, Q.var, field)]
    pd = [Poly1.const(1, Q.var, field)]
    for _ in range(dx):
        pn.append(pn[-1] * N)
        pd.append(pd[-1] * D)
    qn = [Poly1.const(1, Q.var, field)]
    qd = [Poly1.const(1, Q.var, field)]
    for _ in range(dy):
        qn.append(qn[-1] * Nt)
        qd.append(qd[-1] * Dt)
    acc = Poly1.zero(Q.var, field)
    for (i, j), c in K.terms.items():
        acc = acc + pn[i] * pd[dx - i] * qn[j] * qd[dy - j] * c
    return acc.is_zero()


# fibers and shape


def _fiber_poly(K: MPoly, fixed: int, value) -> Poly1:
    """``K`` restricted to ``var[fixed] = value`` as a polynomial in the other variable.

    For ``value = inf`` this is the leading coefficient with respect to the fixed variable.
    """
    v_fixed, v_other = K.vars[fixed], K.vars[1 - fixed]
    if is_inf(value):
        coeffs = K.coefficients_in(v_fixed)
        return coeffs[-1].with_vars((v_other,)).to_poly1(v_other) if len(K.vars) == 2 else None
    return K.subs(v_fixed, value).drop(v_fixed).to_poly1(v_other)


def _taylor(p: Poly1, b) -> list[FieldElem]:
    """Coefficients of ``p(z + b)``."""
    shifted = p(Poly1([elem(b, p.field), p.field.one], p.var, p.field))
    return list(shifted.coeffs)


@dataclass(frozen=True)
class FiberResult:
    a: object
    b: object
    y_side: bool  # K(a, y) = c (y - b)^k
    k: int | None
    x_side: bool  # K(x, b) = c (x - a)^l
    l: int | None

    @property
    def ok(self) -> bool:
        return self.y_side and self.x_side

    def to_json(self) -> dict:
        return {
            "a": value_str(self.a),
            "b": value_str(self.b),
            "y_side": self.y_side,
            "k": self.k,
            "x_side": self.x_side,
            "l": self.l,
        }


def _one_side(K: MPoly, fixed: int, value, target) -> tuple[bool, int | None]:
    p = _fiber_poly(K, fixed, value)
    if p.is_zero():
        side = "x" if fixed == 0 else "y"
        raise CurveError(f"K vanishes identically on the line {K.vars[fixed]} = {value_str(value)} ({side}-fiber)")
    if is_inf(target):
        full = K.degree(K.vars[1 - fixed])
        return p.degree == 0, full - p.degree
    if p.degree < 1:
        return False, 0
    tc = _taylor(p, target)
    nonzero = [i for i, c in enumerate(tc) if c]
    return nonzero == [p.degree], p.degree


def fiber_check(K: MPoly, pairs: SharedPairSpec) -> list[FiberResult]:
    """Is the fiber of ``K`` over ``a`` concentrated at ``b`` (and vice versa)?

    For ``a = inf`` the leading coefficient of ``K`` in ``x`` plays the role
    of the fiber; the exponent then counts the branches escaping to infinity.
    """
    if K.is_zero():
        raise CurveError("K is zero")
    out = []
    for a, b in pairs.pairs:
        ys, k = _one_side(K, 0, a, b)
        xs, l = _one_side(K, 1, b, a)
        out.append(FiberResult(a, b, ys, k, xs, l))
    return out


def fiber_signature(K: MPoly, value, fixed: int = 0):
    """``(c, b, k)`` if ``K(value, y) = c (y - b)^k``, else ``None``."""
    p = _fiber_poly(K, fixed, value)
    if p.degree < 1:
        return None
    k = p.degree
    b = -p.coeff(k - 1) / (p.lc * k)
    if _taylor(p, b)[:k] != [p.field.zero] * k:
        return None
    return p.lc, b, k


@dataclass
class ShapeReport:
    m: int
    n: int
    total_degree: int
    s: int | None = None
    t: int | None = None
    lam: int | None = None
    kappa: int | None = None
    A: FieldElem | None = None
    derivatives: list[dict] = dc_field(default_factory=list)
    mismatches: list[str] = dc_field(default_factory=list)
    st_range: tuple[int, int] = (1, 4)

    @property
    def bounds_ok(self) -> bool:
        return self.m <= 9 and self.n <= 9 and self.total_degree <= 13

    @property
    def st_ok(self) -> bool:
        lo, hi = self.st_range
        return self.s is not None and self.t is not None and lo <= self.s <= hi and lo <= self.t <= hi

    @property
    def derivative_ok(self) -> bool:
        return all(c["y_ok"] and c["x_ok"] for c in self.derivatives if c["checked"] == "both") and all(
            c[f"{c['checked']}_ok"] for c in self.derivatives if c["checked"] != "both"
        )

    @property
    def matches(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "total_degree": self.total_degree,
            "s": self.s,
            "t": self.t,
            "lambda": self.lam,
            "kappa": self.kappa,
            "A": None if self.A is None else format_elem(self.A),
            "bounds_ok": self.bounds_ok,
            "st_ok": self.st_ok,
            "derivatives": self.derivatives,
            "matches": self.matches,
            "mismatches": self.mismatches,
        }


def _match_power(p: Poly1, values) -> tuple[int, int | None] | None:
    """``(s, index)`` with ``p = c (z - values[index])^s``; ``(0, None)`` for constants."""
    if p.degree == 0:
        return 0, None
    for idx, v in enumerate(values):
        if is_inf(v):
            continue
        tc = _taylor(p, v)
        if [i for i, c in enumerate(tc) if c] == [p.degree]:
            return p.degree, idx
    return None


def derivative_survivors(K: MPoly, a, b) -> tuple[list[int], list[int]]:
    """Indices ``j`` (resp. ``l``) with nonvanishing ``d^j K/dy^j`` (resp. ``d^l K/dx^l``) at ``(a, b)``."""
    ty = _taylor(_fiber_poly(K, 0, a), b)
    tx = _taylor(_fiber_poly(K, 1, b), a)
    return [j for j, c in enumerate(ty) if c], [l for l, c in enumerate(tx) if c]


def shape_check(K: MPoly, pairs: SharedPairSpec, sides=None, st_range=(1, 4)) -> ShapeReport:
    """Match ``K`` against ``(x - a_lam)^s y^m + A (y - b_kap)^t x^n + tail`` and test the derivative conditions.

    ``sides`` optionally restricts the derivative test per pair to ``"y"`` or
    ``"x"`` (default ``"both"``); ``st_range`` is the admissible range of ``s, t``.
    """
    x, y = K.vars
    m, n = K.degree(y), K.degree(x)
    sides = list(sides) if sides is not None else ["both"] * len(pairs.pairs)
    if len(sides) != len(pairs.pairs) or any(sd not in ("both", "x", "y") for sd in sides):
        raise CurveError("sides must give 'both', 'x' or 'y' for every pair")
    rep = ShapeReport(m, n, K.total_degree, st_range=tuple(st_range))
    a_vals = [p[0] for p in pairs.pairs]
    b_vals = [p[1] for p in pairs.pairs]
    lead_y = K.coefficients_in(y)[-1].with_vars((x,)).to_poly1(x)
    lead_x = K.coefficients_in(x)[-1].with_vars((y,)).to_poly1(y)
    my = _match_power(lead_y, a_vals)
    mx = _match_power(lead_x, b_vals)
    if my is None:
        rep.mismatches.append(f"coefficient of y^{m} is not a power of (x - a_nu): {lead_y}")
    else:
        rep.s, rep.lam = my
    if mx is None:
        rep.mismatches.append(f"coefficient of x^{n} is not a power of (y - b_nu): {lead_x}")
    else:
        rep.t, rep.kappa = mx
    rep.A = lead_x.lc / lead_y.lc
    if not rep.bounds_ok:
        rep.mismatches.append(f"degree bounds violated: m={m}, n={n}, total={K.total_degree}")
    if my is not None and mx is not None and not rep.st_ok:
        rep.mismatches.append(f"exponents s={rep.s}, t={rep.t} outside [{st_range[0]}, {st_range[1]}]")
    for nu, (a, b) in enumerate(pairs.pairs):
        if is_inf(a) or is_inf(b):
            continue
        sy, sx = derivative_survivors(K, a, b)
        entry = {
            "pair": nu,
            "y_survivors": sy,
            "x_survivors": sx,
            "y_ok": len(sy) == 1 and sy[0] > 0,
            "x_ok": len(sx) == 1 and sx[0] > 0,
            "checked": sides[nu],
        }
        rep.derivatives.append(entry)
        for side in ("y", "x") if sides[nu] == "both" else (sides[nu],):
            if not entry[f"{side}_ok"]:
                rep.mismatches.append(f"derivative condition fails on the {side}-side at pair {nu}")
    return rep


# eliminant of two copies


@dataclass
class PairCurve:
    model: CurveModel
    diagonal_power: int
    candidates: list[dict]
    presumptive: bool

    def to_json(self) -> dict:
        d = self.model.to_json()
        d.update({"diagonal_power": self.diagonal_power, "candidates": self.candidates, "presumptive": self.presumptive})
        return d


def resultant_pair(H: MPoly, eliminate: str = "u", remove_diagonal: bool = True, probe=(0,)) -> PairCurve:
    """Curve between two distinct solutions ``y1, y2`` of ``H(u, y) = 0`` over the same ``u``.

    ``Res_u(H(u, y), H(u, x))`` always contains a power of ``x - y`` (the
    two solutions coinciding); it is divided out unless ``remove_diagonal``
    is false.  The remaining factor is returned together with its fiber
    signatures at the ``probe`` abscissas.
    """
    if eliminate not in H.vars or len(H.vars) != 2:
        raise CurveError("H must be bivariate in the eliminated variable and one other")
    other = next(v for v in H.vars if v != eliminate)
    V = ("x", "y", eliminate)
    Hy = H.rename({other: "y"}).with_vars(V)
    Hx = H.rename({other: "x"}).with_vars(V)
    R = resultant(Hy, Hx, eliminate).with_vars(XY)
    if R.is_zero():
        raise CurveError("resultant vanishes identically")
    content, R = content_and_primitive(R)
    diag = MPoly.var("x", XY, R.field) - MPoly.var("y", XY, R.field)
    k = 0
    while True:
        q, r = R.divmod_lex(diag)
        if not r.is_zero():
            break
        R, k = q, k + 1
    if not remove_diagonal and k:
        R = R * diag ** k
    if R.is_constant():
        raise CurveError("no nontrivial factor remains")
    K, d = _root_with_degree(R)
    c2, K = content_and_primitive(K)
    cands = []
    if k:
        cands.append({"factor": "x-y", "power": k, "role": "diagonal"})
    sigs = {}
    for x0 in probe:
        s = fiber_signature(K, x0)
        sigs[format_elem(elem(x0, K.field))] = None if s is None else {"root": format_elem(s[1]), "power": s[2]}
    cands.append({"factor": str(K), "power": d, "role": "curve", "fibers": sigs})
    presumptive = all(v is not None for v in sigs.values())
    return PairCurve(CurveModel(K, d, content), k if remove_diagonal else 0, cands, presumptive)


# auxiliary conics and H0


@dataclass
class AuxQuadratics:
    """Conics through four finite pairs.

    ``P = x^2 + c2 xy + c3 x + c4 y + c5`` and ``Pt = y^2 + ...``.  When a
    conic ``P0 = c2 xy + c3 x + c4 y + c5`` also passes through the pairs
    (``b = M(a)`` for a Mobius map ``M``) the normalized conics may not
    exist; then ``P``/``Pt`` hold ``P0`` and a conic without ``xy`` term.
    """

    P: MPoly
    Pt: MPoly
    degenerate: bool = False
    P0: MPoly | None = None
    Pt0: MPoly | None = None
    mobius: MobiusMap | None = None

    @property
    def c(self) -> list[FieldElem]:
        return [self.P.coeff(e) for e in ((2, 0), (1, 1), (1, 0), (0, 1), (0, 0))]

    @property
    def ct(self) -> list[FieldElem]:
        return [self.Pt.coeff(e) for e in ((0, 2), (1, 1), (1, 0), (0, 1), (0, 0))]

    def to_json(self) -> dict:
        d = {"P": str(self.P), "Pt": str(self.Pt), "degenerate": self.degenerate}
        if self.degenerate:
            d["P0"] = str(self.P0)
            d["Pt0"] = str(self.Pt0)
            if self.mobius is not None:
                M = self.mobius
                d["M"] = [format_elem(z) for z in (M.a, M.b, M.c, M.d)]
        return d


def _four_pairs(pairs: SharedPairSpec):
    fin = pairs.finite_pairs()
    if len(fin) != 4:
        raise CurveError(f"need four finite pairs, got {len(fin)}")
    return fin


def aux_quadratics(pairs: SharedPairSpec) -> AuxQuadratics:
    fin = _four_pairs(pairs)
    field = QQ
    for a, b in fin:
        field = common_field(common_field(field, a.field), b.field)
    rows = [[a * b, a, b, field.one] for a, b in fin]

    def conic(coeffs: dict) -> MPoly:
        return MPoly(coeffs, XY, field)

    null = nullspace(rows, 4, field)
    if not null:
        c = solve(rows, [-(a * a) for a, _ in fin], field)
        ct = solve(rows, [-(b * b) for _, b in fin], field)
        P = conic({(2, 0): 1, (1, 1): c[0], (1, 0): c[1], (0, 1): c[2], (0, 0): c[3]})
        Pt = conic({(0, 2): 1, (1, 1): ct[0], (1, 0): ct[1], (0, 1): ct[2], (0, 0): ct[3]})
        return AuxQuadratics(P, Pt)
    h = null[0]
    _, P0 = content_and_primitive(conic({(1, 1): h[0], (1, 0): h[1], (0, 1): h[2], (0, 0): h[3]}))
    # a second conic of the pencil, without xy term
    rows2 = [[a * a, b * b, a, b, field.one] for a, b in fin]
    Pt0 = None
    for v in nullspace(rows2, 5, field):
        if v[0] or v[1]:
            _, Pt0 = content_and_primitive(conic({(2, 0): v[0], (0, 2): v[1], (1, 0): v[2], (0, 1): v[3], (0, 0): v[4]}))
            break
    if Pt0 is None:
        raise CurveError("inconsistent input: no second conic through the pairs")
    mob = None
    det = -h[1] * h[2] + h[3] * h[0]
    if det:
        mob = MobiusMap.make(-h[1], -h[3], h[0], h[2], field)
    return AuxQuadratics(P0, Pt0, True, P0, Pt0, mob)


def build_H0(aux: AuxQuadratics, pairs: SharedPairSpec, u, v) -> MPoly:
    """``P^3 Pt^3 - u (Pt Px - P Ptx) Pt^3 prod(x - a) + v (Pt Py - P Pty) P^3 prod(y - b)``."""
    fin = _four_pairs(pairs)
    P, Pt = aux.P, aux.Pt
    field = common_field(P.field, Pt.field)
    u, v = elem(u, field), elem(v, field)
    for a, b in fin:
        if P.evaluate({"x": a, "y": b}) or Pt.evaluate({"x": a, "y": b}):
            raise CurveError(f"conics do not vanish at ({format_elem(a)}, {format_elem(b)})")
    X = MPoly.var("x", XY, field)
    Y = MPoly.var("y", XY, field)
    px = MPoly.const(1, XY, field)
    py = MPoly.const(1, XY, field)
    for a, b in fin:
        px = px * (X - a)
        py = py * (Y - b)
    P3, Pt3 = P ** 3, Pt ** 3
    wx = Pt * P.diff("x") - P * Pt.diff("x")
    wy = Pt * P.diff("y") - P * Pt.diff("y")
    return P3 * Pt3 - (wx * Pt3 * px).scale(u) + (wy * P3 * py).scale(v)


def h9_corner(H0: MPoly) -> FieldElem:
    """Coefficient of ``x^9 y^0`` in ``H0``."""
    return H0.coeff((9, 0))
