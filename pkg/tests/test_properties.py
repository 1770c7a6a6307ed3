"""Randomized invariants; the hypothesis profile in conftest runs 1000 cases each."""

from fractions import Fraction

import numpy as np
import sympy as sp
from hypothesis import assume, given, strategies as st

from pairshare.field import QQ, field_make
from pairshare.parse import parse_poly, parse_poly1, parse_ratfunc
from pairshare.poly1 import Poly1, discriminant, poly_gcd, resultant1, squarefree_decomposition
from pairshare.ratfunc import (
    INF,
    MobiusMap,
    RatFunc,
    critical_values,
    mobius_apply,
    ramification_total,
    value_divisor,
    wronskian,
)
from pairshare.mpoly import MPoly
from pairshare.ratfunc import PunctureSet
from pairshare.sharing import NOT_SHARED, SHARED_CM, SHARED_IM, check_pair, multiplicity_pattern

EIS = field_make((1, 1))
GAUSS = field_make((1, 0))

small = st.integers(-4, 4)
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def polys(min_deg=0, max_deg=4, coeff=small):
    return st.lists(coeff, min_size=min_deg + 1, max_size=max_deg + 1).map(lambda cs: Poly1(cs, "t", QQ))


def nonzero(p):
    return not p.is_zero()


def field_elems(F):
    if F.is_rational:
        return fracs.map(F)
    return st.tuples(fracs, fracs).map(lambda c: F(*c))


def ratfuncs(max_deg=3):
    return st.tuples(polys(0, max_deg), polys(0, max_deg)).filter(
        lambda nd: nonzero(nd[1]) and nonzero(nd[0])
    ).map(lambda nd: RatFunc(*nd)).filter(lambda q: not q.is_constant())


values = st.one_of(st.just(INF), fracs)


def sym(p: Poly1):
    t = sp.Symbol("t")
    return sp.Poly([sp.Rational(c.to_fraction().numerator, c.to_fraction().denominator) for c in reversed(p.coeffs)] or [0], t)


# algebra


def sylvester_det(p: Poly1, q: Poly1):
    """Resultant straight from its definition, as a sympy determinant."""
    pc, qc = sym(p).all_coeffs(), sym(q).all_coeffs()
    m, n = p.degree, q.degree
    rows = [[0] * i + pc + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + qc + [0] * (m - 1 - i) for i in range(m)]
    return sp.Matrix(rows).det()


@given(polys(1), polys(1), polys(1))
def test_resultant_multiplicative(p, q, r):
    assume(p.degree >= 1 and q.degree >= 0 and r.degree >= 0 and nonzero(q) and nonzero(r))
    assert resultant1(p, q * r) == resultant1(p, q) * resultant1(p, r)


@given(polys(1), polys(1))
def test_resultant_symmetry_and_oracle(p, q):
    assume(p.degree >= 1 and q.degree >= 1)
    assert resultant1(p, q) == (-1) ** (p.degree * q.degree) * resultant1(q, p)
    expect = sylvester_det(p, q)
    assert resultant1(p, q).to_fraction() == Fraction(int(sp.numer(expect)), int(sp.denom(expect)))


@given(polys(), polys())
def test_gcd_divides(p, q):
    assume(nonzero(p) or nonzero(q))
    g = poly_gcd(p, q)
    for f in (p, q):
        assert (f % g).is_zero()
    expect = sp.gcd(sym(p), sym(q)).monic()
    assert sym(g.monic()).as_expr() == expect.as_expr()


@given(st.lists(polys(1, 2), min_size=1, max_size=4))
def test_squarefree_reconstruction(factors):
    assume(all(f.degree >= 1 for f in factors))
    p = Poly1.const(3, "t", QQ)
    for f in factors:
        p = p * f
    parts = squarefree_decomposition(p)
    back = Poly1.const(1, "t", QQ)
    for mult, g in parts:
        back = back * g ** mult
        assert poly_gcd(g, g.derivative()).degree == 0
    assert back.monic() == p.monic()
    for i, (_, g) in enumerate(parts):
        for _, h in parts[i + 1:]:
            assert poly_gcd(g, h).degree == 0


@given(st.sampled_from([QQ, EIS, GAUSS]).flatmap(lambda F: st.tuples(field_elems(F), field_elems(F), field_elems(F))))
def test_field_axioms(abc):
    a, b, c = abc
    F = a.field
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F.zero == a and a * F.one == a
    assert a - a == F.zero
    if a:
        assert a * (F.one / a) == F.one
    # the complex embedding is a ring homomorphism
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9 * (1 + abs(complex(a)) * abs(complex(b)))


@given(polys(1))
def test_discriminant_vs_gcd(p):
    assume(p.degree >= 1)
    assert (discriminant(p) == 0) == (poly_gcd(p, p.derivative()).degree >= 1)


# rational functions


@given(ratfuncs(), values)
def test_divisor_degree_conservation(Q, a):
    assert value_divisor(Q, a).degree == Q.degree


@given(ratfuncs(), st.tuples(small, small, small, small), values)
def test_mobius_transport(Q, abcd, a):
    A, B, C, D = abcd
    assume(A * D - B * C != 0)
    M = MobiusMap.make(A, B, C, D)
    MQ = mobius_apply(M, Q)
    assert MQ.degree == Q.degree
    assert value_divisor(MQ, M(a)) == value_divisor(Q, a)


@given(ratfuncs(4))
def test_riemann_hurwitz(Q):
    d = Q.degree
    total = ramification_total(Q)
    assert total <= 2 * d - 2
    # char 0: every rational map of degree d ramifies exactly 2d - 2 times
    assert total == 2 * d - 2
    cv = critical_values(Q)
    assert cv.poly.degree <= 2 * d - 2


@given(ratfuncs(3))
def test_critical_values_numeric_oracle(Q):
    W = wronskian(Q)
    assume(W.degree >= 1)
    cv = critical_values(Q)
    roots = np.roots(W.complex_coeffs()[::-1])
    for t0 in roots:
        den = np.polyval(Q.den.complex_coeffs()[::-1], t0)
        if abs(den) < 1e-6:
            continue  # a multiple pole: critical value infinity
        val = np.polyval(Q.num.complex_coeffs()[::-1], t0) / den
        scale = max(1.0, abs(val)) ** max(cv.poly.degree, 1)
        assert abs(np.polyval(cv.poly.complex_coeffs()[::-1], val)) < 1e-6 * scale * 10 ** cv.poly.degree


# sharing

pair_funcs = st.one_of(
    # random pairs, mostly nothing shared
    st.tuples(ratfuncs(3), ratfuncs(3)),
    # Mobius images share every pair CM
    st.tuples(ratfuncs(3), st.tuples(small, small, small, small)).filter(lambda x: x[1][0] * x[1][3] != x[1][1] * x[1][2]).map(
        lambda x: (x[0], mobius_apply(MobiusMap.make(*x[1]), x[0]))
    ),
    # powers share 0 and infinity IM
    st.tuples(ratfuncs(2), st.integers(2, 3)).map(lambda x: (x[0], x[0] ** x[1])),
)


@given(pair_funcs, values, values)
def test_sharing_symmetry_and_cm_implies_im(QQt, a, b):
    Q, Qt = QQt
    v = check_pair(Q, Qt, (a, b))
    w = check_pair(Qt, Q, (b, a))
    assert v.verdict == w.verdict
    if v.verdict == SHARED_CM:
        assert v.divisor_f.support().monic() == v.divisor_g.support().monic()
        assert v.divisor_f == v.divisor_g
    if v.verdict != NOT_SHARED:
        pat = multiplicity_pattern(Q, Qt, (a, b), PunctureSet.empty())
        assert pat.total_f() == v.divisor_f.degree and pat.total_g() == v.divisor_g.degree


@given(pair_funcs, values, values, st.lists(fracs, max_size=3), st.booleans())
def test_puncture_superset_monotone(QQt, a, b, extra, inf):
    Q, Qt = QQt
    if check_pair(Q, Qt, (a, b)).verdict == NOT_SHARED:
        return
    bigger = PunctureSet.of(list(extra) + ([INF] if inf else []), "t", QQ)
    assert check_pair(Q, Qt, (a, b), bigger).verdict in (SHARED_CM, SHARED_IM)


@given(pair_funcs, fracs, fracs)
def test_sharing_numeric_oracle(QQt, a, b):
    Q, Qt = QQt
    v = check_pair(Q, Qt, (a, b))
    assume(Q.degree <= 3 and Qt.degree <= 3)

    def finite_roots(R, c):
        p = R.num - R.den.scale(R.field(c))
        return [complex(z) for z in np.roots(p.complex_coeffs()[::-1])] if p.degree >= 1 else []

    ra, rb = finite_roots(Q, a), finite_roots(Qt, b)
    same = all(min((abs(x - y) for y in rb), default=1) < 1e-6 for x in ra) and all(
        min((abs(x - y) for y in ra), default=1) < 1e-6 for x in rb
    )
    inf_f = value_divisor(Q, a).inf > 0
    inf_g = value_divisor(Qt, b).inf > 0
    assert (v.verdict != NOT_SHARED) == (same and inf_f == inf_g)


# parser


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), fracs), max_size=6))
def test_parser_round_trip_mpoly(terms):
    p = MPoly.const(0, ("x", "y"), QQ)
    for i, j, c in terms:
        p = p + MPoly({(i, j): c}, ("x", "y"), QQ)
    text = str(p)
    q = parse_poly(text)
    assert q == p
    assert str(q) == text


@given(ratfuncs(3))
def test_parser_round_trip_ratfunc(Q):
    text = str(Q)
    R = parse_ratfunc(text)
    assert R == Q and str(R) == text


@given(st.tuples(fracs, fracs), polys(0, 3))
def test_parser_round_trip_field_coeffs(c, p):
    q = p * Poly1.const(EIS(*c), "t", EIS)
    text = str(q)
    assert parse_poly1(text, "t", EIS) == q
