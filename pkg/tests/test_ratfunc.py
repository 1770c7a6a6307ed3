from fractions import Fraction

import numpy as np
import pytest

from pairshare.poly1 import Poly1
from pairshare.ratfunc import (
    INF,
    MobiusMap,
    RatFunc,
    asymptotic_values,
    critical_values,
    mobius_apply,
    mobius_precompose,
    normalize,
    ramification_total,
    value_divisor,
)

from helpers import P, R, S
from pairshare.instances import gundersen, quadric_pair


def test_normalize_examples():
    assert normalize(P("(t+1)*(t-1)"), P("t-1")) == R("t+1")
    q = normalize(P("8"), P("t^2+6*t+4"))
    assert q.degree == 2 and q == quadric_pair(3)[0]
    z = normalize(P("0"), P("t"))
    assert z.is_zero() and z.degree == 0
    with pytest.raises(ZeroDivisionError):
        normalize(P("1"), Poly1.zero())


def test_denominator_monic():
    q = R("3/(2*t+4)")
    assert q.den.lc == 1 and q.num == P("3/2")


def test_value_divisor_examples():
    Qh, _, _ = gundersen()
    Qh = Qh.with_var("t")
    d0 = value_divisor(Qh, S("0"))
    assert d0.entries == ((P("t+1"), 1),) and d0.inf == 1
    dinf = value_divisor(Qh, INF)
    assert dinf.entries == ((P("t-1"), 2),) and dinf.inf == 0
    d5 = value_divisor(R("t"), S("5"))
    assert d5.entries == ((P("t-5"), 1),)
    with pytest.raises(ValueError):
        value_divisor(R("3"), S("1"))


def test_divisor_json():
    Qh, _, _ = gundersen()
    assert value_divisor(Qh, S("0")).to_json() == [{"factor": "w+1", "mult": 1}, {"inf": 1}]


def test_critical_values_quadric_c3():
    Q, Qt = quadric_pair(3)
    cv = critical_values(Q)
    roots = {Fraction(0), Fraction(-8, 5)}
    assert cv.poly.degree == 2
    assert all(not cv.poly(S(str(r))) for r in roots)
    cvt = critical_values(Qt)
    assert cvt.poly.degree == 2
    for r in ("4/5", "4"):
        assert cvt.contains(S(r))


def test_critical_values_mobius_has_none():
    cv = critical_values(R("t"))
    assert cv.poly.degree <= 0 and not cv.infinity_critical


def test_critical_values_infinity_flag():
    Qh, _, _ = gundersen()
    assert critical_values(Qh).infinity_critical  # double pole at w = 1


def test_mobius_examples():
    Qh, Qth, _ = gundersen()
    M = MobiusMap.make(0, 1, 1, Fraction(1, 2))  # 1/(x + 1/2)
    f = mobius_apply(M, Qh)
    assert f.degree == Qh.degree
    assert M(S("-1/2")) is INF
    ident = MobiusMap.identity()
    assert mobius_apply(ident, Qh) == Qh
    inv = MobiusMap.make(0, 1, 1, 0)
    q = mobius_precompose(R("t^2"), inv)
    assert q == R("1/t^2") and q.degree == 2


def test_mobius_divisor_transport():
    Qh, _, _ = gundersen()
    M = MobiusMap.make(2, 1, 1, 3)
    for a in (S("0"), S("1"), S("-1/8"), INF):
        assert value_divisor(mobius_apply(M, Qh), M(a)) == value_divisor(Qh, a)


def test_asymptotic_values():
    Qh, Qth, _ = gundersen()
    assert asymptotic_values(Qh, Qth) == ((0, INF), (1, S("-1/8")))
    Q, Qt = quadric_pair(3)
    assert asymptotic_values(Q, Qt) == ((0, 0), (2, 0))
    assert asymptotic_values(R("t"), R("t")) == ((INF, INF), (0, 0))


def test_riemann_hurwitz_total():
    Qh, Qth, _ = gundersen()
    for q in (Qh, Qth, *quadric_pair(3)):
        assert ramification_total(q) == 2 * q.degree - 2


def test_critical_values_numeric_oracle():
    rng = np.random.default_rng(5)
    for _ in range(30):
        n = [int(c) for c in rng.integers(-5, 6, size=4)]
        d = [int(c) for c in rng.integers(-5, 6, size=3)] + [1]
        Q = RatFunc(Poly1(n), Poly1(d))
        if Q.degree < 2:
            continue
        W = (Q.num.derivative() * Q.den - Q.num * Q.den.derivative())
        pts = np.roots(W.complex_coeffs()[::-1]) if W.degree > 0 else []
        cv = critical_values(Q).poly
        for z in pts:
            if abs(Q.den(complex(z))) < 1e-9:
                continue
            val = Q(complex(z))
            scale = max(1.0, max(abs(complex(c)) for c in cv.coeffs) * max(1.0, abs(val)) ** cv.degree)
            assert abs(cv(complex(val))) / scale < 1e-8
