"""The classical examples, ready to feed into the checkers."""

from __future__ import annotations

from fractions import Fraction

from .field import QQ, field_make
from .parse import parse_poly, parse_ratfunc, parse_scalar
from .sharing import SharedPairSpec

# minimal polynomial t^2 + t + 1, so the generator a is -1/2 + (i/2) sqrt(3)
EISENSTEIN = field_make((1, 1))


def gundersen():
    """``(w+1)/(w-1)^2`` and ``(w+1)^2/(8(w-1))`` with their five shared pairs."""
    Q = parse_ratfunc("(w+1)/(w-1)^2", "w")
    Qt = parse_ratfunc("(w+1)^2/(8*(w-1))", "w")
    spec = SharedPairSpec.make(
        [(0, 0), (1, 1), ("-1/8", "-1/8"), ("inf", "inf"), ("-1/2", "1/4")],
        [False, False, False, False, True],
    )
    return Q, Qt, spec


def gundersen_normalized():
    """The Gundersen pair after ``x -> 1/(x + 1/2)``, ``y -> 1/(y - 1/4)``.

    The CM pair moves to ``(inf, inf)`` and the IM pairs become those of the
    quadric family with ``c = 1``.
    """
    Qh, Qth, _ = gundersen()
    Q = 1 / (Qh + parse_scalar("1/2"))
    Qt = 1 / (Qth - parse_scalar("1/4"))
    spec = SharedPairSpec.make(
        [(0, 0), ("8/3", "-8/3"), (2, -4), ("2/3", "4/3"), ("inf", "inf")],
        [False, False, False, False, True],
    )
    return Q, Qt, spec


def quadric_pair(c):
    """``8/(t^2+2ct+4)`` and ``8t/(t^2+2ct+4)``."""
    c = Fraction(c)
    den = f"(t^2+2*({c})*t+4)"
    return parse_ratfunc(f"8/{den}"), parse_ratfunc(f"8*t/{den}")


def quadric_curve(c):
    return parse_poly(f"4*x^2+2*({Fraction(c)})*x*y+y^2-8*x")


def quadric_pairs(c) -> SharedPairSpec:
    """The four finite pairs and ``(inf, inf)`` (CM) of the quadric family."""
    c = Fraction(c)
    if c in (0, 2, -2):
        raise ValueError("c must differ from 0 and +-2")
    pairs = [
        (0, 0),
        (8 / (4 - c * c), -8 * c / (4 - c * c)),
        (2 / (2 + c), 4 / (2 + c)),
        (2 / (2 - c), -4 / (2 - c)),
        ("inf", "inf"),
    ]
    return SharedPairSpec.make(pairs, [False] * 4 + [True])


def circle():
    return parse_ratfunc("(1-t^2)/(1+t^2)"), parse_ratfunc("2*t/(1+t^2)"), parse_poly("x^2+y^2-1")


def elliptic_sextic():
    """The genus-one sextic sharing 0, 1, -1, inf with alternating multiplicities."""
    return parse_poly("(y-x)^4-16*x*y*(x^2-1)*(y^2-1)")


def cubic_H():
    """``H(u, y)``, its rational parameterization ``(R~, R)`` and the field."""
    F = EISENSTEIN
    H = parse_poly("y^3-3*((-2-a)*u^2-2*u)*y^2-3*(2*u^2-(a-1)*u)*y-u^3", ("u", "y"), F)
    Rt = parse_ratfunc("3*(a-1)*t*(1+t)^2/(1+3*t)^2", "t", F)
    R = parse_ratfunc("3*(a-1)*t^2*(1+t)/(1+3*t)", "t", F)
    return H, Rt, R, F


def cubic_probe_points():
    F = EISENSTEIN
    return (F(0), F(1), parse_scalar("-a", F))


def planted_quadric():
    """``y^2 - 2xy + 4x^2 - 3x`` with pairs ``(0,0), (1,1), (1/4,-1/2), (3/4,3/2)``.

    It is ``4x^2 + 2xy + y^2 - 8x`` after ``x -> 8x/3``, ``y -> -8y/3`` (up to
    the factor 64/9); the pairs are the images of the ``c = 1`` pairs.
    """
    K = parse_poly("y^2-2*x*y+4*x^2-3*x")
    spec = SharedPairSpec.make([(0, 0), (1, 1), ("1/4", "-1/2"), ("3/4", "3/2")])
    return K, spec


__all__ = [
    "EISENSTEIN",
    "QQ",
    "circle",
    "cubic_H",
    "cubic_probe_points",
    "elliptic_sextic",
    "gundersen",
    "gundersen_normalized",
    "planted_quadric",
    "quadric_curve",
    "quadric_pair",
    "quadric_pairs",
]
