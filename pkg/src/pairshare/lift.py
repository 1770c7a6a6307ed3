"""Height-bounded reconstruction of field elements from floating values.

Numeric roots are only ever used as hints: every lifted value is
re-checked in exact arithmetic by the caller.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .field import Field, FieldElem
from .poly1 import Poly1, squarefree_decomposition

DEFAULT_BOUNDS = (10**2, 10**4, 10**6)


def rationalize(x: float, bound: int, accuracy: float = 1e-9) -> Fraction | None:
    """Best rational with denominator ``<= bound`` if it explains ``x`` convincingly.

    Besides ``|q - x| <= accuracy * max(1, |x|)`` the error must be far below
    ``1/den^2``, the generic quality of continued-fraction convergents, so that
    irrational inputs are not matched by a large-denominator convergent.
    """
    if not np.isfinite(x):
        return None
    q = Fraction(x).limit_denominator(bound)
    err = abs(float(q) - x)
    if err > accuracy * max(1.0, abs(x)):
        return None
    if err * q.denominator ** 2 > 1e-4:
        return None
    return q


def lift_candidates(z: complex, field: Field, bounds=DEFAULT_BOUNDS, z_conj: complex | None = None, accuracy=1e-9):
    """Field elements near ``z`` (and near ``z_conj`` under the conjugate embedding).

    For imaginary fields a single embedding determines both coordinates; for
    real quadratic fields the conjugate image ``z_conj`` is required.
    """
    out = []
    if field.is_rational:
        if abs(z.imag) > accuracy * max(1.0, abs(z)):
            return out
        for b in bounds:
            q = rationalize(z.real, b, accuracy)
            if q is not None:
                out.append(field(q))
        return out
    e1 = field.embedding()
    e2 = field.conjugate_embedding()
    if abs(e1.imag) > 1e-12:
        re1 = z.imag / e1.imag
        re0 = z.real - re1 * e1.real
    else:
        if z_conj is None:
            return out
        if abs(z.imag) > 1e-8 * max(1.0, abs(z)) or abs(z_conj.imag) > 1e-8 * max(1.0, abs(z_conj)):
            return out
        re1 = (z.real - z_conj.real) / (e1.real - e2.real)
        re0 = z.real - re1 * e1.real
    for b in bounds:
        q0, q1 = rationalize(re0, b, accuracy), rationalize(re1, b, accuracy)
        if q0 is not None and q1 is not None:
            out.append(field(q0, q1))
    return out


def lift(z: complex, field: Field, bounds=DEFAULT_BOUNDS, z_conj: complex | None = None, accuracy=1e-9) -> FieldElem | None:
    c = lift_candidates(z, field, bounds, z_conj, accuracy)
    return c[0] if c else None


def _numeric_roots(p: Poly1, conjugate: bool = False) -> list[complex]:
    q = p.conjugate() if conjugate else p
    coeffs = q.complex_coeffs()[::-1]
    roots = np.roots(coeffs) if len(coeffs) > 1 else np.array([])
    out = []
    dp = q.derivative()
    for r in roots:
        r = complex(r)
        for _ in range(4):
            d = dp(r)
            if d == 0:
                break
            step = q(r) / d
            r -= step
            if abs(step) < 1e-15 * max(1.0, abs(r)):
                break
        out.append(r)
    return out


def field_roots(p: Poly1, bounds=DEFAULT_BOUNDS) -> tuple[list[tuple[FieldElem, int]], list[tuple[int, Poly1]]]:
    """Roots of ``p`` lying in its field, with multiplicity.

    Returns ``(roots, rest)`` where ``rest`` lists ``(multiplicity, factor)``
    for the part of ``p`` that has no root in the field.
    """
    field = p.field
    roots: list[tuple[FieldElem, int]] = []
    rest: list[tuple[int, Poly1]] = []
    for mult, g in squarefree_decomposition(p):
        g = g.monic()
        while g.degree >= 1:
            if g.degree == 1:
                roots.append((-g.coeff(0), mult))
                g = Poly1.const(1, g.var, field)
                break
            found = None
            numeric = _numeric_roots(g)
            conj = _numeric_roots(g, True) if not field.is_rational and abs(field.embedding().imag) < 1e-12 else [None]
            for z in numeric:
                for zc in conj:
                    for cand in lift_candidates(z, field, bounds, zc):
                        if not g(cand):
                            found = cand
                            break
                    if found is not None:
                        break
                if found is not None:
                    break
            if found is None:
                rest.append((mult, g))
                break
            roots.append((found, mult))
            g = g.exact_div(Poly1([-found, 1], g.var, field)).monic()
    return roots, rest


def field_nth_root(z: FieldElem, n: int, bounds=DEFAULT_BOUNDS) -> FieldElem | None:
    """Some ``c`` in the field with ``c**n == z``, or ``None``."""
    if n == 1:
        return z
    field = z.field
    poly = Poly1([-z] + [field.zero] * (n - 1) + [field.one], "z", field)
    roots, _ = field_roots(poly, bounds)
    return roots[0][0] if roots else None
