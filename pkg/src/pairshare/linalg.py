"""Exact Gaussian elimination over a field."""

from __future__ import annotations

from .field import Field, FieldElem, elem


def rref(rows: list[list[FieldElem]], field: Field) -> tuple[list[list[FieldElem]], list[int]]:
    m = [[elem(c, field) for c in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows: list[list[FieldElem]], ncols: int, field: Field) -> list[list[FieldElem]]:
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def solve(rows: list[list[FieldElem]], rhs: list[FieldElem], field: Field) -> list[FieldElem] | None:
    """A solution of ``rows @ x = rhs`` (free variables set to 0), or ``None`` if inconsistent."""
    n = len(rows[0])
    aug = [list(r) + [elem(b, field)] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug, field)
    if n in pivots:
        return None
    x = [field.zero] * n
    for i, pc in enumerate(pivots):
        x[pc] = m[i][n]
    return x


def rank(rows: list[list[FieldElem]], field: Field) -> int:
    return len(rref(rows, field)[1])
