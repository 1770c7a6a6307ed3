"""Constraint systems for curves of the shape

    K(x, y) = (x - a_lam)^s y^m + A (y - b_kap)^t x^n + sum c_ij x^i y^j

through four normalized pairs ``(0, 0), (1, 1), (a3, b3), (a4, b4)``, with a
multistart Gauss-Newton search and exact verification of its candidates.

Only polynomial derivative conditions enter the numeric solve.  Fiber
exclusivity and the shape of ``K`` are checked afterwards in exact arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .curve import CurveError, fiber_check, shape_check
from .field import QQ, Field, FieldElem, format_elem
from .lift import DEFAULT_BOUNDS, lift
from .mpoly import MPoly
from .sharing import SharedPairSpec, SharingError

CORE_UNKNOWNS = ("a3", "b3", "a4", "b4", "A")
SIDES = ("both", "y", "x")


class ProfileError(ValueError):
    pass


class LiftError(ValueError):
    """No small-height field value explains a numeric coordinate."""


def count_constraints(m: int, n: int) -> int:
    """Number of derivative conditions at four pairs when one ``j`` and one ``l`` survive per pair."""
    if m < 1 or n < 1:
        raise ProfileError("m and n must be positive")
    return 4 * (n + m - 1)


def tail_name(i: int, j: int) -> str:
    return f"c_{i}_{j}"


@dataclass(frozen=True)
class DegreeProfile:
    """Degrees and exponents of the curve shape plus the per-pair derivative choices.

    ``survivors[nu] = (j, l)`` names the derivative orders exempted at pair ``nu``;
    ``sides[nu]`` restricts the conditions to the ``y``- or ``x``-fiber.  ``tail``
    fixes tail coefficients (monomial ``x^i y^j`` keyed by ``(i, j)``); tail
    monomials that are neither fixed nor selected as free are zero.
    ``relaxed`` admits ``s, t = 0``, which the planted quadric needs.
    """

    m: int
    n: int
    s: int = 1
    t: int = 1
    kappa: int = 1
    lam: int = 1
    survivors: tuple = ()
    sides: tuple = ()
    tail: tuple = ()  # ((i, j), value) entries
    relaxed: bool = False
    name: str = ""

    def __post_init__(self):
        surv = self.survivors or ((self.m, self.n),) * 4
        sides = self.sides or ("both",) * 4
        object.__setattr__(self, "survivors", tuple(tuple(x) for x in surv))
        object.__setattr__(self, "sides", tuple(sides))
        object.__setattr__(self, "tail", tuple(((int(i), int(j)), v) for (i, j), v in dict(self.tail).items()))
        self.validate()

    def validate(self) -> None:
        lo = 0 if self.relaxed else 1
        if not (1 <= self.m <= 9 and 1 <= self.n <= 9):
            raise ProfileError(f"need 1 <= m, n <= 9, got m={self.m}, n={self.n}")
        if not (lo <= self.s <= 4 and lo <= self.t <= 4):
            raise ProfileError(f"need {lo} <= s, t <= 4, got s={self.s}, t={self.t}")
        if self.s > self.n or self.t > self.m:
            raise ProfileError("s must not exceed n and t must not exceed m")
        if max(self.m + self.s, self.n + self.t) > 13:
            raise ProfileError("total degree exceeds 13")
        if self.kappa not in (1, 2, 3, 4) or self.lam not in (1, 2, 3, 4):
            raise ProfileError("kappa and lambda index the four pairs (1..4)")
        if len(self.survivors) != 4 or len(self.sides) != 4:
            raise ProfileError("survivors and sides need one entry per pair")
        for nu, ((j, l), side) in enumerate(zip(self.survivors, self.sides), start=1):
            if side not in SIDES:
                raise ProfileError(f"pair {nu}: unknown side {side!r}")
            if not (1 <= j <= self.m and 1 <= l <= self.n):
                raise ProfileError(f"pair {nu}: inconsistent exemption indices (j={j}, l={l})")
        for (i, j), _ in self.tail:
            if (i, j) not in self.tail_support():
                raise ProfileError(f"x^{i}*y^{j} is not a tail monomial")

    @property
    def total_degree(self) -> int:
        return max(self.m + self.s, self.n + self.t)

    def tail_support(self) -> list[tuple[int, int]]:
        d = self.total_degree
        return [(i, j) for i in range(self.n) for j in range(self.m) if i + j <= d]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "m": self.m,
            "n": self.n,
            "s": self.s,
            "t": self.t,
            "kappa": self.kappa,
            "lambda": self.lam,
            "survivors": [list(x) for x in self.survivors],
            "sides": list(self.sides),
            "tail": {f"{i},{j}": format_elem(_q(v)) for (i, j), v in self.tail},
            "relaxed": self.relaxed,
        }


def _q(v) -> FieldElem:
    from .field import elem

    return elem(v, QQ) if not isinstance(v, FieldElem) else v


def enumerate_survivors(m: int, n: int):
    """Every choice of one surviving ``(j, l)`` per pair."""
    one = [(j, l) for j in range(1, m + 1) for l in range(1, n + 1)]
    return itertools.product(one, repeat=4)


@dataclass
class ConstraintSystem:
    profile: DegreeProfile
    unknowns: tuple[str, ...]
    equations: list[tuple[str, MPoly]]  # (label, polynomial in the unknowns)
    K: MPoly  # in (x, y, *unknowns)
    field: Field
    counts: dict = dc_field(default_factory=dict)

    @property
    def overdetermined(self) -> bool:
        return self.counts["equations"] > self.counts["unknowns"]

    def pair_values(self, nu: int):
        """Symbolic ``(a_nu, b_nu)`` for ``nu`` in 1..4."""
        return _pair_values(self.unknowns, self.field)[nu - 1]

    def instantiate(self, assignment: dict[str, FieldElem]) -> MPoly:
        K = self.K
        for u in self.unknowns:
            K = K.subs(u, assignment[u])
        return K.with_vars(("x", "y"))

    def to_json(self) -> dict:
        return {
            "profile": self.profile.to_json(),
            "unknowns": list(self.unknowns),
            "equations": [[lab, str(eq)] for lab, eq in self.equations],
            "K": str(self.K),
            "counts": dict(self.counts),
            "overdetermined": self.overdetermined,
        }


def _pair_values(unknowns, field):
    allv = ("x", "y") + tuple(unknowns)

    def c(v):
        return MPoly.const(v, allv, field)

    def u(name):
        return MPoly.var(name, allv, field)

    return [(c(0), c(0)), (c(1), c(1)), (u("a3"), u("b3")), (u("a4"), u("b4"))]


def build_constraints(profile: DegreeProfile, free_tail=(), field: Field = QQ) -> ConstraintSystem:
    """Symbolic ``K`` and all derivative-vanishing equations at the four pairs.

    ``free_tail`` selects tail monomials ``(i, j)`` whose coefficients become
    unknowns (``"all"`` selects every tail monomial that is not fixed).
    Per pair the conditions are ``d^j K/dy^j = 0`` for ``j`` in ``0..m`` and
    ``d^l K/dx^l = 0`` for ``l`` in ``1..n`` except the surviving ``(j, l)``;
    ``K = 0`` itself is emitted once.
    """
    fixed = dict(profile.tail)
    support = profile.tail_support()
    if free_tail == "all":
        free = [ij for ij in support if ij not in fixed]
    else:
        free = [tuple(ij) for ij in free_tail]
        for ij in free:
            if ij not in support:
                raise ProfileError(f"x^{ij[0]}*y^{ij[1]} is not a tail monomial")
            if ij in fixed:
                raise ProfileError(f"tail coefficient {ij} is both fixed and free")
    unknowns = CORE_UNKNOWNS + tuple(tail_name(i, j) for i, j in free)
    allv = ("x", "y") + unknowns
    pv = _pair_values(unknowns, field)
    x = MPoly.var("x", allv, field)
    y = MPoly.var("y", allv, field)
    A = MPoly.var("A", allv, field)
    a_lam = pv[profile.lam - 1][0]
    b_kap = pv[profile.kappa - 1][1]
    K = (x - a_lam) ** profile.s * y ** profile.m + A * (y - b_kap) ** profile.t * x ** profile.n
    for (i, j), v in fixed.items():
        K = K + MPoly({_mono(allv, i, j): _q(v)}, allv, field)
    for i, j in free:
        K = K + MPoly.var(tail_name(i, j), allv, field) * x ** i * y ** j

    equations: list[tuple[str, MPoly]] = []
    slots = exempt = dup = 0
    for nu, ((js, ls), side) in enumerate(zip(profile.survivors, profile.sides), start=1):
        a, b = pv[nu - 1]
        orders = []
        if side in ("both", "y"):
            slots += profile.m + 1
            exempt += 1
            orders += [("y", j) for j in range(profile.m + 1) if j != js]
        if side in ("both", "x"):
            slots += profile.n + 1
            exempt += 1
            for l in range(profile.n + 1):
                if l == ls:
                    continue
                if l == 0 and side == "both":
                    dup += 1
                    continue
                orders.append(("x", l))
        for var, k in orders:
            D = K.diff(var, k) if k else K
            E = D.subs("x", a).subs("y", b).drop("x").drop("y")
            label = f"pair {nu}: K = 0" if k == 0 else f"pair {nu}: d^{k}K/d{var}^{k} = 0"
            equations.append((label, E))
    counts = {
        "equations": len(equations),
        "unknowns": len(unknowns),
        "slots": slots,
        "exempted": exempt,
        "duplicates": dup,
        "formula": count_constraints(profile.m, profile.n),
        "nonconstant": sum(1 for _, e in equations if not e.is_constant()),
        "inconsistent_constants": sum(1 for _, e in equations if e.is_constant() and not e.is_zero()),
    }
    return ConstraintSystem(profile, unknowns, equations, K, field, counts)


def _mono(allv, i, j):
    e = [0] * len(allv)
    e[0], e[1] = i, j
    return tuple(e)


# numerics


class _Compiled:
    """Vectorized evaluation of the equations and their Jacobian."""

    def __init__(self, system: ConstraintSystem):
        self.unknowns = system.unknowns
        self.eqs = [self._compile(e) for _, e in system.equations]
        self.jac = [[self._compile(e.diff(u)) for u in self.unknowns] for _, e in system.equations]

    def _compile(self, p: MPoly):
        if p.is_zero():
            return None
        p = p.with_vars(self.unknowns)
        exps = np.array(list(p.terms.keys()), dtype=int).reshape(len(p.terms), len(self.unknowns))
        coef = np.array([complex(c) for c in p.terms.values()])
        return exps, coef

    @staticmethod
    def _ev(c, u):
        if c is None:
            return 0j
        exps, coef = c
        return complex(np.sum(coef * np.prod(u[None, :] ** exps, axis=1)))

    def F(self, u: np.ndarray) -> np.ndarray:
        return np.array([self._ev(c, u) for c in self.eqs])

    def J(self, u: np.ndarray) -> np.ndarray:
        return np.array([[self._ev(c, u) for c in row] for row in self.jac])


@dataclass
class Candidate:
    assignment: dict[str, complex]
    residual: float
    exact_lift: dict[str, FieldElem] | None = None
    start: int = -1
    trajectory: list[float] = dc_field(default_factory=list, repr=False)

    def key(self):
        return (self.residual, tuple((round(z.real, 12), round(z.imag, 12)) for z in self.assignment.values()))

    def to_json(self) -> dict:
        return {
            "assignment": {k: [repr(float(v.real)), repr(float(v.imag))] for k, v in self.assignment.items()},
            "residual": repr(float(self.residual)),
            "exact_lift": None if self.exact_lift is None else {k: format_elem(v) for k, v in self.exact_lift.items()},
            "start": self.start,
        }


def gauss_newton(comp: _Compiled, u0: np.ndarray, max_iter: int = 80, floor: float = 1e-15):
    """Damped Gauss-Newton; every accepted step lowers ``||F||_2``.

    Returns the final point and the residual history (2-norms).
    """
    u = u0.astype(complex)
    Fu = comp.F(u)
    r = float(np.linalg.norm(Fu))
    hist = [r]
    for _ in range(max_iter):
        if r <= floor:
            break
        step = np.linalg.lstsq(comp.J(u), -Fu, rcond=None)[0]
        lam = 1.0
        accepted = False
        while lam > 1e-10:
            un = u + lam * step
            Fn = comp.F(un)
            rn = float(np.linalg.norm(Fn))
            if np.isfinite(rn) and rn < r:
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            break
        u, Fu, r = un, Fn, rn
        hist.append(r)
    return u, hist


def numeric_search(
    system: ConstraintSystem,
    starts: int = 200,
    seed: int = 0,
    tol: float = 1e-10,
    center: dict | None = None,
    spread: float = 1.0,
) -> list[Candidate]:
    """Deduplicated candidates with ``max |equation| < tol`` from seeded random starts.

    Starts are complex Gaussians of scale ``spread`` around ``center``
    (default the origin).  The result is sorted by residual and then by the
    assignment, so it depends only on the inputs and the seed.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if system.counts.get("inconsistent_constants"):
        return []
    comp = _Compiled(system)
    rng = np.random.default_rng(seed)
    k = len(system.unknowns)
    c0 = np.array([complex((center or {}).get(u, 0)) for u in system.unknowns])
    found: list[Candidate] = []
    for idx in range(starts):
        u0 = c0 + spread * (rng.standard_normal(k) + 1j * rng.standard_normal(k)) / np.sqrt(2)
        u, hist = gauss_newton(comp, u0)
        res = float(np.max(np.abs(comp.F(u)))) if comp.eqs else 0.0
        if not res < tol:
            continue
        cand = Candidate(dict(zip(system.unknowns, (complex(z) for z in u))), res, start=idx, trajectory=hist)
        dup = next((c for c in found if _close(c, cand)), None)
        if dup is None:
            found.append(cand)
        elif cand.residual < dup.residual:
            found[found.index(dup)] = cand
    found.sort(key=Candidate.key)
    return found


def _close(c1: Candidate, c2: Candidate, tol: float = 1e-6) -> bool:
    return all(abs(c1.assignment[k] - c2.assignment[k]) <= tol * max(1.0, abs(c2.assignment[k])) for k in c1.assignment)


# exact verification


def exact_lift(candidate: Candidate, field: Field = QQ, bounds=DEFAULT_BOUNDS, accuracy: float = 1e-9) -> dict[str, FieldElem]:
    """Height-bounded field values for every coordinate; raises :class:`LiftError`."""
    if not field.is_rational and abs(field.embedding().imag) < 1e-12:
        raise LiftError("real quadratic fields need both embeddings; lift over Q or an imaginary field")
    out = {}
    for name, z in candidate.assignment.items():
        v = lift(complex(z), field, bounds, accuracy=accuracy)
        if v is None:
            raise LiftError(f"lift failure for {name} = {z!r} over {field}")
        out[name] = v
    candidate.exact_lift = out
    return out


@dataclass
class Verification:
    verified: bool
    reason: str
    first_violation: str | None = None
    certificate: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verified": self.verified,
            "reason": self.reason,
            "first_violation": self.first_violation,
            "certificate": self.certificate,
        }


def exact_verify(candidate: Candidate, system: ConstraintSystem, bounds=DEFAULT_BOUNDS) -> Verification:
    """Exact substitution into every equation, then fiber exclusivity and shape.

    The candidate must carry (or admit) an exact lift; otherwise
    :class:`LiftError` propagates and the candidate stays numeric-only.
    """
    if candidate.exact_lift is None:
        exact_lift(candidate, system.field, bounds)
    asg = candidate.exact_lift
    prof = system.profile
    cert: dict = {"assignment": {k: format_elem(v) for k, v in asg.items()}}
    for label, eq in system.equations:
        val = eq.evaluate(asg) if eq.vars else eq.constant_value()
        if val:
            return Verification(False, "equation does not vanish", label, cert)
    cert["equations_checked"] = len(system.equations)
    K = system.instantiate(asg)
    cert["K"] = str(K)
    pairs = [(p[0].evaluate(asg), p[1].evaluate(asg)) for p in (system.pair_values(nu) for nu in (1, 2, 3, 4))]
    cert["pairs"] = [[format_elem(a), format_elem(b)] for a, b in pairs]
    try:
        spec = SharedPairSpec(tuple(pairs))
    except SharingError as e:
        return Verification(False, f"pairs are not admissible: {e}", None, cert)
    try:
        fibers = fiber_check(K, spec)
    except CurveError as e:
        return Verification(False, f"fiber check failed: {e}", None, cert)
    cert["fibers"] = [f.to_json() for f in fibers]
    for nu, (f, side) in enumerate(zip(fibers, prof.sides), start=1):
        need_y = side in ("both", "y")
        need_x = side in ("both", "x")
        if (need_y and not f.y_side) or (need_x and not f.x_side):
            return Verification(False, "fiber exclusivity fails", f"pair {nu}: fiber over ({format_elem(f.a)}, {format_elem(f.b)})", cert)
    lo = 0 if prof.relaxed else 1
    shape = shape_check(K, spec, sides=prof.sides, st_range=(lo, 4))
    cert["shape"] = shape.to_json()
    if not shape.matches:
        return Verification(False, "shape check fails", shape.mismatches[0], cert)
    if (shape.m, shape.n) != (prof.m, prof.n):
        return Verification(False, "degrees differ from the profile", f"(m, n) = ({shape.m}, {shape.n})", cert)
    return Verification(True, "all equations vanish; fibers exclusive; shape matches", None, cert)


# the planted quadric


def quadric_profile() -> DegreeProfile:
    """Profile of ``y^2 - 2xy + A x^2 - 3x`` with conditions on the ``y``-fibers over
    pairs 1, 2 and on the ``x``-fibers over pairs 3, 4."""
    return DegreeProfile(
        m=2,
        n=2,
        s=0,
        t=0,
        survivors=((2, 2),) * 4,
        sides=("y", "y", "x", "x"),
        tail=(((1, 1), -2), ((1, 0), -3)),
        relaxed=True,
        name="quadric",
    )


def c_of_candidate(asg: dict) -> object:
    """The parameter ``c = 2 - 4 a3`` of the quadric family for a quadric-profile solution."""
    return 2 - 4 * asg["a3"]
