"""IM/CM sharing certificates for a pair of rational functions.

Q and Qt share the pair ``(a, b)`` on a punctured sphere when the divisors
of ``Q - a`` and ``Qt - b`` restricted away from the punctures have equal
support (IM) or are equal (CM).  Everything is decided by gcd and
squarefree chains; roots are never computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import FieldElem, common_field, elem
from .linalg import nullspace
from .lift import field_roots
from .poly1 import Poly1, poly_gcd, poly_lcm
from .ratfunc import (
    INF,
    Divisor,
    MobiusMap,
    PunctureSet,
    RatFunc,
    Value,
    value_divisor,
    value_str,
)

SHARED_CM = "shared-CM"
SHARED_IM = "shared-IM-not-CM"
NOT_SHARED = "not-shared"


class SharingError(ValueError):
    pass


@dataclass(frozen=True)
class SharedPairSpec:
    pairs: tuple[tuple[Value, Value], ...]
    cm_flags: tuple[bool, ...] = ()

    def __post_init__(self):
        flags = self.cm_flags or (False,) * len(self.pairs)
        if len(flags) != len(self.pairs):
            raise SharingError("cm_flags length does not match pairs")
        object.__setattr__(self, "cm_flags", tuple(flags))
        for side in (0, 1):
            vals = [p[side] for p in self.pairs]
            for i in range(len(vals)):
                for j in range(i):
                    if _same_value(vals[i], vals[j]):
                        raise SharingError(f"values on side {side} are not pairwise distinct")

    @classmethod
    def make(cls, pairs, cm=(), field=None) -> "SharedPairSpec":
        from .field import QQ

        field = field or QQ
        out = []
        for a, b in pairs:
            out.append((_coerce(a, field), _coerce(b, field)))
        return cls(tuple(out), tuple(cm))

    def finite_pairs(self) -> list[tuple[FieldElem, FieldElem]]:
        return [(a, b) for a, b in self.pairs if a is not INF and b is not INF]


def _coerce(v, field):
    if v is INF or (isinstance(v, str) and v.strip().lower() in ("inf", "oo")):
        return INF
    return elem(v, field)


def _same_value(u, v) -> bool:
    if u is INF or v is INF:
        return u is v
    return u == v


def _one(var, field) -> Poly1:
    return Poly1.const(1, var, field)


def _minus(p: Poly1, q: Poly1) -> Poly1:
    """Monic part of ``p`` coprime to ``q`` (both squarefree)."""
    if p.degree <= 0:
        return p
    g = poly_gcd(p, q.with_var(p.var)) if q.degree > 0 else _one(p.var, p.field)
    return p.exact_div(g).monic()


@dataclass(frozen=True)
class PairVerdict:
    a: Value
    b: Value
    verdict: str
    divisor_f: Divisor
    divisor_g: Divisor
    witnesses: dict

    def to_json(self) -> dict:
        return {
            "a": value_str(self.a),
            "b": value_str(self.b),
            "verdict": self.verdict,
            "divisor_f": self.divisor_f.to_json(),
            "divisor_g": self.divisor_g.to_json(),
            "witnesses": self.witnesses,
        }


def mismatch_punctures(Q: RatFunc, Qt: RatFunc, pair) -> PunctureSet:
    """Sphere points where exactly one of ``Q = a``, ``Qt = b`` holds."""
    a, b = pair
    D = value_divisor(Q, a)
    Dt = value_divisor(Qt, b)
    s, st = D.support(), Dt.support().with_var(Q.var)
    only = poly_lcm(_minus(s, st), _minus(st, s)) if (s.degree > 0 or st.degree > 0) else _one(Q.var, Q.field)
    return PunctureSet(only.monic(), bool(D.inf) != bool(Dt.inf))


def check_pair(Q: RatFunc, Qt: RatFunc, pair, punctures: PunctureSet | None = None) -> PairVerdict:
    """Decide whether ``pair`` is shared CM, IM only, or not at all off ``punctures``."""
    if Q.is_constant() or Qt.is_constant():
        raise SharingError("check_pair needs nonconstant functions")
    common_field(Q.field, Qt.field)
    a, b = pair
    if punctures is None:
        punctures = PunctureSet.empty(Q.var, Q.field)
    D = value_divisor(Q, a).restrict(punctures)
    Dt = value_divisor(Qt.with_var(Q.var), b).restrict(punctures)
    s, st = D.support(), Dt.support()
    same_support = s.monic() == st.monic() and bool(D.inf) == bool(Dt.inf)
    if not same_support:
        only_f = _minus(s, st)
        only_g = _minus(st, s)
        wit: dict = {}
        if only_f.degree > 0:
            wit["separating_f"] = str(only_f)
        if only_g.degree > 0:
            wit["separating_g"] = str(only_g)
        if bool(D.inf) != bool(Dt.inf):
            wit["separating_inf"] = "f" if D.inf else "g"
        return PairVerdict(a, b, NOT_SHARED, D, Dt, wit)
    wit = {"support": str(s.monic()), "infinity": bool(D.inf)}
    verdict = SHARED_CM if D == Dt else SHARED_IM
    return PairVerdict(a, b, verdict, D, Dt, wit)


@dataclass(frozen=True)
class PatternClass:
    p: int
    q: int
    pointclass: Poly1 | None  # None means the point at infinity
    size: int

    def to_json(self) -> dict:
        return {
            "mult": f"{self.p}:{self.q}",
            "points": "inf" if self.pointclass is None else str(self.pointclass),
            "count": self.size,
        }


@dataclass(frozen=True)
class PatternReport:
    """Local multiplicities ``(p:q)`` of the solutions of ``(Q, Qt) = (a, b)``."""

    classes: tuple[PatternClass, ...]

    def count(self, kind: str) -> int:
        return sum(c.size for c in self.classes if _kind(c) == kind)

    @property
    def p_values(self) -> set[int]:
        return {c.p for c in self.classes if _kind(c) == "p:1"}

    @property
    def q_values(self) -> set[int]:
        return {c.q for c in self.classes if _kind(c) == "1:q"}

    @property
    def p_nu(self) -> int | None:
        v = self.p_values
        return v.pop() if len(v) == 1 else None

    @property
    def q_nu(self) -> int | None:
        v = self.q_values
        return v.pop() if len(v) == 1 else None

    @property
    def violations(self) -> tuple[PatternClass, ...]:
        return tuple(c for c in self.classes if _kind(c) == "violation")

    @property
    def pattern_ok(self) -> bool:
        """No (p:q) class with both entries >= 2 and a single p and q per pair."""
        return not self.violations and len(self.p_values) <= 1 and len(self.q_values) <= 1

    def patterns(self) -> set[tuple[int, int]]:
        return {(c.p, c.q) for c in self.classes}

    def total_f(self) -> int:
        return sum(c.size * c.p for c in self.classes)

    def total_g(self) -> int:
        return sum(c.size * c.q for c in self.classes)

    def to_json(self) -> dict:
        return {
            "classes": [c.to_json() for c in self.classes],
            "counts": {k: self.count(k) for k in ("p:1", "1:q", "1:1", "violation")},
            "p_nu": self.p_nu,
            "q_nu": self.q_nu,
            "pattern_ok": self.pattern_ok,
        }


def _kind(c: PatternClass) -> str:
    if c.p == 1 and c.q == 1:
        return "1:1"
    if c.q == 1:
        return "p:1"
    if c.p == 1:
        return "1:q"
    return "violation"


def multiplicity_pattern(Q: RatFunc, Qt: RatFunc, pair, punctures: PunctureSet | None = None) -> PatternReport:
    """Multiplicity classes of the common solutions of ``(Q, Qt) = pair``.

    Without explicit punctures the points where only one side attains its
    value are omitted (the minimal puncture set for this pair).
    """
    if punctures is None:
        punctures = mismatch_punctures(Q, Qt, pair)
    v = check_pair(Q, Qt, pair, punctures)
    if v.verdict == NOT_SHARED:
        raise SharingError(f"pair ({value_str(pair[0])}, {value_str(pair[1])}) is not shared off the punctures")
    classes = []
    for pf, mf in v.divisor_f.entries:
        for pg, mg in v.divisor_g.entries:
            g = poly_gcd(pf, pg)
            if g.degree > 0:
                classes.append(PatternClass(mf, mg, g, g.degree))
    if v.divisor_f.inf:
        classes.append(PatternClass(v.divisor_f.inf, v.divisor_g.inf, None, 1))
    return PatternReport(tuple(classes))


@dataclass
class SharingCertificate:
    pairs: list[PairVerdict]
    patterns: list[PatternReport | None]
    cm_flags: tuple[bool, ...]
    punctures: PunctureSet
    feasible: bool
    excluded_mobius: bool
    realization: MobiusMap | None = None
    notes: list[str] = dc_field(default_factory=list)

    @property
    def all_shared(self) -> bool:
        return all(p.verdict != NOT_SHARED for p in self.pairs)

    @property
    def cm_claims_hold(self) -> bool:
        return all(p.verdict == SHARED_CM for p, cm in zip(self.pairs, self.cm_flags) if cm)

    @property
    def verified(self) -> bool:
        return self.all_shared and self.cm_claims_hold and self.feasible and not self.excluded_mobius

    def to_json(self) -> dict:
        out = {
            "pairs": [],
            "punctures": self.punctures.to_json(),
            "puncture_points": _points_json(self.punctures),
            "feasible": self.feasible,
            "excluded_mobius": self.excluded_mobius,
            "verified": self.verified,
            "realization": None,
            "notes": list(self.notes),
        }
        for v, pat, cm in zip(self.pairs, self.patterns, self.cm_flags):
            d = v.to_json()
            d["claimed_cm"] = cm
            d["pattern"] = pat.to_json() if pat is not None else None
            out["pairs"].append(d)
        if self.realization is not None:
            M = self.realization
            out["realization"] = {"h": "M(exp(z))", "M": [str(M.a), str(M.b), str(M.c), str(M.d)]}
        return out


def _split_points(p: Poly1) -> list | None:
    """Field points of a squarefree class, or ``None`` if some point lies outside the field.

    Roots come from height-bounded lifting and are confirmed exactly.
    """
    if p.degree <= 0:
        return []
    if p.degree == 1:
        return [-p.coeff(0) / p.lc]
    roots, rest = field_roots(p)
    if rest:
        return None
    return [r for r, _ in roots]


def _points_json(punct: PunctureSet) -> list[str] | None:
    pts = _split_points(punct.poly)
    if pts is None:
        return None
    out = sorted(str(p) for p in pts)
    return out + (["inf"] if punct.infinity else [])


def _realizing_mobius(punct: PunctureSet) -> MobiusMap | None:
    """Mobius ``M`` with ``M({0, oo})`` covering the punctures (field points only)."""
    field = punct.poly.field
    roots = _split_points(punct.poly)
    if roots is None:
        return None
    if punct.infinity:
        if not roots:
            return MobiusMap.identity(field)
        if len(roots) == 1:
            return MobiusMap.make(1, roots[0], 0, 1, field)
        return None
    if not roots:
        return MobiusMap.identity(field)
    if len(roots) == 1:
        # single Picard value roots[0] = M(0)
        return MobiusMap.make(1, roots[0], 0, 1, field)
    p1, p2 = roots
    return MobiusMap.make(p2, p1, 1, 1, field)


def sharing_certificate(Q: RatFunc, Qt: RatFunc, spec: SharedPairSpec) -> SharingCertificate:
    """Check every pair, derive the obligatory punctures and decide realisability by ``h = M o exp``."""
    if not spec.pairs:
        raise SharingError("empty pair specification")
    Qt = Qt.with_var(Q.var)
    punct = PunctureSet.empty(Q.var, common_field(Q.field, Qt.field))
    for pair in spec.pairs:
        punct = punct.union(mismatch_punctures(Q, Qt, pair))
    verdicts = [check_pair(Q, Qt, pair, punct) for pair in spec.pairs]
    patterns = []
    for pair, v in zip(spec.pairs, verdicts):
        patterns.append(multiplicity_pattern(Q, Qt, pair, punct) if v.verdict != NOT_SHARED else None)
    feasible = punct.count <= 2
    excluded = mobius_relation_guard(Q, Qt)
    cert = SharingCertificate(
        verdicts,
        patterns,
        spec.cm_flags,
        punct,
        feasible,
        excluded,
        _realizing_mobius(punct) if feasible else None,
    )
    if not feasible:
        cert.notes.append(f"{punct.count} obligatory punctures: no entire h realises the sharing")
    if excluded:
        cert.notes.append("Qt is a Mobius transformation of Q: excluded")
    return cert


def mobius_relation_guard(Q: RatFunc, Qt: RatFunc) -> bool:
    """True iff ``Qt = M o Q`` for a Mobius map ``M`` (exact linear algebra)."""
    if Q.degree != Qt.degree:
        return False
    if Q.is_constant():
        return Qt.is_constant()
    Qt = Qt.with_var(Q.var)
    N, D, Nt, Dt = Q.num, Q.den, Qt.num, Qt.den
    field = common_field(Q.field, Qt.field)
    # Nt*(g*N + d*D) - Dt*(a*N + b*D) = 0 in unknowns (a, b, g, d)
    cols = [-(Dt * N), -(Dt * D), Nt * N, Nt * D]
    deg = max(c.degree for c in cols)
    rows = [[c.coeff(i) for c in cols] for i in range(deg + 1)]
    for v in nullspace(rows, 4, field):
        a, b, g, d = v
        if a * d - b * g:
            return True
    return False
