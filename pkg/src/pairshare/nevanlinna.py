"""Nevanlinna functions of ``f(z) = Q(e^z)`` and the exact proof-function checks.

Counting functions are exact sums over the explicit solution lattices
``z = log|p| + i(arg p + 2 pi k)``; only the proximity function needs
quadrature.  Closed discs ``|z| <= r`` are used throughout; a solution at
``z = 0`` contributes ``n(0) log r``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np
from scipy import integrate

from .curve import AuxQuadratics
from .field import FieldElem, format_elem
from .mpoly import MPoly
from .poly1 import Poly1, poly_gcd, squarefree_decomposition
from .ratfunc import INF, Divisor, RatFunc, Value, is_inf, value_divisor, value_str
from .sharing import SharedPairSpec


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExpFuncSpec:
    """``f(z) = Q(e^z)``."""

    Q: RatFunc

    def __post_init__(self):
        if self.Q.is_constant():
            raise ValueError("Q must be nonconstant")


def _spec(Q) -> ExpFuncSpec:
    return Q if isinstance(Q, ExpFuncSpec) else ExpFuncSpec(Q)


def _roots_with_mult(p: Poly1) -> list[tuple[complex, int]]:
    out = []
    for mult, g in squarefree_decomposition(p):
        if g.degree < 1:
            continue
        cs = g.complex_coeffs()[::-1]
        for r in np.roots(cs):
            out.append((complex(r), mult))
    return out


class _LogAbs:
    """``log|Q(e^z)|`` from the factored form, stable for large ``|Re z|``."""

    def __init__(self, Q: RatFunc):
        self.logc = math.log(abs(complex(Q.num.lc)) / abs(complex(Q.den.lc)))
        self.zeros = _roots_with_mult(Q.num)
        self.poles = _roots_with_mult(Q.den)
        self.excess = Q.num.degree - Q.den.degree

    @staticmethod
    def _term(z: np.ndarray, p: complex) -> np.ndarray:
        # log|e^z - p|
        pos = z.real > 0
        out = np.empty(z.shape)
        zp = z[pos]
        out[pos] = zp.real + np.log(np.abs(1 - p * np.exp(-zp)))
        zn = z[~pos]
        out[~pos] = np.log(np.abs(np.exp(zn) - p))
        return out

    def scalar(self, z: complex) -> float:
        # same as __call__ for one point, without numpy overhead
        acc = self.logc
        for pts, sign in ((self.zeros, 1), (self.poles, -1)):
            for p, k in pts:
                d = abs(1 - p * cmath.exp(-z)) if z.real > 0 else abs(cmath.exp(z) - p)
                if d == 0.0:
                    return -sign * math.inf
                acc += sign * k * ((z.real if z.real > 0 else 0.0) + math.log(d))
        return acc

    def __call__(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        acc = np.full(z.shape, self.logc)
        for p, k in self.zeros:
            acc += k * self._term(z, p)
        for p, k in self.poles:
            acc -= k * self._term(z, p)
        return acc


def _breakpoints(la: _LogAbs, r: float) -> list[float]:
    """Angles where a zero or pole lattice point lies near the circle ``|z| = r``."""
    pts = []
    for p, _ in la.zeros + la.poles:
        if p == 0:
            continue
        x = math.log(abs(p))
        if abs(x) > r:
            continue
        h = math.sqrt(r * r - x * x)
        arg = math.atan2(p.imag, p.real)
        for y in (h, -h):
            # nearest lattice ordinates to the two crossing heights
            k = round((y - arg) / (2 * math.pi))
            for kk in (k - 1, k, k + 1):
                z = complex(x, arg + 2 * math.pi * kk)
                if abs(abs(z) - r) < 2.0:
                    pts.append(math.atan2(z.imag, z.real))
    return pts


def proximity(Q, r: float, nodes: int = 64, tol: float = 1e-10) -> tuple[float, float]:
    """``m(r, f) = (1/2pi) int log+ |f(r e^{i theta})| d theta`` with an error estimate.

    The circle is cut into at least ``nodes // 8`` arcs, each at most half a
    unit long, plus the angles of nearby zeros and poles; each arc is
    integrated adaptively.
    """
    spec = _spec(Q)
    if r <= 0:
        raise ValueError("r must be positive")
    if nodes < 64:
        raise ValueError("nodes must be at least 64")
    la = _LogAbs(spec.Q)

    def integrand(theta):
        return max(la.scalar(cmath.rect(r, theta)), 0.0)

    # arcs no longer than half a unit of z, so that a bump of |f| > 1 around a
    # lattice point near the circle cannot slip between quadrature nodes
    arcs = max(nodes // 8, math.ceil(4 * math.pi * r))
    cuts = set(np.linspace(-math.pi, math.pi, arcs + 1).tolist())
    cuts.update(_breakpoints(la, r))
    cuts = sorted(c for c in cuts if -math.pi <= c <= math.pi)
    total = 0.0
    err = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi - lo < 1e-15:
            continue
        val, e, *rest = integrate.quad(integrand, lo, hi, epsabs=tol, epsrel=tol, limit=200, full_output=1)
        if len(rest) >= 2 and rest[1] and "roundoff" not in str(rest[1]).lower() and e > 1e-6:
            raise QuadratureError(f"quadrature did not converge on [{lo:.4g}, {hi:.4g}]: {rest[1]}")
        total += val
        err += e
    return total / (2 * math.pi), err / (2 * math.pi)


def _lattice_logs(points: list[tuple[complex, int]], r: float) -> tuple[float, float]:
    """``(sum mult * log(r/|z|), sum log(r/|z|))`` over lattice solutions in ``|z| <= r``."""
    N = 0.0
    Nbar = 0.0
    logr = math.log(r)
    for p, mult in points:
        if p == 0:
            continue
        x = math.log(abs(p))
        if abs(x) > r:
            continue
        arg = math.atan2(p.imag, p.real)
        h = math.sqrt(max(r * r - x * x, 0.0))
        kmin = math.ceil((-h - arg) / (2 * math.pi) - 1e-12)
        kmax = math.floor((h - arg) / (2 * math.pi) + 1e-12)
        if kmax < kmin:
            continue
        ks = np.arange(kmin, kmax + 1)
        zs = np.abs(x + 1j * (arg + 2 * math.pi * ks))
        zs = zs[zs <= r * (1 + 1e-12)]
        zero = zs < 1e-8  # the lattice point z = 0 (p = 1 up to root noise)
        s = float(np.sum(np.log(r / zs[~zero]))) + logr * int(np.sum(zero))
        N += mult * s
        Nbar += s
    return N, Nbar


def _divisor_points(D: Divisor) -> list[tuple[complex, int]]:
    out = []
    for p, mult in D.entries:
        cs = p.complex_coeffs()[::-1]
        for r in np.roots(cs):
            out.append((complex(r), mult))
    return out


def counting(Q, value: Value, r: float) -> tuple[float, float, float]:
    """``(N, Nbar, N1)`` for the solutions of ``Q(e^z) = value`` in ``|z| <= r``."""
    spec = _spec(Q)
    if r <= 0:
        raise ValueError("r must be positive")
    D = value_divisor(spec.Q, value)
    N, Nbar = _lattice_logs(_divisor_points(D), r)
    return N, Nbar, N - Nbar


@dataclass(frozen=True)
class NevanlinnaSample:
    r: float
    m: float
    N: float
    Nbar: float
    N1: float
    T: float
    err: float

    def row(self) -> list[float]:
        return [self.r, self.m, self.N, self.Nbar, self.N1, self.T]

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in ("r", "m", "N", "Nbar", "N1", "T", "err")}


def sample(Q, r: float, nodes: int = 64) -> NevanlinnaSample:
    m, err = proximity(Q, r, nodes)
    N, Nbar, N1 = counting(Q, INF, r)
    return NevanlinnaSample(r, m, N, Nbar, N1, m + N, err)


def characteristic(Q, r: float, nodes: int = 64) -> float:
    return sample(Q, r, nodes).T


# proof functions


def _eval_conic(P: MPoly, Q: RatFunc, Qt: RatFunc) -> RatFunc:
    """``P(Q, Qt)`` as a rational function."""
    x, y = P.vars
    acc = RatFunc.const(0, Q.var, Q.field)
    qp = {0: RatFunc.const(1, Q.var, Q.field)}
    tp = {0: RatFunc.const(1, Q.var, Q.field)}
    for (i, j), c in P.terms.items():
        for k, d, base in ((i, qp, Q), (j, tp, Qt)):
            while max(d) < k:
                d[max(d) + 1] = d[max(d)] * base
        acc = acc + qp[i] * tp[j] * c
    return acc


def _zdiff(R: RatFunc) -> RatFunc:
    """``d/dz R(e^z)`` written in ``w = e^z``: ``w R'(w)``."""
    w = RatFunc.identity(R.var, R.field)
    return w * R.derivative()


def _prod_minus(R: RatFunc, values) -> RatFunc:
    acc = RatFunc.const(1, R.var, R.field)
    for v in values:
        acc = acc * (R - v)
    return acc


@dataclass
class ProofFunctions:
    F: RatFunc
    Ft: RatFunc
    phi: RatFunc | None
    phit: RatFunc | None
    Psi: RatFunc | None
    psi: RatFunc | None
    L: RatFunc
    Lt: RatFunc


def proof_functions(Q: RatFunc, Qt: RatFunc, spec: SharedPairSpec, aux: AuxQuadratics) -> ProofFunctions:
    Qt = Qt.with_var(Q.var)
    fin = spec.finite_pairs()
    F = _eval_conic(aux.P, Q, Qt)
    Ft = _eval_conic(aux.Pt, Q, Qt)
    fp, gp = _zdiff(Q), _zdiff(Qt)
    L = fp / _prod_minus(Q, [a for a, _ in fin])
    Lt = gp / _prod_minus(Qt, [b for _, b in fin])
    phi = phit = Psi = psi = None
    if not F.is_zero() and not Ft.is_zero():
        phi = L * F * F / Ft
        phit = Lt * Ft * Ft / F
        Psi = F / Ft
        psi = _zdiff(Psi) / Psi
    return ProofFunctions(F, Ft, phi, phit, Psi, psi, L, Lt)


@dataclass
class ProofCheck:
    u: FieldElem | None
    v: FieldElem | None
    k: int | None
    c: FieldElem | None
    violations: list[str] = dc_field(default_factory=list)
    functions: ProofFunctions | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        fns = self.functions
        out = {
            "ok": self.ok,
            "u": None if self.u is None else format_elem(self.u),
            "v": None if self.v is None else format_elem(self.v),
            "k": self.k,
            "Psi_coefficient": None if self.c is None else format_elem(self.c),
            "violations": self.violations,
        }
        if fns is not None:
            for name in ("F", "Ft", "phi", "phit", "Psi", "psi"):
                val = getattr(fns, name)
                out[name] = None if val is None else str(val)
        return out


def proof_function_check(Q: RatFunc, Qt: RatFunc, spec: SharedPairSpec, aux: AuxQuadratics) -> ProofCheck:
    """Exact structure of ``phi``, ``phit``, ``Psi``, ``psi`` for ``f = Q(e^z)``, ``g = Qt(e^z)``.

    A rational function of ``e^z`` has characteristic ``S(r)`` only if it is
    constant, so ``phi``, ``phit`` must be constants and ``Psi`` a monomial
    ``c w^k`` (then ``psi = k``).  Returns ``u = phi/psi``, ``v = phit/psi``.
    """
    fns = proof_functions(Q, Qt, spec, aux)
    res = ProofCheck(None, None, None, None, [], fns)
    if aux.degenerate:
        res.violations.append("conics are degenerate: the pairs are related by a Mobius map")
    if fns.F.is_zero() or fns.Ft.is_zero():
        res.violations.append("F or Ft vanishes identically: (Q, Qt) is Mobius-related")
        return res
    mono = fns.Psi.is_monomial()
    if mono is None:
        res.violations.append(f"Psi = F/Ft is not a monomial c*w^k: {fns.Psi}")
    else:
        res.c, res.k = mono
        if res.k == 0:
            res.violations.append("psi vanishes identically (Psi = F/Ft is constant)")
    for name in ("phi", "phit"):
        val = getattr(fns, name)
        if not val.is_constant():
            res.violations.append(f"{name} is not constant: {val}")
    if not res.violations:
        psi = fns.psi.constant_value()
        res.u = fns.phi.constant_value() / psi
        res.v = fns.phit.constant_value() / psi
    return res


# milestone identities


def _common_points(Q: RatFunc, Qt: RatFunc, a: Value, b: Value) -> list[tuple[complex, int]]:
    D, Dt = value_divisor(Q, a), value_divisor(Qt.with_var(Q.var), b)
    g = poly_gcd(D.support(), Dt.support())
    if g.degree < 1:
        return []
    return [(complex(r), 1) for r in np.roots(g.complex_coeffs()[::-1])]


@dataclass
class MilestoneRow:
    r: float
    T: float
    m: float
    Nbar: float
    values: dict
    residuals: dict

    def relative(self) -> dict:
        return {k: v / self.T for k, v in self.residuals.items()}


@dataclass
class MilestoneReport:
    rows: list[MilestoneRow]
    notes: list[str]

    def decreasing(self, key: str) -> bool:
        rel = [abs(r.relative()[key]) for r in self.rows]
        return all(b <= a + 1e-12 for a, b in zip(rel, rel[1:]))

    def tsv(self) -> str:
        keys = list(self.rows[0].residuals) if self.rows else []
        head = ["r", "T", "m", "Nbar"] + [f"res_{k}" for k in keys] + ["Nbar_over_T"]
        lines = ["\t".join(head)]
        for row in self.rows:
            vals = [row.r, row.T, row.m, row.Nbar] + [row.residuals[k] for k in keys] + [row.Nbar / row.T]
            lines.append("\t".join(f"{v:.10g}" for v in vals))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "rows": [
                {
                    "r": row.r,
                    "T": row.T,
                    "m": row.m,
                    "Nbar": row.Nbar,
                    "values": row.values,
                    "residuals": row.residuals,
                    "relative": row.relative(),
                    "Nbar_over_T": row.Nbar / row.T,
                    "bound_5_7": row.Nbar / row.T <= 5 / 7 + 1e-9,
                }
                for row in self.rows
            ],
            "decreasing": {k: self.decreasing(k) for k in (self.rows[0].residuals if self.rows else {})},
            "notes": self.notes,
        }


def milestone_report(
    Q: RatFunc, Qt: RatFunc, spec: SharedPairSpec, aux: AuxQuadratics, r_grid: Sequence[float], nodes: int = 64
) -> MilestoneReport:
    """Both sides of the four milestone identities along ``r_grid``.

    ``T``, ``m`` and ``Nbar`` refer to ``f`` (characteristic, proximity of
    infinity, reduced pole counting).  Residual ``(i)`` is ``m(r,1/F) + N1(r,1/F)``.
    """
    Qt = Qt.with_var(Q.var)
    notes = []
    F = _eval_conic(aux.P, Q, Qt)
    if aux.degenerate:
        notes.append("degenerate conics: F built from P0")
    if F.is_zero():
        if Q == Qt:
            raise ValueError("F vanishes identically: Q == Qt, and every conic through the diagonal pairs contains x = y")
        raise ValueError("F vanishes identically")
    if Q == Qt:
        notes.append("Q == Qt: degenerate sanity row")
    invF = 1 / F
    rows = []
    for r in r_grid:
        sf = sample(Q, r, nodes)
        m_F, _ = proximity(F, r, nodes)
        m_invF, _ = proximity(invF, r, nodes)
        N_F, Nbar_F, _ = counting(F, INF, r)
        N_0, Nbar_0, N1_0 = counting(F, F.field.zero, r)
        shared = 0.0
        for a, b in spec.finite_pairs():
            shared += _lattice_logs(_common_points(Q, Qt, a, b), r)[1]
        values = {
            "m_invF": m_invF,
            "N1_invF": N1_0,
            "m_F": m_F,
            "N_F": N_F,
            "Nbar_F": Nbar_F,
            "Nbar_invF": Nbar_0,
            "sum_Nbar_pairs": shared,
        }
        residuals = {
            "i": m_invF + N1_0,
            "ii": m_F - 3 * sf.m,
            "iii": N_F - 2 * sf.Nbar,
            "iv": shared - (2 * sf.T + sf.m),
            "iv_b": shared - Nbar_0,
        }
        rows.append(MilestoneRow(r, sf.T, sf.m, sf.Nbar, values, residuals))
    return MilestoneReport(rows, notes)
