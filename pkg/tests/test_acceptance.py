"""Acceptance gate: one test and one printed PASS/FAIL line per criterion."""

import inspect
import math
import time
from fractions import Fraction

import pytest
from hypothesis.errors import UnsatisfiedAssumption

from pairshare.curve import (
    aux_quadratics,
    build_H0,
    h9_corner,
    implicitize,
    on_curve,
    puiseux_branches,
    resultant_pair,
)
from pairshare.field import format_elem
from pairshare.instances import (
    circle,
    cubic_H,
    cubic_probe_points,
    gundersen,
    gundersen_normalized,
    quadric_curve,
    quadric_pair,
    quadric_pairs,
)
from pairshare.mpoly import content_and_primitive
from pairshare.nevanlinna import milestone_report, proof_function_check, proximity, sample
from pairshare.parse import parse_ratfunc
from pairshare.search import (
    LiftError,
    build_constraints,
    c_of_candidate,
    count_constraints,
    exact_verify,
    numeric_search,
    quadric_profile,
)
from pairshare.sharing import SHARED_CM, SHARED_IM, sharing_certificate

import test_properties


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}")


def primitive(K):
    return content_and_primitive(K)[1]


def test_criterion_1_gundersen_certificate(capsys):
    t0 = time.perf_counter()
    Q, Qt, spec = gundersen()
    cert = sharing_certificate(Q, Qt, spec)
    elapsed = time.perf_counter() - t0
    checks = {}
    verdicts = [p.verdict for p in cert.pairs]
    checks["IM pairs"] = verdicts[:4] == [SHARED_IM] * 4
    pats = [cert.patterns[i].patterns() for i in range(4)]
    checks["patterns"] = pats == [{(1, 2)}, {(1, 2)}, {(2, 1)}, {(2, 1)}]
    cm = cert.pairs[4]
    checks["CM pair"] = cm.verdict == SHARED_CM and cm.witnesses["support"] == "w^2+3"
    # finite punctures within {0}; w = oo is the second Picard value of e^z
    checks["punctures"] = str(cert.punctures.poly) == "w" and cert.verified
    checks["time"] = elapsed < 1.0
    ok = all(checks.values())
    bad = [k for k, v in checks.items() if not v]
    report(capsys, 1, ok, f"patterns={[sorted(p) for p in pats]} punctures={cert.to_json()['puncture_points']} t={elapsed:.2f}s {bad or ''}")
    assert ok, bad


def test_criterion_2_quadric_dichotomy(capsys):
    expected = {
        1: ({"0", "-4"}, [("0", "0"), ("8/3", "-8/3"), ("2/3", "4/3"), ("2", "-4")]),
        -1: ({"0", "4"}, [("0", "0"), ("8/3", "8/3"), ("2", "4"), ("2/3", "-4/3")]),
    }
    lines, ok = [], True
    for c, (points, pairs) in expected.items():
        t0 = time.perf_counter()
        Q, Qt = quadric_pair(c)
        spec = quadric_pairs(c)
        cert = sharing_certificate(Q, Qt, spec)
        dt = time.perf_counter() - t0
        listed = [(format_elem(a), format_elem(b)) for a, b in spec.pairs[:4]]
        good = (
            cert.verified
            and listed == pairs
            and set(cert.to_json()["puncture_points"]) == points
            and cert.punctures.count == 2
            and dt < 1.0
        )
        ok &= good
        lines.append(f"c={c}:{'ok' if good else 'bad'}({dt:.2f}s)")
    t0 = time.perf_counter()
    Q, Qt = quadric_pair(3)
    cert = sharing_certificate(Q, Qt, quadric_pairs(3))
    dt = time.perf_counter() - t0
    good = not cert.feasible and cert.punctures.count == 4 and dt < 1.0
    ok &= good
    lines.append(f"c=3:{'infeasible' if good else 'bad'} punctures={sorted(cert.to_json()['puncture_points'])}")
    report(capsys, 2, ok, " ".join(lines))
    assert ok


def test_criterion_3_implicitization(capsys):
    res = {}
    for c in (1, 3):
        m = implicitize(*quadric_pair(c))
        res[f"c={c}"] = primitive(m.K) == primitive(quadric_curve(c)) and m.map_degree == 1
    Q, Qt, C = circle()
    res["circle"] = primitive(implicitize(Q, Qt).K) == primitive(C)
    Q, Qt, _ = gundersen()
    m = implicitize(Q, Qt)
    res["gundersen"] = on_curve(m.K, Q, Qt) and m.map_degree == 1
    ok = all(res.values())
    report(capsys, 3, ok, f"{res} K_gundersen={m.K}")
    assert ok


def test_criterion_4_cubic_pipeline(capsys):
    t0 = time.perf_counter()
    H, Rt, R, F = cubic_H()
    a = F.gen
    parts = {}
    parts["H(Rt,R)=0"] = on_curve(H.rename({"u": "x"}).with_vars(("x", "y")), Rt, R)
    pc = resultant_pair(H, "u", probe=cubic_probe_points())
    fib = pc.candidates[-1]["fibers"]
    parts["fibers"] = fib == {
        "0": {"root": "0", "power": 6},
        "1": {"root": "1", "power": 6},
        "-a": {"root": "-a", "power": 6},
    }
    brs = puiseux_branches(pc.model.K, (0, 0), 2)
    exps = sorted(b.exponent for b in brs)
    parts["exponents"] = exps == [Fraction(1, 4), 1, 4]
    four = next((b for b in brs if b.exponent == 4), None)
    coeff = four.leading_coefficient if four else None
    target = (2 * a + 1) / 243
    parts["coefficient"] = coeff == target
    dt = time.perf_counter() - t0
    parts["time"] = dt < 30
    ok = all(parts.values())
    detail = (
        f"exponents={[str(e) for e in exps]} coefficient={format_elem(coeff) if coeff is not None else None}"
        f" expected={format_elem(target)} t={dt:.1f}s failed={[k for k, v in parts.items() if not v]}"
    )
    report(capsys, 4, ok, detail)
    assert ok, detail


def test_criterion_5_proof_functions(capsys):
    Q, Qt, spec = gundersen_normalized()
    aux = aux_quadratics(spec)
    chk = proof_function_check(Q, Qt, spec, aux)
    ok = chk.ok
    detail = f"violations={chk.violations}"
    if chk.ok:
        H0 = build_H0(aux, spec, chk.u, chk.v)
        K = implicitize(Q, Qt).K
        c3 = aux.ct[2]
        ok = (
            on_curve(H0, Q, Qt)
            and H0.degree("x") <= 9
            and H0.degree("y") <= 9
            and primitive(K).divides(H0)
            and h9_corner(H0) == c3 ** 3 * (1 - c3 * chk.u)
        )
        detail = f"u={format_elem(chk.u)} v={format_elem(chk.v)} k={chk.k} deg_x={H0.degree('x')}"
    report(capsys, 5, ok, detail)
    assert ok, detail


# fixed before running; see the decisions ledger for the slow-converging cases
GROWTH_CASES = ["w", "w^2", "w^3", "1/w", "(w^2+1)/(w-2)", "(w^3+w+1)/(w^2-2)", "(w+1)/(w-1)^2"]


def test_criterion_6_nevanlinna(capsys):
    t0 = time.perf_counter()
    parts = {}
    errs = [abs(proximity(parse_ratfunc("w", "w"), r)[0] - r / math.pi) for r in (10, 20, 40)]
    parts["m(r,e^z)"] = max(errs) < 1e-6
    ratios = {}
    for text in GROWTH_CASES:
        Q = parse_ratfunc(text, "w")
        ratios[text] = sample(Q, 40).T / (40 / math.pi) / Q.degree
    parts["growth"] = all(abs(v - 1) < 0.02 for v in ratios.values())
    Q, Qt, spec = gundersen_normalized()
    rep = milestone_report(Q, Qt, spec, aux_quadratics(spec), [10, 20, 40])
    parts["milestones"] = all(rep.decreasing(k) for k in ("i", "ii", "iii", "iv"))
    nbar = [row.Nbar / row.T for row in rep.rows]
    dt = time.perf_counter() - t0
    parts["time"] = dt < 10
    ok = all(parts.values())
    rel = {k: [f"{abs(row.relative()[k]):.3g}" for row in rep.rows] for k in ("i", "ii", "iii", "iv")}
    detail = (
        f"max|m-r/pi|={max(errs):.1e} worst T-ratio dev={max(abs(v - 1) for v in ratios.values()):.4f}"
        f" rel residuals={rel} Nbar/T={[round(x, 4) for x in nbar]} vs 5/7={5 / 7:.4f} t={dt:.1f}s"
    )
    report(capsys, 6, ok, detail)
    assert ok, detail


def test_criterion_7_search(capsys):
    count_ok = count_constraints(9, 9) == 68
    system = build_constraints(quadric_profile())
    successes, worst = 0, 0.0
    for seed in range(20):
        t0 = time.perf_counter()
        found = set()
        for cand in numeric_search(system, starts=200, seed=seed, tol=1e-10):
            if not cand.residual < 1e-10:
                continue
            try:
                v = exact_verify(cand, system)
            except LiftError:
                continue
            if v.verified and all(f["y_side"] or f["x_side"] for f in v.certificate["fibers"]):
                found.add(format_elem(c_of_candidate(cand.exact_lift)))
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        if found and found <= {"1", "-1"} and dt < 60:
            successes += 1
    ok = count_ok and successes >= 19
    report(capsys, 7, ok, f"count(9,9)={count_constraints(9, 9)} recovered {successes}/20 seeds, slowest {worst:.1f}s")
    assert ok


PROPERTY_SUITES = [
    "test_resultant_multiplicative",
    "test_resultant_symmetry_and_oracle",
    "test_gcd_divides",
    "test_squarefree_reconstruction",
    "test_divisor_degree_conservation",
    "test_sharing_symmetry_and_cm_implies_im",
    "test_riemann_hurwitz",
    "test_parser_round_trip_mpoly",
    "test_parser_round_trip_ratfunc",
]


@pytest.mark.slow
def test_criterion_8_property_suites(capsys):
    counts, failures = {}, {}
    for name in PROPERTY_SUITES:
        fn = getattr(test_properties, name)
        inner = fn.hypothesis.inner_test
        n = [0]

        def counting(*args, _inner=inner, _n=n, **kwargs):
            _inner(*args, **kwargs)
            _n[0] += 1

        fn.hypothesis.inner_test = counting
        try:
            fn()
        except UnsatisfiedAssumption:
            raise
        except Exception as e:  # a falsified property
            failures[name] = f"{type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}"
        finally:
            fn.hypothesis.inner_test = inner
        counts[name] = n[0]
    ok = not failures and all(c >= 1000 for c in counts.values())
    report(capsys, 8, ok, f"cases={counts} failures={failures or 0}")
    assert ok
