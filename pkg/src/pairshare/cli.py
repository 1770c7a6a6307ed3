"""Command-line front end.

Every subcommand writes one JSON (or TSV) document.  Exit status 0 means the
claim checked by the subcommand holds, 1 means it was falsified, 2 signals an
error; errors are reported as JSON with an ``error`` key.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from fractions import Fraction

from . import curve, nevanlinna, puiseux, search, sharing
from .field import QQ, Field, FieldError, field_make, format_elem
from .parse import ALL_VARS, ParseError, parse_expression, parse_poly, parse_poly1, parse_value
from .poly1 import Poly1
from .ratfunc import INF, PunctureSet, RatFunc, value_str

OUT_DIR_ENV = "PAIRSHARE_OUT_DIR"

EXIT_OK, EXIT_FALSIFIED, EXIT_ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


# input helpers


def parse_field(text: str | None) -> Field:
    """A monic-izable quadratic minimal polynomial in ``t`` such as ``t^2+t+1``, or ``QQ``."""
    if text is None or text.strip().upper() in ("", "QQ", "Q"):
        return QQ
    p = parse_poly1(text, "t")
    if p.degree == 1:
        return QQ
    if p.degree != 2:
        raise UsageError("the field must be given by a quadratic minimal polynomial")
    p = p.monic()
    return field_make((p.coeff(0).to_fraction(), p.coeff(1).to_fraction()))


def parse_ratfunc_any(text: str, field: Field, var: str | None = None) -> RatFunc:
    """A univariate rational function in whichever variable the text uses."""
    obj = parse_expression(text, (var,) if var else ALL_VARS, field)
    if isinstance(obj, RatFunc):
        return obj
    if isinstance(obj, Poly1):
        return RatFunc(obj)
    used = [v for i, v in enumerate(obj.vars) if any(e[i] for e in obj.terms)]
    if len(used) > 1:
        raise UsageError(f"expected a univariate expression, got variables {used}")
    v = used[0] if used else "t"
    return RatFunc(obj.with_vars(tuple(w for w in obj.vars if w == v) or (v,)).to_poly1(v))


def parse_pair_pair(text_q: str, text_qt: str, field: Field) -> tuple[RatFunc, RatFunc]:
    Q = parse_ratfunc_any(text_q, field)
    Qt = parse_ratfunc_any(text_qt, field)
    if Q.var != Qt.var:
        if Q.is_constant():
            Q = Q.with_var(Qt.var)
        else:
            Qt = Qt.with_var(Q.var)
    return Q, Qt


def _value(v, field):
    return parse_value(str(v), field)


def parse_pairs(text: str, field: Field) -> sharing.SharedPairSpec:
    """JSON list of ``[a, b]`` or ``[a, b, "CM"]`` entries; values are strings or numbers."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"--pairs is not valid JSON: {e}") from None
    if not isinstance(raw, list) or not raw:
        raise UsageError("--pairs must be a nonempty JSON list")
    pairs, cm = [], []
    for item in raw:
        if not isinstance(item, list) or len(item) not in (2, 3):
            raise UsageError(f"bad pair entry {item!r}")
        pairs.append((_value(item[0], field), _value(item[1], field)))
        flag = item[2] if len(item) == 3 else "IM"
        if str(flag).upper() not in ("CM", "IM"):
            raise UsageError(f"pair flag must be CM or IM, got {flag!r}")
        cm.append(str(flag).upper() == "CM")
    return sharing.SharedPairSpec(tuple(pairs), tuple(cm))


def parse_points(text: str, field: Field) -> list:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"--punctures is not valid JSON: {e}") from None
    if not isinstance(raw, list):
        raise UsageError("--punctures must be a JSON list of values")
    return [_value(v, field) for v in raw]


def parse_r_grid(text: str) -> list[float]:
    try:
        grid = [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --r-grid {text!r}") from None
    if not grid or any(not (r > 0 and math.isfinite(r)) for r in grid):
        raise UsageError("--r-grid needs positive radii")
    return grid


def _contained(P: PunctureSet, allowed: PunctureSet) -> bool:
    if P.infinity and not allowed.infinity:
        return False
    return P.poly.degree <= 0 or P.poly.divides(allowed.poly)


# subcommands


def cmd_share(args, field):
    Q, Qt = parse_pair_pair(args.Q, args.Qt, field)
    spec = parse_pairs(args.pairs, field)
    cert = sharing.sharing_certificate(Q, Qt, spec)
    out = {"Q": str(Q), "Qt": str(Qt), "certificate": cert.to_json()}
    ok = cert.verified
    if args.punctures is not None:
        allowed = PunctureSet.of(parse_points(args.punctures, field), Q.var, field)
        finite_only = PunctureSet(cert.punctures.poly, False)
        within = _contained(finite_only, allowed) and (not cert.punctures.infinity or allowed.infinity or args.allow_inf)
        out["punctures_within"] = within
        ok = ok and within
    return out, ok


def cmd_implicitize(args, field):
    Q, Qt = parse_pair_pair(args.Q, args.Qt, field)
    model = curve.implicitize(Q, Qt)
    return {"Q": str(Q), "Qt": str(Qt), "curve": model.to_json()}, True


def cmd_check_curve(args, field):
    K = parse_poly(args.K, ("x", "y"), field)
    out: dict = {"K": str(K)}
    ok = True
    if args.Q is not None:
        if args.Qt is None:
            raise UsageError("--Q needs --Qt")
        Q, Qt = parse_pair_pair(args.Q, args.Qt, field)
        on = curve.on_curve(K, Q, Qt)
        out["on_curve"] = on
        ok = ok and on
    if args.pairs is not None:
        spec = parse_pairs(args.pairs, field)
        fibers = curve.fiber_check(K, spec)
        out["fibers"] = [f.to_json() for f in fibers]
        shape = curve.shape_check(K, spec)
        out["shape"] = shape.to_json()
        if args.require_fibers:
            ok = ok and all(f.ok for f in fibers)
        if args.require_shape:
            ok = ok and shape.matches
    return out, ok


def _point(text: str, field: Field):
    parts = [s for s in text.split(",")]
    if len(parts) != 2:
        raise UsageError("--at expects 'a,b'")
    return tuple(parse_value(s, field) for s in parts)


def cmd_branches(args, field):
    K = parse_poly(args.K, ("x", "y"), field)
    at = _point(args.at, field)
    segs = puiseux.newton_polygon(K, at)
    brs = puiseux.puiseux_branches(K, at, args.terms)
    out = {
        "K": str(K),
        "at": [format_elem(v) for v in at],
        "newton_polygon": [{"exponent": str(s.exponent), "points": [list(p) for p in s.points]} for s in segs],
        "branches": [b.to_json() for b in brs],
        "exponents": sorted({str(b.exponent) for b in brs if b.exponent is not None}, key=Fraction),
    }
    return out, True


def cmd_nevanlinna(args, field):
    grid = parse_r_grid(args.r_grid)
    Q = parse_ratfunc_any(args.Q, field)
    out: dict = {"Q": str(Q), "samples": []}
    samples = [nevanlinna.sample(Q, r, args.nodes) for r in grid]
    out["samples"] = [s.to_json() for s in samples]
    head = ["r", "m", "N", "Nbar", "N1", "T"]
    table = [s.row() for s in samples]
    ok = True
    if args.Qt is not None:
        if args.pairs is None:
            raise UsageError("milestones need --pairs")
        Q, Qt = parse_pair_pair(args.Q, args.Qt, field)
        spec = parse_pairs(args.pairs, field)
        aux = curve.aux_quadratics(spec)
        rep = nevanlinna.milestone_report(Q, Qt, spec, aux, grid, args.nodes)
        out["milestones"] = rep.to_json()
        keys = list(rep.rows[0].residuals) if rep.rows else []
        head += [f"res_{k}" for k in keys] + ["Nbar_over_T"]
        for row, mrow in zip(table, rep.rows):
            row += [mrow.residuals[k] for k in keys] + [mrow.Nbar / mrow.T]
        ok = all(rep.decreasing(k) for k in keys)
    lines = ["\t".join(head)] + ["\t".join(f"{v:.10g}" for v in row) for row in table]
    out["tsv"] = "\n".join(lines) + "\n"
    return out, ok


def cmd_proofcheck(args, field):
    Q, Qt = parse_pair_pair(args.Q, args.Qt, field)
    spec = parse_pairs(args.pairs, field)
    aux = curve.aux_quadratics(spec)
    chk = nevanlinna.proof_function_check(Q, Qt, spec, aux)
    out = {"aux": aux.to_json(), "check": chk.to_json()}
    ok = chk.ok
    if chk.ok:
        H0 = curve.build_H0(aux, spec, chk.u, chk.v)
        c3t = aux.ct[2]
        corner = curve.h9_corner(H0)
        expected = c3t ** 3 * (1 - c3t * chk.u)
        h0 = {
            "H0": str(H0),
            "deg_x": H0.degree("x"),
            "deg_y": H0.degree("y"),
            "vanishes_on_pair": curve.on_curve(H0, Q, Qt),
            "h9_corner": format_elem(corner),
            "h9_corner_expected": format_elem(expected),
        }
        h0["ok"] = h0["vanishes_on_pair"] and h0["deg_x"] <= 9 and h0["deg_y"] <= 9 and corner == expected
        out["H0"] = h0
        ok = h0["ok"]
    return out, ok


def _profile_from_args(args, field) -> search.DegreeProfile:
    if args.profile == "quadric":
        return search.quadric_profile()
    tail = {}
    if args.tail:
        for k, v in json.loads(args.tail).items():
            i, j = (int(s) for s in k.split(","))
            tail[(i, j)] = Fraction(v)
    sides = tuple(args.sides.split(",")) if args.sides else ()
    surv = tuple(tuple(p) for p in json.loads(args.survivors)) if args.survivors else ()
    return search.DegreeProfile(
        m=args.m, n=args.n, s=args.s, t=args.t, kappa=args.kappa, lam=args.lam,
        survivors=surv, sides=sides, tail=tuple(tail.items()), name="custom",
    )


def _free_tail(text):
    if not text:
        return ()
    if text == "all":
        return "all"
    return [tuple(x) for x in json.loads(text)]


def _run_search(profile, args, field, bounds):
    system = search.build_constraints(profile, _free_tail(args.free_tail), field)
    cands = search.numeric_search(system, args.starts, args.seed, args.tol)
    rows = []
    any_ok = False
    for c in cands:
        entry = c.to_json()
        try:
            v = search.exact_verify(c, system, bounds)
            entry["exact_lift"] = c.to_json()["exact_lift"]
            entry["verification"] = v.to_json()
            any_ok = any_ok or v.verified
        except search.LiftError as e:
            entry["verification"] = {"verified": False, "reason": str(e), "numeric_only": True}
        rows.append(entry)
    return {"system": system.to_json(), "candidates": rows}, any_ok


def cmd_search(args, field):
    bounds = tuple(int(b) for b in args.bounds.split(",")) if args.bounds else search.DEFAULT_BOUNDS
    if args.count_only:
        return {"m": args.m, "n": args.n, "constraints": search.count_constraints(args.m, args.n)}, True
    profile = _profile_from_args(args, field)
    if not args.all_survivors:
        res, ok = _run_search(profile, args, field, bounds)
        return res, ok
    runs, ok = [], False
    for surv in search.enumerate_survivors(profile.m, profile.n):
        p = search.DegreeProfile(
            profile.m, profile.n, profile.s, profile.t, profile.kappa, profile.lam,
            surv, profile.sides, profile.tail, profile.relaxed, profile.name,
        )
        res, ok1 = _run_search(p, args, field, bounds)
        runs.append(res)
        ok = ok or ok1
    return {"runs": runs}, ok


def cmd_resultant_pair(args, field):
    H = parse_poly(args.H, (args.eliminate, "y"), field)
    probe = [parse_value(str(v), field) for v in json.loads(args.probe)] if args.probe else [field.zero]
    pc = curve.resultant_pair(H, args.eliminate, not args.keep_diagonal, probe)
    out = {"H": str(H), "pair_curve": pc.to_json()}
    if args.branches_at:
        at = _point(args.branches_at, field)
        brs = puiseux.puiseux_branches(pc.model.K, at, args.terms)
        out["branches"] = [b.to_json() for b in brs]
    return out, pc.presumptive


COMMANDS = {
    "share": cmd_share,
    "implicitize": cmd_implicitize,
    "check-curve": cmd_check_curve,
    "branches": cmd_branches,
    "nevanlinna": cmd_nevanlinna,
    "proofcheck": cmd_proofcheck,
    "search": cmd_search,
    "resultant-pair": cmd_resultant_pair,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="minimal polynomial in t of the coefficient field, e.g. 't^2+t+1' (default QQ)")
    common.add_argument("--out", help="output path (written atomically); default stdout")
    common.add_argument("--format", choices=("json", "tsv"), default="json")

    p = argparse.ArgumentParser(prog="pairshare", description="Exact checks for rational pairs sharing values through exp.")
    p.add_argument("--config", help="JSON job file; its keys are the long option names of the subcommand")
    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("share", parents=[common], help="sharing certificate for Q(e^z), Qt(e^z)")
    s.add_argument("--Q", required=True)
    s.add_argument("--Qt", required=True)
    s.add_argument("--pairs", required=True, help='JSON, e.g. [["0","0"],["-1/2","1/4","CM"]]')
    s.add_argument("--punctures", help="JSON list of allowed finite puncture points")
    s.add_argument("--allow-inf", action="store_true", help="permit a puncture at infinity")

    s = sub.add_parser("implicitize", parents=[common], help="curve K with K(Q, Qt) = 0")
    s.add_argument("--Q", required=True)
    s.add_argument("--Qt", required=True)

    s = sub.add_parser("check-curve", parents=[common], help="parameterization, fiber and shape checks")
    s.add_argument("--K", required=True)
    s.add_argument("--Q")
    s.add_argument("--Qt")
    s.add_argument("--pairs")
    s.add_argument("--require-fibers", action="store_true")
    s.add_argument("--require-shape", action="store_true")

    s = sub.add_parser("branches", parents=[common], help="Newton polygon and Puiseux branches")
    s.add_argument("--K", required=True)
    s.add_argument("--at", default="0,0")
    s.add_argument("--terms", type=int, default=3)

    s = sub.add_parser("nevanlinna", parents=[common], help="Nevanlinna samples and milestone residuals")
    s.add_argument("--Q", required=True)
    s.add_argument("--Qt")
    s.add_argument("--pairs")
    s.add_argument("--r-grid", default="10,20,40")
    s.add_argument("--nodes", type=int, default=64)

    s = sub.add_parser("proofcheck", parents=[common], help="proof functions and H0 cross-check")
    s.add_argument("--Q", required=True)
    s.add_argument("--Qt", required=True)
    s.add_argument("--pairs", required=True)

    s = sub.add_parser("search", parents=[common], help="constraint generation, numeric search, exact verification")
    s.add_argument("--profile", choices=("quadric", "custom"), default="quadric")
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--s", type=int, default=1)
    s.add_argument("--t", type=int, default=1)
    s.add_argument("--kappa", type=int, default=1)
    s.add_argument("--lam", type=int, default=1)
    s.add_argument("--sides", help="comma list of both|x|y per pair")
    s.add_argument("--survivors", help="JSON list of [j, l] per pair")
    s.add_argument("--tail", help='JSON object {"i,j": value} of fixed tail coefficients')
    s.add_argument("--free-tail", help="'all' or JSON list of [i, j]")
    s.add_argument("--all-survivors", action="store_true", help="iterate over every survivor choice")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--starts", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--bounds", help="comma list of denominator bounds for the exact lift")

    s = sub.add_parser("resultant-pair", parents=[common], help="curve between two solutions of H(u, y) = 0")
    s.add_argument("--H", required=True)
    s.add_argument("--eliminate", default="u")
    s.add_argument("--probe", help="JSON list of abscissas for fiber signatures")
    s.add_argument("--keep-diagonal", action="store_true")
    s.add_argument("--branches-at")
    s.add_argument("--terms", type=int, default=2)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Turn a JSON job file into argv; unknown keys are rejected."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return argv
    with open(known.config, encoding="utf-8") as fh:
        job = json.load(fh)
    if not isinstance(job, dict) or "subcommand" not in job:
        raise UsageError("config must be a JSON object with a 'subcommand' key")
    cmd = job.pop("subcommand")
    if cmd not in COMMANDS:
        raise UsageError(f"unknown subcommand {cmd!r}")
    subparser = parser._subparsers._group_actions[0].choices[cmd]  # noqa: SLF001
    allowed = {}
    for act in subparser._actions:  # noqa: SLF001
        for opt in act.option_strings:
            if opt.startswith("--"):
                allowed[opt[2:]] = act
    out = [cmd]
    for key, val in job.items():
        k = key.replace("_", "-")
        if k not in allowed or k == "help":
            raise UsageError(f"unknown config key {key!r} for {cmd}")
        act = allowed[k]
        if act.nargs == 0:
            if val:
                out.append(f"--{k}")
            continue
        if isinstance(val, (list, dict)):
            val = json.dumps(val) if k != "r-grid" else ",".join(str(x) for x in val)
        out += [f"--{k}", str(val)]
    return out + rest


def _emit(doc, fmt: str, out_path: str | None, command: str):
    if fmt == "tsv" and isinstance(doc, dict) and "tsv" in doc:
        text = doc["tsv"]
    else:
        text = json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
    if out_path is None and os.environ.get(OUT_DIR_ENV):
        out_path = os.path.join(os.environ[OUT_DIR_ENV], f"{command}.{fmt}")
    if out_path is None:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(out_path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".pairshare-")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, out_path)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(parser, argv)
    except (UsageError, OSError, json.JSONDecodeError) as e:
        _emit({"error": type(e).__name__, "message": str(e)}, "json", None, "error")
        return EXIT_ERROR
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_ERROR
    try:
        field = parse_field(args.field)
        doc, ok = COMMANDS[args.command](args, field)
        doc = {"command": args.command, "ok": bool(ok), "field": str(field), **doc}
    except ParseError as e:
        _emit({"error": "ParseError", "message": e.message, "position": e.position}, "json", args.out, args.command)
        return EXIT_ERROR
    except (UsageError, FieldError, sharing.SharingError, curve.CurveError, search.ProfileError,
            nevanlinna.QuadratureError, ValueError, ZeroDivisionError, OSError) as e:
        _emit({"error": type(e).__name__, "message": str(e)}, "json", args.out, args.command)
        return EXIT_ERROR
    _emit(doc, args.format, args.out, args.command)
    return EXIT_OK if ok else EXIT_FALSIFIED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
