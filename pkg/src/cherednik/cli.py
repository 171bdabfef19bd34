"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed (or could not be
certified), 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import derham, dunkl, kzconn, quasiinv
from .errors import CherednikError, Inconclusive, MultiplicityError, SingularParameter
from .exactnum import Cyc, parse_rational
from .groups import (Multiplicity, WRepresentation, c_tau, from_family, joint_spectrum,
                     load_group_file, spectrum)
from .polyalg.parse import parse_poly, parse_scalar


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration

def build_group(args):
    if args.group:
        try:
            return load_group_file(args.group, cap=args.cap)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"--group: {exc}")
    if not args.family:
        raise UsageError("--family or --group is required")
    params = {}
    if args.family in ("cyclic", "symmetric"):
        if args.n is None:
            raise UsageError(f"--n is required for family {args.family}")
        params["n"] = args.n
    elif args.family == "dihedral":
        if args.m is None:
            raise UsageError("--m is required for family dihedral")
        params["m"] = args.m
    elif args.family == "G":
        if args.m is None or args.n is None:
            raise UsageError("--m, --n (and optionally --p) are required for family G")
        params = {"m": args.m, "p": args.gp or 1, "n": args.n}
    try:
        return from_family(args.family, params, cap=args.cap)
    except ValueError as exc:
        raise UsageError(f"--family: {exc}")


def parse_k(G, text):
    if text is None:
        return Multiplicity.zero(G)
    try:
        if os.path.exists(text):
            with open(text) as fh:
                data = json.load(fh)
            return Multiplicity(G, [[parse_rational(str(x)) for x in v] for v in data["orbits"]])
        if "," not in text and ";" not in text:
            return Multiplicity.scalar(G, parse_rational(text))
        orbits = [[parse_rational(x) for x in part.split(",")] for part in text.split(";")]
        return Multiplicity(G, orbits)
    except (MultiplicityError, ValueError, KeyError, ZeroDivisionError) as exc:
        raise UsageError(f"--k: {exc}")


def parse_xi(G, text):
    text = text.strip()
    if text.startswith("e") and text[1:].isdigit():
        j = int(text[1:])
        if not 1 <= j <= G.dim:
            raise UsageError(f"--xi: index out of range 1..{G.dim}")
        return dunkl.unit(G, j - 1)
    parts = text.split(",")
    if len(parts) != G.dim:
        raise UsageError(f"--xi: expected {G.dim} entries")
    try:
        return tuple(parse_scalar(p, G.N) for p in parts)
    except ValueError as exc:
        raise UsageError(f"--xi: {exc}")


def parse_polynomial(G, text, flag):
    try:
        return parse_poly(text, G.N, G.dim)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}")


def header(G, k, caps):
    if G is None:
        return {"group": None, "k": None, "caps": caps}
    return {"group": {"name": G.describe(), "order": G.order, "dim": G.dim, "conductor": G.N},
            "k": k.to_json() if k is not None else None, "caps": caps}


# ---------------------------------------------------------------------------
# individual checks used by the suite and subcommands

def _report(r):
    return r.to_json(), r.passed


def run_check(name, G, k, D):
    """Return (payload, passed) for a named check; exceptions become failures."""
    if name == "commutativity":
        return _report(dunkl.check_commutativity(G, k, D))
    if name == "equivariance":
        return _report(dunkl.check_equivariance(G, k, D))
    if name == "relations":
        return _report(dunkl.check_cherednik_relations(G, k, min(D, 6)))
    if name == "homotopy":
        return _report(derham.check_homotopy(G, k, D))
    if name == "d_squared":
        return _report(derham.check_d_squared(G, k, D))
    if name == "koszul_square":
        return _report(derham.check_koszul_square(G, D))
    if name == "central":
        return central_payload(G, k)
    if name == "intertwiner":
        return intertwiner_payload(G, k, D)
    if name == "kz":
        tau = WRepresentation.reflection(G)
        r = kzconn.check_flatness(G, k, tau, min(D, 3))
        r2 = kzconn.check_residues(G, k, tau)
        out = r.to_json()
        out["residues"] = r2.to_json()
        return out, r.passed and r2.passed
    if name == "calogero_moser":
        return _report(dunkl.check_cm_identity(G, [k.value(o, 1) for o in range(len(G.orbits))]))
    if name == "cm_commutator":
        P = parse_poly("p2", G.N, G.dim)
        Q = parse_poly("p3", G.N, G.dim)
        C = dunkl.cm_commutator(G, k, P, Q)
        return {"p": "p2", "q": "p3", "result": C.to_str(), "pass": C.is_zero()}, C.is_zero()
    if name == "hilbert":
        cap = quasiinv.default_cap(G, k)
        h = quasiinv.qk_hilbert(G, k, cap)
        out = h.to_json()
        out["cap"] = cap
        return out, h.passed
    if name == "freeness":
        cap = quasiinv.default_cap(G, k)
        c = quasiinv.freeness_certificate(G, k, cap)
        return c.to_json(), c.passed
    if name == "bold":
        return _report(quasiinv.check_bold_stability(G, k, min(D, 4)))
    if name == "uk_stability":
        P = parse_poly("p2", G.N, G.dim)
        return _report(quasiinv.check_uk_stability(G, k, P, D))
    raise ValueError(name)


def central_payload(G, k):
    z = G.central_element(k)
    spec = spectrum(z)
    joint = joint_spectrum(G)
    # linearity: spectrum(k) equals the joint-spectrum prediction
    predicted = {}
    for coeffs, mult in joint:
        val = sum((Fraction(k.value(o, i)) * c for (o, i), c in coeffs.items()), Fraction(0))
        predicted[val] = predicted.get(val, 0) + mult
    nonneg_int = all(c >= 0 and c.denominator == 1 for coeffs, _ in joint for c in coeffs.values())
    ok = predicted == spec and nonneg_int
    return {"central": z.certificate is not None, "spectrum": {str(c): m for c, m in sorted(spec.items())},
            "linear_in_k": predicted == spec, "nonnegative_integer_coefficients": nonneg_int,
            "pass": ok}, ok


def intertwiner_payload(G, k, D):
    try:
        S = derham.Intertwiner(G, k, D)
    except SingularParameter as exc:
        return {"status": "singular", "eigenvalue": str(exc.eigenvalue)}, True
    r = S.verify()
    out = r.to_json()
    out["status"] = "ok"
    return out, r.passed


def suite_checks(G, k):
    names = ["commutativity", "equivariance", "relations", "homotopy", "d_squared", "koszul_square",
             "central", "intertwiner", "kz"]
    if G.is_coxeter() and dunkl._is_real_orthogonal(G):
        names.append("calogero_moser")
    P = parse_poly("p2", G.N, G.dim)
    Q = parse_poly("p3", G.N, G.dim)
    if G.is_dual_invariant(P) and G.is_dual_invariant(Q):
        names.append("cm_commutator")
    if k.is_nonnegative_integral():
        names += ["hilbert", "freeness", "bold"]
        if G.is_dual_invariant(P):
            names.append("uk_stability")
    return names


def _safe(name, G, k, D):
    try:
        return run_check(name, G, k, D)
    except Inconclusive as exc:
        return {"status": "inconclusive", "message": str(exc)}, False
    except CherednikError as exc:
        return {"status": "error", "error": type(exc).__name__, "message": str(exc)}, False


def run_suite(G, k, D, jobs=1):
    names = suite_checks(G, k)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(lambda n: _safe(n, G, k, D), names))
    else:
        results = [_safe(n, G, k, D) for n in names]
    checks = {n: r[0] for n, r in zip(names, results)}
    passed = all(r[1] for r in results)
    return {"checks": checks, "pass": passed}, passed


# ---------------------------------------------------------------------------
# command handlers; each returns (payload, passed)

def cmd_group(args, G):
    k = parse_k(G, args.k) if args.k is not None else None
    if args.action == "info":
        return G.info(), True
    if args.action == "molien":
        D = args.max_degree or G.order
        series = G.molien_series(D)
        degs = G.degrees(D)
        return {"series": [str(c) for c in series], "degrees": degs, "product": _prod(degs),
                "order": G.order}, _prod(degs) == G.order
    if args.action == "spectrum":
        return central_payload(G, k or Multiplicity.scalar(G, 1))
    if args.action == "c-tau":
        tau = WRepresentation.by_name(G, args.tau)
        val = c_tau(G, k or Multiplicity.scalar(G, 1), tau)
        if isinstance(val, dict):
            return {"eigenvalues": {str(c): m for c, m in sorted(val.items())}}, True
        return {"c_tau": str(val)}, True
    raise UsageError(f"unknown group action {args.action}")


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def cmd_dunkl(args, G, k, D):
    if args.action == "apply":
        if not args.xi or not args.poly:
            raise UsageError("dunkl apply needs --xi and --poly")
        xi = parse_xi(G, args.xi)
        f = parse_polynomial(G, args.poly, "--poly")
        r = dunkl.dunkl_apply(G, k, xi, f)
        return {"result": r.to_str(), "pass": True, "witness": None}, True
    if args.action == "check-commutativity":
        return _report(dunkl.check_commutativity(G, k, D))
    if args.action == "equivariance":
        return _report(dunkl.check_equivariance(G, k, D))
    if args.action == "relations":
        return _report(dunkl.check_cherednik_relations(G, k, D))
    if args.action == "probe":
        return _report(dunkl.conjugation_probe(G, k, D))
    if args.action == "operator":
        xi = parse_xi(G, args.xi or "e1")
        op = dunkl.dunkl_T(G, k, xi)
        return {"result": op.to_json(), "pass": True, "witness": None}, True
    raise UsageError(f"unknown dunkl action {args.action}")


def cmd_cm(args, G, k, D):
    if args.action == "commutator":
        P = parse_polynomial(G, args.p or "p2", "--p")
        Q = parse_polynomial(G, args.q or "p3", "--q")
        C = dunkl.cm_commutator(G, k, P, Q)
        return {"result": C.to_str(), "pass": C.is_zero(),
                "witness": None if C.is_zero() else C.to_json()[0]}, C.is_zero()
    if args.action == "identity":
        return _report(dunkl.check_cm_identity(G, [k.value(o, 1) for o in range(len(G.orbits))]))
    if args.action == "operator":
        P = parse_polynomial(G, args.p or "p2", "--p")
        L = dunkl.L_P(G, k, P)
        return {"result": L.to_json(), "pass": True, "witness": None}, True
    raise UsageError(f"unknown cm action {args.action}")


def cmd_derham(args, G, k, D):
    if args.action == "check":
        h = derham.check_homotopy(G, k, D)
        d2 = derham.check_d_squared(G, k, D)
        return {"homotopy": h.passed, "d_squared": d2.passed,
                "details": {"homotopy": h.to_json(), "d_squared": d2.to_json()}}, h.passed and d2.passed
    if args.action == "intertwiner":
        payload, ok = intertwiner_payload(G, k, D)
        return {"intertwiner": payload}, ok
    raise UsageError(f"unknown derham action {args.action}")


def cmd_kz(args, G, k, D):
    tau = WRepresentation.by_name(G, args.tau)
    if args.action == "residues":
        B = kzconn.kz_residues(G, k, tau)
        chk = kzconn.check_residues(G, k, tau)
        return {"residues": [[[str(x) for x in row] for row in M] for M in B],
                "pass": chk.passed, "witness": chk.witness}, chk.passed
    if args.action == "flatness":
        return _report(kzconn.check_flatness(G, k, tau, D))
    raise UsageError(f"unknown kz action {args.action}")


def cmd_quasi(args, G, k, D):
    if not k.is_nonnegative_integral():
        raise UsageError("--k: quasi-invariants need integral nonnegative k")
    if args.action == "basis":
        if args.degree is None:
            raise UsageError("quasi basis needs --degree")
        B = quasiinv.qk_basis(G, k, args.degree)
        return {"degree": args.degree, "dimension": len(B), "basis": [b.to_str() for b in B]}, True
    if args.action == "member":
        f = parse_polynomial(G, args.poly or "1", "--poly")
        ok, wit = quasiinv.qk_membership(G, k, f)
        return {"member": ok, "witness": wit}, True
    if args.action == "hilbert":
        h = quasiinv.qk_hilbert(G, k, D)
        return h.to_json(), h.passed
    if args.action == "freeness":
        c = quasiinv.freeness_certificate(G, k, D)
        return c.to_json(), c.passed
    if args.action == "ak":
        r = quasiinv.ak_compute(G, k, D)
        return r.to_json(), r.kprime is not None
    if args.action == "bold":
        if args.degree is None:
            raise UsageError("quasi bold needs --degree")
        B = quasiinv.bold_qk_basis(G, k, args.degree)
        return {"degree": args.degree, "dimension": len(B), "basis": [b.to_json() for b in B]}, True
    if args.action == "bold-stability":
        return _report(quasiinv.check_bold_stability(G, k, D))
    if args.action == "stability":
        P = parse_polynomial(G, args.p or "p2", "--p")
        return _report(quasiinv.check_uk_stability(G, k, P, D))
    raise UsageError(f"unknown quasi action {args.action}")


# ---------------------------------------------------------------------------
# argument parsing and output

ACTIONS = {
    "group": ["info", "molien", "spectrum", "c-tau"],
    "dunkl": ["apply", "check-commutativity", "equivariance", "relations", "probe", "operator"],
    "cm": ["commutator", "identity", "operator"],
    "derham": ["check", "intertwiner"],
    "kz": ["residues", "flatness"],
    "quasi": ["basis", "member", "hilbert", "freeness", "ak", "bold", "bold-stability", "stability"],
}

HELP = {
    "group": "group data: order, arrangement, Molien degrees, z(k) spectrum",
    "dunkl": "Dunkl operators and the Cherednik relations",
    "cm": "Calogero-Moser operators obtained by restriction",
    "derham": "deformed de Rham complex and the intertwiner",
    "kz": "KZ connection residues and flatness",
    "quasi": "quasi-invariants, Hilbert series, freeness, A_k",
    "suite": "run every applicable check for one group and multiplicity",
}


def _common(p):
    g = p.add_argument_group("group selection")
    g.add_argument("--group", metavar="FILE", help="group JSON file")
    g.add_argument("--family", choices=["cyclic", "dihedral", "symmetric", "G"], help="built-in family")
    g.add_argument("--n", type=int, help="rank / order parameter")
    g.add_argument("--m", type=int, help="dihedral order or G(m,p,n) parameter m")
    g.add_argument("--p", dest="p_values", action="append", default=[],
                   help="G(m,p,n) parameter p (integer); for cm/quasi also the invariant polynomial P")
    g.add_argument("--cap", type=int, default=2000, help="maximum group order to enumerate")
    p.add_argument("--k", help="multiplicity: scalar, CSV per orbit separated by ';', or JSON file")
    p.add_argument("--max-degree", "--max-total-degree", dest="max_degree", type=int,
                   help="degree cap")
    p.add_argument("--out", choices=["json", "text"], default="text", help="output format")


def make_parser():
    parser = argparse.ArgumentParser(prog="cherednik", description="Exact Dunkl operator and quasi-invariant toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, actions in ACTIONS.items():
        p = sub.add_parser(name, help=HELP[name], description=HELP[name])
        p.add_argument("action", choices=actions)
        _common(p)
        if name == "dunkl":
            p.add_argument("--xi", help="direction: e<j> or comma-separated vector")
            p.add_argument("--poly", help='polynomial, e.g. "x1^2*x2 - z3*x2"')
        if name == "cm":
            p.add_argument("--q", help="second invariant in dual variables")
        if name == "quasi":
            p.add_argument("--degree", type=int, help="slice degree")
            p.add_argument("--poly", help="polynomial for membership")
        if name in ("kz", "group"):
            p.add_argument("--tau", default="reflection",
                           choices=["trivial", "det", "reflection", "standard", "regular"],
                           help="representation")
    p = sub.add_parser("suite", help=HELP["suite"], description=HELP["suite"])
    _common(p)
    p.add_argument("--jobs", type=int, default=1, help="worker threads (output is independent of this)")
    return parser


def _text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            v = obj[key]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{key}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(v) if not isinstance(v, str) else v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (Fraction, Cyc)):
        return str(obj)
    if isinstance(obj, float):
        return str(obj)
    return obj


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(_glue_negative(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    G = k = None
    caps = {"max_degree": args.max_degree}
    try:
        _split_p(args)
        G = build_group(args)
        k = parse_k(G, args.k) if args.command != "group" else None
        D = args.max_degree
        if D is not None and D < 0:
            raise UsageError("--max-degree must be nonnegative")
        caps = {"max_degree": D}
        if args.command == "group":
            k = parse_k(G, args.k) if args.k is not None else None
            payload, ok = cmd_group(args, G)
        elif args.command == "suite":
            D = 6 if D is None else D
            caps = {"max_degree": D}
            payload, ok = run_suite(G, k, D, max(1, args.jobs))
        else:
            D = _default_degree(args) if D is None else D
            caps = {"max_degree": D}
            handler = {"dunkl": cmd_dunkl, "cm": cmd_cm, "derham": cmd_derham, "kz": cmd_kz,
                       "quasi": cmd_quasi}[args.command]
            payload, ok = handler(args, G, k, D)
    except UsageError as exc:
        print(f"cherednik: error: {exc}", file=sys.stderr)
        return 2
    except Inconclusive as exc:
        payload, ok = {"status": "inconclusive", "message": str(exc)}, False
    except (CherednikError, ZeroDivisionError) as exc:
        payload, ok = {"status": "error", "error": type(exc).__name__, "message": str(exc)}, False
    report = header(G, k, caps)
    report["command"] = args.command + (f" {args.action}" if hasattr(args, "action") else "")
    report["result"] = payload
    report["pass"] = bool(ok)
    report = _jsonable(report)
    if args.out == "json":
        stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        stdout.write("\n".join(_text(report)) + "\n")
    return 0 if ok else 1


def _glue_negative(argv):
    """Let "--k -1/2" through argparse, which would read -1/2 as an option."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in ("--k", "--xi") and i + 1 < len(argv) and re.match(r"-[\d(]", argv[i + 1]):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def _split_p(args):
    """Integer --p values are the G(m,p,n) parameter, the rest are polynomials."""
    args.gp, args.p = None, None
    for v in args.p_values:
        if v.strip().isdigit() and args.family == "G" and args.gp is None:
            args.gp = int(v)
        elif args.command in ("cm", "quasi"):
            args.p = v
        else:
            raise UsageError(f"--p: unexpected value {v!r}")


def _default_degree(args):
    if args.command == "quasi" and args.action in ("hilbert", "freeness", "ak"):
        return 12
    return 6


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
