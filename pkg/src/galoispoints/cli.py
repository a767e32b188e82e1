"""Command-line front end.

Every subcommand prints a JSON report (or CSV for surveys).  Mathematical
negatives such as "not Galois" exit 0; only input or computation errors
exit nonzero.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .bivar import SearchCap
from .curvegeo import (DecompositionError, construct_candidate_curve, decompose, is_galois_point,
                       multiplicity_at, polynomialize_outer, verify_theorems)
from .fieldcore import FieldError, parse_field_spec
from .fnc import CertificateError, borges_identity, corollary_pipeline, is_frobenius_nonclassical, \
    is_minimal_value_set, size_hypothesis
from .moebius import aut_group, short_orbits, verify_fact_bound
from .parsing import ParseError, parse_curve, parse_point, parse_ratfunc, parse_unipoly, read_curve_file
from .polyrat import INF, lower_bound, value_set
from .survey import survey

SCHEMA_VERSION = 1


class CliError(Exception):
    pass


def _fmt_point(ctx, a):
    return "inf" if a is INF else ctx.format(a.v)


def _cap(args) -> SearchCap:
    return SearchCap(max_degree=args.cap_degree, steps=args.cap_steps)


def _field(args):
    if not args.field:
        raise CliError("--field is required")
    return parse_field_spec(args.field)


def _curve(args):
    points = {}
    if args.curve_file:
        ctx, C, points = read_curve_file(args.curve_file)
    else:
        ctx = _field(args)
        if not args.curve:
            raise CliError("--curve or --curve-file is required")
        C = parse_curve(ctx, args.curve)
    return ctx, C, points


def _points(args, ctx, declared, need=2):
    out = []
    for i, flag in enumerate((args.p1, args.p2)[:need], 1):
        name = "P%d" % i
        if flag:
            out.append(parse_point(ctx, flag))
        elif name in declared:
            out.append(declared[name])
        else:
            out.append(parse_point(ctx, ("(1:0:0)", "(0:1:0)")[i - 1]))
    return out


def _dec_json(dec):
    return {"f1": repr(dec.f1), "g1": repr(dec.g1), "f2": repr(dec.f2), "g2": repr(dec.g2),
            "orders": {"G_P1": dec.orders[0], "G_P2": dec.orders[1], "G": dec.orders[2]},
            "t": repr(dec.t_witness),
            "frame": None if dec.frame is None else [list(r) for r in dec.frame]}


# ---- subcommands ---------------------------------------------------------------

def cmd_galois_ratfunc(args):
    ctx = _field(args)
    h = parse_ratfunc(ctx, args.ratfunc)
    if h.deg < 1:
        raise CliError("constant rational function")
    m = args.ext_degree
    G = aut_group(h, m)
    rep = {"h": repr(h), "deg": h.deg, "m": m, "aut_order": len(G), "galois": len(G) == h.deg,
           "aut": [repr(s) for s in G]}
    if rep["galois"]:
        rep["short_orbits"] = [{"size": n, "points": [_fmt_point(G.ctx, a) for a in pts]}
                               for n, pts in short_orbits(h, m)]
    if m == 1:
        fr = verify_fact_bound(h)
        rep["value_set_size"] = fr.v_size
        rep["lower_bound"] = fr.lower
        rep["bound_ok"] = fr.ok
    return rep


def cmd_valueset(args):
    ctx = _field(args)
    if args.poly:
        h = parse_unipoly(ctx, args.poly)
        mode = args.mode or "affine"
    elif args.ratfunc:
        h = parse_ratfunc(ctx, args.ratfunc)
        mode = args.mode or "projective"
    else:
        raise CliError("--ratfunc or --poly is required")
    vs = value_set(h, mode)
    codes = vs.codes(ctx)
    deg = h.deg
    rep = {"h": repr(h), "mode": mode, "values": [_fmt_point(ctx, INF if c == ctx.q else ctx.elem(c)) for c in codes],
           "size": len(vs)}
    if deg >= 1:
        rep["lower_bound"] = lower_bound(ctx.q, deg) if mode == "projective" else -(-ctx.q // deg)
    return rep


def _parse_range(text):
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise CliError("degree range must be nonempty and positive")
    return list(range(lo, hi + 1))


def cmd_survey(args):
    ctx = _field(args)
    degrees = _parse_range(args.deg)
    mode = args.mode or "valueset-bound"
    rows = []
    summary = {"functions": 0, "galois": 0, "violations": 0}
    if mode in ("ratfunc-galois", "valueset-bound"):
        for res in survey(ctx, degrees):
            summary["functions"] += len(res.table)
            summary["galois"] += int(res.galois.sum())
            summary["violations"] += len(res.violations())
            for r in res.rows(galois_only=(mode == "valueset-bound")):
                if mode == "valueset-bound":
                    r["bound_ok"] = r["slack"] in (0, 1)
                rows.append(r)
    elif mode == "mvsp-scan":
        for res in survey(ctx, degrees, polynomial_only=True):
            summary["functions"] += len(res.table)
            for i in res.galois.nonzero()[0]:
                f = res.table.ratfunc(int(i)).num
                summary["galois"] += 1
                if f.deg > ctx.q:
                    continue
                mv = is_minimal_value_set(f)
                row = {"q": ctx.q, "f": repr(f), "deg": f.deg, "v_size": mv.v_size, "bound": mv.bound,
                       "minimal": mv.minimal, "size_hypothesis": size_hypothesis(mv.v_size, ctx.p), "theta": ""}
                if mv.minimal:
                    try:
                        row["theta"] = repr(borges_identity(f).theta)
                    except CertificateError:
                        row["theta"] = "none"
                if not mv.minimal:
                    summary["violations"] += 1
                rows.append(row)
    else:
        raise CliError("unknown survey mode %r" % mode)
    return {"field": ctx.spec(), "mode": mode, "degrees": degrees, "summary": summary, "rows": rows}


def cmd_galois_point(args):
    ctx, C, declared = _curve(args)
    pts = []
    for flag in (args.p1, args.p2):
        if flag:
            pts.append(parse_point(ctx, flag))
    if not pts:
        pts = [declared.get("P1") or parse_point(ctx, "(1:0:0)"), declared.get("P2") or parse_point(ctx, "(0:1:0)")]
    out = []
    for P in pts:
        m = multiplicity_at(C, P)
        entry = {"point": repr(P), "multiplicity": m}
        if m > 1:
            entry["error"] = "singular point"
        else:
            entry.update(is_galois_point(C, P).as_dict())
        out.append(entry)
    return {"curve": repr(C.F), "field": ctx.spec(), "points": out}


def cmd_decompose(args):
    ctx, C, declared = _curve(args)
    P1, P2 = _points(args, ctx, declared)
    dec = decompose(C, P1, P2)
    rep = {"curve": repr(C.F), "field": ctx.spec(), "decomposition": _dec_json(dec)}
    if not C.contains(P1) and not C.contains(P2):
        f1, f2 = polynomialize_outer(dec, C, P1, P2)
        rep["polynomial_form"] = {"f1": repr(f1), "f2": repr(f2)}
    return rep


def cmd_verify_theorems(args):
    ctx, C, declared = _curve(args)
    P1, P2 = _points(args, ctx, declared)
    return verify_theorems(C, P1, P2)


def cmd_fnc_check(args):
    ctx, C, declared = _curve(args)
    rep = {"curve": repr(C.F), "field": ctx.spec(), "frobenius_nonclassical": is_frobenius_nonclassical(C)}
    if args.p1 or args.p2 or declared:
        P1, P2 = _points(args, ctx, declared)
        rep["pipeline"] = corollary_pipeline(C, P1, P2)
    return rep


def cmd_mvsp_check(args):
    ctx = _field(args)
    if not args.poly:
        raise CliError("--poly is required")
    f = parse_unipoly(ctx, args.poly)
    mv = is_minimal_value_set(f)
    rep = {"f": repr(f), "v_size": mv.v_size, "bound": mv.bound, "minimal": mv.minimal,
           "size_hypothesis": size_hypothesis(mv.v_size, ctx.p)}
    if mv.minimal:
        try:
            cert = borges_identity(f)
            rep["T"] = repr(cert.T)
            rep["theta"] = repr(cert.theta)
        except CertificateError as e:
            rep["certificate_error"] = str(e)
            rep["residual"] = repr(e.residual)
    return rep


def cmd_construct(args):
    ctx = _field(args)
    if not (args.h1 and args.h2):
        raise CliError("--h1 and --h2 are required")
    h1 = parse_ratfunc(ctx, args.h1, "x")
    h2 = parse_ratfunc(ctx, args.h2, "y")
    comps = construct_candidate_curve(h1, h2, _cap(args))
    return {"field": ctx.spec(), "h1": repr(h1), "h2": repr(h2),
            "components": [dict(rep, polynomial=repr(g)) for g, rep in comps]}


COMMANDS = {
    "galois-ratfunc": cmd_galois_ratfunc,
    "valueset": cmd_valueset,
    "survey": cmd_survey,
    "galois-point": cmd_galois_point,
    "decompose": cmd_decompose,
    "verify-theorems": cmd_verify_theorems,
    "fnc-check": cmd_fnc_check,
    "mvsp-check": cmd_mvsp_check,
    "construct": cmd_construct,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field spec p^n or p^n:c0,...,cn")
    common.add_argument("--ratfunc", help="rational function in x, e.g. '(x^2+1)/(x-1)'")
    common.add_argument("--poly", help="polynomial in x")
    common.add_argument("--curve", help="curve polynomial in X,Y,Z (or affine in x,y)")
    common.add_argument("--curve-file", help="file: field spec, polynomial, optional 'P1 = (a:b:c)' lines")
    common.add_argument("--p1", help="first point, e.g. '(1:0:0)'")
    common.add_argument("--p2", help="second point, e.g. '(0:1:0)'")
    common.add_argument("--h1", help="rational function in x (construct)")
    common.add_argument("--h2", help="rational function in y (construct)")
    common.add_argument("--mode", help="valueset: projective|affine; survey: ratfunc-galois|valueset-bound|mvsp-scan")
    common.add_argument("--deg", default="2..3", help="degree range a..b (survey)")
    common.add_argument("--cap-degree", type=int, default=8, help="max total degree for exact factor search")
    common.add_argument("--cap-steps", type=int, default=200_000, help="candidate budget per factor search")
    common.add_argument("--ext-degree", type=int, default=1, help="extension degree m for automorphisms")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write the report to this file")

    ap = argparse.ArgumentParser(prog="galoispoints", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return ap


def _to_csv(rep) -> str:
    rows = rep.get("rows")
    if rows is None:
        raise CliError("csv output is only available for survey")
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def render(rep: dict, fmt: str) -> str:
    if fmt == "csv":
        return _to_csv(rep)
    return json.dumps(dict(rep, schema_version=SCHEMA_VERSION), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def run_subcommand(name: str, args) -> tuple[int, dict | None]:
    if name not in COMMANDS:
        raise CliError("unknown subcommand %r" % name)
    return 0, COMMANDS[name](args)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.ext_degree < 1 or args.cap_degree < 1 or args.cap_steps < 1:
        ap.error("caps and --ext-degree must be positive")
    try:
        code, rep = run_subcommand(args.command, args)
        text = render(rep, args.format)
    except (CliError, ParseError, FieldError, DecompositionError, CertificateError, ValueError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stdout = None
    return code


if __name__ == "__main__":
    sys.exit(main())
