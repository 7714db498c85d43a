"""Command line entry point: ``tangent-slopes <command> ...``."""

import argparse
import json
import sys

from .bounds import BoundInputs, bound_report
from .corpus import ingest_corpus
from .errors import (AuditFailure, CertificationError, ParseError, PrecisionExhausted,
                     TangentSlopesError, TranslateOfSubtorus)
from .heights import poly_height
from .poly import parse_poly, squarefree_check
from .report import dehn_exclusion_report
from .tangency import AnyTranslate, TorsionUpTo, Unit, branch_tangents, curve_singular_points, slope_scan
from .verify import run_verification_suite

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TRANSLATE = 3
EXIT_PROPERTY = 4
EXIT_PRECISION = 5


class InputError(Exception):
    pass


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True)


def _read_poly(args):
    if args.expr is not None:
        text = args.expr
    elif args.poly == "-":
        text = sys.stdin.read()
    elif args.poly is not None:
        try:
            with open(args.poly, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.poly}: {exc.strerror}") from exc
    else:
        raise InputError("give the curve with --poly FILE, --poly - or --expr TEXT")
    f = parse_poly(text.strip())
    if f.is_constant():
        raise InputError("the curve polynomial must be nonconstant")
    return f


def _require_squarefree(f):
    if not squarefree_check(f):
        raise InputError("the curve polynomial is not squarefree")


# -- commands ---------------------------------------------------------------------


def cmd_analyze(args):
    f = _read_poly(args)
    _require_squarefree(f)
    b = BoundInputs.from_poly(f)
    br = bound_report(b, f)
    doc = {"poly": str(f), "degree": f.degree, "degree_x": f.degree_x, "degree_y": f.degree_y,
           "height": poly_height(f).to_json(), "bounds": br.to_json()}
    lines = [f"curve      {doc['poly']}",
             f"degrees    total {f.degree}, in x {f.degree_x}, in y {f.degree_y}",
             f"h(f)       {b.hf.formula()}",
             f"habegger   {br.habegger.formula()}",
             f"log slope  {br.theorem_log.formula()}",
             f"bezout     {br.bezout_degree}"]
    return doc, lines


def _target(args):
    if getattr(args, "any_translate", False):
        return AnyTranslate()
    if getattr(args, "torsion", None) is not None:
        return TorsionUpTo(args.torsion)
    return Unit()


def cmd_scan(args):
    f = _read_poly(args)
    _require_squarefree(f)
    rep = slope_scan(f, args.max_slope, _target(args), workers=args.workers)
    doc = rep.to_json()
    lines = [f"scanned {rep.scanned} slopes up to {rep.radius} ({doc['target']})"]
    for r in rep.hits:
        lines.append(f"  {r.slope}: {len(r.intersections)} point(s)")
        for si in r.intersections:
            lines.append(f"    {si.point!r}  value order {si.translate.order or 'inf'}")
    if not rep.hits:
        lines.append("  no singular intersections")
    return doc, lines


def cmd_report(args):
    f = _read_poly(args)
    rep = dehn_exclusion_report(f, args.max_slope, args.torsion, workers=args.workers)
    doc = rep.to_json()
    lines = [f"curve {doc['curve']['poly']}  (N={rep.radius}, M={rep.torsion_cap})",
             "excluded slopes:"]
    for e in doc["excluded_slopes"]:
        kinds = sorted({r["kind"] for r in e["reasons"]})
        lines.append(f"  ({e['slope'][0]},{e['slope'][1]})  {', '.join(kinds)}")
    if not doc["excluded_slopes"]:
        lines.append("  none")
    lines.append(f"torsion translates: {len(doc['torsion_translates'])}")
    lines.append(f"audited points: {doc['audit']['points_audited']}, "
                 f"failures: {doc['audit']['failures']}")
    lines.extend(f"warning: {w}" for w in doc["warnings"])
    return doc, lines


def cmd_singular(args):
    f = _read_poly(args)
    _require_squarefree(f)
    items = [branch_tangents(f, P) for P in curve_singular_points(f)]
    doc = {"poly": str(f), "singular_points": [bt.to_json() for bt in items]}
    lines = [f"{len(items)} singular point(s)"]
    for bt in items:
        slopes = ", ".join(str(s) for s in bt.slopes) or "none"
        lines.append(f"  {bt.point!r}  multiplicity {bt.multiplicity}, rational tangents {slopes}, "
                     f"irrational directions {bt.irrational_directions}")
    return doc, lines


def cmd_verify(args):
    rep = run_verification_suite(args.seed, args.samples)
    doc = rep.to_json()
    lines = [f"{r.name:32s} {r.samples:5d} samples  {'ok' if r.passed else 'FAIL'}"
             for r in rep.results]
    for r in rep.results:
        if not r.passed:
            lines.append(f"counterexample for {r.name}: {json.dumps(r.counterexample, sort_keys=True)}")
    return doc, lines, (EXIT_OK if rep.passed else EXIT_PROPERTY)


def cmd_corpus(args):
    entries, errors = ingest_corpus(args.dir)
    if args.action == "list":
        doc = {"entries": [e.summary() for e in entries], "errors": [e.to_json() for e in errors]}
        lines = [f"{e.name:20s} degree {e.poly.degree}  {e.source}" for e in entries]
    else:
        runs = []
        for e in entries:
            rep = dehn_exclusion_report(e.poly, args.max_slope, args.torsion, workers=args.workers)
            runs.append({"name": e.name, "report": rep.to_json()})
        doc = {"runs": runs, "errors": [e.to_json() for e in errors]}
        lines = [f"{r['name']:20s} excluded {len(r['report']['excluded_slopes'])}, "
                 f"audit failures {r['report']['audit']['failures']}" for r in runs]
    lines.extend(f"rejected {e.file}: {e.reason}" for e in errors)
    return doc, lines


# -- parser -----------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="tangent-slopes",
                                 description="Certified tangencies of torus curves with subtori.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, poly=True):
        p.add_argument("--json", action="store_true", help="emit one JSON document on stdout")
        if poly:
            src = p.add_mutually_exclusive_group()
            src.add_argument("--poly", metavar="FILE", help="file holding the polynomial, or - for stdin")
            src.add_argument("--expr", metavar="TEXT", help="the polynomial itself")
        return p

    common(sub.add_parser("analyze", help="degrees, height and bounds"))

    p = common(sub.add_parser("scan", help="singular intersections over all slopes up to N"))
    p.add_argument("--max-slope", type=int, required=True)
    tg = p.add_mutually_exclusive_group()
    tg.add_argument("--torsion", type=int, metavar="M", help="keep cosets of order at most M")
    tg.add_argument("--any-translate", action="store_true", help="keep every coset")
    p.add_argument("--workers", type=int, default=None)

    p = common(sub.add_parser("report", help="slope exclusion report"))
    p.add_argument("--max-slope", type=int, required=True)
    p.add_argument("--torsion", type=int, required=True, metavar="M")
    p.add_argument("--workers", type=int, default=None)

    common(sub.add_parser("singular", help="singular points and branch tangents"))

    p = common(sub.add_parser("verify", help="seeded property checks"), poly=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)

    p = common(sub.add_parser("corpus", help="bundled or user curve corpus"), poly=False)
    p.add_argument("action", choices=["list", "run"])
    p.add_argument("dir", nargs="?", default=None, help="entry directory (default: bundled)")
    p.add_argument("--max-slope", type=int, default=10)
    p.add_argument("--torsion", type=int, default=12, metavar="M")
    p.add_argument("--workers", type=int, default=None)
    return ap


COMMANDS = {"analyze": cmd_analyze, "scan": cmd_scan, "report": cmd_report,
            "singular": cmd_singular, "verify": cmd_verify, "corpus": cmd_corpus}


def _fail(args, code, kind, message, extra=None):
    if getattr(args, "json", False):
        print(dumps({"error": {"kind": kind, "message": message, **(extra or {})}}))
    else:
        print(f"error: {message}", file=sys.stderr)
    return code


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    for name in ("max_slope", "torsion", "samples", "workers"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            return _fail(args, EXIT_INPUT, "InputError", f"--{name.replace('_', '-')} must be positive")
    try:
        out = COMMANDS[args.command](args)
    except (InputError, ParseError, FileNotFoundError) as exc:
        return _fail(args, EXIT_INPUT, type(exc).__name__, str(exc))
    except TranslateOfSubtorus as exc:
        return _fail(args, EXIT_TRANSLATE, "TranslateOfSubtorus", str(exc),
                     {"slope": exc.slope.to_json()})
    except (AuditFailure, CertificationError) as exc:
        return _fail(args, EXIT_PROPERTY, type(exc).__name__, str(exc))
    except PrecisionExhausted as exc:
        return _fail(args, EXIT_PRECISION, "PrecisionExhausted", str(exc))
    except (TangentSlopesError, ValueError) as exc:
        return _fail(args, EXIT_INPUT, type(exc).__name__, str(exc))
    doc, lines = out[0], out[1]
    code = out[2] if len(out) > 2 else EXIT_OK
    if args.json:
        print(dumps(doc))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
