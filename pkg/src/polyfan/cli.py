"""Batch front door: parse polynomials, run the analyses and the
upward-subdivision pipeline, emit fans, traces and verification
reports as deterministic JSON (or terse text)."""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import upward, verify
from .errors import (HeightZero, IterationCapExceeded, NotWeierstrass,
                     NotZSimple, ParseError, PolyfanError, TooFewVariables,
                     ZeroPolynomial)
from .newton import (Field, Polynomial, eliminate_removable,
                     parse_polynomial, z_report)
from .subdivide import iterated
from .verify import pipeline_context

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_VERIFICATION = 3
EXIT_ITERATION_CAP = 4

DEFAULT_SEED = 20240601


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(_key(k)): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Polynomial):
        return value.to_json_dict()
    return value


def _key(k):
    if isinstance(k, tuple):
        return ",".join(str(a) for a in k)
    return k


def _frac(q):
    return str(q)


def _read_polynomial(args):
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    text = text.strip()
    if not text:
        raise ParseError("empty input")
    if text.startswith("{"):
        return Polynomial.from_json_dict(json.loads(text))
    if args.field == "q":
        field = Field(0)
    elif args.field.startswith("fp:"):
        field = Field(int(args.field[3:]))
    else:
        raise ParseError(f"unknown field spec {args.field!r}")
    return parse_polynomial(text, zvar=args.z, field=field)


def _emit(args, doc):
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        _emit_text(doc)


def _emit_text(doc, indent=0):
    pad = "  " * indent
    for k, v in doc.items():
        if isinstance(v, dict):
            sys.stdout.write(f"{pad}{k}:\n")
            _emit_text(v, indent + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            sys.stdout.write(f"{pad}{k}:\n")
            for item in v:
                _emit_text(item, indent + 1)
                sys.stdout.write(f"{pad}  -\n")
        else:
            sys.stdout.write(f"{pad}{k}: {v}\n")


def _fan_doc(fan):
    rays = sorted(r.rays[0] for r in fan.rays())
    index = {r: i for i, r in enumerate(rays)}
    cones = sorted(sorted(index[g] for g in c.rays) for c in fan.maximal())
    return {
        "dim": fan.ambient_dim,
        "lattice": f"Z^{fan.ambient_dim}",
        "rays": [list(r) for r in rays],
        "cones": cones,
    }


def _newton_doc(report):
    return {
        "weierstrass_type": report.is_weierstrass_type,
        "b": report.b,
        "height": report.height,
        "top_vertex": list(report.top_vertex) if report.top_vertex else None,
        "z_simple": report.is_z_simple,
        "characteristic_number": report.characteristic_number,
        "skeleton": [list(v) for v in report.skeleton],
        "removable_faces": [
            {
                "points": [[_frac(a) for a in p] for p in rf.points],
                "chi": rf.chi.to_json_dict(),
                "unit": _frac(rf.unit),
                "monomial": list(rf.monomial_exponent),
                "dim": rf.dim,
            }
            for rf in report.removable_faces
        ],
    }


def _level_doc(tr):
    doc = {"H": list(tr.hray.rays[0]), "height": _frac(tr.height)}
    if tr.gamma is not None:
        doc["gamma"] = [[list(g), _frac(v)]
                        for g, v in sorted(tr.gamma.items())]
        doc["h_of"] = [[list(g), _frac(v)]
                       for g, v in sorted(tr.h_of.items())]
        doc["m"] = tr.m
        doc["mbar"] = tr.mbar
        doc["E"] = [list(e.rays[0]) for e in tr.emap]
        doc["Hseq"] = [list(h.rays[0]) for h in tr.hseq]
        doc["sub"] = [[i, _level_doc(s)] for i, s in tr.sub]
    return doc


def cmd_analyze(args):
    poly = _read_polynomial(args)
    if poly.is_zero():
        raise ZeroPolynomial("the zero polynomial has no analysis")
    report = z_report(poly)
    doc = {
        "command": "analyze",
        "input": poly.to_json_dict(),
        "newton": _newton_doc(report),
    }
    _emit(args, doc)
    return EXIT_OK


def cmd_usd(args):
    poly = _read_polynomial(args)
    if poly.is_zero():
        raise ZeroPolynomial("the zero polynomial has no analysis")
    report = z_report(poly)
    if not report.is_z_simple:
        raise NotZSimple(
            "input is not z-simple; run analyze/zremove first")
    ctx = pipeline_context(poly).validate()
    usd = upward.upward_subdivide(ctx, _validated=True)
    rays = sorted(r.rays[0] for r in usd.fan.rays())
    index = {r: i for i, r in enumerate(rays)}
    centers = [sorted(index[g] for g in c.rays) for c in usd.centers]
    replay = iterated(ctx.cfan, usd.centers) == usd.fan
    doc = {
        "command": "usd",
        "input": poly.to_json_dict(),
        "newton": _newton_doc(report),
        "H": list(ctx.hray.rays[0]),
        "M": usd.M,
        "fan": _fan_doc(usd.fan),
        "centers": centers,
        "enumeration": sorted(
            [[list(r.rays[0]), i] for r, i in usd.enumeration.items()],
            key=lambda kv: kv[1]),
        "levels": _level_doc(usd.trace),
        "replay_ok": replay,
    }
    code = EXIT_OK
    if args.no_verify:
        doc["verification"] = None
    else:
        hrep = upward.verify_height_inequality(ctx) \
            if usd.M else {"ok": True, "levels": [], "violations": []}
        hard = upward.verify_hard_height_inequality(ctx, usd)
        doc["verification"] = {
            "height_inequality": _jsonable(hrep),
            "hard_height_inequality": _jsonable(hard),
        }
        if not (hrep["ok"] and hard["ok"] and replay):
            code = EXIT_VERIFICATION
    _emit(args, doc)
    return code


def cmd_zremove(args):
    poly = _read_polynomial(args)
    if poly.is_zero():
        raise ZeroPolynomial("the zero polynomial has no analysis")
    try:
        acc, result, steps = eliminate_removable(
            poly, max_iter=args.max_iter)
    except HeightZero:
        acc, result, steps = poly._make({}), poly, []
    doc = {
        "command": "zremove",
        "input": poly.to_json_dict(),
        "chi_bar": acc.to_json_dict(),
        "result": result.to_json_dict(),
        "steps": [
            {
                "face_points": [[_frac(a) for a in p]
                                for p in s["face_points"]],
                "chi": s["chi"].to_json_dict(),
                "delta0": _frac(s["delta0"]),
            }
            for s in steps
        ],
    }
    _emit(args, doc)
    return EXIT_OK


def cmd_verify(args):
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("POLYFAN_SEED", DEFAULT_SEED))
    if args.inject_fault:
        upward._DEBUG_GAMMA_OFFSET = Fraction(1, 7)
    try:
        ok, results = verify.run_all(seed)
    finally:
        upward._DEBUG_GAMMA_OFFSET = Fraction(0)
    doc = {
        "command": "verify",
        "seed": seed,
        "ok": ok,
        "batteries": _jsonable(results),
    }
    _emit(args, doc)
    return EXIT_OK if ok else EXIT_VERIFICATION


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polyfan",
        description="Exact Newton-polyhedron analysis, removable-face "
                    "elimination and upward subdivisions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        p.add_argument("--field", default="q",
                       help="coefficient field: q or fp:<prime>")
        p.add_argument("--z", default="z", help="designated variable")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--max-iter", dest="max_iter", type=int, default=64)
        if needs_input:
            p.add_argument("input", help="polynomial file or - for stdin")

    p = sub.add_parser("analyze", help="Newton polyhedron and z-report")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("usd", help="run the upward subdivision pipeline")
    common(p)
    p.add_argument("--no-verify", action="store_true",
                   help="skip the inequality verification reports")
    p.set_defaults(func=cmd_usd)

    p = sub.add_parser("zremove", help="eliminate z-removable faces")
    common(p)
    p.set_defaults(func=cmd_zremove)

    p = sub.add_parser("verify", help="run the randomized invariant batteries")
    common(p, needs_input=False)
    p.add_argument("--inject-fault", action="store_true",
                   help="debug: corrupt one characteristic value and "
                        "confirm the cross checks catch it")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"cannot read input: {exc}\n")
        return EXIT_USAGE
    except IterationCapExceeded as exc:
        sys.stderr.write(f"iteration cap: {exc}\n")
        return EXIT_ITERATION_CAP
    except (NotZSimple, NotWeierstrass, ZeroPolynomial,
            TooFewVariables) as exc:
        sys.stderr.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION
    except PolyfanError as exc:
        sys.stderr.write(f"verification failure: {exc}\n")
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
