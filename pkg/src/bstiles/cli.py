"""Command-line front end ``bs``.

Exit status: 0 success, 2 violations found, 3 inconclusive (a cap was hit),
4 usage error.  Errors are written to stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance, bsnn, multsys, subst_tiles
from . import multiplying as ak
from .errors import InconclusiveError
from .group import (GroupParams, alpha, canonical_form, format_word, height, lambda_map,
                    parse_word)
from .jsonio import (dumps, parse_interval, parse_rational, patch_from_json, patch_to_json,
                     rational_str, tileset_to_json)
from .render import render_svg
from .substitution import (NoFixpoint, composite, fixpoint_windows, stable_complexity)
from .wang import verify_patch

EXIT_OK, EXIT_VIOLATIONS, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj):
    print(dumps(obj))


def _rat(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _params(args) -> GroupParams:
    return GroupParams(args.m, args.n)


# --- group -----------------------------------------------------------------

def cmd_group_nf(args):
    p = _params(args)
    g = canonical_form(parse_word(args.word), p)
    out = {"group": str(p), "word": args.word, "normal_form": str(g), "height": height(g),
           "is_identity": g.is_identity()}
    if p.m > 0 and p.n > 0:
        out["alpha"] = rational_str(alpha(g, p))
        out["lambda"] = rational_str(lambda_map(g, p))
    _emit(out)
    return EXIT_OK


# --- tilesets and patches ---------------------------------------------------

def cmd_tileset_ak(args):
    p = _params(args)
    lo, hi = parse_interval(args.interval)
    en = ak.enumerate_tileset(p, args.q, lo, hi, strategy=args.strategy)
    if args.out:
        Path(args.out).write_text(dumps(tileset_to_json(en.tileset)) + "\n")
    _emit({"group": str(p), "q": rational_str(args.q),
           "interval": [rational_str(lo), rational_str(hi)],
           "tiles": len(en.tileset), "certificate": en.certificate, "out": args.out})
    return EXIT_OK


def _write_patch(x, out: str, constraints=()):
    path = Path(out)
    ref = path.with_name(path.stem + ".tileset.json")
    ref.write_text(dumps(tileset_to_json(x.tileset)) + "\n")
    path.write_text(dumps(patch_to_json(x, ref.name, constraints)) + "\n")


def _patch_report(x, constraints=()) -> dict:
    v = verify_patch(x)
    w = ak.window_failures(x, constraints) if constraints else []
    return {"cells": len(x), "tiles": len(x.tileset), "violations": len(v),
            "window_failures": len(w),
            "details": [{"site": str(a.site), "neighbor": str(a.neighbor), "rule": a.rule,
                         "k": a.k, "l": a.l} for a in v[:20]]}


def cmd_patch_orbit(args):
    if args.system != "s0":
        raise UsageError(f"unknown system {args.system!r}; only 's0' is built in")
    p = _params(args)
    if not Fraction(1, 3) <= args.x0 <= 2:
        raise UsageError("x0 must lie in [1/3, 2]")
    branch = ak.orbit_for_s0(args.x0, args.radius)
    x = ak.orbit_configuration(multsys.S0, branch, p, args.radius)
    constraints = [c for i, pc in enumerate(multsys.S0.pieces, start=1)
                   for c in ak.piece_constraints(pc, i)]
    if args.out:
        _write_patch(x, args.out, constraints)
    rep = _patch_report(x, constraints)
    rep["x0"] = rational_str(args.x0)
    rep["out"] = args.out
    _emit(rep)
    return EXIT_VIOLATIONS if rep["violations"] or rep["window_failures"] else EXIT_OK


def cmd_patch_subst(args):
    x = subst_tiles.subst_patch(args.n, args.radius)
    if args.out:
        _write_patch(x, args.out)
    rep = _patch_report(x)
    rep["out"] = args.out
    _emit(rep)
    return EXIT_VIOLATIONS if rep["violations"] else EXIT_OK


def _load_patch(path: str):
    src = Path(path)
    return patch_from_json(json.loads(src.read_text()), src.parent)


def cmd_patch_verify(args):
    x, constraints = _load_patch(args.input)
    rep = _patch_report(x, constraints)
    _emit(rep)
    return EXIT_VIOLATIONS if rep["violations"] or rep["window_failures"] else EXIT_OK


def cmd_render(args):
    x, _ = _load_patch(args.input)
    svg = render_svg(x)
    Path(args.svg).write_text(svg)
    _emit({"cells": len(x), "svg": args.svg})
    return EXIT_OK


# --- periods ---------------------------------------------------------------

def cmd_period_check(args):
    p = _params(args)
    word = parse_word(args.word)
    trivial = canonical_form(word, p).is_identity()
    if p.m == 1:
        periodic = subst_tiles.b_periodicity_check(subst_tiles.tile_builder(p.n), p.n, word, args.radius)
        config = "substitution"
    else:
        branch = ak.orbit_for_s0(args.x0, args.radius + len(word))
        periodic = ak.weak_period_check(multsys.S0, branch, p, word, args.radius)
        config = f"S0 orbit of {rational_str(args.x0)}"
    _emit({"group": str(p), "word": args.word, "configuration": config, "radius": args.radius,
           "periodic": periodic, "trivial_period": trivial})
    return EXIT_OK


# --- substitutions ------------------------------------------------------------

def _shifts(args) -> list[int]:
    if args.r is None:
        return [1, 1] if args.n == 2 else [1]
    return [int(t) for t in args.r.split(",")]


def cmd_subst_fixpoint(args):
    s = composite(args.n, _shifts(args))
    try:
        ws = fixpoint_windows(s, args.length)
    except NoFixpoint as exc:
        raise UsageError(f"{exc}; for n = 2 try --r 1,1") from exc
    _emit({"n": args.n, "r": _shifts(args), "substitution": str(s),
           "fixpoints": [str(w) for w in ws]})
    return EXIT_OK


def cmd_subst_complexity(args):
    s = composite(args.n, _shifts(args))
    try:
        prof = stable_complexity(s, args.max_len)
    except NoFixpoint as exc:
        raise UsageError(str(exc)) from exc
    _emit({"n": args.n, "r": _shifts(args), "counts": list(prof.counts), "window": prof.window,
           "iterations": prof.iterations,
           "exceeds_length": all(c > k for k, c in enumerate(prof.counts, start=1))})
    return EXIT_OK


# --- dynamics ---------------------------------------------------------------

def cmd_dyn_orbit(args):
    if not Fraction(1, 3) <= args.x0 <= 2:
        raise UsageError("x0 must lie in [1/3, 2]")
    br = ak.orbit_for_s0(args.x0, args.steps)
    _emit({"x0": rational_str(args.x0),
           "forward": [rational_str(br.values[k]) for k in range(0, args.steps + 1)],
           "backward": [rational_str(br.values[-k]) for k in range(0, args.steps + 1)],
           "pieces": [br.indices[k] for k in range(0, args.steps + 1)]})
    return EXIT_OK


def cmd_dyn_periodic(args):
    hits = multsys.periodic_point_search(multsys.S0, args.denoms, args.period)
    _emit({"denoms": args.denoms, "period": args.period,
           "hits": [[rational_str(x), k] for x, k in hits]})
    return EXIT_OK


# --- BS(n, n) ---------------------------------------------------------------

def cmd_bsnn_coset(args):
    w = parse_word(args.word)
    form = bsnn.canonicalize_bsnn(w, args.n)
    _emit({"n": args.n, "word": args.word, "coset": bsnn.coset(w, args.n),
           "form": form.to_json(), "in_H": form.p == 0})
    return EXIT_OK


def cmd_bsnn_phi(args):
    z = bsnn.ZxFn(args.z, bsnn.parse_free(args.free))
    w = bsnn.phi_iso(z, args.n)
    _emit({"n": args.n, "z": args.z, "free": str(z.w), "word": format_word(w),
           "normal_form": str(canonical_form(w, GroupParams(args.n, args.n)))})
    return EXIT_OK


# --- acceptance --------------------------------------------------------------

def cmd_accept(args):
    numbers = None
    if args.only:
        numbers = [int(t) for t in args.only.split(",")]
        unknown = [k for k in numbers if k not in acceptance.CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}")
    passed = True
    for res in acceptance.run(numbers, seed=args.seed):
        print(res.line(), flush=True)
        passed &= res.passed
    return EXIT_OK if passed else EXIT_VIOLATIONS


def build_parser() -> Parser:
    ap = Parser(prog="bs", description="Tilings and dynamics on Baumslag-Solitar groups.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=Parser)

    def group_args(sp, m=2, n=3):
        sp.add_argument("--m", type=int, default=m)
        sp.add_argument("--n", type=int, default=n)

    g = sub.add_parser("group").add_subparsers(dest="action", required=True, parser_class=Parser)
    sp = g.add_parser("nf", help="normal form of a word")
    group_args(sp)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_group_nf)

    t = sub.add_parser("tileset").add_subparsers(dest="action", required=True, parser_class=Parser)
    sp = t.add_parser("ak", help="enumerate a multiplying tileset")
    group_args(sp)
    sp.add_argument("--q", type=_rat, required=True)
    sp.add_argument("--interval", required=True, help='e.g. "0+1/3,0+1-0/1"')
    sp.add_argument("--strategy", choices=("sample", "overapprox"), default="sample")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_tileset_ak)

    pt = sub.add_parser("patch").add_subparsers(dest="action", required=True, parser_class=Parser)
    sp = pt.add_parser("orbit", help="orbit configuration of S0 on a ball")
    group_args(sp)
    sp.add_argument("--system", default="s0")
    sp.add_argument("--x0", type=_rat, required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_patch_orbit)
    sp = pt.add_parser("subst", help="explicit substitution configuration on BS(1,n)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_patch_subst)
    sp = pt.add_parser("verify", help="check every adjacency of a patch file")
    sp.add_argument("--in", dest="input", required=True)
    sp.set_defaults(func=cmd_patch_verify)

    pr = sub.add_parser("period").add_subparsers(dest="action", required=True, parser_class=Parser)
    sp = pr.add_parser("check", help="is tile(p g) = tile(g) on a ball")
    group_args(sp)
    sp.add_argument("--word", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--x0", type=_rat, default=Fraction(1, 2))
    sp.set_defaults(func=cmd_period_check)

    su = sub.add_parser("subst").add_subparsers(dest="action", required=True, parser_class=Parser)
    sp = su.add_parser("fixpoint")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", help="shift index, or i1,i2,... for sigma_ik o ... o sigma_i1")
    sp.add_argument("--length", type=int, required=True, help="letters on each side of the origin")
    sp.set_defaults(func=cmd_subst_fixpoint)
    sp = su.add_parser("complexity")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r")
    sp.add_argument("--max-len", type=int, required=True)
    sp.set_defaults(func=cmd_subst_complexity)

    dy = sub.add_parser("dyn").add_subparsers(dest="action", required=True, parser_class=Parser)
    sp = dy.add_parser("orbit")
    sp.add_argument("--x0", type=_rat, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.set_defaults(func=cmd_dyn_orbit)
    sp = dy.add_parser("periodic-search")
    sp.add_argument("--denoms", type=int, required=True)
    sp.add_argument("--period", type=int, required=True)
    sp.set_defaults(func=cmd_dyn_periodic)

    bn = sub.add_parser("bsnn").add_subparsers(dest="action", required=True, parser_class=Parser)
    sp = bn.add_parser("coset")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_bsnn_coset)
    sp = bn.add_parser("phi")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--z", type=int, default=0)
    sp.add_argument("--free", default="")
    sp.set_defaults(func=cmd_bsnn_phi)

    sp = sub.add_parser("render", help="draw a patch file as SVG")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--svg", required=True)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("accept", help="run the acceptance suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.set_defaults(func=cmd_accept)
    return ap


def _fail(code: int, exc: BaseException) -> int:
    print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit": code}),
          file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, exc)
    except InconclusiveError as exc:
        return _fail(EXIT_INCONCLUSIVE, exc)
    except (ValueError, TypeError, KeyError, LookupError, OSError, json.JSONDecodeError) as exc:
        return _fail(EXIT_USAGE, exc)


if __name__ == "__main__":
    sys.exit(main())
