"""Command-line front end.

All output is line-oriented JSON; the exit code is 0 iff no failures.
Curve polynomials are entered as comma-separated coefficients in ascending
order (constant term first); moduli points as "j1,j2,j3"; rationals as
"num/den".  Conics are entered by their 6 upper-triangle entries
a11,a12,a13,a22,a23,a33.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import deriver
from .classify import classify_curve, classify_point, t_invariant
from .conics import conic_obstruction, conic_point, make_conic
from .errors import G2Error, Unsupported
from .fields import field_make
from .forms import curve_from_poly
from .harness import fuzz_roundtrip, sweep_moduli
from .models import AutGroup, PARAMETRIC_GROUPS
from .moduli import (
    ModuliPoint, clebsch_from_igusa, field_tag, igusa_invariants, lift_point,
    moduli_point,
)
from .reconstruct import reconstruct


def _emit(obj):
    print(json.dumps(obj, sort_keys=True))


def _parse_values(ctx, text):
    return [ctx.coerce(tok.strip()) for tok in text.split(",") if tok.strip()]


def _parse_point(ctx, text) -> ModuliPoint:
    vals = _parse_values(ctx, text)
    if len(vals) != 3:
        raise ValueError("a moduli point needs exactly three coordinates")
    return ModuliPoint(ctx, *vals)


def cmd_invariants(args) -> int:
    ctx = field_make(args.field)
    C = curve_from_poly(_parse_values(ctx, args.curve), ctx)
    J = igusa_invariants(C)
    out = {"igusa": J.to_json(), "moduli_point": moduli_point(C).to_json()}
    p = ctx.characteristic
    if p == 0 or p > 5:
        from .covariants import clebsch_invariants
        from .forms import curve_to_form

        c = clebsch_invariants(curve_to_form(C))
        ser = ctx.to_json
        out["clebsch"] = {"c2": ser(c.c2), "c4": ser(c.c4),
                          "c6": ser(c.c6), "c10": ser(c.c10)}
    _emit(out)
    return 0


def cmd_classify(args) -> int:
    ctx = field_make(args.field)
    try:
        if args.curve:
            C = curve_from_poly(_parse_values(ctx, args.curve), ctx)
            group = classify_curve(C)
            P = moduli_point(C)
        else:
            P = _parse_point(ctx, args.point)
            group = classify_point(P)
    except Unsupported as exc:
        _emit({"group": None, "unsupported": str(exc)})
        return 0
    out = {"group": group.value, "point": P.to_json()}
    if group in PARAMETRIC_GROUPS:
        out["t"] = ctx.to_json(t_invariant(P, group))
    _emit(out)
    return 0


def cmd_reconstruct(args) -> int:
    ctx = field_make(args.field)
    P = _parse_point(ctx, args.point)
    res = reconstruct(P)
    _emit({"point": P.to_json(), **res.to_json()})
    return 0 if res.outcome != "unsupported" or args.allow_unsupported else 1


def cmd_obstruction(args) -> int:
    ctx = field_make(args.field)
    if ctx.characteristic != 0:
        raise SystemExit("the obstruction lives over Q; use --field q")
    L = make_conic(ctx, _parse_values(ctx, args.conic))
    obs = conic_obstruction(L)
    out = {"places": obs.to_json(), "trivial": obs.is_trivial()}
    if args.solve:
        pt = conic_point(L)
        out["point"] = None if pt is None else [ctx.to_json(v) for v in pt]
    _emit(out)
    return 0


def cmd_sweep(args) -> int:
    report = sweep_moduli(args.p, backend=args.backend)
    _emit(report.to_json())
    return 0 if report.ok else 1


def cmd_fuzz(args) -> int:
    ctx = field_make(args.field)
    report = fuzz_roundtrip(args.n, ctx, seed=args.seed)
    _emit(report.to_json())
    return 0 if report.ok else 1


def cmd_bootstrap_cache(args) -> int:
    cache = deriver.cache_bootstrap(seed=args.seed or deriver._BOOTSTRAP_SEED)
    path = args.cache or deriver.default_cache_path()
    cache.save(path)
    _emit({"cache": str(path), "entries": len(cache.entries)})
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="g2moduli",
        description="Genus-2 invariants, automorphism classification, and "
                    "curve reconstruction from moduli points.",
        epilog="Values starting with a minus sign need the usual '--' "
               "separator, e.g.: g2moduli invariants --field q -- '-1,0,0,0,0,1'")
    parser.add_argument("--cache", help="expression cache path (default: packaged)")
    parser.add_argument("--json", action="store_true",
                        help="emit line-oriented JSON (always on; accepted for scripts)")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("invariants", help="invariants and moduli point of a curve")
    sp.add_argument("curve", help="f coefficients, ascending, e.g. '-1,0,0,0,0,0,1'")
    sp.add_argument("--field", default="q")
    sp.set_defaults(fn=cmd_invariants)

    sp = sub.add_parser("classify", help="automorphism group of a curve or point")
    sp.add_argument("point", nargs="?", help="moduli point 'j1,j2,j3'")
    sp.add_argument("--curve", help="f coefficients, ascending")
    sp.add_argument("--field", default="q")
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("reconstruct", help="curve over the base field from a moduli point")
    sp.add_argument("point", help="moduli point 'j1,j2,j3'")
    sp.add_argument("--field", default="q")
    sp.add_argument("--allow-unsupported", action="store_true")
    sp.set_defaults(fn=cmd_reconstruct)

    sp = sub.add_parser("obstruction", help="local obstruction of a conic over Q")
    sp.add_argument("conic", help="upper-triangle entries a11,a12,a13,a22,a23,a33")
    sp.add_argument("--field", default="q")
    sp.add_argument("--solve", action="store_true", help="also search for a point")
    sp.set_defaults(fn=cmd_obstruction)

    sp = sub.add_parser("sweep", help="classify+reconstruct all points of M2(F_p)")
    sp.add_argument("p", type=int)
    sp.add_argument("--backend", choices=["pure", "compiled"], default=None)
    sp.set_defaults(fn=cmd_sweep)

    sp = sub.add_parser("fuzz", help="random-curve round-trip fuzzing")
    sp.add_argument("--field", default="fp:11")
    sp.add_argument("--n", type=int, default=100)
    sp.add_argument("--seed", type=int, default=1)
    sp.set_defaults(fn=cmd_fuzz)

    sp = sub.add_parser("bootstrap-cache", help="rederive the expression cache")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(fn=cmd_bootstrap_cache)

    args = parser.parse_args(argv)
    if args.cache:
        deriver.set_default_cache(deriver.ExpressionCache.load(args.cache))
    if args.command == "classify" and not args.point and not args.curve:
        parser.error("classify needs a point or --curve")
    try:
        return args.fn(args)
    except G2Error as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
