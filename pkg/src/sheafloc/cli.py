"""Command-line driver: ``sheafloc <command> SCENE [options]``.

Exit status: 0 success, 1 mathematical inconsistency (failed validation,
Gauss-Bonnet mismatch), 2 input error (bad JSON, bad X, X on a wall).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import localize as loc
from . import oracle
from .bb import bb_decompose
from .errors import InconsistencyError, InputError, OnWallError
from .models import euler_form_class, exp_hamiltonian_class, one_class
from .scene import load_scene, parse_X
from .sheaves import euler_characteristic, multiplicities, validate
from .weights import CartanElement, as_fraction, enumerate_chambers

EXIT_OK, EXIT_INCONSISTENT, EXIT_INPUT = 0, 1, 2


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _emit_csv(header, rows, out):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    out.write(buf.getvalue())


def _X(args, scene) -> CartanElement:
    X = parse_X(args.X) if getattr(args, "X", None) else scene.X
    if X is None:
        raise InputError("no X given: pass --X or set 'X' in the scene")
    if X.rank != scene.model.rank:
        raise InputError(f"X has length {X.rank}, model rank is {scene.model.rank}")
    return X


def _class(name, model, t):
    if name == "one":
        return one_class(model)
    if name == "euler":
        return euler_form_class(model)
    return exp_hamiltonian_class(model, as_fraction(t))


def cmd_fixed_points(args, scene, out):
    m = scene.model
    _emit(
        {
            "kind": m.kind,
            "rank": m.rank,
            "dim": m.dim,
            "fixed_points": [
                {
                    "name": p.name,
                    "tangent_weights": [list(b.coeffs) for b in p.tangent_weights],
                    "hamiltonian": [str(h) for h in p.hamiltonian],
                }
                for p in m.fixed_points
            ],
            "delta": [list(b.coeffs) for b in m.delta],
        },
        out,
    )
    return EXIT_OK


def cmd_chambers(args, scene, out):
    chambers = enumerate_chambers(scene.model.delta, scene.slice, seed=args.seed)
    rows = [(c.label, ",".join(str(x) for x in c.representative.slice_coordinates(scene.slice))) for c in chambers]
    if args.format == "csv":
        _emit_csv(["chamber", "representative"], rows, out)
    else:
        _emit({"slice": scene.slice, "chambers": [{"chamber": a, "representative": b} for a, b in rows]}, out)
    return EXIT_OK


def cmd_bb(args, scene, out):
    dec = bb_decompose(scene.model, _X(args, scene), scene.slice)
    _emit(
        {
            "chamber": dec.chamber,
            "cells": [
                {
                    "fixed_point": c.fixed_point,
                    "dim_minus": c.dim_minus,
                    "negative_weights": [list(b.coeffs) for b in c.negative_weights],
                }
                for c in dec.cells
            ],
        },
        out,
    )
    return EXIT_OK


def cmd_multiplicities(args, scene, out):
    mv = multiplicities(scene.model, scene.sheaf, _X(args, scene), scene.slice)
    if args.format == "csv":
        _emit_csv(["chamber", "fixed_point", "m"], [(mv.chamber, p, v) for p, v in mv.m.items()], out)
    else:
        _emit({"chamber": mv.chamber, "m": dict(mv.m)}, out)
    return EXIT_OK


def cmd_localize(args, scene, out):
    X = _X(args, scene)
    cls = _class(args.cls, scene.model, args.t)
    if args.bv:
        res = loc.bv_localize(scene.model, cls, X, scene.slice)
    else:
        res = loc.main_localize(scene.model, scene.sheaf, cls, X, scene.slice)
    _emit(res.as_dict(), out)
    return EXIT_OK


def cmd_gauss_bonnet(args, scene, out):
    gb = loc.gauss_bonnet(scene.model, scene.sheaf, _X(args, scene), scene.slice, scene.tolerance)
    _emit(gb.as_dict(), out)
    return EXIT_OK if gb.match else EXIT_INCONSISTENT


def cmd_dh(args, scene, out):
    res = loc.dh_fourier(scene.model, scene.sheaf, _X(args, scene), scene.slice, as_fraction(args.t))
    _emit(res.as_dict(), out)
    return EXIT_OK


def cmd_chamber_scan(args, scene, out):
    cls = _class(args.cls, scene.model, args.t)
    rows = loc.chamber_scan(scene.model, scene.sheaf, cls, scene.slice, seed=args.seed)
    chi = euler_characteristic(scene.sheaf)
    if args.format == "csv":
        names = list(scene.model.names)
        _emit_csv(
            ["chamber", *[f"m_{p}" for p in names], "sum_m", "value_re", "value_im"],
            [(r.chamber, *[r.m[p] for p in names], r.total, repr(r.value.real), repr(r.value.imag)) for r in rows],
            out,
        )
    else:
        _emit(
            {
                "euler_characteristic": chi,
                "strata": [{"name": s.name, "chi_c": s.chi_c, "stalk_euler": s.stalk_euler} for s in scene.sheaf.strata],
                "rows": [
                    {
                        "chamber": r.chamber,
                        "X": ",".join(str(x) for x in r.X.slice_coordinates(scene.slice)),
                        "m": r.m,
                        "sum_m": r.total,
                        "value_re": r.value.real,
                        "value_im": r.value.imag,
                    }
                    for r in rows
                ],
            },
            out,
        )
    return EXIT_OK if all(r.total == chi for r in rows) else EXIT_INCONSISTENT


def cmd_validate(args, scene, out):
    problems = validate(scene.model, scene.sheaf)
    if not problems:
        # every chamber must also be served by some table
        for ch in enumerate_chambers(scene.model.delta, scene.slice, seed=args.seed):
            try:
                multiplicities(scene.model, scene.sheaf, ch.representative, scene.slice)
            except InconsistencyError as exc:
                problems.append(str(exc))
    _emit({"valid": not problems, "violations": problems}, out)
    return EXIT_OK if not problems else EXIT_INCONSISTENT


def cmd_oracle(args, out):
    if args.oracle == "cp1-quadrature":
        t = float(args.t)
        spec = oracle.QuadratureSpec(args.grid, args.grid, args.scheme)
        val = oracle.quadrature_cp1(t, spec)
        exact = oracle.quadrature_cp1_exact(t)
        _emit({"t": t, "grid": args.grid, "scheme": args.scheme, "value": val, "exact": exact,
               "abs_error": abs(val - exact)}, out)
    elif args.oracle == "gaussian":
        parts = [float(x) for x in args.beta.split(",")]
        if len(parts) not in (1, 2):
            raise InputError("--beta expects <re>,<im>")
        beta = complex(parts[0], parts[1] if len(parts) == 2 else 0.0)
        val = oracle.gaussian_fiber_integral(beta, args.radius, args.grid)
        exact = -2j * math.pi / beta
        _emit({"beta": {"re": beta.real, "im": beta.imag}, "value": {"re": val.real, "im": val.imag},
               "expected": {"re": exact.real, "im": exact.imag}, "abs_error": abs(val - exact)}, out)
    elif args.oracle == "dh-pushforward":
        hist = oracle.dh_pushforward_cp1(args.samples, args.seed, args.bins)
        if args.format == "json":
            _emit({"samples": hist.samples, "seed": hist.seed, "ks_distance": hist.ks_distance,
                   "mean": hist.mean, "max_bin_deviation": hist.max_bin_deviation(),
                   "bins": [{"bin_lo": float(a), "bin_hi": float(b), "mass": float(m)}
                            for a, b, m in zip(hist.edges[:-1], hist.edges[1:], hist.mass)]}, out)
        else:
            out.write(hist.to_csv())
    elif args.oracle == "dh-invert":
        ts = [float(x) for x in args.t.split(",") if x.strip()] if args.t else []
        rep = oracle.dh_inversion_check(ts)
        _emit({"max_rel_error": rep.max_rel_error,
               "rows": [r.__dict__ for r in rep.rows]}, out)
    return EXIT_OK


COMMANDS = {
    "fixed-points": cmd_fixed_points,
    "chambers": cmd_chambers,
    "bb": cmd_bb,
    "multiplicities": cmd_multiplicities,
    "localize": cmd_localize,
    "gauss-bonnet": cmd_gauss_bonnet,
    "dh": cmd_dh,
    "chamber-scan": cmd_chamber_scan,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for sampling (default: scene seed or 0)")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    parser = argparse.ArgumentParser(prog="sheafloc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("scene")
        if name in ("bb", "multiplicities", "localize", "gauss-bonnet", "dh"):
            p.add_argument("--X", help="Cartan element, e.g. '1,-2' or 'i1'")
        if name in ("localize", "chamber-scan"):
            p.add_argument("--class", dest="cls", choices=("one", "euler", "exp-hamiltonian"), required=True)
        if name in ("localize", "chamber-scan", "dh"):
            p.add_argument("--t", default="1", help="rational scale of the Hamiltonian")
        if name == "localize":
            p.add_argument("--bv", action="store_true", help="Berline-Vergne sum (multiplicities 1)")

    o = sub.add_parser("oracle", parents=[common])
    osub = o.add_subparsers(dest="oracle", required=True)
    q = osub.add_parser("cp1-quadrature", parents=[common])
    q.add_argument("--t", type=float, required=True)
    q.add_argument("--grid", type=int, default=256)
    q.add_argument("--scheme", choices=("gauss-legendre", "midpoint"), default="gauss-legendre")
    g = osub.add_parser("gaussian", parents=[common])
    g.add_argument("--beta", required=True, help="<re>,<im>")
    g.add_argument("--radius", type=float, default=None)
    g.add_argument("--grid", type=int, default=64)
    d = osub.add_parser("dh-pushforward", parents=[common])
    d.add_argument("--samples", type=int, default=1_000_000)
    d.add_argument("--bins", type=int, default=20)
    i = osub.add_parser("dh-invert", parents=[common])
    i.add_argument("--t", default="0.5,1,2", help="comma-separated list")
    return parser


def main(argv=None, out=None) -> int:
    if out is None:
        out = sys.stdout
        if hasattr(out, "reconfigure"):
            out.reconfigure(encoding="utf-8", newline="\n")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "oracle":
            args.seed = 0 if args.seed is None else args.seed
            args.format = args.format or "csv"
            return cmd_oracle(args, out)
        try:
            scene = load_scene(args.scene)
        except json.JSONDecodeError as exc:
            print(f"error: {args.scene}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                  file=sys.stderr)
            return EXIT_INPUT
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        args.seed = scene.seed if args.seed is None else args.seed
        args.format = args.format or "json"
        return COMMANDS[args.command](args, scene, out)
    except OnWallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistencyError as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
