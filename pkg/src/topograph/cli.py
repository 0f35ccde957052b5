"""Command-line interface: line-delimited JSON on stdout, SVG files on disk.

Exit codes: 0 success, 1 domain error (machine-readable JSON on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bqf import BQF, INDEFINITE, POSITIVE_DEFINITE, classify
from .classgroup import enumerate_classes, is_diform_discriminant, verify_red_blue
from .diform import BQD, diform_river, diform_well
from .errors import PreconditionError, TopographError
from .hermitian import (
    BHF,
    STANDARD_EISENSTEIN_SEED,
    STANDARD_GAUSS_SEED,
    cube_values,
    empirical_minimum,
    find_cubasis,
    find_tetrabasis,
)
from .reduction import (
    find_well,
    gauss_reduced,
    minimum_nonzero,
    pell_solve,
    riverbends,
    trace_river,
)
from .render import emit_svg, layout
from .rings import EISENSTEIN, GAUSS, QRE

# JSON field layout of every subcommand's stdout, for `dump --json`
SCHEMAS = {
    "reduce": {"form": "[a,b,c]", "class": "str", "reduced": "[a,b,c]",
               "well": "{kind, values} | null"},
    "river": {"form": "[a,b,c]", "delta": "int", "period_edges": "int",
              "mu": "int", "witness": "[x,y]", "automorph": "[[int]*2]*2",
              "reduced_cycle": "[[a,b,c]]"},
    "pell": {"d": "int", "x": "int", "y": "int", "automorph": "[[int]*2]*2"},
    "classgroup": {"delta": "int", "h": "int", "classes": "[[a,b,c]]",
                   "table": "[[int]]"},
    "diform": {"sigma": "int", "form": "[a,b,c]", "delta": "int",
               "red": "[a,b,c]", "blue": "[a,b,c]",
               "well": "{source_values, reduced_red, reduced_blue} | null",
               "river": "{exceptional, mu, witness, period_steps, bends} | null",
               "class_relation": "{...} | null"},
    "hermitian": {"ring": "str", "form": "{a, gamma, c}", "delta": "int",
                  "mu": "int | null", "bound_ok": "bool | null",
                  "cube": "{faces, z, pattern} | null"},
    "render": {"geometry": "str", "depth": "int",
               "counts": "{vertices, edges, faces}", "out": "str"},
}


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _parse_form(text: str, n: int = 3):
    parts = text.split(",")
    if len(parts) != n:
        raise PreconditionError(f"--form expects {n} comma-separated integers")
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise PreconditionError(f"--form expects integers: {exc}") from exc


def _cmd_reduce(args) -> None:
    a, b, c = _parse_form(args.form)
    q = BQF(a, b, c)
    kind = classify(q)
    if kind == POSITIVE_DEFINITE:
        well = find_well(q)
        red = gauss_reduced(q)
        _emit({
            "form": [a, b, c],
            "class": kind,
            "reduced": [red.a, red.b, red.c],
            "well": {"kind": well.kind, "values": list(well.values)},
        })
    elif kind == INDEFINITE:
        bends = riverbends(q)
        red = min((f.a, f.b, f.c) for f in bends)
        _emit({
            "form": [a, b, c],
            "class": kind,
            "reduced": list(red),
            "well": None,
        })
    else:
        raise PreconditionError(f"cannot reduce a {kind} form")


def _cmd_river(args) -> None:
    a, b, c = _parse_form(args.form)
    q = BQF(a, b, c)
    period = trace_river(q)
    rep = minimum_nonzero(q)
    _emit({
        "form": [a, b, c],
        "delta": q.discriminant(),
        "period_edges": len(period.edges) - 1,
        "mu": rep.mu,
        "witness": list(rep.witness),
        "automorph": [list(r) for r in period.automorph],
        "reduced_cycle": sorted([f.a, f.b, f.c] for f in riverbends(q)),
    })


def _cmd_pell(args) -> None:
    sol = pell_solve(args.d)
    _emit({
        "d": sol.d,
        "x": sol.x,
        "y": sol.y,
        "automorph": [list(r) for r in sol.automorph],
    })


def _cmd_classgroup(args) -> None:
    table = enumerate_classes(args.delta)
    table.build_table()
    _emit(table.to_json())


def _cmd_diform(args) -> None:
    a, b, c = _parse_form(args.form)
    if args.sigma not in (2, 3):
        raise PreconditionError("--sigma must be 2 or 3")
    q = BQD(args.sigma, a, b, c)
    d = q.discriminant()
    out = {
        "sigma": args.sigma,
        "form": [a, b, c],
        "delta": d,
        "red": list(q.red_blue()[0]),
        "blue": list(q.red_blue()[1]),
        "well": None,
        "river": None,
        "class_relation": None,
    }
    if args.reduce:
        w = diform_well(q)
        out["well"] = {
            "source_values": list(w["source_values"]),
            "reduced_red": list(w["reduced_red"]),
            "reduced_blue": list(w["reduced_blue"]),
        }
    if args.river:
        r = diform_river(q)
        out["river"] = {
            "exceptional": r.exceptional,
            "mu": r.mu,
            "witness": None if r.witness is None else
                [r.witness.color, r.witness.u, r.witness.v],
            "period_steps": len(r.steps),
            "bends": sum(1 for s in r.steps if s.bend),
        }
    if not args.reduce and not args.river and is_diform_discriminant(args.sigma, d):
        try:
            out["class_relation"] = verify_red_blue(args.sigma, a, b, c)
        except TopographError:
            out["class_relation"] = None
    _emit(out)


def _cmd_hermitian(args) -> None:
    ring = {"g": GAUSS, "e": EISENSTEIN}.get(args.ring)
    if ring is None:
        raise PreconditionError("--ring must be g or e")
    a, gx, gy, c = _parse_form(args.form, 4)
    h = BHF(ring, a, QRE(ring, gx, gy), c)
    d = h.discriminant()
    out = {
        "ring": ring,
        "form": {"a": a, "gamma": [gx, gy], "c": c},
        "delta": d,
        "mu": None,
        "bound_ok": None,
        "cube": None,
    }
    if ring == GAUSS:
        cb = find_cubasis(STANDARD_GAUSS_SEED)
        cv = cube_values(h, cb)
        out["cube"] = {
            "faces": [cv.a, cv.b, cv.c, cv.u, cv.v, cv.w],
            "z": cv.z,
            "pattern": cv.pattern,
        }
    else:
        find_tetrabasis(STANDARD_EISENSTEIN_SEED)
    if d > 0:
        rep = empirical_minimum(h, args.min_box)
        out["mu"] = rep["mu"]
        out["bound_ok"] = rep["bound_ok"]
    _emit(out)


def _cmd_render(args) -> None:
    form = _parse_form(args.form) if args.form else None
    patch = layout(args.geometry, args.depth, form)
    data = emit_svg(patch)
    with open(args.out, "wb") as fh:
        fh.write(data)
    _emit({
        "geometry": args.geometry,
        "depth": args.depth,
        "counts": patch.counts(),
        "out": args.out,
    })


def _cmd_dump(args) -> None:
    if not args.json:
        raise PreconditionError("dump requires --json")
    for name in sorted(SCHEMAS):
        _emit({"command": name, "schema": SCHEMAS[name]})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topograph",
        description="Arithmetic topographs: reduction, rivers, Pell, "
        "class groups, diforms, Hermitian forms, SVG rendering.",
    )
    parser.add_argument("--seed", type=int, default=None,
                        help="reserved; all algorithms are deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce a binary quadratic form")
    p.add_argument("--form", required=True, help="a,b,c")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("river", help="trace one river period")
    p.add_argument("--form", required=True, help="a,b,c")
    p.set_defaults(func=_cmd_river)

    p = sub.add_parser("pell", help="fundamental solution of x^2 - D y^2 = 1")
    p.add_argument("--d", required=True, type=int)
    p.set_defaults(func=_cmd_pell)

    p = sub.add_parser("classgroup", help="class group of a discriminant")
    p.add_argument("--delta", required=True, type=int)
    p.set_defaults(func=_cmd_classgroup)

    p = sub.add_parser("diform", help="binary quadratic diform operations")
    p.add_argument("--sigma", required=True, type=int)
    p.add_argument("--form", required=True, help="a,b,c")
    p.add_argument("--reduce", action="store_true")
    p.add_argument("--river", action="store_true")
    p.set_defaults(func=_cmd_diform)

    p = sub.add_parser("hermitian", help="binary Hermitian form report")
    p.add_argument("--ring", required=True, choices=["g", "e"])
    p.add_argument("--form", required=True, help="a,gamma_x,gamma_y,c")
    p.add_argument("--min-box", type=int, default=4)
    p.set_defaults(func=_cmd_hermitian)

    p = sub.add_parser("render", help="render a topograph patch to SVG")
    p.add_argument("--geometry", required=True, choices=["3inf", "4inf", "6inf"])
    p.add_argument("--depth", required=True, type=int)
    p.add_argument("--form", default=None, help="a,b,c")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("dump", help="emit the JSON schema of every command")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_dump)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except TopographError as exc:
        sys.stderr.write(
            json.dumps({"error": exc.code, "message": str(exc)}) + "\n"
        )
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
