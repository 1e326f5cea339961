"""Command-line interface.

Subcommands: validate, eval, subfixed, transform {zp|t1|t2|pipeline},
synthesize, member, lift, verify, section. Inputs and outputs are JSON
(CSV for section). Exit codes: 0 success, 1 domain error, 2 malformed
input or arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import MalformedInput, TropconeError
from .graph import GameGraph, eval_operator, subfixed, validate_graph
from .pencil import MetzlerPencil, pencil_member, synthesize_cone
from .scalars import Trop, rational_to_str
from .transforms import first_transformation, pipeline, second_transformation, zwick_paterson
from .verify import verify_graph


def _load_json(path: str) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> GameGraph:
    try:
        return GameGraph.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad graph JSON in {path}: {exc}") from exc


def _load_pencil(path: str) -> MetzlerPencil:
    try:
        return MetzlerPencil.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad pencil JSON in {path}: {exc}") from exc


def _parse_rationals(text: str):
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational vector {text!r}") from exc


def _parse_trops(text: str):
    try:
        return tuple(Trop.from_str(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad tropical vector {text!r}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


def cmd_validate(args) -> int:
    report = validate_graph(_load_graph(args.graph))
    _emit_json(report.to_json(), args.out)
    return 0 if report.ok else 1


def cmd_eval(args) -> int:
    g = _load_graph(args.graph)
    value = eval_operator(g, _parse_rationals(args.point))
    _emit_json([rational_to_str(v) for v in value], args.out)
    return 0


def cmd_subfixed(args) -> int:
    g = _load_graph(args.graph)
    _emit_json({"subfixed": subfixed(g, _parse_rationals(args.point))}, args.out)
    return 0


def cmd_transform(args) -> int:
    g = _load_graph(args.graph)
    if args.which == "zp":
        out, witness = zwick_paterson(g), None
    elif args.which == "t1":
        out, witness = first_transformation(g)
    elif args.which == "t2":
        if args.edge is None:
            raise MalformedInput("transform t2 requires --edge")
        out, witness = second_transformation(g, args.edge)
    else:
        out, witness = pipeline(g)
    _emit_json(
        {
            "graph": out.to_json(),
            "witness": None if witness is None else witness.descriptor(),
        },
        args.out,
    )
    return 0


def cmd_synthesize(args) -> int:
    g = _load_graph(args.graph)
    target, _ = pipeline(g)
    pencil = synthesize_cone(target)
    obj = pencil.to_json()
    obj["visible"] = g.n
    obj["witness"] = {"kind": "pipeline"}
    _emit_json(obj, args.out)
    return 0


def cmd_member(args) -> int:
    pencil = _load_pencil(args.pencil)
    _emit_json({"member": pencil_member(pencil, _parse_trops(args.point))}, args.out)
    return 0


def cmd_lift(args) -> int:
    g = _load_graph(args.graph)
    _, witness = pipeline(g)
    lifted = witness.lift(_parse_rationals(args.point))
    _emit_json([rational_to_str(v) for v in lifted], args.out)
    return 0


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    report = verify_graph(
        g,
        samples=args.samples,
        seed=args.seed,
        box=args.box,
        denom=args.denom,
        instance=args.graph,
    )
    _emit_json(report.to_json(), args.out)
    return 0


def cmd_section(args) -> int:
    g = _load_graph(args.graph)
    n = g.n
    fixed = {}
    for item in args.fix or []:
        try:
            coord, value = item.split("=", 1)
            fixed[int(coord) - 1] = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad --fix value {item!r}") from exc
    free = [k for k in range(n) if k not in fixed]
    if len(free) > 2:
        raise MalformedInput("section needs all but at most two coordinates fixed")
    try:
        lo, hi, step = Fraction(args.lo), Fraction(args.hi), Fraction(args.step)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput("bad --lo/--hi/--step") from exc
    if step <= 0 or hi < lo:
        raise MalformedInput("need --step > 0 and --hi >= --lo")

    ticks = []
    v = lo
    while v <= hi:
        ticks.append(v)
        v += step

    col_axis = free[0] if free else None
    row_axis = free[1] if len(free) > 1 else None
    rows = []
    for y in reversed(ticks) if row_axis is not None else [None]:
        cells = []
        for x in ticks if col_axis is not None else [None]:
            point = [Fraction(0)] * n
            for k, val in fixed.items():
                point[k] = val
            if col_axis is not None:
                point[col_axis] = x
            if row_axis is not None:
                point[row_axis] = y
            cells.append("1" if subfixed(g, point) else "0")
        rows.append(",".join(cells))
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropcone")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output to this path instead of stdout")

    p = sub.add_parser("validate", help="validate a game graph")
    p.add_argument("graph")
    common(p)
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("eval", help="evaluate the encoded operator")
    p.add_argument("graph")
    p.add_argument("--point", required=True, help="comma-separated rationals")
    common(p)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("subfixed", help="test x <= F(x)")
    p.add_argument("graph")
    p.add_argument("--point", required=True)
    common(p)
    p.set_defaults(run=cmd_subfixed)

    p = sub.add_parser("transform", help="apply a graph transformation")
    p.add_argument("which", choices=["zp", "t1", "t2", "pipeline"])
    p.add_argument("graph")
    p.add_argument("--edge", type=int, help="edge id for t2")
    common(p)
    p.set_defaults(run=cmd_transform)

    p = sub.add_parser("synthesize", help="pipeline + cone pencil synthesis")
    p.add_argument("graph")
    common(p)
    p.set_defaults(run=cmd_synthesize)

    p = sub.add_parser("member", help="pencil membership of a tropical point")
    p.add_argument("pencil")
    p.add_argument("--point", required=True, help="comma-separated rationals or -inf")
    common(p)
    p.set_defaults(run=cmd_member)

    p = sub.add_parser("lift", help="lift a point through the pipeline witness")
    p.add_argument("graph")
    p.add_argument("--point", required=True)
    common(p)
    p.set_defaults(run=cmd_lift)

    p = sub.add_parser("verify", help="sampled subfixed/pencil equivalence")
    p.add_argument("graph")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=int, default=10)
    p.add_argument("--denom", type=int, default=64)
    common(p)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("section", help="CSV membership grid over a 2d slice")
    p.add_argument("graph")
    p.add_argument("--fix", action="append", help="coordinate=value, 1-based, repeatable")
    p.add_argument("--lo", required=True)
    p.add_argument("--hi", required=True)
    p.add_argument("--step", required=True)
    common(p)
    p.set_defaults(run=cmd_section)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TropconeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
