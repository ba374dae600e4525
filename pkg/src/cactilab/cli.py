"""Command-line interface: ``cactilab <subcommand> ...``.

Exit codes: 0 success, 1 validation or axiom failure, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import cacti, framed_discs, ribbon_braid, segments
from .freegroup import format_word
from .loop_algebra import GROUPS, LoopError, check_loop, omega
from .operad_core import check_operad_axioms, check_realization_axioms
from .render import render_cactus, render_discs
from .serialize import (ParseError, cactus_from_json, cactus_to_json, discs_from_json, discs_to_json,
                        dumps, loads, loop_from_json, loop_to_json, parse_q, point_to_json,
                        segments_from_json)

OK, FAIL, PARSE = 0, 1, 2


class Failure(Exception):
    """A validation or axiom failure; the message is the report."""


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    return loads(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_element(kind: str, path: str, strict: bool):
    obj = _read(path)
    if kind == "discs":
        return discs_from_json(obj, strict)
    if kind == "cactus":
        return cactus_from_json(obj, strict)
    if kind == "segments":
        return segments_from_json(obj, strict)
    raise ParseError(f"unknown kind {kind!r}")


def _point(text: str, strict: bool) -> tuple[Fraction, ...]:
    return tuple(parse_q(s.strip(), strict) for s in text.split(","))


# -- subcommands ----------------------------------------------------------------

def cmd_validate(args) -> int:
    if args.kind == "loop":
        group = GROUPS[args.group]
        loop = loop_from_json(_read(args.file), group, args.strict)
        try:
            check_loop(group, loop)
        except LoopError as e:
            raise Failure(str(e)) from e
        print("ok")
        return OK
    x = _load_element(args.kind, args.file, args.strict)
    if args.kind == "discs":
        problems = framed_discs.violations(x)
        if problems:
            raise Failure("; ".join(problems))
    elif args.kind == "cactus":
        v = cacti.validate(x, require_cover=args.require_cover)
        if v is not None:
            raise Failure(json.dumps({"kind": v.kind, "message": v.message,
                                      "witness": [str(w) for w in v.witness]}))
    elif not segments.validate_connected(x):
        raise Failure("segments do not form a connected configuration")
    print("ok")
    return OK


def cmd_compose(args) -> int:
    outer = _load_element(args.kind, args.outer, args.strict)
    inners = [_load_element(args.kind, p, args.strict) for p in args.inner]
    mod = framed_discs if args.kind == "discs" else cacti
    check = framed_discs.is_valid if args.kind == "discs" else cacti.is_valid
    for el in [outer] + inners:
        if not check(el):
            raise Failure("input element is not valid")
    if args.index is not None:
        if len(inners) != 1:
            raise ParseError("--index takes exactly one inner element")
        if not 1 <= args.index <= outer.n:
            raise ParseError(f"index {args.index} out of range for arity {outer.n}")
        result = (framed_discs.compose(outer, args.index, inners[0]) if args.kind == "discs"
                  else cacti.compose_cacti(outer, args.index, inners[0]))
    else:
        if len(inners) != outer.n:
            raise ParseError(f"arity {outer.n} needs {outer.n} inner elements, got {len(inners)}")
        result = mod.gamma(outer, inners)
    to_json = discs_to_json if args.kind == "discs" else cactus_to_json
    _emit(dumps(to_json(result)), args.output)
    return OK


def _sampler(operad: str):
    if operad == "discs":
        return framed_discs.random_config
    return cacti.random_cactus


def cmd_axioms(args) -> int:
    if args.operad == "discs":
        op, re = framed_discs.DiscsOperad(), framed_discs.DiscsRealization()
    else:
        op, re = cacti.CactiOperad(), cacti.CactiRealization()
    sampler = _sampler(args.operad)
    reports = {"operad": check_operad_axioms(op, sampler, args.trials, args.max_arity, args.seed)}
    if not args.operad_only:
        reports["realization"] = check_realization_axioms(op, re, sampler, args.trials, args.samples,
                                                          args.max_arity, args.seed)
    payload = {k: {"results": r.to_json(), "input_errors": r.input_errors} for k, r in reports.items()}
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _emit(text, args.output)
    if not all(r.passed for r in reports.values()):
        if args.output:
            sys.stderr.write("axiom failure, see report\n")
        return FAIL
    return OK


def cmd_cells(args) -> int:
    if args.n < 1:
        raise ParseError("--n must be at least 1")
    lines = ["sequence,dimension"]
    for cell in cacti.enumerate_cells(args.n, args.max_length):
        lines.append(f"{' '.join(map(str, cell.labels))},{cell.dimension}")
    _emit("\n".join(lines) + "\n", args.output)
    return OK


def cmd_braid(args) -> int:
    try:
        res = ribbon_braid.parse_braid_word(args.word, args.n)
    except ribbon_braid.NotPure as e:
        raise Failure(str(e)) from e
    except (ValueError, IndexError) as e:
        raise ParseError(str(e)) from e
    lines = []
    if args.show_images:
        for i, img in enumerate(res.braid.forward.images, 1):
            lines.append(f"x{i} -> {format_word(img)}")
    lines.append(f"pure: {'yes' if res.pure else 'no'}")
    if res.pure:
        w = res.w_element()
        lines.append("w: (" + ", ".join(format_word(x) for x in w.words) + ")")
        lines.append("twists: (" + ", ".join(str(m) for m in ribbon_braid.lam(w).twists) + ")")
    print("\n".join(lines))
    return OK


def cmd_omega(args) -> int:
    group = GROUPS[args.group]
    c = cactus_from_json(_read(args.cactus), args.strict)
    v = cacti.validate(c)
    if v is not None:
        raise Failure(f"{v.kind}: {v.message}")
    loops = [loop_from_json(_read(p), group, args.strict) for p in args.loops]
    if len(loops) != c.n:
        raise ParseError(f"cactus of arity {c.n} needs {c.n} loops, got {len(loops)}")
    try:
        result = omega(c, loops, group)
    except LoopError as e:
        raise Failure(str(e)) from e
    _emit(dumps(loop_to_json(result, group)), args.output)
    return OK


def cmd_adapted_path(args) -> int:
    cfg = segments_from_json(_read(args.config), args.strict)
    p, q = _point(args.start, args.strict), _point(args.end, args.strict)
    if len(p) != cfg.n or len(q) != cfg.n:
        raise ParseError(f"points need {cfg.n} coordinates")
    if not segments.validate_connected(cfg):
        raise Failure("segments do not form a connected configuration")
    try:
        path = segments.adapted_path(cfg, p, q)
    except segments.NotOnConfiguration as e:
        raise Failure(str(e)) from e
    payload = {"speed": str(path.speed),
               "pieces": [{"segment": pc.segment, "start": str(pc.start), "end": str(pc.end),
                           "interval": [str(pc.t0), str(pc.t1)],
                           "from": point_to_json(cfg.point(pc.segment, pc.start)),
                           "to": point_to_json(cfg.point(pc.segment, pc.end))}
                          for pc in path.pieces]}
    _emit(dumps(payload), args.output)
    return OK


def cmd_render(args) -> int:
    x = _load_element(args.kind, args.file, args.strict)
    try:
        svg = render_discs(x) if args.kind == "discs" else render_cactus(x)
    except ValueError as e:
        raise Failure(str(e)) from e
    _emit(svg, args.output)
    return OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--samples", type=int, default=64)
    common.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True,
                        help="reject non-canonical rationals (default) or normalize them")
    common.add_argument("-o", "--output")

    p = argparse.ArgumentParser(prog="cactilab", description="Exact cacti and framed discs laboratory")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check an element's invariants")
    s.add_argument("--kind", choices=["discs", "cactus", "segments", "loop"], required=True)
    s.add_argument("--group", choices=sorted(GROUPS), default="s1")
    s.add_argument("--require-cover", action="store_true")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("compose", parents=[common], help="compose elements (gamma or o_i)")
    s.add_argument("--kind", choices=["discs", "cactus"], required=True)
    s.add_argument("--index", type=int)
    s.add_argument("outer")
    s.add_argument("inner", nargs="*")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("axioms", parents=[common], help="run the operad and realization axiom suites")
    s.add_argument("--operad", choices=["discs", "cacti"], required=True)
    s.add_argument("--max-arity", type=int, default=3)
    s.add_argument("--operad-only", action="store_true")
    s.set_defaults(func=cmd_axioms)

    s = sub.add_parser("cells", parents=[common], help="enumerate cell sequences as CSV")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--max-length", type=int)
    s.set_defaults(func=cmd_cells)

    s = sub.add_parser("braid", parents=[common], help="evaluate a braid word")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--show-images", action="store_true")
    s.set_defaults(func=cmd_braid)

    s = sub.add_parser("omega", parents=[common], help="act on loops by a cactus")
    s.add_argument("--group", choices=sorted(GROUPS), required=True)
    s.add_argument("cactus")
    s.add_argument("loops", nargs="*")
    s.set_defaults(func=cmd_omega)

    s = sub.add_parser("adapted-path", parents=[common], help="adapted path between two points")
    s.add_argument("config")
    s.add_argument("--from", dest="start", required=True, help="comma-separated rationals")
    s.add_argument("--to", dest="end", required=True)
    s.set_defaults(func=cmd_adapted_path)

    s = sub.add_parser("render", parents=[common], help="draw an element as SVG")
    s.add_argument("--kind", choices=["discs", "cactus"], required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return PARSE
    except Failure as e:
        sys.stdout.write(f"{e}\n")
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
