"""JSON forms of every element kind.  Rationals are canonical ``p/q`` strings.

Strict parsing (the default) rejects anything that is not already canonical;
lenient parsing normalizes integers, decimals and unreduced fractions.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .cacti import Cactus
from .framed_discs import FramedDiscConfig, LittleDisc, RationalComplex, UnitCirclePoint
from .loop_algebra import GroupModel, Loop
from .pl import PLCircleMap
from .segments import SegmentConfig


class ParseError(ValueError):
    pass


_CANON = re.compile(r"^-?(0|[1-9]\d*)(/[1-9]\d*)?$")


def fmt_q(x: Fraction) -> str:
    return str(Fraction(x))


def parse_q(s: Any, strict: bool = True) -> Fraction:
    if strict:
        if not isinstance(s, str) or not _CANON.match(s):
            raise ParseError(f"not a canonical rational string: {s!r}")
        q = Fraction(s)
        if str(q) != s:
            raise ParseError(f"rational {s!r} is not in lowest terms (expected {q})")
        return q
    if isinstance(s, bool):
        raise ParseError(f"not a rational: {s!r}")
    try:
        return Fraction(s) if isinstance(s, (int, str)) else Fraction(str(s))
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise ParseError(f"not a rational: {s!r}") from e


def _field(obj: Any, key: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r}")
    return obj[key]


def _qlist(xs: Any, strict: bool) -> list[Fraction]:
    if not isinstance(xs, list):
        raise ParseError(f"expected a list of rationals, got {xs!r}")
    return [parse_q(x, strict) for x in xs]


def _int(x: Any, key: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise ParseError(f"{key!r} must be a non-negative integer")
    return x


def dumps(obj: Any) -> str:
    """Byte-stable JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e


# -- discs ---------------------------------------------------------------------

def _pair(z: RationalComplex) -> list[str]:
    return [fmt_q(z.re), fmt_q(z.im)]


def discs_to_json(a: FramedDiscConfig) -> dict:
    return {"n": a.n, "open": a.open,
            "discs": [{"center": _pair(d.center), "radius": fmt_q(d.radius), "frame": _pair(d.frame)}
                      for d in a.discs]}


def discs_from_json(obj: Any, strict: bool = True) -> FramedDiscConfig:
    n = _int(_field(obj, "n"), "n")
    raw = _field(obj, "discs")
    if not isinstance(raw, list) or len(raw) != n:
        raise ParseError(f"expected {n} discs")
    discs = []
    for d in raw:
        c = _qlist(_field(d, "center"), strict)
        u = _qlist(_field(d, "frame"), strict)
        if len(c) != 2 or len(u) != 2:
            raise ParseError("center and frame need two coordinates")
        try:
            discs.append(LittleDisc(RationalComplex(*c), parse_q(_field(d, "radius"), strict),
                                    UnitCirclePoint(*u)))
        except ValueError as e:
            raise ParseError(str(e)) from e
    is_open = obj.get("open", False)
    if not isinstance(is_open, bool):
        raise ParseError("'open' must be a boolean")
    return FramedDiscConfig(tuple(discs), is_open)


# -- cacti ---------------------------------------------------------------------

def pl_to_json(f: PLCircleMap) -> dict:
    return {"t": [fmt_q(x) for x in f.t], "v": [fmt_q(x) for x in f.v]}


def pl_from_json(obj: Any, strict: bool = True) -> PLCircleMap:
    try:
        return PLCircleMap(tuple(_qlist(_field(obj, "t"), strict)),
                           tuple(_qlist(_field(obj, "v"), strict)))
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from e


def cactus_to_json(c: Cactus) -> dict:
    return {"n": c.n, "coords": [pl_to_json(f) for f in c.coords]}


def cactus_from_json(obj: Any, strict: bool = True) -> Cactus:
    n = _int(_field(obj, "n"), "n")
    coords = _field(obj, "coords")
    if not isinstance(coords, list) or len(coords) != n:
        raise ParseError(f"expected {n} coordinates")
    return Cactus(tuple(pl_from_json(f, strict) for f in coords))


# -- segments ------------------------------------------------------------------

def segments_to_json(cfg: SegmentConfig) -> dict:
    return {"n": cfg.n, "anchors": [[fmt_q(x) for x in a] for a in cfg.anchors]}


def segments_from_json(obj: Any, strict: bool = True) -> SegmentConfig:
    n = _int(_field(obj, "n"), "n")
    anchors = _field(obj, "anchors")
    if not isinstance(anchors, list) or len(anchors) != n:
        raise ParseError(f"expected {n} anchors")
    try:
        return SegmentConfig(tuple(tuple(_qlist(a, strict)) for a in anchors))
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from e


def point_to_json(p) -> list[str]:
    return [fmt_q(x) for x in p]


def point_from_json(obj: Any, strict: bool = True) -> tuple[Fraction, ...]:
    return tuple(_qlist(obj, strict))


# -- loops ---------------------------------------------------------------------

def loop_to_json(loop: Loop, group: GroupModel) -> dict:
    ts = [fmt_q(x) for x in loop.t]
    if group.dim == 1:
        return {"t": ts, "v": [fmt_q(v[0]) for v in loop.values]}
    return {"t": ts, "entries": [[fmt_q(v[k]) for v in loop.values] for k in range(group.dim)]}


def loop_from_json(obj: Any, group: GroupModel, strict: bool = True) -> Loop:
    ts = _qlist(_field(obj, "t"), strict)
    if group.dim == 1:
        vals = [(v,) for v in _qlist(_field(obj, "v"), strict)]
    else:
        entries = _field(obj, "entries")
        if not isinstance(entries, list) or len(entries) != group.dim:
            raise ParseError(f"expected {group.dim} entry rows")
        rows = [_qlist(r, strict) for r in entries]
        if any(len(r) != len(ts) for r in rows):
            raise ParseError("entry rows must match the breakpoints")
        vals = list(zip(*rows))
    if len(vals) != len(ts):
        raise ParseError("values must match the breakpoints")
    try:
        return Loop(tuple(ts), tuple(vals))
    except ValueError as e:
        raise ParseError(str(e)) from e
