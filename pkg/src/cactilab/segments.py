"""Configurations of orthogonal line segments and adapted paths through them.

Segment i is ``psi^i(t)``: the anchor point ``x^i`` with slot i replaced by
``t in [0, 1]``.  Anchors are stored without slot i, so each has n - 1 entries.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

Point = tuple[Fraction, ...]


class NotOnConfiguration(ValueError):
    pass


@dataclass(frozen=True)
class SegmentConfig:
    anchors: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        anchors = tuple(tuple(Fraction(v) for v in a) for a in self.anchors)
        n = len(anchors)
        for i, a in enumerate(anchors, 1):
            if len(a) != n - 1:
                raise ValueError(f"anchor {i} has {len(a)} entries, expected {n - 1}")
        object.__setattr__(self, "anchors", anchors)

    @property
    def n(self) -> int:
        return len(self.anchors)

    def x(self, i: int, k: int) -> Fraction:
        """Entry k of anchor i (k != i), 1-based."""
        if k == i:
            raise ValueError("slot i of anchor i is the free parameter")
        a = self.anchors[i - 1]
        return a[k - 1] if k < i else a[k - 2]

    def point(self, i: int, t: Fraction) -> Point:
        a = self.anchors[i - 1]
        return a[:i - 1] + (Fraction(t),) + a[i - 1:]

    def locate(self, p: Sequence[Fraction]) -> dict[int, Fraction]:
        """Segments through p, with the parameter of p on each."""
        out = {}
        for i in range(1, self.n + 1):
            t = p[i - 1]
            if 0 <= t <= 1 and all(p[k - 1] == self.x(i, k) for k in range(1, self.n + 1) if k != i):
                out[i] = t
        return out

    def contains(self, p: Sequence[Fraction]) -> bool:
        return len(p) == self.n and bool(self.locate(p))


def meets(cfg: SegmentConfig, i: int, j: int) -> bool:
    if i == j:
        return False
    if any(cfg.x(i, k) != cfg.x(j, k) for k in range(1, cfg.n + 1) if k not in (i, j)):
        return False
    return 0 <= cfg.x(j, i) <= 1 and 0 <= cfg.x(i, j) <= 1


def meeting_parameter(cfg: SegmentConfig, i: int, j: int) -> Fraction:
    """Parameter on segment i of its meeting point with segment j."""
    return cfg.x(j, i)


def intersection_graph(cfg: SegmentConfig, alive: Sequence[int] | None = None) -> dict[int, list[int]]:
    nodes = list(alive) if alive is not None else list(range(1, cfg.n + 1))
    return {i: [j for j in nodes if meets(cfg, i, j)] for i in nodes}


def _connected(graph: dict[int, list[int]]) -> bool:
    if not graph:
        return True
    start = next(iter(graph))
    seen = {start}
    queue = deque([start])
    while queue:
        for j in graph[queue.popleft()]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == len(graph)


def validate_connected(cfg: SegmentConfig) -> bool:
    return _connected(intersection_graph(cfg))


def attachment_points(cfg: SegmentConfig, i: int, alive: Sequence[int]) -> set[Fraction]:
    """Distinct parameters on segment i where it meets the other live segments."""
    return {meeting_parameter(cfg, i, j) for j in alive if j != i and meets(cfg, i, j)}


def leaves(cfg: SegmentConfig, alive: Sequence[int] | None = None) -> list[int]:
    """Segments meeting the union of the other live segments in exactly one point."""
    alive = list(alive) if alive is not None else list(range(1, cfg.n + 1))
    return [i for i in alive if len(attachment_points(cfg, i, alive)) == 1]


def find_leaf(cfg: SegmentConfig, alive: Sequence[int] | None = None) -> int:
    found = leaves(cfg, alive)
    if not found:
        raise AssertionError("connected configuration without a leaf")
    return min(found)


# -- adapted paths -------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    segment: int
    start: Fraction
    end: Fraction
    t0: Fraction
    t1: Fraction

    @property
    def direction(self) -> int:
        return (self.end > self.start) - (self.end < self.start)


@dataclass(frozen=True)
class AdaptedPath:
    pieces: tuple[Piece, ...]
    speed: Fraction

    def at(self, cfg: SegmentConfig, s: Fraction) -> Point:
        s = Fraction(s)
        for pc in self.pieces:
            if pc.t0 <= s <= pc.t1:
                u = (s - pc.t0) / (pc.t1 - pc.t0)
                return cfg.point(pc.segment, pc.start + u * (pc.end - pc.start))
        raise ValueError(f"time {s} outside [0, 1]")

    def route(self) -> tuple[tuple[int, Fraction, Fraction], ...]:
        """The moves made; the constant path makes none."""
        return tuple((pc.segment, pc.start, pc.end) for pc in self.pieces if pc.start != pc.end)


Move = tuple[int, Fraction, Fraction]


def _reduce_moves(moves: Sequence[Move]) -> list[Move]:
    """Drop zero-length moves and merge consecutive moves along one segment."""
    out: list[Move] = []
    for seg, a, b in moves:
        if a == b:
            continue
        if out and out[-1][0] == seg:
            out[-1] = (seg, out[-1][1], b)
            if out[-1][1] == out[-1][2]:
                out.pop()
        else:
            out.append((seg, a, b))
    return out


def _moves(cfg: SegmentConfig, alive: list[int], p: Point, q: Point) -> list[Move]:
    on_p = {i: t for i, t in cfg.locate(p).items() if i in alive}
    on_q = {i: t for i, t in cfg.locate(q).items() if i in alive}
    common = sorted(set(on_p) & set(on_q))
    if common:
        i = common[0]
        return [(i, on_p[i], on_q[i])]
    # peel the lowest leaf; if an endpoint lies on it alone, walk to its attachment point
    leaf = find_leaf(cfg, alive)
    rest = [i for i in alive if i != leaf]
    (a,) = attachment_points(cfg, leaf, alive)
    attach = cfg.point(leaf, a)
    if set(on_p) == {leaf}:
        return [(leaf, on_p[leaf], a)] + _moves(cfg, rest, attach, q)
    if set(on_q) == {leaf}:
        return _moves(cfg, rest, p, attach) + [(leaf, a, on_q[leaf])]
    return _moves(cfg, rest, p, q)


def timed(moves: Sequence[Move], p_segment: int, p_param: Fraction) -> AdaptedPath:
    """Give reduced moves a common speed; an empty route is the constant path."""
    moves = _reduce_moves(moves)
    if not moves:
        return AdaptedPath((Piece(p_segment, p_param, p_param, Fraction(0), Fraction(1)),),
                           Fraction(0))
    total = sum(abs(b - a) for _, a, b in moves)
    pieces, clock = [], Fraction(0)
    for seg, a, b in moves:
        nxt = clock + abs(b - a) / total
        pieces.append(Piece(seg, a, b, clock, nxt))
        clock = nxt
    return AdaptedPath(tuple(pieces), total)


def adapted_path(cfg: SegmentConfig, p: Sequence[Fraction], q: Sequence[Fraction]) -> AdaptedPath:
    p, q = tuple(Fraction(v) for v in p), tuple(Fraction(v) for v in q)
    if not cfg.contains(p):
        raise NotOnConfiguration(f"{p} is not on the configuration")
    if not cfg.contains(q):
        raise NotOnConfiguration(f"{q} is not on the configuration")
    if not validate_connected(cfg):
        raise ValueError("configuration is not connected")
    moves = _moves(cfg, list(range(1, cfg.n + 1)), p, q)
    i0, t0 = min(cfg.locate(p).items())
    path = timed(moves, i0, t0)
    if not is_adapted(cfg, path):
        raise AssertionError("constructed path is not adapted")
    return path


def is_adapted(cfg: SegmentConfig, path: AdaptedPath) -> bool:
    pcs = path.pieces
    if not pcs or pcs[0].t0 != 0 or pcs[-1].t1 != 1 or path.speed < 0:
        return False
    signs: dict[int, int] = {}
    for k, pc in enumerate(pcs):
        if not 1 <= pc.segment <= cfg.n or pc.t1 <= pc.t0:
            return False
        if not (0 <= pc.start <= 1 and 0 <= pc.end <= 1):
            return False
        if abs(pc.end - pc.start) != path.speed * (pc.t1 - pc.t0):
            return False
        if pc.direction:
            if signs.setdefault(pc.segment, pc.direction) != pc.direction:
                return False
        if k + 1 < len(pcs):
            nxt = pcs[k + 1]
            if nxt.t0 != pc.t1:
                return False
            if cfg.point(pc.segment, pc.end) != cfg.point(nxt.segment, nxt.start):
                return False
    return True


def enumerate_adapted_routes(cfg: SegmentConfig, p: Sequence[Fraction], q: Sequence[Fraction],
                             max_segments: int | None = None) -> set[tuple[Move, ...]]:
    """Brute force: every segment sequence and direction choice, kept if adapted.

    Routes are reduced (zero moves dropped, repeats merged) and collected as a set.
    """
    p, q = tuple(p), tuple(q)
    n = cfg.n
    limit = max_segments if max_segments is not None else n + 1
    on_p, on_q = cfg.locate(p), cfg.locate(q)
    found: set[tuple[Move, ...]] = set()
    for length in range(1, limit + 1):
        for seq in itertools.product(range(1, n + 1), repeat=length):
            if any(a == b for a, b in zip(seq, seq[1:])):
                continue
            if seq[0] not in on_p or seq[-1] not in on_q:
                continue
            if not all(meets(cfg, a, b) for a, b in zip(seq, seq[1:])):
                continue
            moves = []
            pos = on_p[seq[0]]
            for k, seg in enumerate(seq):
                end = on_q[seg] if k == len(seq) - 1 else meeting_parameter(cfg, seg, seq[k + 1])
                moves.append((seg, pos, end))
                if k + 1 < len(seq):
                    pos = meeting_parameter(cfg, seq[k + 1], seg)
            segs = sorted(set(seq))
            for eps in itertools.product((1, -1), repeat=len(segs)):
                sign = dict(zip(segs, eps))
                if all(b == a or (b > a) == (sign[s] > 0) for s, a, b in moves):
                    found.add(tuple(_reduce_moves(moves)))
    return found


# -- random configurations -----------------------------------------------------------

def random_connected_config(rng: random.Random, n: int, denom: int = 4) -> SegmentConfig:
    """Attach segments one at a time to a random earlier one; values in {0, 1/denom, ..., 1}."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    full: dict[int, list[Fraction]] = {}

    def val():
        return Fraction(rng.randint(0, denom), denom)

    for idx, i in enumerate(order):
        if idx == 0:
            full[i] = [val() for _ in range(n)]
        else:
            j = rng.choice(order[:idx])
            vec = list(full[j])
            vec[j - 1] = val()
            full[i] = vec
        full[i][i - 1] = Fraction(0)
    anchors = tuple(tuple(v for k, v in enumerate(full[i]) if k != i - 1) for i in range(1, n + 1))
    return SegmentConfig(anchors)


def random_point(rng: random.Random, cfg: SegmentConfig, denom: int = 8) -> Point:
    i = rng.randint(1, cfg.n)
    return cfg.point(i, Fraction(rng.randint(0, denom), denom))


def iter_points(cfg: SegmentConfig, denom: int) -> Iterator[Point]:
    seen = set()
    for i in range(1, cfg.n + 1):
        for k in range(denom + 1):
            p = cfg.point(i, Fraction(k, denom))
            if p not in seen:
                seen.add(p)
                yield p
