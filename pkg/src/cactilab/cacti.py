"""Cacti as exact PL points of CoEnd(S^1): an element of arity n is a map
``S^1 -> (S^1)^n`` given by n monotone PL coordinates of degree one.

Points of ``(S^1)^n`` are tuples of Fractions in [0, 1).  Coordinates may have
common plateaus (the reparametrization factor), so the supports need not cover
the circle.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .operad_core import OperadInstance, RealizationInstance
from .pl import PLCircleMap, frac, pl_compose, pl_equal

Point = tuple[Fraction, ...]


class InvalidCactus(ValueError):
    pass


@dataclass(frozen=True)
class Cactus:
    coords: tuple[PLCircleMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def __call__(self, t: Fraction) -> Point:
        return tuple(f.at(t) for f in self.coords)

    @cached_property
    def breakpoints(self) -> tuple[Fraction, ...]:
        pts = {Fraction(0), Fraction(1)}
        for f in self.coords:
            pts.update(f.t)
        return tuple(sorted(pts))

    @cached_property
    def pieces(self) -> tuple[tuple[Fraction, Fraction, tuple, tuple], ...]:
        """Elementary pieces (ta, tb, lift at ta, lift at tb) of the union refinement."""
        ts = self.breakpoints
        vals = [tuple(f(t) for f in self.coords) for t in ts]
        return tuple((ts[k], ts[k + 1], vals[k], vals[k + 1]) for k in range(len(ts) - 1))

    @cached_property
    def label_runs(self) -> tuple[tuple[int, Fraction, Fraction], ...]:
        """Maximal support intervals in traversal order as (label, start, end), 1-based."""
        runs: list[list] = []
        for ta, tb, a, b in self.pieces:
            moving = [j for j in range(self.n) if b[j] > a[j]]
            if not moving:
                continue
            label = moving[0] + 1
            if runs and runs[-1][0] == label and runs[-1][2] == ta:
                runs[-1][2] = tb
            else:
                runs.append([label, ta, tb])
        return tuple(tuple(r) for r in runs)

    @cached_property
    def lobe_coordinates(self) -> tuple[Point, ...]:
        """Entry i is the full point of lobe i with slot i set to 0."""
        out = []
        for i in range(1, self.n + 1):
            t = _first_support_point(self, i)
            p = list(self(t))
            p[i - 1] = Fraction(0)
            out.append(tuple(p))
        return tuple(out)


def _first_support_point(c: Cactus, i: int) -> Fraction:
    for label, a, b in c.label_runs:
        if label == i:
            return (a + b) / 2
    raise InvalidCactus(f"coordinate {i} is constant")


def unit() -> Cactus:
    return Cactus((PLCircleMap.identity(),))


def cactus_equal(c: Cactus, d: Cactus) -> bool:
    return c.n == d.n and all(pl_equal(f, g) for f, g in zip(c.coords, d.coords))


# -- validation ----------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: tuple = ()


def has_pattern(seq: Sequence[int], j: int, k: int) -> bool:
    """Does ``seq`` contain j, k, j, k as a (not necessarily contiguous) subsequence?"""
    want = (j, k, j, k)
    pos = 0
    for x in seq:
        if x == want[pos]:
            pos += 1
            if pos == 4:
                return True
    return False


def crossing_pair(seq: Sequence[int]) -> tuple[int, int] | None:
    labels = sorted(set(seq))
    for j in labels:
        for k in labels:
            if j != k and has_pattern(seq, j, k):
                return (j, k)
    return None


def validate(c: Cactus, require_cover: bool = False) -> Violation | None:
    """First violated condition, or None.

    Checks degree one, disjoint support interiors and the non-crossing
    condition on the cyclic label sequence.  ``require_cover`` additionally
    rejects common plateaus.
    """
    for j, f in enumerate(c.coords, 1):
        if f.degree != 1:
            return Violation("degree", f"coordinate {j} has degree {f.degree}", (j,))
    for ta, tb, a, b in c.pieces:
        moving = [j + 1 for j in range(c.n) if b[j] > a[j]]
        if len(moving) > 1:
            return Violation("overlap",
                             f"coordinates {moving[0]} and {moving[1]} both move on [{ta}, {tb}]",
                             (moving[0], moving[1], ta, tb))
        if not moving and require_cover:
            return Violation("cover", f"no coordinate moves on [{ta}, {tb}]", (ta, tb))
    labels = [r[0] for r in c.label_runs]
    pair = crossing_pair(labels)
    if pair is not None:
        return Violation("treelike", f"labels {pair[0]},{pair[1]},{pair[0]},{pair[1]} cross",
                         pair + (tuple(labels),))
    return None


def is_valid(c: Cactus) -> bool:
    return validate(c) is None


def require_valid(c: Cactus) -> Cactus:
    v = validate(c)
    if v is not None:
        raise InvalidCactus(f"{v.kind}: {v.message}")
    return c


# -- operad structure ----------------------------------------------------------

def compose_cacti(c: Cactus, i: int, d: Cactus) -> Cactus:
    if not 1 <= i <= c.n:
        raise IndexError(f"lobe index {i} out of range for arity {c.n}")
    ci = c.coords[i - 1]
    block = tuple(pl_compose(f, ci) for f in d.coords)
    return Cactus(c.coords[:i - 1] + block + c.coords[i:])


def gamma(c: Cactus, ds: Sequence[Cactus]) -> Cactus:
    if len(ds) != c.n:
        raise ValueError(f"gamma needs {c.n} inputs, got {len(ds)}")
    coords: list[PLCircleMap] = []
    for ci, d in zip(c.coords, ds):
        coords.extend(pl_compose(f, ci) for f in d.coords)
    return Cactus(tuple(coords))


def sigma_act(c: Cactus, perm: Sequence[int]) -> Cactus:
    """Right action: coordinate i of the result is coordinate perm[i] of c (0-based)."""
    if sorted(perm) != list(range(c.n)):
        raise ValueError(f"{tuple(perm)} is not a permutation of {c.n} letters")
    return Cactus(tuple(c.coords[p] for p in perm))


# -- realization ---------------------------------------------------------------

def lobe_coordinate(c: Cactus, i: int) -> Point:
    """Values of the other n-1 coordinates while lobe i is traversed."""
    p = c.lobe_coordinates[i - 1]
    return p[:i - 1] + p[i:]


def boundary_in(c: Cactus, i: int, y: Fraction) -> Point:
    p = c.lobe_coordinates[i - 1]
    return p[:i - 1] + (frac(Fraction(y)),) + p[i:]


def boundary_out(c: Cactus, t: Fraction) -> Point:
    return c(Fraction(t))


def parameter_preimage(c: Cactus, p: Point) -> list[tuple[Fraction, Fraction]]:
    """All t in [0, 1] with c(t) = p, as closed intervals (points have a == b)."""
    if c.n == 0:
        return [(Fraction(0), Fraction(1))]
    out = []
    for ta, tb, a, b in c.pieces:
        moving = [j for j in range(c.n) if b[j] > a[j]]
        rest = [j for j in range(c.n) if j not in moving]
        if any(frac(a[j]) != p[j] for j in rest):
            continue
        if not moving:
            out.append((ta, tb))
            continue
        # a valid cactus has one moving coordinate; any others are checked below
        j = moving[0]
        sols = set()
        for m in range(math.ceil(a[j] - p[j]), math.floor(b[j] - p[j]) + 1):
            sols.add(ta + (p[j] + m - a[j]) * (tb - ta) / (b[j] - a[j]))
        for t in sorted(sols):
            if all(frac(c.coords[k](t)) == p[k] for k in moving):
                out.append((t, t))
    return out


def realization_contains(c: Cactus, p: Point) -> bool:
    if len(p) != c.n:
        return False
    if any(not 0 <= x < 1 for x in p):
        return False
    return bool(parameter_preimage(c, p))


def in_intervals(x: Fraction, intervals: Sequence[tuple[Fraction, Fraction]]) -> bool:
    """Circle membership: the parameter 0 and 1 are the same point."""
    for a, b in intervals:
        if a <= x <= b or (x == 0 and b == 1):
            return True
    return False


def on_lobe(c: Cactus, i: int, p: Point) -> bool:
    """Is p on the image of the incoming boundary of lobe i?"""
    q = c.lobe_coordinates[i - 1]
    return all(p[k] == q[k] for k in range(c.n) if k != i - 1)


# -- named elements ------------------------------------------------------------

def base_cactus(n: int) -> Cactus:
    """Lobes n, n-1, ..., 1 traversed in turn at constant speed."""
    if n < 1:
        raise ValueError("base cactus needs n >= 1")
    coords = tuple(PLCircleMap.wrap_on(Fraction(n - j, n), Fraction(n - j + 1, n))
                   for j in range(1, n + 1))
    return Cactus(coords)


def pontrjagin_cactus() -> Cactus:
    return Cactus((PLCircleMap.wrap_on(Fraction(0), Fraction(1, 2)),
                   PLCircleMap.wrap_on(Fraction(1, 2), Fraction(1))))


def rotation_cactus(s: Fraction) -> Cactus:
    s = Fraction(s)
    return Cactus((PLCircleMap((Fraction(0), Fraction(1)), (s, s + 1)),))


def from_cell(seq: Sequence[int], n: int, lengths: Sequence[Fraction],
              starts: Sequence[Fraction] | None = None,
              turns: Sequence[Sequence[Fraction]] | None = None,
              gaps: Sequence[Fraction] | None = None) -> Cactus:
    """Build a cactus traversing the intervals of ``seq`` in order.

    ``lengths[k]`` is the duration of the k-th interval, ``gaps[k]`` an optional
    plateau before it (the total must be 1).  ``turns[j-1]`` splits the single
    turn of coordinate j over its occurrences and ``starts[j-1]`` is its value
    at time 0.
    """
    seq = list(seq)
    gaps = list(gaps) if gaps is not None else [Fraction(0)] * len(seq)
    starts = list(starts) if starts is not None else [Fraction(0)] * n
    if turns is None:
        turns = []
        for j in range(1, n + 1):
            k = seq.count(j)
            turns.append([Fraction(1, k)] * k)
    total = sum(lengths) + sum(gaps)
    if total != 1:
        raise ValueError(f"interval lengths sum to {total}, not 1")
    used = [0] * n
    knots: list[list[tuple[Fraction, Fraction]]] = [[(Fraction(0), Fraction(s))] for s in starts]
    t = Fraction(0)
    for label, length, gap in zip(seq, lengths, gaps):
        t += gap
        j = label - 1
        last = knots[j][-1][1]
        if knots[j][-1][0] != t:
            knots[j].append((t, last))
        t += length
        knots[j].append((t, last + turns[j][used[j]]))
        used[j] += 1
    coords = []
    for j in range(n):
        if knots[j][-1][0] != 1:
            knots[j].append((Fraction(1), knots[j][-1][1]))
        ts, vs = zip(*knots[j])
        coords.append(PLCircleMap(ts, vs))
    return Cactus(tuple(coords))


# -- cells ---------------------------------------------------------------------

@dataclass(frozen=True)
class CellSequence:
    labels: tuple[int, ...]
    n: int

    @property
    def dimension(self) -> int:
        return len(self.labels) - self.n

    def degrees(self) -> tuple[int, ...]:
        """d(j) = (number of occurrences of j) - 1."""
        return tuple(self.labels.count(j) - 1 for j in range(1, self.n + 1))


def is_cell_sequence(seq: Sequence[int], n: int) -> bool:
    if set(seq) != set(range(1, n + 1)):
        return False
    if any(a == b for a, b in zip(seq, seq[1:])):
        return False
    return crossing_pair(seq) is None


def _extend(prefix: list[int], n: int, max_length: int) -> Iterator[tuple[int, ...]]:
    if len(set(prefix)) == n:
        yield tuple(prefix)
    if len(prefix) == max_length:
        return
    for x in range(1, n + 1):
        if prefix and prefix[-1] == x:
            continue
        prefix.append(x)
        # a pattern j,k,j,k can only newly appear ending at the last letter
        if not any(has_pattern(prefix, j, x) for j in set(prefix[:-1]) if j != x):
            yield from _extend(prefix, n, max_length)
        prefix.pop()


def enumerate_cells(n: int, max_length: int | None = None) -> list[CellSequence]:
    """All label sequences of length <= max_length with every label present,
    no equal neighbours and no subsequence i,j,i,j.  Sorted by (length, labels)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if max_length is None:
        max_length = 2 * n - 1
    seqs = sorted(set(_extend([], n, max_length)), key=lambda s: (len(s), s))
    return [CellSequence(s, n) for s in seqs]


def enumerate_cells_naive(n: int, max_length: int) -> list[CellSequence]:
    seqs = []
    for length in range(1, max_length + 1):
        for s in itertools.product(range(1, n + 1), repeat=length):
            if is_cell_sequence(s, n):
                seqs.append(s)
    return [CellSequence(s, n) for s in sorted(seqs, key=lambda s: (len(s), s))]


def cell_of(c: Cactus) -> CellSequence:
    return CellSequence(tuple(r[0] for r in c.label_runs), c.n)


# -- random elements -----------------------------------------------------------

def _random_parts(rng: random.Random, k: int, denom: int = 12) -> list[Fraction]:
    weights = [rng.randint(1, denom) for _ in range(k)]
    s = sum(weights)
    return [Fraction(w, s) for w in weights]


def random_cactus(rng: random.Random, n: int, plateaus: bool = True) -> Cactus:
    """A random cactus of arity n: random cell, interval lengths, offsets and plateaus."""
    if n == 0:
        return Cactus(())
    cells = _cells_cache(n)
    seq = rng.choice(cells).labels
    slots = len(seq)
    with_gaps = plateaus and rng.random() < 0.4
    parts = _random_parts(rng, 2 * slots if with_gaps else slots)
    if with_gaps:
        gaps = [p if rng.random() < 0.5 else Fraction(0) for p in parts[slots:]]
        lengths = parts[:slots]
        lengths[-1] += sum(p for p, g in zip(parts[slots:], gaps) if g == 0)
    else:
        gaps, lengths = None, parts
    starts = [Fraction(rng.randint(0, 7), 8) if rng.random() < 0.5 else Fraction(0)
              for _ in range(n)]
    turns = [_random_parts(rng, seq.count(j), 6) for j in range(1, n + 1)]
    return Cactus(from_cell(seq, n, lengths, starts, turns, gaps).coords)


_CELLS: dict[int, list[CellSequence]] = {}


def _cells_cache(n: int) -> list[CellSequence]:
    if n not in _CELLS:
        _CELLS[n] = enumerate_cells(n)
    return _CELLS[n]


# -- operad and realization instances ---------------------------------------------

def _blocks(ys: Sequence[Cactus], p: Point) -> list[Point]:
    out, k = [], 0
    for y in ys:
        out.append(tuple(p[k:k + y.n]))
        k += y.n
    return out


class CactiOperad(OperadInstance):
    name = "cacti"

    def unit(self):
        return unit()

    def arity(self, x):
        return x.n

    def compose(self, x, i, y):
        return compose_cacti(x, i, y)

    def gamma(self, x, ys):
        return gamma(x, ys)

    def act(self, x, perm):
        return sigma_act(x, perm)

    def equal(self, x, y):
        return cactus_equal(x, y)

    def is_valid(self, x):
        return is_valid(x)

    def describe(self, x):
        from .serialize import cactus_to_json
        return cactus_to_json(x)


class CactiRealization(RealizationInstance):
    """|c| = c(S^1) inside (S^1)^n; the circle is sampled at rational turns k/count."""

    def circle_samples(self, count):
        return [Fraction(k, count) for k in range(count)]

    def samples(self, x, count):
        memo = x.__dict__.setdefault("_samples", {})
        if count not in memo:
            memo[count] = self._samples(x, count)
        return memo[count]

    def _samples(self, x, count):
        ts = [Fraction(k, count) for k in range(count)] + list(x.breakpoints)
        seen, out = set(), []
        for t in ts:
            p = x(t)
            if p not in seen:
                seen.add(p)
                out.append(p)
        return out

    def contains(self, x, p):
        return realization_contains(x, p)

    def boundary_in(self, x, i, s):
        return boundary_in(x, i, s)

    def boundary_out(self, x, s):
        return boundary_out(x, s)

    def symmetry(self, x, perm, p):
        return tuple(p[k] for k in perm)

    def lower(self, x, ys, p):
        out: tuple = ()
        for y, t in zip(ys, p):
            out += y(t)
        return out

    def right(self, x, ys, i, q):
        lobe = x.lobe_coordinates[i - 1]
        out: tuple = ()
        for k, y in enumerate(ys, 1):
            out += tuple(q) if k == i else y(lobe[k - 1])
        return out

    def lower_preimage(self, x, ys, p, prefer=None):
        if x.n == 0:
            return () if p == () else None
        pre = [parameter_preimage(y, b) for y, b in zip(ys, _blocks(ys, p))]
        if not all(pre):
            return None
        order = list(range(1, x.n + 1))
        if prefer is not None:
            order.remove(prefer)
            order.insert(0, prefer)
        for i in order:
            lobe = x.lobe_coordinates[i - 1]
            if all(in_intervals(lobe[k], pre[k]) for k in range(x.n) if k != i - 1):
                return lobe[:i - 1] + (frac(pre[i - 1][0][0]),) + lobe[i:]
        return None

    def right_preimage(self, x, ys, i, p):
        blocks = _blocks(ys, p)
        lobe = x.lobe_coordinates[i - 1]
        for k, y in enumerate(ys, 1):
            if k != i and y(lobe[k - 1]) != blocks[k - 1]:
                return None
        q = blocks[i - 1]
        return q if realization_contains(ys[i - 1], q) else None

    def on_incoming(self, x, i, p):
        return on_lobe(x, i, p)

    def on_outgoing(self, x, p):
        return realization_contains(x, p)

    def describe_point(self, p):
        if isinstance(p, Fraction):
            return str(p)
        return [str(v) for v in p]
