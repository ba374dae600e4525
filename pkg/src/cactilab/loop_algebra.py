"""The action of cacti on based loops in a group, with exact PL loops.

Group elements are stored as lift vectors (tuples of Fractions).  For the
circle group the lift lives in R and elements agree when lifts differ by an
integer; for the unitriangular group the lift is the element itself.  A loop
is a PL path of lift vectors on [0, 1] whose endpoints represent the identity.
"""

from __future__ import annotations

import math
import random
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cacti import Cactus, gamma, on_lobe, sigma_act
from .operad_core import perm_inverse
from .pl import interpolate, preimage_breaks

Elem = tuple[Fraction, ...]


class LoopError(ValueError):
    pass


class GroupModel(ABC):
    tag = ""
    dim = 1

    @abstractmethod
    def identity(self) -> Elem: ...

    @abstractmethod
    def mul(self, a: Elem, b: Elem) -> Elem: ...

    @abstractmethod
    def inv(self, a: Elem) -> Elem: ...

    @abstractmethod
    def lattice_shift(self, a: Elem, b: Elem) -> Elem | None:
        """The lattice vector d with b + d == a as lifts, or None if a and b differ as elements."""

    def equal(self, a: Elem, b: Elem) -> bool:
        return self.lattice_shift(a, b) is not None

    def add(self, a: Elem, d: Elem) -> Elem:
        return tuple(x + y for x, y in zip(a, d))


class CircleGroup(GroupModel):
    """R/Z under addition."""

    tag = "s1"
    dim = 1

    def identity(self):
        return (Fraction(0),)

    def mul(self, a, b):
        return (a[0] + b[0],)

    def inv(self, a):
        return (-a[0],)

    def lattice_shift(self, a, b):
        d = a[0] - b[0]
        return (d,) if d.denominator == 1 else None


class UniTriangular3(GroupModel):
    """Upper unitriangular 3x3 rational matrices, entries (12, 23, 13)."""

    tag = "ut3"
    dim = 3

    def identity(self):
        return (Fraction(0),) * 3

    def mul(self, a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])

    def inv(self, a):
        return (-a[0], -a[1], a[0] * a[1] - a[2])

    def lattice_shift(self, a, b):
        return (Fraction(0),) * 3 if tuple(a) == tuple(b) else None


GROUPS = {"s1": CircleGroup(), "ut3": UniTriangular3()}


@dataclass(frozen=True)
class Loop:
    """PL lift path through (t[k], values[k]), extended by ``f(y + 1) = f(y) + shift``."""

    t: tuple[Fraction, ...]
    values: tuple[Elem, ...]

    def __post_init__(self):
        t = tuple(Fraction(x) for x in self.t)
        vals = tuple(tuple(Fraction(c) for c in v) for v in self.values)
        if len(t) < 2 or len(t) != len(vals):
            raise LoopError("need at least two breakpoints and one value each")
        if t[0] != 0 or t[-1] != 1 or any(a >= b for a, b in zip(t, t[1:])):
            raise LoopError("breakpoints must increase strictly from 0 to 1")
        if len({len(v) for v in vals}) != 1:
            raise LoopError("values must have a common dimension")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", vals)

    @property
    def shift(self) -> Elem:
        return tuple(b - a for a, b in zip(self.values[0], self.values[-1]))

    def __call__(self, y: Fraction) -> Elem:
        k = math.floor(y)
        v = interpolate(self.t, self.values, y - k)
        return tuple(a + k * s for a, s in zip(v, self.shift))


def check_loop(group: GroupModel, loop: Loop) -> None:
    e = group.identity()
    if len(loop.values[0]) != group.dim:
        raise LoopError(f"loop has dimension {len(loop.values[0])}, group {group.tag} needs {group.dim}")
    if not group.equal(loop.values[0], e) or not group.equal(loop.values[-1], e):
        raise LoopError("loop endpoints must be the identity")


def loop_equal(group: GroupModel, f: Loop, g: Loop) -> bool:
    """Equal as maps into the group: one constant lattice shift relates the lifts."""
    ts = sorted(set(f.t) | set(g.t))
    shifts = set()
    for x in ts:
        d = group.lattice_shift(f(x), g(x))
        if d is None:
            return False
        shifts.add(d)
    return len(shifts) == 1


def translate(group: GroupModel, g: Elem, loop: Loop) -> Loop:
    """The left translate t -> g . loop(t); PL because translation is affine in the lift."""
    return Loop(loop.t, tuple(group.mul(g, v) for v in loop.values))


def constant_loop(group: GroupModel) -> Loop:
    e = group.identity()
    return Loop((Fraction(0), Fraction(1)), (e, e))


# -- patching --------------------------------------------------------------------

@dataclass(frozen=True)
class PatchedMap:
    cactus: Cactus
    loops: tuple[Loop, ...]
    g: tuple[Elem, ...]
    root: int
    group: GroupModel

    def alpha(self, p) -> Elem:
        """The patched map on a point of |c|."""
        c = self.cactus
        if c.n == 0:
            return self.group.identity()
        for i in range(1, c.n + 1):
            if on_lobe(c, i, p):
                return self.group.mul(self.g[i - 1], self.loops[i - 1](p[i - 1]))
        raise ValueError(f"{p} is not on the cactus")


def lobe_adjacency(c: Cactus) -> dict[int, list[int]]:
    """Lobes i and j meet iff their lobe coordinates agree off slots i and j."""
    adj: dict[int, list[int]] = {i: [] for i in range(1, c.n + 1)}
    lc = c.lobe_coordinates
    for i in range(1, c.n + 1):
        for j in range(i + 1, c.n + 1):
            if all(lc[i - 1][k] == lc[j - 1][k] for k in range(c.n) if k not in (i - 1, j - 1)):
                adj[i].append(j)
                adj[j].append(i)
    return adj


def patch(c: Cactus, loops: Sequence[Loop], group: GroupModel,
          rng: random.Random | None = None) -> PatchedMap:
    """Solve for the translations g_i lobe by lobe along the adjacency graph.

    ``rng`` shuffles the traversal order; the result does not depend on it.
    """
    loops = tuple(loops)
    if len(loops) != c.n:
        raise ValueError(f"cactus of arity {c.n} needs {c.n} loops, got {len(loops)}")
    for lp in loops:
        check_loop(group, lp)
    if c.n == 0:
        return PatchedMap(c, loops, (), 0, group)
    lc = c.lobe_coordinates
    mark = c(Fraction(0))
    root = next(i for i in range(1, c.n + 1) if on_lobe(c, i, mark))
    g: dict[int, Elem] = {root: group.inv(loops[root - 1](mark[root - 1]))}
    adj = lobe_adjacency(c)
    queue = deque([root])
    while queue:
        i = queue.popleft()
        nbrs = list(adj[i])
        if rng is not None:
            rng.shuffle(nbrs)
        for j in nbrs:
            if j in g:
                continue
            # at the meeting point slot i is x^j_i and slot j is x^i_j
            meet = group.mul(g[i], loops[i - 1](lc[j - 1][i - 1]))
            g[j] = group.mul(meet, group.inv(loops[j - 1](lc[i - 1][j - 1])))
            queue.append(j)
    if len(g) != c.n:
        raise ValueError("lobes do not form a connected cactus")
    pm = PatchedMap(c, loops, tuple(g[i] for i in range(1, c.n + 1)), root, group)
    bad = patch_violations(pm)
    if bad:
        raise AssertionError(f"patched map violates constraints: {bad}")
    return pm


def patch_violations(pm: PatchedMap) -> list[str]:
    """Constraints a patched map must satisfy: marked point to e, agreement at meeting points."""
    c, grp, loops, g = pm.cactus, pm.group, pm.loops, pm.g
    out = []
    if c.n == 0:
        return out
    mark = c(Fraction(0))
    if not grp.equal(pm.alpha(mark), grp.identity()):
        out.append("marked point not sent to e")
    lc = c.lobe_coordinates
    adj = lobe_adjacency(c)
    for i in adj:
        for j in adj[i]:
            if i < j:
                a = grp.mul(g[i - 1], loops[i - 1](lc[j - 1][i - 1]))
                b = grp.mul(g[j - 1], loops[j - 1](lc[i - 1][j - 1]))
                if not grp.equal(a, b):
                    out.append(f"lobes {i} and {j} disagree at their meeting point")
    return out


# -- the action ------------------------------------------------------------------

def _glue(group: GroupModel, ts: list, vals: list, new_t: list, new_v: list) -> None:
    """Append a piece, shifting it by a lattice vector so the lift is continuous."""
    if ts:
        d = group.lattice_shift(vals[-1], new_v[0])
        if d is None or new_t[0] != ts[-1]:
            raise AssertionError("pieces of the output loop do not match up")
        new_v = [group.add(v, d) for v in new_v]
        new_t, new_v = new_t[1:], new_v[1:]
    ts.extend(new_t)
    vals.extend(new_v)


def omega(c: Cactus, loops: Sequence[Loop], group: GroupModel,
          rng: random.Random | None = None) -> Loop:
    """alpha composed with the outgoing boundary, as an exact PL loop."""
    pm = patch(c, loops, group, rng)
    if c.n == 0:
        return constant_loop(group)
    ts: list[Fraction] = []
    vals: list[Elem] = []
    for ta, tb, a, b in c.pieces:
        moving = [j for j in range(c.n) if b[j] > a[j]]
        if not moving:
            v = pm.alpha(c(ta))
            _glue(group, ts, vals, [ta, tb], [v, v])
            continue
        j = moving[0]
        lp, gj = pm.loops[j], pm.g[j]
        sub = preimage_breaks((ta, tb), (a[j], b[j]), lp.t)
        lifts = [a[j] + (x - ta) * (b[j] - a[j]) / (tb - ta) for x in sub]
        _glue(group, ts, vals, sub, [group.mul(gj, lp(y)) for y in lifts])
    return Loop(tuple(ts), tuple(vals))


def check_algebra_associativity(c: Cactus, ds: Sequence[Cactus], loops: Sequence[Sequence[Loop]],
                                group: GroupModel) -> bool:
    """omega(gamma(c; d); loops) == omega(c; omega(d_i; loops_i))."""
    flat = [lp for row in loops for lp in row]
    lhs = omega(gamma(c, ds), flat, group)
    rhs = omega(c, [omega(d, row, group) for d, row in zip(ds, loops)], group)
    return loop_equal(group, lhs, rhs)


def check_equivariance(c: Cactus, perm: Sequence[int], loops: Sequence[Loop],
                       group: GroupModel) -> bool:
    """omega(c sigma; loops) == omega(c; loops_{sigma^-1})."""
    inv = perm_inverse(perm)
    lhs = omega(sigma_act(c, perm), loops, group)
    rhs = omega(c, [loops[inv[j]] for j in range(c.n)], group)
    return loop_equal(group, lhs, rhs)


# -- independent formulas ----------------------------------------------------------

def rotate_loop(group: GroupModel, loop: Loop, s: Fraction) -> Loop:
    """t -> loop(s)^-1 . loop(s + t), built directly from the loop's breakpoints."""
    s = Fraction(s)
    base = group.inv(loop(s))
    cuts = {Fraction(0), Fraction(1)}
    cuts.update((b - s) % 1 for b in loop.t)
    ts = sorted(cuts)
    return Loop(tuple(ts), tuple(group.mul(base, loop(s + t)) for t in ts))


def concatenate(group: GroupModel, f: Loop, g: Loop) -> Loop:
    """f then g, each at double speed."""
    half = Fraction(1, 2)
    d = group.lattice_shift(f.values[-1], g.values[0])
    if d is None:
        raise LoopError("loops do not match up")
    ts = [x * half for x in f.t] + [half + x * half for x in g.t[1:]]
    vals = list(f.values) + [group.add(v, d) for v in g.values[1:]]
    return Loop(tuple(ts), tuple(vals))


# -- random loops ------------------------------------------------------------------

def random_loop(rng: random.Random, group: GroupModel, pieces: int = 3) -> Loop:
    k = max(1, pieces)
    inner = sorted({Fraction(rng.randint(1, 23), 24) for _ in range(k - 1)})
    ts = [Fraction(0)] + inner + [Fraction(1)]
    e = group.identity()

    def rnd():
        return tuple(Fraction(rng.randint(-8, 8), rng.choice([1, 2, 3, 4])) for _ in range(group.dim))

    vals = [e] + [rnd() for _ in inner]
    if isinstance(group, CircleGroup):
        vals.append((Fraction(rng.randint(-1, 2)),))
    else:
        vals.append(e)
    return Loop(tuple(ts), tuple(vals))
