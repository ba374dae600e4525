"""Monotone piecewise-linear circle maps with rational breakpoints.

A map is stored by its lift ``[0, 1] -> R``: breakpoints ``0 = t_0 < ... < t_k = 1``
and values ``v_0 <= ... <= v_k``, linear in between.  The circle value is the
lift mod 1, and the lift extends to all of R by ``f(x + 1) = f(x) + degree``.
Representations are not canonical (extra collinear breakpoints, integer
shifts); compare with :func:`pl_equal`.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence


class NonMonotone(ValueError):
    pass


def frac(x: Fraction) -> Fraction:
    """x mod 1 in [0, 1)."""
    if 0 <= x < 1:
        return x
    return x - math.floor(x)


def interpolate(ts: Sequence[Fraction], vs: Sequence, x: Fraction):
    """Evaluate the PL function through (ts, vs) at x in [ts[0], ts[-1]].

    ``vs`` holds scalars or equal-length tuples of scalars.
    """
    if x < ts[0] or x > ts[-1]:
        raise ValueError(f"{x} outside [{ts[0]}, {ts[-1]}]")
    k = bisect_right(ts, x) - 1
    if k >= len(ts) - 1:
        return vs[-1]
    t0, t1 = ts[k], ts[k + 1]
    if x == t0:
        return vs[k]
    s = (x - t0) / (t1 - t0)
    a, b = vs[k], vs[k + 1]
    if isinstance(a, tuple):
        return tuple(ai + s * (bi - ai) for ai, bi in zip(a, b))
    return a + s * (b - a)


def preimage_breaks(ts: Sequence[Fraction], vs: Sequence[Fraction],
                    targets: Iterable[Fraction]) -> list[Fraction]:
    """Breakpoints of a monotone PL lift refined by preimages of ``targets + Z``.

    ``targets`` are circle values in [0, 1).  Within each strictly increasing
    piece every lift value ``y = b + k`` hit in the open range contributes its
    (unique, rational) preimage.
    """
    targets = sorted(set(frac(Fraction(b)) for b in targets))
    out = set(ts)
    for k in range(len(ts) - 1):
        ta, tb, va, vb = ts[k], ts[k + 1], vs[k], vs[k + 1]
        if vb == va:
            continue
        scale = (tb - ta) / (vb - va)
        for b in targets:
            lo = math.floor(va - b) + 1
            hi = math.ceil(vb - b) - 1
            for m in range(lo, hi + 1):
                out.add(ta + (b + m - va) * scale)
    return sorted(out)


@dataclass(frozen=True)
class PLCircleMap:
    t: tuple[Fraction, ...]
    v: tuple[Fraction, ...]

    def __post_init__(self):
        t = tuple(Fraction(x) for x in self.t)
        v = tuple(Fraction(x) for x in self.v)
        if len(t) < 2 or len(t) != len(v):
            raise ValueError("need at least two breakpoints and one value per breakpoint")
        if t[0] != 0 or t[-1] != 1:
            raise ValueError("breakpoints must run from 0 to 1")
        if any(a >= b for a, b in zip(t, t[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(a > b for a, b in zip(v, v[1:])):
            raise NonMonotone("lift values must be nondecreasing")
        if (v[-1] - v[0]).denominator != 1:
            raise ValueError("degree v_k - v_0 must be an integer")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "v", v)

    @classmethod
    def identity(cls) -> PLCircleMap:
        return cls((Fraction(0), Fraction(1)), (Fraction(0), Fraction(1)))

    @classmethod
    def constant(cls, value: Fraction) -> PLCircleMap:
        return cls((Fraction(0), Fraction(1)), (Fraction(value), Fraction(value)))

    @classmethod
    def wrap_on(cls, a: Fraction, b: Fraction, start: Fraction = Fraction(0)) -> PLCircleMap:
        """Degree-one map constant except for one turn at constant speed on [a, b]."""
        a, b, start = Fraction(a), Fraction(b), Fraction(start)
        ts = [Fraction(0)]
        vs = [start]
        if a > 0:
            ts.append(a)
            vs.append(start)
        ts.append(b)
        vs.append(start + 1)
        if b < 1:
            ts.append(Fraction(1))
            vs.append(start + 1)
        return cls(tuple(ts), tuple(vs))

    @cached_property
    def degree(self) -> int:
        return int(self.v[-1] - self.v[0])

    @cached_property
    def _slopes(self) -> tuple[Fraction, ...]:
        return tuple((b - a) / (tb - ta) for ta, tb, a, b in self.pieces())

    @cached_property
    def _memo(self) -> dict:
        return {}

    def _eval01(self, x: Fraction) -> Fraction:
        k = bisect_right(self.t, x) - 1
        if k >= len(self.t) - 1:
            return self.v[-1]
        return self.v[k] + self._slopes[k] * (x - self.t[k])

    def __call__(self, x: Fraction) -> Fraction:
        """Lift value at any rational x."""
        if 0 <= x < 1:
            return self._eval01(x)
        k = math.floor(x)
        return self._eval01(x - k) + k * self.degree

    def at(self, x: Fraction) -> Fraction:
        """Circle value in [0, 1), memoized per map."""
        memo = self._memo
        val = memo.get(x)
        if val is None:
            val = memo[x] = frac(self(x))
        return val

    def pieces(self):
        return zip(self.t, self.t[1:], self.v, self.v[1:])

    def support(self) -> list[tuple[Fraction, Fraction]]:
        """Maximal intervals of [0, 1] on which the map is non-constant."""
        out: list[tuple[Fraction, Fraction]] = []
        for ta, tb, va, vb in self.pieces():
            if vb > va:
                if out and out[-1][1] == ta:
                    out[-1] = (out[-1][0], tb)
                else:
                    out.append((ta, tb))
        return out

    def canonical(self) -> PLCircleMap:
        """Collinear breakpoints removed and v_0 shifted into [0, 1)."""
        ts, vs = [self.t[0]], [self.v[0]]
        for k in range(1, len(self.t) - 1):
            s_in = (self.v[k] - vs[-1]) / (self.t[k] - ts[-1])
            s_out = (self.v[k + 1] - self.v[k]) / (self.t[k + 1] - self.t[k])
            if s_in != s_out:
                ts.append(self.t[k])
                vs.append(self.v[k])
        ts.append(self.t[-1])
        vs.append(self.v[-1])
        shift = math.floor(vs[0])
        return PLCircleMap(tuple(ts), tuple(x - shift for x in vs))


def pl_eval(f: PLCircleMap, t: Fraction) -> Fraction:
    return f(Fraction(t))


def pl_compose(f: PLCircleMap, g: PLCircleMap) -> PLCircleMap:
    """f o g, exact.  Breakpoints are g's, refined by preimages of f's."""
    ts = preimage_breaks(g.t, g.v, f.t)
    return PLCircleMap(tuple(ts), tuple(f(g(x)) for x in ts))


def pl_equal(f: PLCircleMap, g: PLCircleMap) -> bool:
    """Equality as circle maps: the lifts differ by one constant integer."""
    ts = sorted(set(f.t) | set(g.t))
    diffs = {f(x) - g(x) for x in ts}
    return len(diffs) == 1 and next(iter(diffs)).denominator == 1
