"""The framed little discs operad over exact rationals, and its realizations.

A little disc is the affine map ``z -> center + radius * frame * z`` with
``frame`` a rational point of the unit circle.  The realization of a
configuration is the big disc with the open little discs removed.  All
geometric predicates compare squared norms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .operad_core import OperadInstance, RealizationInstance

Q = Fraction


@dataclass(frozen=True, eq=False)
class RationalComplex:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if type(self.re) is not Fraction:
            object.__setattr__(self, "re", Fraction(self.re))
        if type(self.im) is not Fraction:
            object.__setattr__(self, "im", Fraction(self.im))

    # points compare by value whether or not they carry the unit-circle type
    def __eq__(self, other):
        if not isinstance(other, RationalComplex):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other: RationalComplex) -> RationalComplex:
        return RationalComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: RationalComplex) -> RationalComplex:
        return RationalComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other: RationalComplex) -> RationalComplex:
        return RationalComplex(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    def scale(self, k: Fraction) -> RationalComplex:
        return RationalComplex(self.re * k, self.im * k)

    def conjugate(self) -> RationalComplex:
        return RationalComplex(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


class UnitCirclePoint(RationalComplex):
    """A rational point with re^2 + im^2 == 1."""

    def __post_init__(self):
        super().__post_init__()
        if self.norm2() != 1:
            raise ValueError(f"({self.re}, {self.im}) is not on the unit circle")

    @classmethod
    def from_tan_half(cls, t: Fraction | None) -> UnitCirclePoint:
        """((1-t^2)/(1+t^2), 2t/(1+t^2)); ``None`` stands for t = infinity, i.e. -1."""
        if t is None:
            return cls(Fraction(-1), Fraction(0))
        t = Fraction(t)
        d = 1 + t * t
        return cls((1 - t * t) / d, 2 * t / d)

    def __mul__(self, other):
        z = RationalComplex.__mul__(self, other)
        if isinstance(other, UnitCirclePoint):
            return UnitCirclePoint(z.re, z.im)
        return z

    def inverse(self) -> UnitCirclePoint:
        return UnitCirclePoint(self.re, -self.im)


def _point(re: Fraction, im: Fraction) -> RationalComplex:
    """Construct without re-validating coordinates that are already Fractions."""
    z = object.__new__(RationalComplex)
    object.__setattr__(z, "re", re)
    object.__setattr__(z, "im", im)
    return z


ONE = UnitCirclePoint(Fraction(1), Fraction(0))
ZERO = RationalComplex(Fraction(0), Fraction(0))


def circle_samples(count: int = 64) -> list[UnitCirclePoint]:
    """Deterministic rational points spread around S^1, starting at 1.

    Point k approximates angle 2*pi*k/count through a rational tan-half-angle
    parameter; the point -1 is exact.
    """
    if count <= 0:
        raise ValueError("sample count must be positive")
    return list(_circle_samples(count))


@lru_cache(maxsize=None)
def _circle_samples(count: int) -> tuple[UnitCirclePoint, ...]:
    pts = []
    for k in range(count):
        if 2 * k == count:
            pts.append(UnitCirclePoint.from_tan_half(None))
            continue
        t = Fraction(math.tan(math.pi * k / count)).limit_denominator(64)
        pts.append(UnitCirclePoint.from_tan_half(t))
    return tuple(pts)


@dataclass(frozen=True)
class LittleDisc:
    center: RationalComplex
    radius: Fraction
    frame: UnitCirclePoint = ONE

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if not isinstance(self.frame, UnitCirclePoint):
            object.__setattr__(self, "frame", UnitCirclePoint(self.frame.re, self.frame.im))

    @cached_property
    def _linear(self) -> tuple[Fraction, Fraction]:
        return self.radius * self.frame.re, self.radius * self.frame.im

    @cached_property
    def _ints(self) -> tuple[int, ...]:
        a, b = self._linear
        c = self.center
        return (c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator,
                a.numerator, a.denominator, b.numerator, b.denominator)

    def __call__(self, z: RationalComplex) -> RationalComplex:
        """The embedding D^2 -> D^2 of this disc: center + radius * frame * z."""
        # hot path of the axiom suites: one normalization per coordinate instead of five
        pn, pd, qn, qd, an, ad, bn, bd = self._ints
        xn, xd = z.re.numerator, z.re.denominator
        yn, yd = z.im.numerator, z.im.denominator
        ax, by = ad * xd, bd * yd
        re_n = pn * ax * by + pd * (an * xn * by - bn * yn * ax)
        ay, bx = ad * yd, bd * xd
        im_n = qn * ay * bx + qd * (an * yn * bx + bn * xn * ay)
        return _point(Fraction(re_n, pd * ax * by), Fraction(im_n, qd * ay * bx))

    def inverse_map(self, p: RationalComplex) -> RationalComplex:
        a, b = self._linear
        dx, dy = p.re - self.center.re, p.im - self.center.im
        k = 1 / (a * a + b * b)
        return _point((a * dx + b * dy) * k, (a * dy - b * dx) * k)

    def then(self, inner: LittleDisc) -> LittleDisc:
        """The composite embedding self o inner."""
        return LittleDisc(self(inner.center), self.radius * inner.radius, self.frame * inner.frame)


@dataclass(frozen=True)
class FramedDiscConfig:
    """An element of fD(n).  ``open`` asks for the strict (interior) variant.

    Equality compares the embeddings only; ``open`` is a validation flag.
    """

    discs: tuple[LittleDisc, ...]
    open: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "discs", tuple(self.discs))

    @property
    def n(self) -> int:
        return len(self.discs)

    def disc(self, i: int) -> LittleDisc:
        if not 1 <= i <= self.n:
            raise IndexError(f"disc index {i} out of range for arity {self.n}")
        return self.discs[i - 1]


class InvalidConfig(ValueError):
    pass


def unit() -> FramedDiscConfig:
    return FramedDiscConfig((LittleDisc(ZERO, Fraction(1), ONE),))


def violations(a: FramedDiscConfig) -> list[str]:
    out = []
    for k, d in enumerate(a.discs, 1):
        c2 = d.center.norm2()
        lim = (1 - d.radius) ** 2
        if d.radius > 1 or c2 > lim or (d.radius >= 1 and a.open):
            out.append(f"disc {k} leaves the big disc")
        elif a.open and c2 >= lim:
            out.append(f"disc {k} meets the boundary of the big disc")
    for i in range(a.n):
        for j in range(i + 1, a.n):
            di, dj = a.discs[i], a.discs[j]
            if (di.center - dj.center).norm2() < (di.radius + dj.radius) ** 2:
                out.append(f"discs {i + 1} and {j + 1} overlap")
    return out


def is_valid(a: FramedDiscConfig) -> bool:
    return not violations(a)


def validate(a: FramedDiscConfig) -> FramedDiscConfig:
    problems = violations(a)
    if problems:
        raise InvalidConfig("; ".join(problems))
    return a


def compose(a: FramedDiscConfig, i: int, b: FramedDiscConfig) -> FramedDiscConfig:
    outer = a.disc(i)
    inner = tuple(outer.then(d) for d in b.discs)
    discs = a.discs[:i - 1] + inner + a.discs[i:]
    return FramedDiscConfig(discs, a.open or (b.open and a.n == 1))


def gamma(a: FramedDiscConfig, bs: Sequence[FramedDiscConfig]) -> FramedDiscConfig:
    if len(bs) != a.n:
        raise ValueError(f"gamma needs {a.n} inputs, got {len(bs)}")
    discs = []
    for d, b in zip(a.discs, bs):
        discs.extend(d.then(e) for e in b.discs)
    return FramedDiscConfig(tuple(discs), a.open or (a.n > 0 and all(b.open for b in bs)))


def sigma_act(a: FramedDiscConfig, perm: Sequence[int]) -> FramedDiscConfig:
    """Right action: disc i of the result is disc perm[i] of ``a`` (0-based)."""
    if sorted(perm) != list(range(a.n)):
        raise ValueError(f"{tuple(perm)} is not a permutation of {a.n} letters")
    return FramedDiscConfig(tuple(a.discs[p] for p in perm), a.open)


def realization_contains(a: FramedDiscConfig, p: RationalComplex) -> bool:
    x, y = p.re, p.im
    if x * x + y * y > 1:
        return False
    for d in a.discs:
        dx, dy = x - d.center.re, y - d.center.im
        if dx * dx + dy * dy < d.radius * d.radius:
            return False
    return True


def boundary_in(a: FramedDiscConfig, i: int, q: RationalComplex) -> RationalComplex:
    return a.disc(i)(q)


def boundary_out(a: FramedDiscConfig, q: RationalComplex) -> RationalComplex:
    return q


def local_marked_point(a: FramedDiscConfig, i: int) -> RationalComplex:
    return boundary_in(a, i, ONE)


def base_config(n: int, r: Fraction) -> FramedDiscConfig:
    """n unrotated discs of radius r centred at -1 + (2k-1)/n on the real axis."""
    r = Fraction(r)
    if n < 0:
        raise ValueError("arity must be non-negative")
    if r <= 0:
        raise InvalidConfig("radius must be positive")
    discs = tuple(LittleDisc(RationalComplex(Fraction(2 * k - 1, n) - 1), r, ONE)
                  for k in range(1, n + 1))
    return validate(FramedDiscConfig(discs, open=True))


def halve(a: FramedDiscConfig) -> FramedDiscConfig:
    """a_{1/2}: same centres and frames, radii halved."""
    return FramedDiscConfig(tuple(LittleDisc(d.center, d.radius / 2, d.frame) for d in a.discs),
                            open=True)


# -- random elements -----------------------------------------------------------

def random_frame(rng: random.Random) -> UnitCirclePoint:
    if rng.random() < 0.3:
        return ONE
    return UnitCirclePoint.from_tan_half(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))


def random_config(rng: random.Random, n: int, open: bool = True, attempts: int = 1000) -> FramedDiscConfig:
    """n disjoint discs with small rational data, by rejection sampling."""
    radii = [Fraction(1, 16), Fraction(1, 12), Fraction(1, 8), Fraction(1, 6), Fraction(1, 5)]
    if n == 1:
        radii.append(Fraction(1, 2))
    for _ in range(attempts):
        discs = []
        for _ in range(n):
            r = rng.choice(radii)
            c = RationalComplex(Fraction(rng.randint(-12, 12), 16), Fraction(rng.randint(-12, 12), 16))
            discs.append(LittleDisc(c, r, random_frame(rng)))
        a = FramedDiscConfig(tuple(discs), open)
        if is_valid(a):
            return a
    raise RuntimeError(f"could not place {n} discs")


# -- operad and realization instances ---------------------------------------------

class DiscsOperad(OperadInstance):
    name = "framed_discs"

    def unit(self):
        return unit()

    def arity(self, x):
        return x.n

    def compose(self, x, i, y):
        return compose(x, i, y)

    def gamma(self, x, ys):
        return gamma(x, ys)

    def act(self, x, perm):
        return sigma_act(x, perm)

    def equal(self, x, y):
        return x == y

    def is_valid(self, x):
        return is_valid(x)

    def describe(self, x):
        from .serialize import discs_to_json
        return discs_to_json(x)


class DiscsRealization(RealizationInstance):
    """|a| is the big disc minus the open little discs; symmetries are identities."""

    grid = 8

    def circle_samples(self, count):
        return circle_samples(count)

    def samples(self, x, count):
        memo = x.__dict__.setdefault("_samples", {})
        if count not in memo:
            memo[count] = self._samples(x, count)
        return memo[count]

    def _samples(self, x, count):
        circle = circle_samples(count)
        pts = list(circle)
        for d in x.discs:
            pts.extend(d(q) for q in circle)
        g = self.grid
        for a in range(-g, g + 1):
            for b in range(-g, g + 1):
                p = RationalComplex(Fraction(a, g), Fraction(b, g))
                if realization_contains(x, p):
                    pts.append(p)
        return pts

    def contains(self, x, p):
        return realization_contains(x, p)

    def boundary_in(self, x, i, s):
        return boundary_in(x, i, s)

    def boundary_out(self, x, s):
        return boundary_out(x, s)

    def symmetry(self, x, perm, p):
        return p

    def lower(self, x, ys, p):
        return p

    def right(self, x, ys, i, q):
        return x.disc(i)(q)

    def lower_preimage(self, x, ys, p, prefer=None):
        return p if realization_contains(x, p) else None

    def right_preimage(self, x, ys, i, p):
        q = x.disc(i).inverse_map(p)
        return q if realization_contains(ys[i - 1], q) else None

    def on_incoming(self, x, i, p):
        d = x.disc(i)
        return (p - d.center).norm2() == d.radius ** 2

    def on_outgoing(self, x, p):
        return p.norm2() == 1

    def describe_point(self, p):
        return [str(p.re), str(p.im)]
