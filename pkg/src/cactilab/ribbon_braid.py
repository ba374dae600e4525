"""Braids as automorphisms of F_n, and the pure ribbon braid group in the W_n model.

An element of W_n is a tuple ``w = (w_1, ..., w_n)`` of words such that the
endomorphism ``alpha(w): x_i -> w_i x_i w_i^-1`` is an automorphism fixing
``x_1 ... x_n``.  Group law::

    v . w = (alpha(v)(w_1) v_1, ..., alpha(v)(w_n) v_n)

so that ``alpha(v . w) = alpha(v) o alpha(w)``.

Inverses of automorphisms are never searched for; every element built from
generators carries its inverse as a certificate.  Elements read from raw data
only pass the two necessary checks (product fixed, images conjugate to
generators) and cannot be inverted.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .freegroup import (
    Endomorphism,
    RankError,
    Word,
    apply,
    compose,
    conjugating_endomorphism,
    cyclic_reduce,
    exponent_sum,
    invert,
    multiply,
    product_word,
)


class NotInvertible(ValueError):
    """Raised when an operation needs an inverse certificate that is absent."""


class NotPure(ValueError):
    pass


@dataclass(frozen=True)
class BraidAut:
    """An automorphism of F_n together with its inverse.

    Multiplication is composition: ``(a * b)(x) = a(b(x))``.
    """

    n: int
    forward: Endomorphism
    backward: Endomorphism | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.forward.n != self.n:
            raise RankError("forward endomorphism has the wrong rank")
        if self.backward is not None and self.backward.n != self.n:
            raise RankError("backward endomorphism has the wrong rank")

    @classmethod
    def identity(cls, n: int) -> BraidAut:
        e = Endomorphism.identity(n)
        return cls(n, e, e)

    def __mul__(self, other: BraidAut) -> BraidAut:
        if self.n != other.n:
            raise RankError(f"rank mismatch: {self.n} vs {other.n}")
        back = None
        if self.backward is not None and other.backward is not None:
            back = compose(other.backward, self.backward)
        return BraidAut(self.n, compose(self.forward, other.forward), back)

    def inverse(self) -> BraidAut:
        if self.backward is None:
            raise NotInvertible("automorphism carries no inverse certificate")
        return BraidAut(self.n, self.backward, self.forward)

    def __call__(self, w: Word) -> Word:
        return apply(self.forward, w)

    def certificate_ok(self) -> bool:
        if self.backward is None:
            return False
        return (compose(self.forward, self.backward).fixes_generators()
                and compose(self.backward, self.forward).fixes_generators())

    def fixes_product(self) -> bool:
        p = product_word(self.n)
        return apply(self.forward, p) == p

    def permutation(self) -> tuple[int, ...] | None:
        """pi with f(x_i) conjugate to x_pi(i) (1-based), or None."""
        out = []
        for img in self.forward.images:
            core, _ = cyclic_reduce(img)
            if len(core.letters) != 1 or core.letters[0][1] != 1:
                return None
            out.append(core.letters[0][0])
        return tuple(out)

    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(1, self.n + 1)) and self.fixes_product()


def sigma(i: int, n: int) -> BraidAut:
    """Artin generator: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i."""
    if not 1 <= i <= n - 1:
        raise IndexError(f"sigma_{i} undefined for n={n}")
    x = [Word.generator(k, n) for k in range(1, n + 1)]
    fwd = list(x)
    fwd[i - 1] = x[i - 1] * x[i] * ~x[i - 1]
    fwd[i] = x[i - 1]
    back = list(x)
    back[i - 1] = x[i]
    back[i] = ~x[i] * x[i - 1] * x[i]
    return BraidAut(n, Endomorphism(n, tuple(fwd)), Endomorphism(n, tuple(back)))


def alpha_gen(i: int, j: int, n: int) -> BraidAut:
    """Pure braid generator sigma_{j-1}...sigma_{i+1} sigma_i^2 sigma_{i+1}^-1...sigma_{j-1}^-1."""
    if not 1 <= i < j <= n:
        raise IndexError(f"alpha_{i}{j} undefined for n={n}")
    prefix = BraidAut.identity(n)
    for k in range(j - 1, i, -1):
        prefix = prefix * sigma(k, n)
    s = sigma(i, n)
    return prefix * s * s * prefix.inverse()


# -- W_n -----------------------------------------------------------------------


@dataclass(frozen=True)
class WElement:
    """A tuple (w_1..w_n) in W_n.

    ``backward`` is the inverse of ``alpha(w)`` when known; ``raw`` elements
    (``backward is None``) cannot be inverted.
    """

    words: tuple[Word, ...]
    backward: Endomorphism | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        words = tuple(self.words)
        n = len(words)
        for w in words:
            if w.n != n:
                raise RankError(f"word of rank {w.n} in a W_{n} tuple")
        object.__setattr__(self, "words", words)

    @property
    def n(self) -> int:
        return len(self.words)

    @property
    def raw(self) -> bool:
        return self.backward is None

    @property
    def forward(self) -> Endomorphism:
        return conjugating_endomorphism(self.words)

    @classmethod
    def identity(cls, n: int) -> WElement:
        return cls(tuple(Word.identity(n) for _ in range(n)), Endomorphism.identity(n))

    @classmethod
    def from_raw(cls, words: Sequence[Word]) -> WElement:
        """Quarantined element: checks only the two necessary conditions."""
        el = cls(tuple(words), None)
        problem = check_w_conditions(el)
        if problem:
            raise ValueError(problem)
        return el

    def __mul__(self, other: WElement) -> WElement:
        return w_multiply(self, other)

    def __str__(self) -> str:
        return "(" + ", ".join(str(w) for w in self.words) + ")"


def check_w_conditions(w: WElement) -> str | None:
    """Return a description of the first failed necessary condition, or None."""
    f = w.forward
    p = product_word(w.n)
    if apply(f, p) != p:
        return "alpha(w) does not fix x_1...x_n"
    for i, img in enumerate(f.images, 1):
        core, _ = cyclic_reduce(img)
        if core.letters != ((i, 1),):
            return f"alpha(w)(x_{i}) is not conjugate to x_{i}"
    return None


def w_multiply(v: WElement, w: WElement) -> WElement:
    if v.n != w.n:
        raise RankError(f"rank mismatch: {v.n} vs {w.n}")
    av = v.forward
    words = tuple(multiply(apply(av, wi), vi) for vi, wi in zip(v.words, w.words))
    back = None
    if v.backward is not None and w.backward is not None:
        back = compose(w.backward, v.backward)
    return WElement(words, back)


def w_invert(w: WElement) -> WElement:
    if w.backward is None:
        raise NotInvertible("raw W element has no inverse certificate")
    b = w.backward
    words = tuple(apply(b, invert(wi)) for wi in w.words)
    return WElement(words, w.forward)


def zeta(i: int, n: int) -> WElement:
    """Twist generator: x_i in slot i, empty elsewhere."""
    if not 1 <= i <= n:
        raise IndexError(f"zeta_{i} undefined for n={n}")
    words = tuple(Word.generator(i, n) if k == i else Word.identity(n) for k in range(1, n + 1))
    return WElement(words, Endomorphism.identity(n))


def alpha_w(i: int, j: int, n: int) -> WElement:
    """W_n representative of alpha_ij with zero twists."""
    return lambda_inverse(PRBElement(alpha_gen(i, j, n), (0,) * n))


# -- PRB_n = PB_n x Z^n ----------------------------------------------------------


@dataclass(frozen=True)
class PRBElement:
    braid: BraidAut
    twists: tuple[int, ...]

    def __post_init__(self):
        twists = tuple(int(m) for m in self.twists)
        if len(twists) != self.braid.n:
            raise RankError("twist vector length differs from the braid rank")
        object.__setattr__(self, "twists", twists)

    @property
    def n(self) -> int:
        return self.braid.n

    @classmethod
    def identity(cls, n: int) -> PRBElement:
        return cls(BraidAut.identity(n), (0,) * n)

    def __mul__(self, other: PRBElement) -> PRBElement:
        return PRBElement(self.braid * other.braid,
                          tuple(a + b for a, b in zip(self.twists, other.twists)))


def lam(w: WElement) -> PRBElement:
    """The bijection W_n -> PRB_n: (alpha(w), (m_1..m_n)) with m_i the x_i-exponent sum of w_i."""
    twists = tuple(exponent_sum(wi, i) for i, wi in enumerate(w.words, 1))
    return PRBElement(BraidAut(w.n, w.forward, w.backward), twists)


def lambda_inverse(p: PRBElement) -> WElement:
    n = p.n
    if not p.braid.fixes_product():
        raise NotPure("braid part does not fix x_1...x_n")
    words = []
    for i, img in enumerate(p.braid.forward.images, 1):
        core, conj = cyclic_reduce(img)
        if core.letters != ((i, 1),):
            raise NotPure(f"image of x_{i} is not conjugate to x_{i}")
        k = p.twists[i - 1] - exponent_sum(conj, i)
        words.append(multiply(conj, Word.generator(i, n, k)))
    return WElement(tuple(words), p.braid.backward)


def prb_act(gamma: WElement, delta: WElement, phi: WElement) -> WElement:
    """(gamma, delta) . phi = delta . phi . gamma^-1."""
    return w_multiply(delta, w_multiply(phi, w_invert(gamma)))


def generators(n: int) -> list[WElement]:
    """zeta_1..zeta_n followed by alpha_ij, i < j."""
    gens = [zeta(i, n) for i in range(1, n + 1)]
    gens += [alpha_w(i, j, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return gens


def random_w(rng: random.Random, n: int, length: int) -> WElement:
    """Product of ``length`` random generators or their inverses."""
    gens = generators(n)
    out = WElement.identity(n)
    for _ in range(length):
        g = rng.choice(gens)
        if rng.random() < 0.5:
            g = w_invert(g)
        out = w_multiply(out, g)
    return out


# -- braid-word syntax -----------------------------------------------------------

_BRAID_TOKEN = re.compile(r"^(?:s(\d+)|a(\d+)_(\d+)|a(\d)(\d)|z(\d+))(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class BraidWordResult:
    braid: BraidAut
    twists: tuple[int, ...]

    @property
    def pure(self) -> bool:
        return self.braid.is_pure()

    def w_element(self) -> WElement:
        return lambda_inverse(PRBElement(self.braid, self.twists))


def parse_braid_word(text: str, n: int) -> BraidWordResult:
    """Evaluate ``"s1 s2^-1 a13 z2"``: Artin ``sK``, pure ``aIJ`` (or ``aI_J``), twists ``zI``.

    Tokens multiply left to right; the result is a braid automorphism plus a
    twist vector.  Twist tokens may only follow a pure prefix.
    """
    braid = BraidAut.identity(n)
    twists = [0] * n
    for tok in text.split():
        m = _BRAID_TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad braid token {tok!r}")
        k = int(m.group(7)) if m.group(7) is not None else 1
        if m.group(1) is not None:
            g = sigma(int(m.group(1)), n)
        elif m.group(2) is not None:
            g = alpha_gen(int(m.group(2)), int(m.group(3)), n)
        elif m.group(4) is not None:
            g = alpha_gen(int(m.group(4)), int(m.group(5)), n)
        else:
            i = int(m.group(6))
            if not 1 <= i <= n:
                raise IndexError(f"z{i} undefined for n={n}")
            # twists commute with pure braids only; elsewhere the strand label is ambiguous
            if braid.permutation() != tuple(range(1, n + 1)):
                raise NotPure(f"twist {tok!r} follows a non-pure braid prefix")
            twists[i - 1] += k
            continue
        step = g if k > 0 else g.inverse()
        for _ in range(abs(k)):
            braid = braid * step
    return BraidWordResult(braid, tuple(twists))


def braid_relation_holds(lhs: Iterable[BraidAut], rhs: Iterable[BraidAut]) -> bool:
    a = b = None
    for g in lhs:
        a = g if a is None else a * g
    for g in rhs:
        b = g if b is None else b * g
    if a is None or b is None:
        raise ValueError("empty relation side")
    return a.forward == b.forward
