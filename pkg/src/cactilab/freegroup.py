"""Reduced words in the free group F_n and endomorphisms given by generator images.

Letters are pairs ``(index, sign)`` with ``1 <= index <= n`` and ``sign`` in
``{+1, -1}``.  Words are freely reduced on construction, so structural
equality is group equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]


class RankError(ValueError):
    pass


def _check_letters(letters: Iterable[Letter], n: int) -> list[Letter]:
    out = []
    for letter in letters:
        i, s = letter
        if not 1 <= i <= n:
            raise IndexError(f"generator index {i} out of range for rank {n}")
        if s not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {s}")
        out.append((int(i), int(s)))
    return out


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for i, s in letters:
        if stack and stack[-1][0] == i and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((i, s))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word of ambient rank ``n``."""

    n: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        checked = _check_letters(self.letters, self.n)
        object.__setattr__(self, "letters", _free_reduce(checked))

    @classmethod
    def identity(cls, n: int) -> Word:
        return cls(n, ())

    @classmethod
    def generator(cls, i: int, n: int, power: int = 1) -> Word:
        sign = 1 if power > 0 else -1
        return cls(n, ((i, sign),) * abs(power))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else invert(self)
        out = Word.identity(self.n)
        for _ in range(abs(k)):
            out = multiply(out, base)
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return format_word(self)


def reduce(letters: Iterable[Letter], n: int) -> Word:
    return Word(n, tuple(letters))


def _same_rank(u: Word, v: Word) -> None:
    if u.n != v.n:
        raise RankError(f"rank mismatch: {u.n} vs {v.n}")


def multiply(u: Word, v: Word) -> Word:
    _same_rank(u, v)
    return Word(u.n, u.letters + v.letters)


def invert(u: Word) -> Word:
    return Word(u.n, tuple((i, -s) for i, s in reversed(u.letters)))


def exponent_sum(w: Word, i: int) -> int:
    if not 1 <= i <= w.n:
        raise IndexError(f"generator index {i} out of range for rank {w.n}")
    return sum(s for j, s in w.letters if j == i)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``c * core * c^-1`` with ``core`` cyclically reduced.

    Returns ``(core, c)``.
    """
    letters = w.letters
    k = 0
    while 2 * k + 1 < len(letters):
        a, b = letters[k], letters[-1 - k]
        if a[0] == b[0] and a[1] == -b[1]:
            k += 1
        else:
            break
    conj = Word(w.n, letters[:k])
    core = Word(w.n, letters[k:len(letters) - k])
    return core, conj


def is_conjugate_to_generator(w: Word, i: int) -> bool:
    core, _ = cyclic_reduce(w)
    return core.letters == ((i, 1),)


@dataclass(frozen=True)
class Endomorphism:
    """Endomorphism of F_n determined by the images of x_1..x_n."""

    n: int
    images: tuple[Word, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.n:
            raise RankError(f"expected {self.n} images, got {len(images)}")
        for w in images:
            if w.n != self.n:
                raise RankError(f"image of rank {w.n} in endomorphism of rank {self.n}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Endomorphism:
        return cls(n, tuple(Word.generator(i, n) for i in range(1, n + 1)))

    @classmethod
    def from_images(cls, images: Sequence[Word]) -> Endomorphism:
        if not images:
            raise ValueError("need at least one image to infer the rank")
        return cls(images[0].n, tuple(images))

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def image(self, i: int) -> Word:
        return self.images[i - 1]

    def fixes_generators(self) -> bool:
        return all(img.letters == ((i, 1),) for i, img in enumerate(self.images, 1))


def apply(e: Endomorphism, w: Word) -> Word:
    if e.n != w.n:
        raise RankError(f"rank mismatch: {e.n} vs {w.n}")
    out: list[Letter] = []
    for i, s in w.letters:
        img = e.images[i - 1].letters
        if s == 1:
            out.extend(img)
        else:
            out.extend((j, -t) for j, t in reversed(img))
    return Word(e.n, tuple(out))


def compose(e: Endomorphism, f: Endomorphism) -> Endomorphism:
    """The endomorphism ``e o f`` (apply ``f`` first)."""
    if e.n != f.n:
        raise RankError(f"rank mismatch: {e.n} vs {f.n}")
    return Endomorphism(e.n, tuple(apply(e, img) for img in f.images))


def conjugating_endomorphism(ws: Sequence[Word]) -> Endomorphism:
    """alpha(w): x_i -> w_i x_i w_i^-1."""
    n = len(ws)
    images = []
    for i, w in enumerate(ws, 1):
        if w.n != n:
            raise RankError(f"word of rank {w.n} in a tuple of length {n}")
        images.append(Word(n, w.letters + ((i, 1),) + invert(w).letters))
    return Endomorphism(n, tuple(images))


def product_word(n: int) -> Word:
    """x_1 x_2 ... x_n."""
    return Word(n, tuple((i, 1) for i in range(1, n + 1)))


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


def format_word(w: Word) -> str:
    if not w.letters:
        return "e"
    return " ".join(f"x{i}" if s == 1 else f"x{i}^-1" for i, s in w.letters)


def parse_word(text: str, n: int) -> Word:
    """Parse ``"x1 x2^-1 x1"``; ``"e"`` (or blank) is the empty word."""
    text = text.strip()
    if text in ("", "e"):
        return Word.identity(n)
    letters: list[Letter] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        i = int(m.group(1))
        k = int(m.group(2)) if m.group(2) is not None else 1
        if k == 0:
            raise ValueError(f"zero exponent in token {tok!r}")
        letters.extend([(i, 1 if k > 0 else -1)] * abs(k))
    return reduce(letters, n)
