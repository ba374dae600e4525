"""Generic operad and realization-system interfaces with an exact axiom harness.

Conventions: operad indices (``compose(x, i, y)``, boundary maps) are 1-based.
Permutations are 0-based tuples with ``perm[i] = sigma(i)``; the action is a
right action and products compose as functions, ``(st)(i) = s(t(i))``.
"""

from __future__ import annotations

import json
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

Perm = tuple[int, ...]
Sampler = Callable[[random.Random, int], Any]


# -- permutations --------------------------------------------------------------

def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_compose(s: Sequence[int], t: Sequence[int]) -> Perm:
    """(s t)(i) = s(t(i))."""
    return tuple(s[t[i]] for i in range(len(t)))


def perm_inverse(s: Sequence[int]) -> Perm:
    inv = [0] * len(s)
    for i, j in enumerate(s):
        inv[j] = i
    return tuple(inv)


def random_perm(rng: random.Random, n: int) -> Perm:
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def offsets(sizes: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for m in sizes:
        out.append(acc)
        acc += m
    return out


def block_sum(perms: Sequence[Sequence[int]]) -> Perm:
    """sigma_1 + ... + sigma_n acting within consecutive blocks."""
    out: list[int] = []
    base = 0
    for p in perms:
        out.extend(base + k for k in p)
        base += len(p)
    return tuple(out)


def block_permutation(sigma: Sequence[int], sizes: Sequence[int]) -> Perm:
    """sigma(m_1, ..., m_n): permutes blocks of sizes m_k rigidly.

    Block k of the target arrangement (sizes in the order ``sizes``) comes
    from block sigma(k) of the source arrangement, whose block j has size
    m_{sigma^-1(j)}.
    """
    n = len(sigma)
    inv = perm_inverse(sigma)
    new_off = offsets(sizes)
    old_off = offsets([sizes[inv[j]] for j in range(n)])
    out = [0] * sum(sizes)
    for k in range(n):
        for r in range(sizes[k]):
            out[new_off[k] + r] = old_off[sigma[k]] + r
    return tuple(out)


# -- interfaces ----------------------------------------------------------------

class OperadInstance(ABC):
    name = "operad"

    @abstractmethod
    def unit(self) -> Any: ...

    @abstractmethod
    def arity(self, x) -> int: ...

    @abstractmethod
    def compose(self, x, i: int, y) -> Any: ...

    @abstractmethod
    def act(self, x, perm: Sequence[int]) -> Any: ...

    @abstractmethod
    def equal(self, x, y) -> bool: ...

    def gamma(self, x, ys: Sequence) -> Any:
        # compose from the right so earlier indices stay put
        out = x
        for i in range(len(ys), 0, -1):
            out = self.compose(out, i, ys[i - 1])
        return out

    def is_valid(self, x) -> bool:
        return True

    def describe(self, x) -> Any:
        return repr(x)


class RealizationInstance(ABC):
    """Realizations |x| as concrete point sets with exact boundary and pasting maps."""

    @abstractmethod
    def circle_samples(self, count: int) -> list: ...

    @abstractmethod
    def samples(self, x, count: int) -> list:
        """Finitely many points of |x|, computed from x alone."""

    @abstractmethod
    def contains(self, x, p) -> bool: ...

    @abstractmethod
    def boundary_in(self, x, i: int, s) -> Any: ...

    @abstractmethod
    def boundary_out(self, x, s) -> Any: ...

    @abstractmethod
    def symmetry(self, x, perm: Sequence[int], p) -> Any:
        """sigma^*: |x| -> |x sigma|."""

    @abstractmethod
    def lower(self, x, ys: Sequence, p) -> Any:
        """The lower map |x| -> |gamma(x; ys)| of the pasting square."""

    @abstractmethod
    def right(self, x, ys: Sequence, i: int, q) -> Any:
        """The right-hand map |y_i| -> |gamma(x; ys)|."""

    @abstractmethod
    def lower_preimage(self, x, ys: Sequence, p, prefer: int | None = None) -> Any:
        """Some point of |x| mapped to p by the lower map, or None.

        ``prefer`` asks for a preimage on the image of boundary ``prefer`` if one exists.
        """

    @abstractmethod
    def right_preimage(self, x, ys: Sequence, i: int, p) -> Any:
        """The point of |y_i| mapped to p by the right-hand map, or None."""

    @abstractmethod
    def on_incoming(self, x, i: int, p) -> bool:
        """Is p in the image of boundary i of |x|?"""

    @abstractmethod
    def on_outgoing(self, x, p) -> bool:
        """Is p in the image of the outgoing boundary of |x|?"""

    def point_equal(self, p, q) -> bool:
        return p == q

    def describe_point(self, p) -> Any:
        return repr(p)


# -- reports -------------------------------------------------------------------

@dataclass
class AxiomResult:
    axiom: str
    passed: bool = True
    witness: Any = None
    trials: int = 0

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "pass": self.passed, "witness": self.witness,
                "trials": self.trials}


@dataclass
class AxiomReport:
    results: list[AxiomResult]
    input_errors: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results) and not self.input_errors

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == name:
                return r
        raise KeyError(name)

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.results]

    def dumps(self) -> str:
        return json.dumps({"results": self.to_json(), "input_errors": self.input_errors},
                          indent=2, sort_keys=True)


class InputError(Exception):
    pass


class _Trial:
    """Book-keeping for one axiom across trials: keeps the first witness only."""

    def __init__(self, result: AxiomResult):
        self.result = result

    def fail(self, **witness) -> None:
        if self.result.passed:
            self.result.passed = False
            self.result.witness = witness


def _draw(op: OperadInstance, sampler: Sampler, rng: random.Random, arity: int):
    x = sampler(rng, arity)
    if op.arity(x) != arity or not op.is_valid(x):
        raise InputError(f"sampler produced an invalid element of arity {arity}: {op.describe(x)}")
    return x


def _arities(rng: random.Random, k: int, max_arity: int, budget: int) -> list[int]:
    """k random arities in [0, max_arity] with sum at most ``budget``."""
    ars = [rng.randint(0, max_arity) for _ in range(k)]
    while sum(ars) > budget:
        j = rng.choice([i for i, a in enumerate(ars) if a > 0])
        ars[j] -= 1
    return ars


# -- operad axioms -------------------------------------------------------------

OPERAD_AXIOMS = ("unit", "associativity", "equivariance")


def check_operad_axioms(op: OperadInstance, sampler: Sampler, trials: int = 100,
                        max_arity: int = 3, seed: int = 0, budget: int = 12,
                        min_arity: int = 1) -> AxiomReport:
    """Unit laws, gamma-associativity and both equivariance laws, exactly."""
    rng = random.Random(seed)
    results = {name: AxiomResult(name) for name in OPERAD_AXIOMS}
    errors: list[str] = []
    u = op.unit()
    for _ in range(trials):
        try:
            n = rng.randint(min_arity, max_arity)
            x = _draw(op, sampler, rng, n)
            ms = _arities(rng, n, max_arity, budget)
            ys = [_draw(op, sampler, rng, m) for m in ms]
            ls = [_arities(rng, m, max_arity, budget // max(1, n)) for m in ms]
            zs = [[_draw(op, sampler, rng, l) for l in row] for row in ls]
        except InputError as e:
            errors.append(str(e))
            continue
        _unit_trial(op, _Trial(results["unit"]), u, x)
        _assoc_trial(op, _Trial(results["associativity"]), x, ys, zs)
        _equivariance_trial(op, _Trial(results["equivariance"]), rng, x, ys)
        for r in results.values():
            r.trials += 1
    return AxiomReport(list(results.values()), errors)


def _unit_trial(op, t: _Trial, u, x) -> None:
    d = op.describe
    n = op.arity(x)
    if not op.equal(op.compose(u, 1, x), x):
        t.fail(law="1 o_1 x = x", x=d(x))
    if not op.equal(op.gamma(u, [x]), x):
        t.fail(law="gamma(1; x) = x", x=d(x))
    for i in range(1, n + 1):
        if not op.equal(op.compose(x, i, u), x):
            t.fail(law=f"x o_{i} 1 = x", x=d(x))
    if not op.equal(op.gamma(x, [u] * n), x):
        t.fail(law="gamma(x; 1, ..., 1) = x", x=d(x))


def _assoc_trial(op, t: _Trial, x, ys, zs) -> None:
    d = op.describe
    g = op.gamma(x, ys)
    flat = [z for row in zs for z in row]
    lhs = op.gamma(g, flat)
    rhs = op.gamma(x, [op.gamma(y, row) for y, row in zip(ys, zs)])
    if not op.equal(lhs, rhs):
        t.fail(law="gamma(gamma(x; y); z) = gamma(x; gamma(y_i; z_i))",
               x=d(x), ys=[d(y) for y in ys], zs=[[d(z) for z in row] for row in zs])
        return
    # gamma agrees with iterated partial composition
    seq = x
    for i in range(len(ys), 0, -1):
        seq = op.compose(seq, i, ys[i - 1])
    if not op.equal(seq, g):
        t.fail(law="gamma(x; y) = iterated o_i", x=d(x), ys=[d(y) for y in ys])


def _equivariance_trial(op, t: _Trial, rng, x, ys) -> None:
    d = op.describe
    n = op.arity(x)
    sizes = [op.arity(y) for y in ys]
    s, tau = random_perm(rng, n), random_perm(rng, n)
    if not op.equal(op.act(op.act(x, s), tau), op.act(x, perm_compose(s, tau))):
        t.fail(law="(x s) t = x (s t)", x=d(x), sigma=list(s), tau=list(tau))
        return
    inv = perm_inverse(s)
    lhs = op.gamma(op.act(x, s), ys)
    rhs = op.act(op.gamma(x, [ys[inv[j]] for j in range(n)]), block_permutation(s, sizes))
    if not op.equal(lhs, rhs):
        t.fail(law="gamma(x s; y) = gamma(x; y_{s^-1}) s(m)", x=d(x), ys=[d(y) for y in ys],
               sigma=list(s))
        return
    ps = [random_perm(rng, m) for m in sizes]
    lhs = op.gamma(x, [op.act(y, p) for y, p in zip(ys, ps)])
    rhs = op.act(op.gamma(x, ys), block_sum(ps))
    if not op.equal(lhs, rhs):
        t.fail(law="gamma(x; y_i s_i) = gamma(x; y)(s_1 + ... + s_n)", x=d(x),
               ys=[d(y) for y in ys], sigmas=[list(p) for p in ps])


# -- realization axioms --------------------------------------------------------

REALIZATION_AXIOMS = ("axiom1_unit", "axiom2_symmetries", "axiom3_pasting_boundaries",
                      "axiom4_pasting_symmetries_I", "axiom5_pasting_symmetries_II",
                      "axiom6_pasting_associativity")


def check_realization_axioms(op: OperadInstance, re: RealizationInstance, sampler: Sampler,
                             trials: int = 100, samples: int = 64, max_arity: int = 4,
                             seed: int = 0, budget: int = 6) -> AxiomReport:
    """The six realization axioms as exact point equalities on sample points."""
    rng = random.Random(seed)
    results = {name: AxiomResult(name) for name in REALIZATION_AXIOMS}
    errors: list[str] = []
    circle = re.circle_samples(samples)
    u = op.unit()
    for _ in range(trials):
        try:
            n = rng.randint(0, max_arity)
            x = _draw(op, sampler, rng, n)
            ms = _arities(rng, n, max_arity, budget)
            ys = [_draw(op, sampler, rng, m) for m in ms]
            ls = [_arities(rng, m, max_arity, budget) for m in ms]
            zs = [[_draw(op, sampler, rng, l) for l in row] for row in ls]
        except InputError as e:
            errors.append(str(e))
            continue
        ctx = _Ctx(op, re, circle, samples)
        ctx.axiom1(_Trial(results["axiom1_unit"]), u, x)
        ctx.axiom2(_Trial(results["axiom2_symmetries"]), rng, x)
        ctx.axiom3(_Trial(results["axiom3_pasting_boundaries"]), x, ys)
        ctx.axiom4(_Trial(results["axiom4_pasting_symmetries_I"]), rng, x, ys)
        ctx.axiom5(_Trial(results["axiom5_pasting_symmetries_II"]), rng, x, ys)
        ctx.axiom6(_Trial(results["axiom6_pasting_associativity"]), x, ys, zs)
        for r in results.values():
            r.trials += 1
    return AxiomReport(list(results.values()), errors)


class _Ctx:
    def __init__(self, op: OperadInstance, re: RealizationInstance, circle: list, count: int):
        self.op, self.re, self.circle, self.count = op, re, circle, count

    def eq(self, p, q) -> bool:
        return self.re.point_equal(p, q)

    def wit(self, **kw) -> dict:
        out = {}
        for k, v in kw.items():
            if k.startswith("el_"):
                out[k[3:]] = self.op.describe(v)
            elif k.startswith("pt_"):
                out[k[3:]] = self.re.describe_point(v)
            else:
                out[k] = v
        return out

    def axiom1(self, t: _Trial, u, x) -> None:
        re, op = self.re, self.op
        image = []
        for s in self.circle:
            a, b = re.boundary_in(u, 1, s), re.boundary_out(u, s)
            if not self.eq(a, b) or not re.contains(u, a):
                t.fail(check="boundary maps of the unit coincide", pt_s=s, pt_in=a, pt_out=b)
                return
            image.append(a)
        for k, a in enumerate(image):
            if any(self.eq(a, b) for b in image[:k]):
                t.fail(check="boundary of the unit is injective on samples", pt_point=a)
                return
        for p in re.samples(u, self.count):
            if not any(self.eq(p, a) for a in image):
                t.fail(check="boundary of the unit is onto on samples", pt_point=p)
                return
        # pasting with x = unit: right map is the identity, lower o d_1 = d_out
        for p in re.samples(x, self.count):
            if not self.eq(re.right(u, [x], 1, p), p):
                t.fail(check="right map of gamma(1; y) is the identity", el_y=x, pt_point=p)
                return
        for s in self.circle:
            if not self.eq(re.lower(u, [x], re.boundary_in(u, 1, s)), re.boundary_out(x, s)):
                t.fail(check="lower map of gamma(1; y) sends d_1 to d_out", el_y=x, pt_s=s)
                return
        # pasting with y_i = unit: lower map is the identity, right_i o d_out = d_i
        n = op.arity(x)
        us = [u] * n
        for p in re.samples(x, self.count):
            if not self.eq(re.lower(x, us, p), p):
                t.fail(check="lower map of gamma(x; 1, ..., 1) is the identity", el_x=x,
                       pt_point=p)
                return
        for i in range(1, n + 1):
            for s in self.circle:
                if not self.eq(re.right(x, us, i, re.boundary_out(u, s)), re.boundary_in(x, i, s)):
                    t.fail(check="right map of gamma(x; 1, ..., 1) is d_i", el_x=x, i=i, pt_s=s)
                    return

    def axiom2(self, t: _Trial, rng, x) -> None:
        re, op = self.re, self.op
        n = op.arity(x)
        s, tau = random_perm(rng, n), random_perm(rng, n)
        xt = op.act(x, tau)
        ts = perm_compose(tau, s)
        for p in re.samples(x, self.count):
            lhs = re.symmetry(xt, s, re.symmetry(x, tau, p))
            rhs = re.symmetry(x, ts, p)
            if not self.eq(lhs, rhs):
                t.fail(check="s^* o t^* = (t s)^*", el_x=x, sigma=list(s), tau=list(tau),
                       pt_point=p)
                return
        xs = op.act(x, s)
        inv = perm_inverse(s)
        for q in self.circle:
            for i in range(1, n + 1):
                lhs = re.symmetry(x, s, re.boundary_in(x, i, q))
                if not self.eq(lhs, re.boundary_in(xs, inv[i - 1] + 1, q)) or not re.contains(xs, lhs):
                    t.fail(check="s^* o d_i = d_{s^-1 i}", el_x=x, sigma=list(s), i=i, pt_s=q)
                    return
            if not self.eq(re.symmetry(x, s, re.boundary_out(x, q)), re.boundary_out(xs, q)):
                t.fail(check="s^* o d_out = d_out", el_x=x, sigma=list(s), pt_s=q)
                return

    def axiom3(self, t: _Trial, x, ys) -> None:
        re, op = self.re, self.op
        g = op.gamma(x, ys)
        offs = offsets([op.arity(y) for y in ys])
        for q in self.circle:
            if not self.eq(re.lower(x, ys, re.boundary_out(x, q)), re.boundary_out(g, q)):
                t.fail(check="lower o d_out = d_out", el_x=x, ys=[op.describe(y) for y in ys], pt_s=q)
                return
            for i, y in enumerate(ys, 1):
                a = re.lower(x, ys, re.boundary_in(x, i, q))
                b = re.right(x, ys, i, re.boundary_out(y, q))
                if not self.eq(a, b):
                    t.fail(check="pasting square commutes", el_x=x,
                           ys=[op.describe(y) for y in ys], i=i, pt_s=q)
                    return
                for j in range(1, op.arity(y) + 1):
                    a = re.right(x, ys, i, re.boundary_in(y, j, q))
                    b = re.boundary_in(g, offs[i - 1] + j, q)
                    if not self.eq(a, b):
                        t.fail(check="right_i o d_j = d_(i,j)", el_x=x,
                               ys=[op.describe(y) for y in ys], i=i, j=j, pt_s=q)
                        return

    def axiom4(self, t: _Trial, rng, x, ys) -> None:
        re, op = self.re, self.op
        ps = [random_perm(rng, op.arity(y)) for y in ys]
        ysig = [op.act(y, p) for y, p in zip(ys, ps)]
        total = block_sum(ps)
        g = op.gamma(x, ys)
        for p in re.samples(x, self.count):
            if not self.eq(re.symmetry(g, total, re.lower(x, ys, p)), re.lower(x, ysig, p)):
                t.fail(check="(+s_i)^* o lower = lower", el_x=x, ys=[op.describe(y) for y in ys],
                       sigmas=[list(p) for p in ps], pt_point=p)
                return
        for i, (y, p_i) in enumerate(zip(ys, ps), 1):
            for q in re.samples(y, self.count):
                a = re.symmetry(g, total, re.right(x, ys, i, q))
                b = re.right(x, ysig, i, re.symmetry(y, p_i, q))
                if not self.eq(a, b):
                    t.fail(check="(+s_i)^* o right_i = right_i o s_i^*", el_x=x,
                           ys=[op.describe(y) for y in ys], sigmas=[list(p) for p in ps], i=i,
                           pt_point=q)
                    return

    def axiom5(self, t: _Trial, rng, x, ys) -> None:
        re, op = self.re, self.op
        n = op.arity(x)
        s = random_perm(rng, n)
        inv = perm_inverse(s)
        yinv = [ys[inv[j]] for j in range(n)]
        tau = block_permutation(s, [op.arity(y) for y in ys])
        g_old = op.gamma(x, yinv)
        xs = op.act(x, s)
        for p in re.samples(x, self.count):
            a = re.symmetry(g_old, tau, re.lower(x, yinv, p))
            b = re.lower(xs, ys, re.symmetry(x, s, p))
            if not self.eq(a, b):
                t.fail(check="s(m)^* o lower = lower o s^*", el_x=x, ys=[op.describe(y) for y in ys],
                       sigma=list(s), pt_point=p)
                return
        for k, y in enumerate(ys, 1):
            for q in re.samples(y, self.count):
                a = re.symmetry(g_old, tau, re.right(x, yinv, s[k - 1] + 1, q))
                b = re.right(xs, ys, k, q)
                if not self.eq(a, b):
                    t.fail(check="s(m)^* o right_{s(k)} = right_k", el_x=x,
                           ys=[op.describe(y) for y in ys], sigma=list(s), k=k, pt_point=q)
                    return

    def axiom6(self, t: _Trial, x, ys, zs) -> None:
        re, op = self.re, self.op
        g = op.gamma(x, ys)
        flat = [z for row in zs for z in row]
        gys = [op.gamma(y, row) for y, row in zip(ys, zs)]
        desc = dict(el_x=x, ys=[op.describe(y) for y in ys],
                    zs=[[op.describe(z) for z in row] for row in zs])
        for p in re.samples(x, self.count):
            a = re.lower(g, flat, re.lower(x, ys, p))
            b = re.lower(x, gys, p)
            if not self.eq(a, b):
                t.fail(check="two maps from |x| agree", pt_point=p, **desc)
                return
        offs = offsets([len(row) for row in zs])
        for i, (y, row) in enumerate(zip(ys, zs), 1):
            for q in re.samples(y, self.count):
                a = re.lower(g, flat, re.right(x, ys, i, q))
                b = re.right(x, gys, i, re.lower(y, row, q))
                if not self.eq(a, b):
                    t.fail(check=f"two maps from |y_{i}| agree", pt_point=q, **desc)
                    return
            for j, z in enumerate(row, 1):
                for r in re.samples(z, self.count):
                    a = re.right(g, flat, offs[i - 1] + j, r)
                    b = re.right(x, gys, i, re.right(y, row, j, r))
                    if not self.eq(a, b):
                        t.fail(check=f"two maps from |z_{i}^{j}| agree", pt_point=r, **desc)
                        return


# -- pasting pushout -----------------------------------------------------------

@dataclass
class PushoutResult:
    passed: bool
    witness: Any = None
    sampled: int = 0
    covered: int = 0

    @property
    def cover_fraction(self):
        return Fraction(self.covered, self.sampled) if self.sampled else Fraction(0)


def check_pasting_pushout(op: OperadInstance, re: RealizationInstance, x, ys: Sequence,
                          density: int = 64) -> PushoutResult:
    """Commutativity, joint surjectivity and boundary-only overlap of the pasting square."""
    if density <= 0:
        raise ValueError("sample density must be positive")
    ys = list(ys)
    if op.arity(x) != len(ys):
        raise ValueError(f"arity {op.arity(x)} needs {op.arity(x)} inputs, got {len(ys)}")
    circle = re.circle_samples(density)
    d = op.describe
    base = {"x": d(x), "ys": [d(y) for y in ys]}
    for i, y in enumerate(ys, 1):
        for s in circle:
            a = re.lower(x, ys, re.boundary_in(x, i, s))
            b = re.right(x, ys, i, re.boundary_out(y, s))
            if not re.point_equal(a, b):
                return PushoutResult(False, dict(base, check="commutes", i=i,
                                                 s=re.describe_point(s)))
    g = op.gamma(x, ys)
    pts = re.samples(g, density)
    covered = 0
    for P in pts:
        low = re.lower_preimage(x, ys, P)
        if low is not None and not re.point_equal(re.lower(x, ys, low), P):
            return PushoutResult(False, dict(base, check="lower preimage", point=re.describe_point(P)),
                                 len(pts), covered)
        rights = {}
        for i in range(1, len(ys) + 1):
            q = re.right_preimage(x, ys, i, P)
            if q is not None:
                if not re.point_equal(re.right(x, ys, i, q), P):
                    return PushoutResult(False, dict(base, check="right preimage", i=i,
                                                     point=re.describe_point(P)), len(pts), covered)
                rights[i] = q
        if low is None and not rights:
            return PushoutResult(False, dict(base, check="jointly surjective",
                                             point=re.describe_point(P)), len(pts), covered)
        covered += 1
        if len(rights) > 1 and low is None:
            return PushoutResult(False, dict(base, check="right images meet away from |x|",
                                             point=re.describe_point(P)), len(pts), covered)
        if low is not None:
            for i, q in rights.items():
                p = re.lower_preimage(x, ys, P, prefer=i)
                if not (re.on_incoming(x, i, p) and re.on_outgoing(ys[i - 1], q)):
                    return PushoutResult(False, dict(base, check="overlap only on boundaries", i=i,
                                                     point=re.describe_point(P)), len(pts), covered)
    return PushoutResult(True, None, len(pts), covered)
