import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from cactilab.cacti import base_cactus, pontrjagin_cactus, random_cactus, rotation_cactus, unit
from cactilab.loop_algebra import (GROUPS, CircleGroup, Loop, LoopError, UniTriangular3,
                                   check_algebra_associativity, check_equivariance, check_loop, concatenate,
                                   constant_loop, loop_equal, omega, patch, patch_violations, random_loop,
                                   rotate_loop, translate)

seeds = st.integers(0, 2**32)
group_tags = st.sampled_from(sorted(GROUPS))

ut3 = UniTriangular3()
s1 = CircleGroup()


def test_ut3_is_a_group():
    rng = random.Random(0)
    for _ in range(50):
        a, b, c = (tuple(Q(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)) for _ in range(3))
        assert ut3.mul(ut3.mul(a, b), c) == ut3.mul(a, ut3.mul(b, c))
        assert ut3.mul(a, ut3.inv(a)) == ut3.identity()
        # matrix check of the (1,3) entry
        assert ut3.mul(a, b)[2] == a[2] + b[2] + a[0] * b[1]


def test_circle_lattice():
    assert s1.equal((Q(3, 2),), (Q(1, 2),))
    assert not s1.equal((Q(1, 3),), (Q(1, 2),))
    assert not ut3.equal((Q(1), Q(0), Q(0)), ut3.identity())


def test_loop_checks():
    with pytest.raises(LoopError):
        check_loop(ut3, Loop((Q(0), Q(1)), ((Q(0),) * 3, (Q(1), Q(0), Q(0)))))
    with pytest.raises(LoopError):
        Loop((Q(0), Q(1, 2)), ((Q(0),), (Q(0),)))
    check_loop(s1, Loop((Q(0), Q(1)), ((Q(0),), (Q(1),))))


@settings(max_examples=25, deadline=None)
@given(seeds, group_tags)
def test_pontrjagin_is_concatenation(seed, tag):
    group = GROUPS[tag]
    rng = random.Random(seed)
    f, g = random_loop(rng, group), random_loop(rng, group)
    assert loop_equal(group, omega(pontrjagin_cactus(), [f, g], group), concatenate(group, f, g))


@settings(max_examples=25, deadline=None)
@given(seeds, group_tags, st.integers(0, 23))
def test_rotation(seed, tag, k):
    group = GROUPS[tag]
    rng = random.Random(seed)
    f = random_loop(rng, group)
    s = Q(k, 24)
    assert loop_equal(group, omega(rotation_cactus(s), [f], group), rotate_loop(group, f, s))


@settings(max_examples=20, deadline=None)
@given(seeds, group_tags)
def test_unit_acts_trivially(seed, tag):
    group = GROUPS[tag]
    f = random_loop(random.Random(seed), group)
    assert loop_equal(group, omega(unit(), [f], group), f)


@settings(max_examples=15, deadline=None)
@given(seeds, group_tags)
def test_associativity(seed, tag):
    group = GROUPS[tag]
    rng = random.Random(seed)
    c = random_cactus(rng, rng.randint(1, 3))
    ds = [random_cactus(rng, rng.randint(0, 2)) for _ in range(c.n)]
    loops = [[random_loop(rng, group) for _ in range(d.n)] for d in ds]
    assert check_algebra_associativity(c, ds, loops, group)


@settings(max_examples=15, deadline=None)
@given(seeds, group_tags)
def test_equivariance(seed, tag):
    group = GROUPS[tag]
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    c = random_cactus(rng, n)
    perm = list(range(n))
    rng.shuffle(perm)
    loops = [random_loop(rng, group) for _ in range(n)]
    assert check_equivariance(c, perm, loops, group)


@settings(max_examples=15, deadline=None)
@given(seeds, group_tags)
def test_patch_is_independent_of_traversal_order(seed, tag):
    group = GROUPS[tag]
    rng = random.Random(seed)
    c = random_cactus(rng, rng.randint(1, 4))
    loops = [random_loop(rng, group) for _ in range(c.n)]
    a = patch(c, loops, group)
    b = patch(c, loops, group, random.Random(seed + 1))
    assert not patch_violations(a)
    assert all(group.equal(x, y) for x, y in zip(a.g, b.g))


def test_translate_and_constant():
    f = Loop((Q(0), Q(1, 2), Q(1)), ((Q(0),) * 3, (Q(1), Q(2), Q(3)), (Q(0),) * 3))
    g = (Q(1), Q(1), Q(0))
    t = translate(ut3, g, f)
    assert t(Q(1, 2)) == ut3.mul(g, f(Q(1, 2)))
    c = constant_loop(ut3)
    assert loop_equal(ut3, omega(base_cactus(2), [c, c], ut3), c)


def test_omega_needs_matching_loop_count():
    with pytest.raises(ValueError):
        omega(base_cactus(2), [constant_loop(s1)], s1)
