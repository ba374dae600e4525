from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from cactilab.pl import NonMonotone, PLCircleMap, frac, pl_compose, pl_equal, preimage_breaks


@st.composite
def pl_maps(draw, max_degree=2):
    k = draw(st.integers(1, 4))
    inner = sorted(set(draw(st.lists(st.integers(1, 23), min_size=k - 1, max_size=k - 1))))
    ts = [Q(0)] + [Q(x, 24) for x in inner] + [Q(1)]
    deg = draw(st.integers(0, max_degree))
    start = Q(draw(st.integers(0, 11)), 12)
    # nondecreasing values from start to start + deg
    cuts = sorted(Q(draw(st.integers(0, 12 * deg)), 12) for _ in inner)
    vs = [start] + [start + c for c in cuts] + [start + deg]
    return PLCircleMap(tuple(ts), tuple(vs))


points = st.integers(0, 95).map(lambda k: Q(k, 96))


def test_constructor_checks():
    with pytest.raises(ValueError):
        PLCircleMap((Q(0), Q(1, 2)), (Q(0), Q(1)))
    with pytest.raises(NonMonotone):
        PLCircleMap((Q(0), Q(1, 2), Q(1)), (Q(0), Q(-1, 4), Q(1)))
    with pytest.raises(ValueError):
        PLCircleMap((Q(0), Q(1)), (Q(0), Q(1, 2)))


def test_lift_is_periodic():
    f = PLCircleMap.wrap_on(Q(1, 4), Q(3, 4), Q(1, 3))
    assert f(Q(1, 2)) == Q(1, 3) + Q(1, 2)
    assert f(Q(3, 2)) == f(Q(1, 2)) + 1
    assert f(Q(-1, 2)) == f(Q(1, 2)) - 1
    assert f.at(Q(7, 8)) == Q(1, 3)
    assert f.support() == [(Q(1, 4), Q(3, 4))]


@settings(max_examples=60, deadline=None)
@given(pl_maps(), pl_maps(), points)
def test_compose_pointwise(f, g, x):
    h = pl_compose(f, g)
    assert h(x) == f(g(x))
    assert frac(h(x)) == frac(f(frac(g(x))))
    assert h.degree == f.degree * g.degree


@settings(max_examples=40, deadline=None)
@given(pl_maps(), pl_maps(), pl_maps())
def test_compose_associative(f, g, h):
    assert pl_equal(pl_compose(pl_compose(f, g), h), pl_compose(f, pl_compose(g, h)))


@given(pl_maps())
def test_identity_and_canonical(f):
    one = PLCircleMap.identity()
    assert pl_equal(pl_compose(f, one), f)
    assert pl_equal(pl_compose(one, f), f)
    c = f.canonical()
    assert pl_equal(c, f)
    assert 0 <= c.v[0] < 1


@given(pl_maps(), st.integers(-3, 3))
def test_pl_equal_up_to_integer_shift(f, k):
    g = PLCircleMap(f.t, tuple(v + k for v in f.v))
    assert pl_equal(f, g)
    h = PLCircleMap(f.t, tuple(v + Q(1, 7) for v in f.v))
    assert not pl_equal(f, h)


def test_preimage_breaks():
    # lift 0 -> 2 over [0, 1]: value 1/2 + Z is hit at 1/4 and 3/4
    assert preimage_breaks([Q(0), Q(1)], [Q(0), Q(2)], [Q(1, 2)]) == [Q(0), Q(1, 4), Q(3, 4), Q(1)]
