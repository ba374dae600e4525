import json
import random

import pytest
from hypothesis import given, strategies as st

from cactilab import cacti, framed_discs
from cactilab.framed_discs import FramedDiscConfig, LittleDisc
from cactilab.operad_core import (block_permutation, block_sum, check_operad_axioms, check_pasting_pushout,
                                  check_realization_axioms, offsets, perm_compose, perm_identity,
                                  perm_inverse)

perms = st.integers(0, 6).flatmap(lambda n: st.permutations(list(range(n))).map(tuple))


@given(st.integers(0, 6).flatmap(lambda n: st.tuples(*[st.permutations(list(range(n)))] * 3)))
def test_permutation_group(triple):
    a, b, c = (tuple(p) for p in triple)
    assert perm_compose(perm_compose(a, b), c) == perm_compose(a, perm_compose(b, c))
    assert perm_compose(a, perm_inverse(a)) == perm_identity(len(a))


@given(perms, st.data())
def test_block_permutation_moves_blocks_rigidly(sigma, data):
    n = len(sigma)
    sizes = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    tau = block_permutation(sigma, sizes)
    assert sorted(tau) == list(range(sum(sizes)))
    inv = perm_inverse(sigma)
    old_off = offsets([sizes[inv[j]] for j in range(n)])
    new_off = offsets(sizes)
    for k in range(n):
        for r in range(sizes[k]):
            assert tau[new_off[k] + r] == old_off[sigma[k]] + r


def test_block_permutation_trivial_sizes():
    assert block_permutation((1, 0), [1, 1]) == (1, 0)
    assert block_sum([(1, 0), (0,)]) == (1, 0, 2)


# -- real instances pass ---------------------------------------------------------

def test_discs_operad_axioms():
    report = check_operad_axioms(framed_discs.DiscsOperad(), framed_discs.random_config, trials=25)
    assert report.passed, report.dumps()
    assert all(r.trials == 25 for r in report.results)


def test_cacti_operad_axioms():
    report = check_operad_axioms(cacti.CactiOperad(), cacti.random_cactus, trials=25)
    assert report.passed, report.dumps()


def test_discs_realization_axioms_small():
    report = check_realization_axioms(framed_discs.DiscsOperad(), framed_discs.DiscsRealization(),
                                      framed_discs.random_config, trials=6, samples=16, max_arity=3)
    assert report.passed, report.dumps()


def test_cacti_realization_axioms_small():
    report = check_realization_axioms(cacti.CactiOperad(), cacti.CactiRealization(),
                                      cacti.random_cactus, trials=10, samples=16, max_arity=3)
    assert report.passed, report.dumps()


def test_report_json_shape():
    report = check_operad_axioms(cacti.CactiOperad(), cacti.random_cactus, trials=2)
    data = json.loads(report.dumps())
    assert [r["axiom"] for r in data["results"]] == ["unit", "associativity", "equivariance"]
    assert set(data["results"][0]) == {"axiom", "pass", "witness", "trials"}


# -- mutants are caught ------------------------------------------------------------

class FrameDroppingDiscs(framed_discs.DiscsOperad):
    """o_i forgets to multiply the inner frames by the outer frame."""

    def compose(self, x, i, y):
        outer = x.disc(i)
        inner = tuple(LittleDisc(outer(d.center), outer.radius * d.radius, d.frame) for d in y.discs)
        return FramedDiscConfig(x.discs[:i - 1] + inner + x.discs[i:], x.open)

    def gamma(self, x, ys):
        out = x
        for i in range(len(ys), 0, -1):
            out = self.compose(out, i, ys[i - 1])
        return out


class NonReindexingDiscs(framed_discs.DiscsOperad):
    def act(self, x, perm):
        return x


def _rotated_sampler(rng, n):
    # always rotate the frames so the dropped frame product matters
    while True:
        a = framed_discs.random_config(rng, n)
        if all(d.frame != framed_discs.ONE for d in a.discs):
            return a


def test_frame_dropping_breaks_associativity():
    report = check_operad_axioms(FrameDroppingDiscs(), _rotated_sampler, trials=30, max_arity=2)
    assert not report["associativity"].passed
    assert report["associativity"].witness["law"].startswith("gamma(gamma")


def test_non_reindexing_action_breaks_axiom_2():
    report = check_realization_axioms(NonReindexingDiscs(), framed_discs.DiscsRealization(),
                                      framed_discs.random_config, trials=10, samples=8, max_arity=3)
    assert not report["axiom2_symmetries"].passed
    assert "d_i" in report["axiom2_symmetries"].witness["check"]


def test_bad_sampler_is_an_input_error():
    def sampler(rng, n):
        return framed_discs.random_config(rng, n + 1)

    report = check_operad_axioms(framed_discs.DiscsOperad(), sampler, trials=3)
    assert report.input_errors and not report.passed


# -- pasting pushout ---------------------------------------------------------------

@pytest.mark.parametrize("seed", range(5))
def test_pushout_discs(seed):
    rng = random.Random(seed)
    x = framed_discs.random_config(rng, rng.randint(1, 3))
    ys = [framed_discs.random_config(rng, rng.randint(0, 2)) for _ in range(x.n)]
    res = check_pasting_pushout(framed_discs.DiscsOperad(), framed_discs.DiscsRealization(), x, ys, 16)
    assert res.passed, res.witness
    assert res.cover_fraction == 1


@pytest.mark.parametrize("seed", range(5))
def test_pushout_cacti(seed):
    rng = random.Random(seed)
    x = cacti.random_cactus(rng, rng.randint(1, 3))
    ys = [cacti.random_cactus(rng, rng.randint(0, 2)) for _ in range(x.n)]
    res = check_pasting_pushout(cacti.CactiOperad(), cacti.CactiRealization(), x, ys, 16)
    assert res.passed, res.witness
    assert res.cover_fraction == 1


class ShiftedRight(framed_discs.DiscsRealization):
    def right(self, x, ys, i, q):
        return super().right(x, ys, i, framed_discs.RationalComplex(-q.re, -q.im))


def test_pushout_detects_non_commuting_square():
    x = framed_discs.base_config(2, framed_discs.Q(1, 4))
    res = check_pasting_pushout(framed_discs.DiscsOperad(), ShiftedRight(), x, [framed_discs.unit()] * 2, 8)
    assert not res.passed and res.witness["check"] == "commutes"


def test_pushout_rejects_bad_density():
    with pytest.raises(ValueError):
        check_pasting_pushout(framed_discs.DiscsOperad(), framed_discs.DiscsRealization(),
                              framed_discs.unit(), [framed_discs.unit()], 0)
