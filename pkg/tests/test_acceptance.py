"""The acceptance criteria, one test each, at the stated sizes and exact tolerance.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are printed
in the "acceptance criteria" section of the terminal summary.
"""

import random
import time
from fractions import Fraction as Q

import pytest

from cactilab import cacti, framed_discs, segments
from cactilab.freegroup import exponent_sum, is_conjugate_to_generator, product_word
from cactilab.loop_algebra import (GROUPS, check_algebra_associativity, concatenate, loop_equal, omega,
                                   random_loop, rotate_loop)
from cactilab.operad_core import check_operad_axioms, check_pasting_pushout, check_realization_axioms
from cactilab.render import render_cactus, render_discs
from cactilab.ribbon_braid import (WElement, alpha_gen, braid_relation_holds, generators, lam,
                                   lambda_inverse, prb_act, random_w, sigma, w_invert, w_multiply)
from cactilab.serialize import (cactus_from_json, cactus_to_json, discs_from_json, discs_to_json, dumps,
                                loads, loop_from_json, loop_to_json, segments_from_json, segments_to_json)

pytestmark = pytest.mark.acceptance

DISCS = (framed_discs.DiscsOperad(), framed_discs.DiscsRealization(), framed_discs.random_config)
CACTI = (cacti.CactiOperad(), cacti.CactiRealization(), cacti.random_cactus)


def test_criterion_01_realization_axioms(record):
    start = time.perf_counter()
    failures = []
    counts = []
    for name, (op, re, sampler) in (("discs", DISCS), ("cacti", CACTI)):
        rep = check_realization_axioms(op, re, sampler, trials=100, samples=64, max_arity=4, seed=1)
        counts.append(min(r.trials for r in rep.results))
        failures += [f"{name}:{r.axiom}" for r in rep.results if not r.passed]
        failures += [f"{name}:input" for _ in rep.input_errors[:1]]
    elapsed = time.perf_counter() - start
    ok = not failures and min(counts) >= 100 and elapsed < 60
    record(1, ok, f"6 axioms x {min(counts)} composites x 2 operads in {elapsed:.1f}s (< 60s)"
           + (f"; failed {failures}" if failures else ""))
    assert not failures
    assert elapsed < 60


def test_criterion_02_operad_laws(record):
    failures = []
    for name, (op, _, sampler) in (("discs", DISCS), ("cacti", CACTI)):
        rep = check_operad_axioms(op, sampler, trials=100, max_arity=3, seed=2)
        failures += [f"{name}:{r.axiom}" for r in rep.results if not r.passed or r.trials < 100]
        failures += [f"{name}:input" for _ in rep.input_errors[:1]]
    record(2, not failures, "unit/associativity/equivariance on 100 triples per operad"
           + (f"; failed {failures}" if failures else ""))
    assert not failures


def test_criterion_03_pushout(record):
    failures = []
    for name, (op, re, sampler) in (("discs", DISCS), ("cacti", CACTI)):
        rng = random.Random(3)
        for k in range(50):
            x = sampler(rng, rng.randint(1, 3))
            ys = [sampler(rng, rng.randint(0, 2)) for _ in range(op.arity(x))]
            res = check_pasting_pushout(op, re, x, ys, density=64)
            if not res.passed or res.cover_fraction != 1:
                failures.append((name, k, res.witness))
    record(3, not failures, "commutes, cover fraction 1, boundary-only overlap on 50 instances per operad"
           + (f"; failed {failures[:2]}" if failures else ""))
    assert not failures


def test_criterion_04_braid_relations(record):
    bad = []
    for n in range(2, 7):
        for i in range(1, n):
            if i + 1 < n and not braid_relation_holds([sigma(i, n), sigma(i + 1, n), sigma(i, n)],
                                                      [sigma(i + 1, n), sigma(i, n), sigma(i + 1, n)]):
                bad.append(("braid", n, i))
            for j in range(i + 2, n):
                if not braid_relation_holds([sigma(i, n), sigma(j, n)], [sigma(j, n), sigma(i, n)]):
                    bad.append(("commute", n, i, j))
        p = product_word(n)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                a = alpha_gen(i, j, n)
                conj = all(is_conjugate_to_generator(img, k) for k, img in enumerate(a.forward.images, 1))
                if not (conj and a(p) == p and a.is_pure()):
                    bad.append(("alpha", n, i, j))
    record(4, not bad, "braid relations n <= 6; every alpha_ij pure" + (f"; failed {bad[:3]}" if bad else ""))
    assert not bad


def test_criterion_05_w_lambda(record):
    rng = random.Random(5)
    bad = 0
    for _ in range(100):
        n = rng.randint(1, 5)
        v, w = random_w(rng, n, rng.randint(0, 4)), random_w(rng, n, rng.randint(0, 4))
        vw = w_multiply(v, w)
        if lam(vw).braid.forward != (lam(v).braid * lam(w).braid).forward:
            bad += 1
        m = [exponent_sum(x, i) for i, x in enumerate(vw.words, 1)]
        if m != [a + b for a, b in zip(lam(v).twists, lam(w).twists)]:
            bad += 1
    for _ in range(100):
        n = rng.randint(1, 5)
        w = random_w(rng, n, rng.randint(0, 5))
        if lambda_inverse(lam(w)) != w:
            bad += 1
    record(5, bad == 0, f"homomorphism on 100 pairs, round trip on 100 elements, {bad} mismatches")
    assert bad == 0


def test_criterion_06_action_formulas(record):
    bad = 0
    for n in range(1, 5):
        one = WElement.identity(n)
        gens = generators(n)
        for g in gens:
            bad += prb_act(g, g, one) != one
            for phi in gens:
                bad += prb_act(g, one, phi) != w_multiply(phi, w_invert(g))
    rng = random.Random(6)
    diag = 0
    for k in range(50):
        n = rng.randint(2, 4)
        g = random_w(rng, n, rng.randint(0, 4))
        if k % 2 == 0:
            # same element reached by a different product
            h = random_w(rng, n, 2)
            d = w_multiply(w_multiply(g, h), w_invert(h))
        else:
            d = random_w(rng, n, rng.randint(0, 4))
        fixed = prb_act(g, d, WElement.identity(n)) == WElement.identity(n)
        same = lam(g) == lam(d)
        diag += same
        bad += fixed != same
    record(6, bad == 0, f"action formulas on all generators n <= 4; stabilizer check on 50 pairs ({diag} diagonal), "
           f"{bad} mismatches")
    assert bad == 0


def test_criterion_07_omega(record):
    bad = []
    for tag, group in sorted(GROUPS.items()):
        rng = random.Random(7)
        for _ in range(20):
            f, g = random_loop(rng, group), random_loop(rng, group)
            got = omega(cacti.pontrjagin_cactus(), [f, g], group)
            if not loop_equal(group, got, concatenate(group, f, g)):
                bad.append((tag, "pontrjagin"))
        for _ in range(20):
            s = Q(rng.randint(0, 59), 60)
            f = random_loop(rng, group)
            if not loop_equal(group, omega(cacti.rotation_cactus(s), [f], group), rotate_loop(group, f, s)):
                bad.append((tag, "rotation", s))
        for _ in range(50):
            c = cacti.random_cactus(rng, rng.randint(1, 3))
            ds = [cacti.random_cactus(rng, rng.randint(0, 3)) for _ in range(c.n)]
            loops = [[random_loop(rng, group) for _ in range(d.n)] for d in ds]
            if not check_algebra_associativity(c, ds, loops, group):
                bad.append((tag, "associativity"))
    record(7, not bad, "Pontrjagin = concatenation, 20 rotations, 50 associativity composites, s1 and ut3"
           + (f"; failed {bad[:3]}" if bad else ""))
    assert not bad


def test_criterion_08_adapted_paths(record):
    rng = random.Random(8)
    bad, pairs, leafless = 0, 0, 0
    for _ in range(100):
        n = rng.randint(1, 4)
        cfg = segments.random_connected_config(rng, n)
        if n >= 2 and not segments.leaves(cfg):
            leafless += 1
        for _ in range(3):
            p, q = segments.random_point(rng, cfg), segments.random_point(rng, cfg)
            path = segments.adapted_path(cfg, p, q)
            routes = segments.enumerate_adapted_routes(cfg, p, q)
            pairs += 1
            if not segments.is_adapted(cfg, path) or routes != {path.route()}:
                bad += 1
    record(8, bad == 0 and leafless == 0,
           f"100 configs, {pairs} endpoint pairs: {bad} non-unique or mismatched; leaves missing {leafless}")
    assert bad == 0 and leafless == 0


def test_criterion_09_cells(record):
    mismatched = [n for n in (1, 2, 3) if cacti.enumerate_cells(n, 8) != cacti.enumerate_cells_naive(n, 8)]
    two = cacti.enumerate_cells(2)
    dims = tuple(c.dimension for c in two)
    ok = not mismatched and len(two) == 4 and dims == (0, 0, 1, 1)
    record(9, ok, f"backtracking = naive for n <= 3, length <= 8; n=2 gives {len(two)} cells, dims {dims}")
    assert ok


def test_criterion_10_serialization_and_render(record):
    rng = random.Random(10)
    bad = 0
    for _ in range(25):
        a = framed_discs.random_config(rng, rng.randint(0, 4))
        c = cacti.random_cactus(rng, rng.randint(0, 4))
        cfg = segments.random_connected_config(rng, rng.randint(1, 4))
        for obj, to_json, from_json in ((a, discs_to_json, discs_from_json),
                                        (c, cactus_to_json, cactus_from_json),
                                        (cfg, segments_to_json, segments_from_json)):
            text = dumps(to_json(obj))
            bad += dumps(to_json(from_json(loads(text)))) != text
        for group in GROUPS.values():
            f = random_loop(rng, group)
            text = dumps(loop_to_json(f, group))
            bad += dumps(loop_to_json(loop_from_json(loads(text), group), group)) != text
        bad += render_discs(a) != render_discs(a) or render_cactus(c) != render_cactus(c)
    record(10, bad == 0, f"byte-stable round trips and deterministic SVG, {bad} mismatches")
    assert bad == 0
