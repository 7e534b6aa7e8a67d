"""Acceptance criteria, one test each.

Every criterion prints a single ``PASS``/``FAIL`` line; under pytest the
lines are collected and repeated in the terminal summary.  Run directly
with ``python tests/test_acceptance.py`` for just the table.
"""

import os
import random
import sys
import time
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from corpus import corpus, order_five_instance, rand_invertible, rand_polytope_gens, rand_space, rand_subspace, rand_vec  # noqa: E402
from oracles import brute_isometries  # noqa: E402
from polyext.extension import check_condition3, cyclic_sides, eventual_core, gurarii_counterexample, search_extendability  # noqa: E402
from polyext.partiso import linear_hrushovski_extension  # noqa: E402
from polyext.polytope import (SymHRep, SymVRep, canonicalize, gauge, hrep_to_vrep,  # noqa: E402
                              is_smooth_point, norm_h, vrep_to_hrep)
from polyext.rational import QMat, rank  # noqa: E402
from polyext.shiftspace import FinSupportSeq, check_shift_equivariance, windowed_quotient_norm  # noqa: E402
from polyext.space import (dual, hexagon_space, is_isometric_embedding, is_surjective_isometry,  # noqa: E402
                           isometry_group, isometry_order, l1_space, l1_sum, linf_sum, norm,
                           quotient_norm_lp, quotient_space, subspace_space)

F = Fraction
RESULTS = []
CORPUS_SIZE = 60


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    return ok


_corpus_cache = {}


def the_corpus():
    if "c" not in _corpus_cache:
        _corpus_cache["c"] = corpus(seed=2024, size=CORPUS_SIZE)
    return _corpus_cache["c"]


def _searches():
    if "s" not in _corpus_cache:
        _corpus_cache["s"] = [search_extendability(o, order) for o, _, order in the_corpus()]
    return _corpus_cache["s"]


# --------------------------------------------------------------------------


def criterion_1():
    o = gurarii_counterexample()
    start = time.perf_counter()
    bad = []
    for n in range(1, 11):
        r = check_condition3(o, n)
        lhs, rhs = cyclic_sides(o, [(F(1, 2 ** i), F(0)) for i in range(n)])
        if r.holds or lhs != 1 or rhs != 1 - F(1, 2 ** (n - 1)) or not r.recheck(o):
            bad.append(n)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    return report(1, "counterexample fails for n = 1..10 with lhs = 1, rhs = 1 - 2^-(n-1)", ok,
                  f"{elapsed:.1f} s" + (f", bad n: {bad}" if bad else ""))


def criterion_2():
    # order 5 is impossible below dimension 4, so four dim-4 shifts supplement
    # the dims 1..3 corpus to cover every order in 1..6
    rng = random.Random(2)
    extra = [order_five_instance(rng) for _ in range(4)]
    items = the_corpus() + extra
    searches = _searches() + [search_extendability(o, order) for o, _, order in extra]
    orders = {order for _, _, order in items}
    dims = {o.space.dim for o, _, _ in the_corpus()}
    bad = []
    for i, ((o, _, order), res) in enumerate(zip(items, searches)):
        sys_ = res.system
        if res.n is None or res.n > order:
            bad.append(i)
            continue
        if not ((sys_.auto ** res.n).is_identity() and sys_.is_sound()
                and is_isometric_embedding(o.space, sys_.space, sys_.embed)):
            bad.append(i)
    ok = not bad and len(the_corpus()) >= 50 and orders == set(range(1, 7)) and dims == {1, 2, 3}
    return report(2, "certificates found within the order and re-verified", ok,
                  f"{len(the_corpus())} instances in dims {sorted(dims)} + {len(extra)} of order 5 "
                  f"in dim 4, orders {sorted(orders)}"
                  + (f", bad: {bad}" if bad else ""))


def criterion_3():
    rng = random.Random(3)
    count = bad = 0
    while count < 100:
        d = rng.randint(1, 4)
        gens = rand_polytope_gens(rng, d, 8)
        v = canonicalize(SymVRep.of(d, gens))
        h = vrep_to_hrep(v)
        ok = hrep_to_vrep(h) == v
        # start from an H-representation as well
        funcs = rand_polytope_gens(rng, d, 8)
        h0 = canonicalize(SymHRep.of(d, funcs))
        ok = ok and vrep_to_hrep(hrep_to_vrep(h0)) == h0
        for _ in range(10):
            x = rand_vec(rng, d)
            ok = ok and gauge(v, x) == norm_h(h, x)
        bad += not ok
        count += 1
    return report(3, "V/H round trips and gauge = norm_h", bad == 0, f"{count} polytopes, {bad} bad")


def criterion_4():
    rng = random.Random(4)
    bad = []
    for i in range(30):
        x = rand_space(rng, 1, 3, 6)
        y = rand_space(rng, 1, 2, 4)
        sub = rand_subspace(rng, x.dim)
        q, _ = quotient_space(x, sub)
        laws = [
            dual(dual(x)) == x,
            dual(l1_sum(x, y)) == linf_sum(dual(x), dual(y)),
            dual(linf_sum(x, y)) == l1_sum(dual(x), dual(y)),
            q.check() and canonicalize(q.ball_v) == q.ball_v,
            subspace_space(x, sub).check(),
        ]
        if x.dim <= 2 or len(x.ball_v.generators) <= 4:
            for g in isometry_group(x):
                n = isometry_order(x, g)
                laws.append((g ** n).is_identity())
        if not all(laws):
            bad.append(i)
    l1, hexa = l1_space(2), hexagon_space()
    g1, gh = isometry_group(l1), isometry_group(hexa)
    sizes = len(g1) == 8 and len(gh) == 12
    oracle = ({g.data for g in g1} == brute_isometries(l1)
              and {g.data for g in gh} == brute_isometries(hexa))
    ok = not bad and sizes and oracle
    return report(4, "duality, sums, subspace/quotient, finite orders, group sizes 8 and 12", ok,
                  f"|G(l1^2)| = {len(g1)}, |G(hex)| = {len(gh)}" + (f", bad: {bad}" if bad else ""))


def criterion_5():
    rng = random.Random(5)
    bad = 0
    for _ in range(100):
        s = rand_space(rng, 1, 4, 6)
        sub = rand_subspace(rng, s.dim)
        x = rand_vec(rng, s.dim)
        q, proj = quotient_space(s, sub)
        bad += norm(q, proj.apply(x)) != quotient_norm_lp(s, sub, x)
    return report(5, "projection quotient norm = LP infimum", bad == 0, f"100 triples, {bad} bad")


def criterion_6():
    rng = random.Random(6)
    items = the_corpus()
    bad = 0
    equiv_bad = 0
    for i in range(50):
        o = items[i % len(items)][0]
        d = o.space.dim
        k = rng.randint(-3, 3)
        l = k + rng.randint(0, 2)
        entries = {j: rand_vec(rng, d) for j in range(k, l + 1)}
        a = FinSupportSeq.of(o.space, entries)
        base = windowed_quotient_norm(a, o, k, l)
        grown = [windowed_quotient_norm(a, o, k - w, l + w) for w in (1, 5)]
        bad += any(g != base for g in grown)
        samples = [o.dom.point(rand_vec(rng, o.dom.dim)) for _ in range(2)]
        equiv_bad += not check_shift_equivariance(o, samples)
    ok = bad == 0 and equiv_bad == 0
    return report(6, "window stability (+1, +5) and shift equivariance", ok,
                  f"50 instances, {bad} unstable, {equiv_bad} non-equivariant")


def criterion_7():
    core = eventual_core(gurarii_counterexample())
    ok = core.core.dim == 0 and core.steps == 2
    bad = 0
    for o, _, _ in the_corpus():
        c = eventual_core(o)
        bad += not (c.steps <= o.space.dim
                    and is_surjective_isometry(subspace_space(o.space, c.core), c.restricted))
    return report(7, "eventual core of the counterexample is {0} in 2 steps; corpus cores", ok and bad == 0,
                  f"counterexample: dim {core.core.dim}, {core.steps} steps; {bad} bad corpus cores")


def criterion_8():
    bad = []
    for i, ((o, _, _), res) in enumerate(zip(the_corpus(), _searches())):
        if res.n is not None and not check_condition3(o, 2 * res.n).holds:
            bad.append(i)
    return report(8, "holds at n implies holds at 2n", not bad,
                  f"{len(the_corpus())} instances" + (f", bad: {bad}" if bad else ""))


def criterion_9():
    l1 = l1_space(2)
    e1, mid = (F(1), F(0)), (F(1, 2), F(1, 2))
    smooth = not is_smooth_point(l1.ball_h, e1) and is_smooth_point(l1.ball_h, mid)
    group = isometry_group(l1)
    hits = [g for g in group if g.apply(e1) == mid]
    ok = smooth and len(group) == 8 and not hits
    return report(9, "e1 non-smooth, (1/2,1/2) smooth, no isometry maps one to the other", ok,
                  f"{len(group)} elements checked")


def criterion_10():
    rng = random.Random(10)
    bad = 0
    for _ in range(60):
        d = rng.randint(1, 5)
        dom = rand_subspace(rng, d)
        images = rand_invertible(rng, d) @ (dom.matrix if dom.dim else QMat.zero(d, 0))
        dd, g = linear_hrushovski_extension(d, dom, images)
        pad = (F(0),) * (dd - d)
        ok = rank(g) == dd and all(
            g.apply(tuple(b) + pad) == tuple(images.column(i)) + pad for i, b in enumerate(dom.basis))
        bad += not ok
    return report(10, "linear Hrushovski extension is invertible and extends", bad == 0,
                  f"60 injections, {bad} bad")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
