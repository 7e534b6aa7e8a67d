import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from corpus import rand_space, rand_subspace, rand_vec
from oracles import brute_isometries
from polyext.errors import PreconditionError, ResourceError
from polyext.rational import QMat, inverse, unit
from polyext.space import (PolySpace, Subspace, dual, hexagon_space, is_isometric_embedding,
                           is_surjective_isometry, isometry_group, isometry_order, l1_space,
                           l1_sum, linf_space, linf_sum, norm, quotient_norm_lp, quotient_space,
                           subspace_space, trivial_space)
from strategies import seeds

F = Fraction
ONE = l1_space(1)


def interval(r):
    return PolySpace.from_vertices(1, [(r,)])


class TestNorm:
    def test_examples(self):
        assert norm(l1_space(2), (3, -4)) == 7
        assert norm(hexagon_space(), (0, 0)) == 0
        assert norm(linf_space(2), (F(1, 2), F(-2, 3))) == F(2, 3)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            norm(l1_space(2), (1, 2, 3))


class TestDual:
    def test_l1_linf(self):
        assert dual(l1_space(2)) == linf_space(2)
        assert dual(dual(l1_space(2))) == l1_space(2)

    def test_interval(self):
        assert dual(interval(2)) == interval(F(1, 2))

    def test_sums(self):
        x, y = l1_space(2), linf_space(2)
        assert dual(l1_sum(x, y)) == linf_sum(dual(x), dual(y))


class TestSubspace:
    def test_diagonal(self):
        assert subspace_space(l1_space(2), Subspace.of(2, [(1, 1)])) == interval(F(1, 2))

    def test_axis(self):
        assert subspace_space(l1_space(2), Subspace.of(2, [(1, 0)])) == ONE

    def test_full(self):
        h = hexagon_space()
        assert subspace_space(h, Subspace.full(2)) == h

    def test_dependent_basis(self):
        with pytest.raises(PreconditionError):
            Subspace.of(2, [(1, 1), (2, 2)])

    def test_intersect(self):
        a = Subspace.of(3, [(1, 0, 0), (0, 1, 0)])
        b = Subspace.of(3, [(0, 1, 0), (0, 0, 1)])
        assert a.intersect(b).same_as(Subspace.of(3, [(0, 1, 0)]))


class TestQuotient:
    DIAG = Subspace.of(2, [(1, 1)])

    def test_l1_diagonal(self):
        q, proj = quotient_space(l1_space(2), self.DIAG)
        assert norm(q, proj.apply((1, 0))) == 1
        assert quotient_norm_lp(l1_space(2), self.DIAG, (1, 0)) == 1

    def test_linf_diagonal(self):
        q, proj = quotient_space(linf_space(2), self.DIAG)
        assert norm(q, proj.apply((1, 0))) == F(1, 2)
        assert quotient_norm_lp(linf_space(2), self.DIAG, (1, 0)) == F(1, 2)

    def test_by_zero(self):
        h = hexagon_space()
        q, proj = quotient_space(h, Subspace.zero(2))
        assert q == h and proj.is_identity()

    def test_by_everything(self):
        q, proj = quotient_space(l1_space(2), Subspace.full(2))
        assert q.dim == 0 and proj.shape == (0, 2)


class TestSums:
    def test_l1(self):
        assert l1_sum(ONE, ONE) == l1_space(2)

    def test_linf(self):
        assert linf_sum(ONE, ONE) == linf_space(2)

    def test_with_trivial(self):
        assert l1_sum(trivial_space(), ONE) == ONE


class TestEmbedding:
    def test_half_diagonal(self):
        assert is_isometric_embedding(ONE, l1_space(2), QMat.from_rows([["1/2"], ["1/2"]]))

    def test_diagonal_doubles(self):
        assert not is_isometric_embedding(ONE, l1_space(2), QMat.from_rows([[1], [1]]))

    def test_identity(self):
        assert is_isometric_embedding(l1_space(2), l1_space(2), QMat.identity(2))

    def test_not_injective(self):
        assert not is_isometric_embedding(l1_space(2), ONE, QMat.from_rows([[1, 0]]))

    def test_shape(self):
        with pytest.raises(ValueError):
            is_isometric_embedding(ONE, l1_space(2), QMat.identity(2))


class TestGroups:
    def test_sizes(self):
        assert len(isometry_group(l1_space(2))) == 8
        assert len(isometry_group(hexagon_space())) == 12
        assert [g.data for g in isometry_group(ONE)] == [((F(-1),),), ((F(1),),)]

    @pytest.mark.parametrize("space", [l1_space(2), hexagon_space(), linf_space(3)])
    def test_brute_force_agreement(self, space):
        assert {g.data for g in isometry_group(space)} == brute_isometries(space)

    def test_orders(self):
        s = l1_space(2)
        assert isometry_order(s, QMat.identity(2)) == 1
        assert isometry_order(s, QMat.from_rows([[0, -1], [1, 0]])) == 4
        assert isometry_order(hexagon_space(), QMat.from_rows([[0, 1], [-1, 1]])) == 6

    def test_order_of_non_isometry(self):
        with pytest.raises(PreconditionError):
            isometry_order(l1_space(2), QMat.from_rows([[1, 1], [0, 1]]))

    def test_cap(self):
        with pytest.raises(ResourceError):
            isometry_group(l1_space(3), vertex_cap=2)

    def test_group_laws(self):
        group = isometry_group(hexagon_space())
        keys = {g.data for g in group}
        for g in group:
            assert inverse(g).data in keys
            for h in group:
                assert (g @ h).data in keys


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_random_space_laws(seed):
    rng = random.Random(seed)
    x = rand_space(rng, 1, 3, 6)
    y = rand_space(rng, 1, 2, 4)
    assert dual(dual(x)) == x
    assert dual(l1_sum(x, y)) == linf_sum(dual(x), dual(y))
    assert dual(linf_sum(x, y)) == l1_sum(dual(x), dual(y))
    assert x.check()
    assert is_isometric_embedding(x, x, QMat.identity(x.dim))
    sub = rand_subspace(rng, x.dim)
    q, proj = quotient_space(x, sub)
    ss = subspace_space(x, sub)
    assert q.check() and ss.check()
    for _ in range(3):
        v = rand_vec(rng, x.dim)
        qn = norm(q, proj.apply(v))
        assert qn <= norm(x, v)
        assert qn == quotient_norm_lp(x, sub, v)
    for b in range(sub.dim):
        assert norm(ss, unit(sub.dim, b)) == norm(x, sub.basis[b])


@given(seeds)
@settings(max_examples=15, deadline=None)
def test_group_elements_have_finite_order(seed):
    rng = random.Random(seed)
    s = rand_space(rng, 1, 3, 4)
    group = isometry_group(s)
    assert any(g.is_identity() for g in group)
    for g in group:
        assert is_surjective_isometry(s, g)
        n = isometry_order(s, g)
        assert (g ** n).is_identity()
