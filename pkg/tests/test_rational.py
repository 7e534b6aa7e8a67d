from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from polyext.rational import (QMat, complete_basis, format_rat, independent_subset, inverse,
                              kernel_basis, parse_rat, rank, rat, sign_normalize, solve)
from strategies import matrices, rationals, square_matrices, vectors

F = Fraction


class TestScalars:
    @pytest.mark.parametrize("text,value", [
        ("3", F(3)), ("-1/2", F(-1, 2)), ("−7/3", F(-7, 3)), ("+4/6", F(2, 3)), (" 0 ", F(0)),
    ])
    def test_parse(self, text, value):
        assert parse_rat(text) == value

    @pytest.mark.parametrize("text", ["1.5", "1/0", "", "a/b", "1//2", "--1"])
    def test_parse_rejects(self, text):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rat(text)

    def test_format(self):
        assert format_rat(F(6, 4)) == "3/2"
        assert format_rat(F(-4, 2)) == "-2"
        assert format_rat(F(0)) == "0"

    def test_rat_rejects_floats(self):
        with pytest.raises(TypeError):
            rat(0.5)

    @given(rationals(max_num=10 ** 6, max_den=10 ** 6))
    def test_round_trip(self, x):
        assert parse_rat(format_rat(x)) == x

    @given(rationals())
    def test_reduced(self, x):
        q = parse_rat(format_rat(x))
        assert q.denominator > 0
        assert gcd(abs(q.numerator), q.denominator) == 1


class TestRank:
    def test_identity(self):
        assert rank(QMat.identity(2)) == 2

    def test_zero(self):
        assert rank(QMat.zero(3, 3)) == 0

    def test_dependent_rows(self):
        assert rank(QMat.from_rows([[1, "1/2"], [2, 1]])) == 1

    @given(matrices())
    def test_rank_nullity(self, m):
        ker = kernel_basis(m)
        assert rank(m) + len(ker) == m.cols
        for v in ker:
            assert any(v)
            assert all(x == 0 for x in m.apply(v))

    @given(matrices(), st.randoms(use_true_random=False), rationals().filter(lambda x: x != 0))
    def test_rank_row_operations(self, m, rnd, c):
        rows = list(m.data)
        rnd.shuffle(rows)
        if rows:
            rows[0] = tuple(c * x for x in rows[0])
        assert rank(QMat(m.rows, m.cols, tuple(rows))) == rank(m)

    def test_empty_matrices(self):
        assert rank(QMat.zero(0, 3)) == 0
        assert len(kernel_basis(QMat.zero(0, 3))) == 3
        assert kernel_basis(QMat.zero(2, 0)) == []


class TestKernel:
    def test_identity(self):
        assert kernel_basis(QMat.identity(2)) == []

    def test_single_row(self):
        (v,) = kernel_basis(QMat.from_rows([[1, -1]]))
        assert v[0] == v[1] != 0

    def test_zero_row(self):
        ker = kernel_basis(QMat.zero(1, 3))
        assert rank(QMat.from_rows(ker)) == 3


class TestSolve:
    def test_identity(self):
        assert solve(QMat.identity(2), (F(3), F(1, 2))) == (F(3), F(1, 2))

    def test_two_by_two(self):
        assert solve(QMat.from_rows([[1, 1], [1, -1]]), (F(1), F(0))) == (F(1, 2), F(1, 2))

    def test_inconsistent(self):
        assert solve(QMat.from_rows([[1, 1], [1, 1]]), (F(1), F(2))) is None

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            solve(QMat.identity(2), (F(1),))

    def test_free_variables_are_zero(self):
        assert solve(QMat.from_rows([[1, 1]]), (F(2),)) == (F(2), F(0))

    @given(matrices(), st.data())
    def test_solution_reproduces(self, m, data):
        x = data.draw(vectors(m.cols))
        b = m.apply(x)
        y = solve(m, b)
        assert y is not None and m.apply(y) == b


class TestInverse:
    def test_singular(self):
        with pytest.raises(ValueError):
            inverse(QMat.from_rows([[1, 2], [2, 4]]))

    @given(square_matrices())
    def test_inverse(self, m):
        assume(rank(m) == m.rows)
        assert (m @ inverse(m)).is_identity()
        assert (inverse(m) @ m).is_identity()

    def test_zero_dim(self):
        assert inverse(QMat.identity(0)) == QMat.identity(0)


class TestBases:
    def test_independent_subset(self):
        vs = [(F(1), F(0)), (F(2), F(0)), (F(0), F(1))]
        assert independent_subset(vs, 2) == [0, 2]

    def test_complete_basis(self):
        assert complete_basis([(F(1), F(1))], 2) == [0]
        assert complete_basis([(F(0), F(1))], 2) == [0]
        assert complete_basis([], 2) == [0, 1]

    def test_sign_normalize(self):
        assert sign_normalize((F(0), F(-1), F(2))) == (F(0), F(1), F(-2))
