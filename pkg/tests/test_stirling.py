from fractions import Fraction
from math import comb, factorial

import pytest

from probbell.moments import make_provider, sum_moment
from probbell.numeric import BivarPoly, falling_factorial
from probbell.stirling import prob_stirling2, stirling2

from conftest import r_partition_counts, r_stirling_table

HALF = Fraction(1, 2)
BUILTINS = ["det:1", "bernoulli:1/2", "discrete:(0,1/3);(2,2/3)", "poisson:1"]


def test_examples():
    assert stirling2(4, 2) == 7
    for r in range(4):
        assert stirling2(0, 0, r) == 1
    assert stirling2(2, 1, 1) == 3
    b = make_provider("bernoulli:1/2")
    assert prob_stirling2(b, 2, 1) == HALF
    assert prob_stirling2(b, 2, 2) == Fraction(1, 4)
    assert prob_stirling2(make_provider("det:1"), 2, 1, 1) == 3


def test_classical_matches_enumeration():
    for r in range(4):
        for n in range(9):
            assert [stirling2(n, k, r) for k in range(n + 1)] == list(r_partition_counts(n, r))


def test_triangular_recurrence():
    for r in range(4):
        for n in range(13):
            assert tuple(stirling2(n, k, r) for k in range(n + 1)) == r_stirling_table(n, r)


def test_classical_entries_are_nonnegative_integers():
    for r in range(4):
        for n in range(10):
            for k in range(n + 1):
                v = stirling2(n, k, r)
                assert v.denominator == 1 and v >= 0


def test_basis_identity():
    x = BivarPoly.x()
    for r in range(4):
        for n in range(9):
            lhs = (x + r) ** n
            rhs = BivarPoly()
            for k in range(n + 1):
                rhs = rhs + falling_factorial(k).scale(stirling2(n, k, r))
            assert lhs == rhs


@pytest.mark.parametrize("text", BUILTINS)
class TestProbabilistic:
    def test_vanishes_above_diagonal(self, text):
        p = make_provider(text)
        for n in range(9):
            for k in range(n + 1, n + 4):
                assert prob_stirling2(p, n, k) == 0

    def test_alternating_sum_beyond_diagonal_telescopes(self, text):
        # the raw formula (not the k > n shortcut) must also give 0
        p = make_provider(text)
        for n in range(6):
            for k in range(n + 1, n + 3):
                raw = sum(
                    (-1) ** (k - j) * comb(k, j) * sum_moment(p, j, n) for j in range(k + 1)
                ) / factorial(k)
                assert raw == 0

    def test_column_zero(self, text):
        p = make_provider(text)
        for r in range(4):
            for n in range(8):
                assert prob_stirling2(p, n, 0, r) == Fraction(r) ** n

    def test_diagonal(self, text):
        p = make_provider(text)
        for n in range(9):
            assert prob_stirling2(p, n, n) == p.moment(1) ** n


def test_probabilistic_y1_reduction():
    unit = make_provider("det:1")
    for r in range(4):
        for n in range(11):
            for k in range(n + 1):
                assert prob_stirling2(unit, n, k, r) == r_partition_counts(n, r)[k]


def test_probabilistic_basis_identity():
    # Newton expansion: sum_k S_Y(n,k,r) (x)_k at integer x is E[(S_x + r)^n]
    p = make_provider("discrete:(0,1/3);(2,2/3)")
    for r in range(3):
        for n in range(7):
            for x0 in range(5):
                lhs = sum(
                    (prob_stirling2(p, n, k, r) * factorial(k) * comb(x0, k) for k in range(n + 1)),
                    Fraction(0),
                )
                rhs = sum(
                    (comb(n, i) * Fraction(r) ** (n - i) * sum_moment(p, x0, i) for i in range(n + 1)),
                    Fraction(0),
                )
                assert lhs == rhs
