from fractions import Fraction

import pytest

from toricding.errors import LPInfeasible, LPUnbounded
from toricding.lp import solve_lp


def test_simple_2d():
    # min -x - y s.t. x <= 1, y <= 1, x + y <= 3/2
    val, x = solve_lp([-1, -1], [[1, 0], [0, 1], [1, 1]], [1, 1, Fraction(3, 2)])
    assert val == Fraction(-3, 2)
    assert x[0] + x[1] == Fraction(3, 2)


def test_free_variable_negative_optimum():
    # min x s.t. -x <= 5  ->  x = -5
    val, x = solve_lp([1], [[-1]], [5])
    assert val == -5
    assert x == [-5]


def test_infeasible():
    with pytest.raises(LPInfeasible):
        solve_lp([1], [[1], [-1]], [-1, -1])


def test_unbounded():
    with pytest.raises(LPUnbounded):
        solve_lp([1], [[1]], [0])


def test_degenerate_cycling_guard():
    # classic degenerate instance; Bland's rule must terminate
    A = [
        [Fraction(1, 4), -8, -1, 9],
        [Fraction(1, 2), -12, Fraction(-1, 2), 3],
        [0, 0, 1, 0],
        [-1, 0, 0, 0],
        [0, -1, 0, 0],
        [0, 0, -1, 0],
        [0, 0, 0, -1],
    ]
    b = [0, 0, 1, 0, 0, 0, 0]
    c = [Fraction(-3, 4), 20, Fraction(-1, 2), 6]
    val, x = solve_lp(c, A, b)
    assert val == Fraction(-5, 4)


def test_exactness():
    # optimum hits an awkward rational corner exactly
    val, x = solve_lp(
        [-1, 0],
        [[3, 1], [3, -1], [-1, 0], [0, 1], [0, -1]],
        [1, 1, 1, 1, 1],
    )
    assert val == Fraction(-1, 3)
    assert x[0] == Fraction(1, 3)
