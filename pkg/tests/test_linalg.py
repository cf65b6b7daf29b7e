from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from indexforge.linalg import SingularMatrixError, determinant, solve

from .strategies import small_fractions


def square(n):
    return st.lists(st.lists(small_fractions, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(min_value=1, max_value=5).flatmap(square))
def test_determinant_matches_sympy(m):
    expected = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in r] for r in m]).det()
    assert determinant(m) == Fraction(str(expected))


@given(st.integers(min_value=1, max_value=5).flatmap(lambda n: st.tuples(square(n), st.lists(small_fractions, min_size=n, max_size=n))))
def test_solve_satisfies_system(data):
    m, b = data
    assume(determinant(m) != 0)
    x = solve(m, b)
    for row, rhs in zip(m, b):
        assert sum(a * v for a, v in zip(row, x)) == rhs


def test_singular_and_shape_errors():
    with pytest.raises(SingularMatrixError, match="column 1"):
        solve([[1, 2], [2, 4]], [1, 2])
    assert determinant([[1, 2], [2, 4]]) == 0
    assert determinant([]) == 1
    with pytest.raises(ValueError):
        determinant([[1, 2]])
    with pytest.raises(ValueError):
        solve([[1]], [1, 2])


def test_pivoting_handles_zero_leading_entry():
    assert determinant([[0, 1], [1, 0]]) == -1
    assert solve([[0, 1], [1, 0]], [3, 5]) == [5, 3]
