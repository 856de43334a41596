from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transquad.exactnum import (DimensionError, RatMatrix, det, det_cofactor, det_leibniz,
                                format_rational, kernel_basis, parse_rational, rank, solve)

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def square_matrices(max_n=5):
    return st.integers(0, max_n).flatmap(
        lambda n: st.lists(small_fractions, min_size=n * n, max_size=n * n).map(
            lambda e: RatMatrix(n, n, e)))


def test_det_identity():
    assert det(RatMatrix.identity(3)) == 1


def test_det_empty_matrix_is_one():
    assert det(RatMatrix(0, 0, [])) == 1


def test_det_three_cycle_matrix():
    m = RatMatrix.from_rows([[-1, -1], [1, 0]])
    # (-1)(0) - (-1)(1)
    assert det_leibniz(m) == 1
    assert det(m) == 1


def test_det_needs_pivoting():
    m = RatMatrix.from_rows([[0, 1, 2], [1, 0, 3], [4, -3, 8]])
    assert det(m) == det_leibniz(m) == -2


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        det(RatMatrix.zeros(2, 3))


@given(square_matrices())
@settings(max_examples=150, deadline=None)
def test_bareiss_matches_cofactor(m):
    assert det(m) == det_cofactor(m.to_rows())


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    *[st.lists(small_fractions, min_size=n * n, max_size=n * n).map(
        lambda e, n=n: RatMatrix(n, n, e))] * 2)))
@settings(max_examples=100, deadline=None)
def test_det_multiplicative(pair):
    m, n = pair
    assert det(m @ n) == det(m) * det(n)


def test_kernel_of_identity_is_empty():
    assert kernel_basis(RatMatrix.identity(2)) == []


def test_kernel_of_zero_is_everything():
    assert len(kernel_basis(RatMatrix.zeros(2))) == 2


def test_kernel_normalized():
    assert kernel_basis(RatMatrix.from_rows([[1, 1], [1, 1]])) == [(1, -1)]


@given(st.integers(1, 4), st.integers(1, 5), st.data())
@settings(max_examples=100, deadline=None)
def test_kernel_vectors_annihilate(rows, cols, data):
    entries = data.draw(st.lists(st.integers(-2, 2), min_size=rows * cols, max_size=rows * cols))
    m = RatMatrix(rows, cols, entries)
    basis = kernel_basis(m)
    assert len(basis) == cols - rank(m)
    for v in basis:
        assert all(x == 0 for x in m.apply(v))
        assert next(x for x in v if x != 0) == 1


def test_solve_identity():
    sol = solve(RatMatrix.identity(2), [F(3, 2), -1])
    assert sol.vector == (F(3, 2), -1) and not sol.non_unique


def test_solve_inconsistent():
    assert solve(RatMatrix.from_rows([[1, 0], [1, 0]]), [1, 2]) is None


def test_solve_free_variables_zero():
    sol = solve(RatMatrix.from_rows([[1, 1]]), [2])
    assert sol.vector == (2, 0) and sol.non_unique


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve(RatMatrix.identity(2), [1])


@pytest.mark.parametrize("text,value", [("3/2", F(3, 2)), ("-1", F(-1)), ("0", F(0)),
                                        ("4/6", F(2, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1.5", "1/0", "a", "", "1/-2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


@given(st.fractions())
def test_rational_round_trip(x):
    text = format_rational(x)
    assert parse_rational(text) == x
    assert format_rational(parse_rational(text)) == text
    assert ("/" in text) == (x.denominator != 1)


def test_matrix_product_and_apply():
    a = RatMatrix.from_rows([[1, 2], [3, 4]])
    b = RatMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b).to_rows() == [[2, 1], [4, 3]]
    assert a.apply([1, F(1, 2)]) == (2, 5)
    assert a.transpose().to_rows() == [[1, 3], [2, 4]]
