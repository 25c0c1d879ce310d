import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f1geom.smith import determinant, invariant_factors, matmul, smith_normal_form

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@pytest.mark.parametrize(
    "matrix, expected",
    [
        ([[2, 4], [6, 8]], (2, 4)),
        ([[2, 0], [0, 3]], (1, 6)),
        ([[0, 0], [0, 0]], ()),
        ([[4]], (4,)),
        ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], (1, 3)),
        ([[3, 0, 0]], (3,)),
    ],
)
def test_known_invariants(matrix, expected):
    assert invariant_factors(matrix) == expected


def test_empty_matrix():
    snf = smith_normal_form([])
    assert snf.invariants == () and snf.rank == 0


def test_ragged_rejected():
    with pytest.raises(ValueError):
        smith_normal_form([[1, 2], [3]])


def test_bareiss_determinant():
    assert determinant([[2, 1], [7, 4]]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_unimodular_diagonalisation(a):
    snf = smith_normal_form(a)
    assert matmul(matmul(snf.left, a), snf.right) == snf.diagonal
    assert abs(determinant(snf.left)) == 1
    assert abs(determinant(snf.right)) == 1
    d = snf.invariants
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    assert snf.rank == len(d)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_invariants_ignore_row_order(a):
    assert invariant_factors(a) == invariant_factors(a[::-1])
