import pytest

from pqsurf.errors import ValidationError
from pqsurf.psl2 import psl2_group


def test_order_and_degree(psl13):
    assert psl13.order == 1092
    assert psl13.degree == 14


def test_triple_orders(psl13):
    orders = [psl13.from_matrix(m).order for m in ([[5, 3], [0, 8]], [[-1, 3], [4, 0]], [[0, 2], [6, 6]])]
    assert orders == [2, 3, 7]


def test_identity_and_scalars(psl13):
    assert psl13.from_matrix([[1, 0], [0, 1]]).is_identity()
    assert psl13.from_matrix([[12, 0], [0, 12]]).is_identity()
    assert psl13.from_matrix([[3, 0], [0, 3]]).is_identity()  # det 9 is a square


def test_matrix_product_is_permutation_product(psl13):
    a, b = [[1, 1], [0, 1]], [[0, 12], [1, 0]]
    ab = [[sum(a[i][k] * b[k][j] for k in range(2)) % 13 for j in range(2)] for i in range(2)]
    assert psl13.from_matrix(a) * psl13.from_matrix(b) == psl13.from_matrix(ab)


def test_rejections(psl13):
    with pytest.raises(ValidationError):
        psl13.from_matrix([[1, 2], [2, 4]])
    with pytest.raises(ValidationError):
        psl13.from_matrix([[2, 0], [0, 1]])  # 2 is not a square mod 13
    with pytest.raises(ValidationError):
        psl2_group(9)


def test_to_matrix_roundtrip(psl13):
    for i in range(0, psl13.order, 37):
        m = psl13.to_matrix(i)
        assert psl13.determinant(m) == 1
        assert psl13.idx(psl13.from_matrix(m)) == i
