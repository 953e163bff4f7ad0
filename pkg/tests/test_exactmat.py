import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import adjugate_inverse, cofactor_det, random_elementary_product
from realmod.exactmat import (
    ExactMatrix,
    MatrixError,
    determinant,
    format_matrix,
    integer_kernel,
    inverse_unimodular,
    multiply,
    parse_matrix,
    rank,
    smith_normal_form,
    solve_rational,
)

small_ints = st.integers(min_value=-6, max_value=6)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


def test_identity_product():
    i4 = ExactMatrix.identity(4)
    assert multiply(i4, i4) == i4


def test_shape_mismatch_names_both_shapes():
    a = ExactMatrix.zeros(2, 3)
    b = ExactMatrix.zeros(2, 2)
    with pytest.raises(MatrixError, match=r"2x3.*2x2"):
        multiply(a, b)


def test_construction_rejects_bad_lengths():
    with pytest.raises(MatrixError):
        ExactMatrix(2, 2, [1, 2, 3])
    with pytest.raises(MatrixError):
        ExactMatrix.from_rows([[1, 2], [3]])


def test_matrices_are_immutable():
    m = ExactMatrix.identity(2)
    with pytest.raises(AttributeError):
        m.rows = 3


def test_big_entries_stay_exact():
    m = ExactMatrix.from_rows([[2 ** 70, 1], [1, 0]])
    assert (m @ m)[0, 0] == 2 ** 140 + 1
    assert determinant(m) == -1


def test_unimodular_roundtrip_against_adjugate(rng):
    for _ in range(20):
        a = ExactMatrix.from_rows([[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)])
        b = random_elementary_product(4, 25, rng)
        binv = inverse_unimodular(b)
        oracle = adjugate_inverse(b.to_rows())
        assert binv.to_rows() == [[int(x) for x in row] for row in oracle]
        assert (a @ b) @ binv == a


def test_determinant_examples():
    assert determinant(ExactMatrix.identity(5)) == 1
    assert determinant(ExactMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert determinant(ExactMatrix.from_rows([[2, 0, 0], [0, 3, 0], [0, 0, 4]])) == 24
    with pytest.raises(MatrixError):
        determinant(ExactMatrix.zeros(2, 3))


@settings(max_examples=60, deadline=None)
@given(square(4))
def test_determinant_matches_cofactor_expansion(rows):
    assert determinant(ExactMatrix.from_rows(rows)) == cofactor_det(rows)


@settings(max_examples=40, deadline=None)
@given(square(3), square(3), square(3))
def test_product_is_associative(a, b, c):
    a, b, c = map(ExactMatrix.from_rows, (a, b, c))
    assert (a @ b) @ c == a @ (b @ c)


@settings(max_examples=40, deadline=None)
@given(square(3), square(3))
def test_determinant_is_multiplicative(a, b):
    a, b = ExactMatrix.from_rows(a), ExactMatrix.from_rows(b)
    assert determinant(a @ b) == determinant(a) * determinant(b)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_inverse_is_two_sided(seed):
    m = random_elementary_product(5, 30, random.Random(seed))
    inv = inverse_unimodular(m)
    assert (inv @ m).is_identity()
    assert (m @ inv).is_identity()


def test_inverse_rejects_non_unimodular():
    with pytest.raises(MatrixError, match="not unimodular"):
        inverse_unimodular(ExactMatrix.from_rows([[2, 0], [0, 1]]))


def test_negative_power_uses_inverse():
    m = ExactMatrix.from_rows([[1, 1], [0, 1]])
    assert m ** -3 == ExactMatrix.from_rows([[1, -3], [0, 1]])
    assert (m ** 0).is_identity()


def test_solve_rational():
    a = ExactMatrix.from_rows([[1, 1], [1, -1], [2, 0]])
    b = ExactMatrix.from_rows([[3], [1], [4]])
    assert solve_rational(a, b) == [[2], [1]]
    inconsistent = ExactMatrix.from_rows([[3], [1], [5]])
    assert solve_rational(a, inconsistent) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=3, max_size=3))
def test_smith_form_certificate(rows):
    a = ExactMatrix.from_rows(rows)
    s, d, t = smith_normal_form(a)
    assert s @ a @ t == d
    assert abs(determinant(s)) == 1 and abs(determinant(t)) == 1
    diag = [d[i, i] for i in range(3)]
    assert all(d[i, j] == 0 for i in range(3) for j in range(4) if i != j)
    nonzero = [x for x in diag if x]
    assert all(x > 0 for x in nonzero)
    assert all(nonzero[i + 1] % nonzero[i] == 0 for i in range(len(nonzero) - 1))
    for v in integer_kernel(a):
        assert a.apply(v) == (0, 0, 0)
    assert len(integer_kernel(a)) == 4 - rank(a)


def test_text_format_roundtrip():
    m = ExactMatrix.from_rows([[1, -2, 30], [0, 7, -123456789012345678901]])
    text = format_matrix(m)
    assert text.splitlines()[0] == "2 3"
    assert parse_matrix(text) == m
    assert parse_matrix("# comment\n\n" + text) == m


@pytest.mark.parametrize("text, message", [
    ("", "empty"),
    ("2\n1 2\n", "header"),
    ("2 2\n1 2\n", "expected 2 rows"),
    ("2 2\n1 2\n3\n", "row 2"),
    ("1 2\n1 x\n", "row 1"),
])
def test_parse_diagnostics(text, message):
    with pytest.raises(MatrixError, match=message):
        parse_matrix(text)
