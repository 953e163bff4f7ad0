import random

import pytest
import sympy

from conftest import cofactor_det
from realmod.exactmat import ExactMatrix, determinant
from realmod.surfaces import (
    InvalidType,
    TopologicalType,
    all_types,
    basis_vector,
    enumerate_types,
    fixed_sublattice,
    form_matrix,
    format_vector,
    handle_blocks,
    intersection,
    oval_classes,
    parse_type,
    sigma_matrix,
)


def test_enumeration_genus_two_and_three():
    assert [t.code for t in enumerate_types(2)] == ["-0", "-1", "-2", "+1", "+3"]
    assert [t.code for t in enumerate_types(3) if t.separating] == ["+2", "+4"]
    assert [t.code for t in enumerate_types(1)] == ["-0", "-1", "+2"]


@pytest.mark.parametrize("genus, ovals, separating", [
    (0, 0, False), (2, 3, False), (2, -1, False), (2, 2, True), (3, 0, True), (3, 6, True),
])
def test_harnack_violations(genus, ovals, separating):
    with pytest.raises(InvalidType):
        TopologicalType(genus, ovals, separating)


def test_parse_type_roundtrip():
    for t in all_types(6):
        assert parse_type(str(t)) == t
    assert parse_type(" g = 4 , type = +3 ") == TopologicalType(4, 3, True)
    with pytest.raises(InvalidType, match="Harnack"):
        parse_type("g=2,type=-3")
    with pytest.raises(InvalidType, match="cannot parse"):
        parse_type("genus 2")


def test_form_matrix():
    j = form_matrix(3)
    assert j.T == -j
    assert determinant(j) == 1
    assert intersection(basis_vector(3, "X", 1), basis_vector(3, "Y", 1), 3) == 1
    assert intersection(basis_vector(3, "Y", 2), basis_vector(3, "X", 2), 3) == -1
    assert intersection(basis_vector(3, "X", 1), basis_vector(3, "X", 1), 3) == 0
    assert intersection(basis_vector(3, "X", 1), basis_vector(3, "Y", 2), 3) == 0
    with pytest.raises(ValueError):
        intersection((1, 0), (0, 1, 0, 0), 2)


def test_sigma_genus_two_one_oval():
    s = sigma_matrix(parse_type("g=2,type=-1"))
    images = [format_vector(s.column(j)) for j in range(4)]
    assert images == ["X_1", "X_2", "-X_1-X_2-Y_1", "-X_1-2X_2-Y_2"]
    assert determinant(s) == cofactor_det(s.to_rows()) == 1


def test_sigma_separating_genus_three():
    s = sigma_matrix(parse_type("g=3,type=+2"))
    expected = ExactMatrix.from_columns([
        (1, 0, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 0, -1, 0, 0),
        (0, 0, 0, 0, 0, -1),
        (0, 0, 0, 0, -1, 0),
    ])
    assert s == expected
    j = form_matrix(3)
    assert s.T @ j @ s == -j


@pytest.mark.parametrize("t", list(all_types(8)), ids=str)
def test_sigma_is_orientation_reversing_involution(t):
    s = sigma_matrix(t)
    j = form_matrix(t.genus)
    assert (s @ s).is_identity()
    assert s.T @ j @ s == -j


def test_sigma_negates_intersections():
    t = parse_type("g=3,type=-2")
    s = sigma_matrix(t)
    rng = random.Random(7)
    for _ in range(50):
        u = [rng.randint(-9, 9) for _ in range(6)]
        v = [rng.randint(-9, 9) for _ in range(6)]
        assert intersection(s.apply(u), s.apply(v), 3) == -intersection(u, v, 3)


@pytest.mark.parametrize("t", list(all_types(6)), ids=str)
def test_fixed_sublattice_matches_kernel(t):
    s = sigma_matrix(t)
    basis = fixed_sublattice(t)
    for v in basis:
        assert s.apply(v) == v
    n = 2 * t.genus
    kernel = (sympy.Matrix(s.to_rows()) - sympy.eye(n)).nullspace()
    assert len(basis) == len(kernel) == t.genus
    # the basis spans a saturated lattice: its maximal minors have gcd 1
    b = sympy.Matrix([list(v) for v in basis])
    assert b.rank() == t.genus
    assert sympy.gcd_list([m for m in _maximal_minors(b)]) == 1


def _maximal_minors(b):
    from itertools import combinations
    r = b.rows
    for cols in combinations(range(b.cols), r):
        yield b.extract(list(range(r)), list(cols)).det()


def test_fixed_lattice_empty_type_is_v0():
    assert fixed_sublattice(parse_type("g=2,type=-0")) == [(1, 0, 0, 0), (0, 1, 0, 0)]


@pytest.mark.parametrize("t", list(all_types(6)), ids=str)
def test_oval_classes_are_fixed_and_disjoint(t):
    s = sigma_matrix(t)
    ovals = oval_classes(t)
    assert len(ovals) == t.ovals
    for o in ovals:
        assert s.apply(o) == o
    for a in ovals:
        for b in ovals:
            assert intersection(a, b, t.genus) == 0


def test_separating_oval_classes_sum_to_zero():
    ovals = oval_classes(parse_type("g=4,type=+3"))
    assert [format_vector(o) for o in ovals] == ["X_1", "X_2", "-X_1-X_2"]
    assert oval_classes(parse_type("g=2,type=+1")) == [(0, 0, 0, 0)]


def test_handle_blocks():
    h1, h2 = handle_blocks(parse_type("g=5,type=+2"))
    assert h1 == [1, 2, 6, 7]
    assert h2 == [3, 4, 8, 9]
    with pytest.raises(InvalidType):
        handle_blocks(parse_type("g=2,type=-1"))
