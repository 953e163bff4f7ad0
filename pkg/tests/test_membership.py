import pytest

from conftest import NONSEP_WITH_OVALS, SEPARATING, TYPES_UP_TO_5, random_catalog_product
from realmod.exactmat import ExactMatrix, inverse_unimodular
from realmod.homology import catalog_matrices, swap_involution_matrix
from realmod.membership import (
    MembershipInputError,
    check_empty,
    check_membership,
    check_nonseparating,
    check_separating,
)
from realmod.surfaces import form_matrix, parse_type, sigma_matrix

T21 = parse_type("g=2,type=-1")
H = ExactMatrix.from_columns([(1, 0, 0, 0), (1, 1, 0, 0), (-1, -1, 1, -1), (-1, 0, 0, 1)])


def test_parity_counterexample():
    report = check_nonseparating(H, T21)
    assert [c.passed for c in report.conditions] == [True, True, True, False]
    assert report.condition(4).witness == "(h(X_2),Y_1)=1 odd"
    assert not report.verdict
    assert report.to_text().splitlines()[-1] == "VERDICT no"


@pytest.mark.parametrize("t", TYPES_UP_TO_5, ids=str)
def test_identity_is_member(t):
    report = check_membership(ExactMatrix.identity(2 * t.genus), t)
    assert report.verdict
    if t.separating:
        assert report.epsilon == 1


def test_form_matrix_fails_commutation():
    report = check_membership(form_matrix(2), T21)
    assert report.condition(1).passed
    assert not report.condition(2).passed
    assert report.condition(2).witness.startswith("h(sigma(X_1))")


def test_sigma_is_not_symplectic():
    report = check_membership(sigma_matrix(T21), T21)
    assert not report.condition(1).passed
    assert report.condition(1).witness == "(h(X_1),h(Y_1))=-1 but (X_1,Y_1)=1"


@pytest.mark.parametrize("t", [t for t in SEPARATING if t.handles >= 1], ids=str)
def test_swap_involution_has_negative_epsilon(t):
    report = check_separating(swap_involution_matrix(t), t)
    assert report.verdict
    assert report.epsilon == -1
    assert report.condition(3).witness == "eps=-1"


def test_shape_and_kind_errors():
    with pytest.raises(MembershipInputError, match="expected 4x4"):
        check_membership(ExactMatrix.identity(3), T21)
    with pytest.raises(MembershipInputError):
        check_separating(ExactMatrix.identity(4), T21)
    with pytest.raises(MembershipInputError):
        check_nonseparating(ExactMatrix.identity(6), parse_type("g=3,type=+2"))
    with pytest.raises(MembershipInputError):
        check_empty(ExactMatrix.identity(4), T21)


def test_oval_permutation_witness():
    t = parse_type("g=3,type=-3")
    report = check_nonseparating(catalog_matrices(t)["R_1"], t)
    assert report.verdict
    assert report.permutation == {1: (2, 1), 2: (1, 1), 3: (3, 1)}
    assert report.condition(3).witness == "X_1->+X_2 X_2->+X_1 X_3->+X_3"


@pytest.mark.parametrize("t", TYPES_UP_TO_5, ids=str)
def test_closed_under_products_and_inverses(t, rng):
    for _ in range(200 if t.genus <= 3 else 60):
        a = random_catalog_product(t, rng.randint(1, 8), rng)
        b = random_catalog_product(t, rng.randint(1, 8), rng)
        assert check_membership(a @ b, t).verdict
        assert check_membership(inverse_unimodular(a), t).verdict


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_empty_type_agrees_with_zero_ovals(g, rng):
    t = parse_type(f"g={g},type=-0")
    for _ in range(40):
        m = random_catalog_product(t, 10, rng)
        for bad in (m, m @ form_matrix(g), m + ExactMatrix.identity(2 * g)):
            assert check_empty(bad, t).verdict == check_nonseparating(bad, t).verdict


def _cond4_oracle(m: ExactMatrix, t) -> bool:
    """No Y coefficient and even oval coefficients in h(X_i), i > k, read off the columns."""
    g, k = t.genus, t.ovals
    for i in range(k, g):
        col = m.column(i)
        if any(col[g:]) or any(c % 2 for c in col[:k]):
            return False
    return True


@pytest.mark.parametrize("t", [t for t in NONSEP_WITH_OVALS if t.ovals < t.genus], ids=str)
def test_condition_four_matches_oracle(t, rng):
    n = 2 * t.genus
    checked = failing = 0
    for _ in range(80):
        m = random_catalog_product(t, rng.randint(0, 10), rng)
        # add a random unit to one entry; most results break condition 4
        rows = m.to_rows()
        rows[rng.randrange(n)][rng.randrange(t.ovals, t.genus)] += rng.choice((-1, 1))
        for cand in (m, ExactMatrix.from_rows(rows)):
            report = check_nonseparating(cand, t)
            assert report.condition(4).passed == _cond4_oracle(cand, t)
            checked += 1
            failing += not report.condition(4).passed
    assert checked and failing


def test_condition_three_rejects_non_oval_image():
    t = parse_type("g=2,type=-2")
    bad = ExactMatrix.identity(4).to_rows()
    bad[2][0] = 1  # h(X_1) = X_1 + Y_1
    report = check_nonseparating(ExactMatrix.from_rows(bad), t)
    assert not report.condition(3).passed
    assert "is not +-X_j" in report.condition(3).witness


def test_separating_block_violation():
    t = parse_type("g=3,type=+2")
    rows = ExactMatrix.identity(6).to_rows()
    # h(X_2) = X_2 + X_3 crosses from block 1 into block 2
    rows[2][1] = 1
    report = check_separating(ExactMatrix.from_rows(rows), t)
    assert not report.verdict


def test_report_text_layout():
    text = check_membership(ExactMatrix.identity(4), T21).to_text()
    assert text.splitlines() == [
        "COND1 PASS preserves the intersection form",
        "COND2 PASS commutes with sigma_H",
        "COND3 PASS X_1->+X_1",
        "COND4 PASS even oval coefficients",
        "VERDICT yes",
    ]
