"""Reading homology classes off presentation words.

The orientation-preserving half ``Delta+`` has index two; with transversal
``{1, t}`` every word with an even number of reversing letters rewrites into
Schreier generators ``r x (rep of r x)^-1``.  Each Schreier generator gets a
vector in ``Z^(2g)`` and the value of a word is the sum along its rewrite.

The table is not typed in by hand.  A handful of *anchor* words are declared
to be the symplectic basis; every other entry is obtained by solving the
linear system "anchors hit the basis, every relator (read from either coset)
is zero".  Nothing about ``sigma_H`` is fed in, so the identity
``value(t w t^-1) = sigma_H value(w)`` is a real check of the basis formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .exactmat import ExactMatrix, inverse_unimodular, solve_rational
from .presentations import (
    DeltaAutomorphism,
    DeltaPresentation,
    Word,
    apply_automorphism,
    automorphism_catalog,
    canonical_presentation,
    is_reversing,
    parse_word,
)
from .surfaces import TopologicalType, Vector, form_matrix, sigma_matrix

SchreierKey = tuple[int, str]


class WellDefinednessError(ArithmeticError):
    """An automorphism does not induce a symplectic, sigma-commuting map."""


class NotInPositiveHalf(ValueError):
    """Word has an odd number of orientation-reversing letters."""


@dataclass(frozen=True)
class ThetaTable:
    """Values of the Schreier generators ``(coset, generator)``.

    Coset ``0`` is the identity and ``1`` is the transversal letter.
    """

    type: TopologicalType
    presentation: DeltaPresentation
    values: Mapping[SchreierKey, Vector]

    def __getitem__(self, key: SchreierKey) -> Vector:
        return self.values[key]

    @property
    def transversal(self) -> str:
        return self.presentation.transversal


def _rewrite(w: Sequence[tuple[str, int]], start: int = 0) -> tuple[dict[SchreierKey, int], int]:
    """Coefficients of Schreier generators in the rewrite of ``w`` read from coset ``start``."""
    coeffs: dict[SchreierKey, int] = {}
    r = start
    for gen, e in w:
        flip = 1 if is_reversing(gen) else 0
        if e == 1:
            key = (r, gen)
            r ^= flip
        else:
            r ^= flip
            key = (r, gen)
        coeffs[key] = coeffs.get(key, 0) + e
    return coeffs, r


def anchor_words(t: TopologicalType) -> list[Word]:
    """Preimage words of ``X_1..X_g, Y_1..Y_g`` in that order."""
    g, k = t.genus, t.ovals
    xs: list[str] = []
    ys: list[str] = []
    if not t.separating:
        tr = f"d{g + 1}"
        for i in range(1, g + 1):
            if i <= k:
                xs.append(f"e{i}")
                ys.append(f"{tr} c{i}")
            else:
                xs.append(f"d{i} d{i}")
                ys.append(f"{tr} d{i}'")
    else:
        m = t.handles
        ck = f"c{k}"
        for i in range(1, k):
            xs.append(f"e{i}")
            ys.append(f"{ck} c{i}")
        for j in range(1, m + 1):
            xs.append(f"a{j}")
            ys.append(f"b{j}")
        for j in range(1, m + 1):
            xs.append(f"{ck} a{j} {ck}")
            ys.append(f"{ck} b{j}' {ck}")
    return [parse_word(s) for s in xs + ys]


@lru_cache(maxsize=None)
def build_theta_table(t: TopologicalType) -> ThetaTable:
    p = canonical_presentation(t)
    n = 2 * t.genus
    keys = [(r, x) for r in (0, 1) for x in p.generators if (r, x) != (0, p.transversal)]
    col = {key: j for j, key in enumerate(keys)}

    rows: list[list[int]] = []
    rhs: list[list[int]] = []

    def add_equation(coeffs: dict[SchreierKey, int], target: Sequence[int]):
        row = [0] * len(keys)
        for key, c in coeffs.items():
            if key in col:
                row[col[key]] += c
        rows.append(row)
        rhs.append(list(target))

    zero = [0] * n
    for rel in p.relators:
        for start in (0, 1):
            add_equation(_rewrite(rel, start)[0], zero)
    for j, w in enumerate(anchor_words(t)):
        coeffs, end = _rewrite(w)
        if end != 0:
            raise AssertionError(f"anchor {w} is not in the orientation-preserving half")
        target = [0] * n
        target[j] = 1
        add_equation(coeffs, target)

    sol = solve_rational(ExactMatrix.from_rows(rows), ExactMatrix.from_rows(rhs))
    if sol is None:
        raise AssertionError(f"abelianized relations for {t} do not determine the table")
    values: dict[SchreierKey, Vector] = {(0, p.transversal): tuple(zero)}
    for key, j in col.items():
        vec = sol[j]
        if any(Fraction(x).denominator != 1 for x in vec):
            raise AssertionError(f"anchors for {t} are not an integral basis")
        values[key] = tuple(int(x) for x in vec)
    return ThetaTable(t, p, values)


def word_value(w: Sequence[tuple[str, int]], table: ThetaTable) -> Vector:
    table.presentation.check_word(w)
    coeffs, end = _rewrite(w)
    if end != 0:
        raise NotInPositiveHalf("word not in Delta+ (odd number of reflections/glides)")
    out = [0] * (2 * table.type.genus)
    for key, c in coeffs.items():
        for i, v in enumerate(table[key]):
            out[i] += c * v
    return tuple(out)


# -- induced matrices ------------------------------------------------------

@dataclass(frozen=True)
class InducedMatrix:
    type: TopologicalType
    matrix: ExactMatrix

    @property
    def v0(self) -> ExactMatrix | None:
        """Restriction to ``V_0 = span(X_1..X_g)``; non-separating types only."""
        if self.type.separating:
            return None
        return restrict_v0(self.matrix, self.type)


def check_invariants(m: ExactMatrix, t: TopologicalType, label: str = "matrix"):
    J = form_matrix(t.genus)
    if m.shape != J.shape:
        raise WellDefinednessError(f"{label}: shape {m.shape} does not match genus {t.genus}")
    if m.T @ J @ m != J:
        raise WellDefinednessError(f"{label} is not well-defined on homology: not symplectic")
    s = sigma_matrix(t)
    if m @ s != s @ m:
        raise WellDefinednessError(
            f"{label} is not well-defined on homology: does not commute with sigma_H")


def induced_matrix(phi: DeltaAutomorphism, t: TopologicalType | None = None) -> InducedMatrix:
    """Matrix of the orientation-preserving lift of ``phi`` to the surface.

    Column ``j`` is the value of ``phi`` applied to the ``j``-th anchor word.
    If that map reverses the form, ``phi`` lifts to an orientation-reversing
    homeomorphism ``h`` and the result is the matrix of ``sigma o h`` instead.
    """
    t = t or phi.presentation.type
    if phi.presentation.type != t:
        raise ValueError(f"automorphism {phi.name} belongs to {phi.presentation.type}, not {t}")
    table = build_theta_table(t)
    cols = [word_value(apply_automorphism(phi, w), table) for w in anchor_words(t)]
    m = ExactMatrix.from_columns(cols)
    J = form_matrix(t.genus)
    if m.T @ J @ m == -J:
        # the other lift of the quotient homeomorphism preserves orientation
        m = sigma_matrix(t) @ m
    check_invariants(m, t, phi.name)
    return InducedMatrix(t, m)


def swap_involution_matrix(t: TopologicalType) -> ExactMatrix:
    """``U``: negate ``X_i, Y_i`` for ``i < k`` and swap the two handle blocks."""
    if not t.separating:
        raise ValueError("the swap involution U exists only for separating types")
    g, k, m = t.genus, t.ovals, t.handles
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(k - 1):
        rows[i][i] = -1
        rows[g + i][g + i] = -1
    for i in range(k - 1, k - 1 + m):
        j = i + m
        for off in (0, g):
            rows[i + off][j + off] = 1
            rows[j + off][i + off] = 1
    u = ExactMatrix.from_rows(rows)
    check_invariants(u, t, "U")
    return u


def restrict_v0(m: ExactMatrix, t: TopologicalType) -> ExactMatrix:
    if t.separating:
        raise ValueError("V_0 restriction is defined for non-separating types")
    g = t.genus
    if any(m[g + i, j] for i in range(g) for j in range(g)):
        raise ValueError("matrix does not preserve V_0")
    return m.submatrix(range(g), range(g))


def lift_from_v0(a: ExactMatrix, t: TopologicalType) -> ExactMatrix:
    """The unique member of ``Sp(2g,Z)`` commuting with sigma_H that restricts to ``a``.

    Raises ``ValueError`` when the lift has a half-integral corner, which
    means ``a`` is not the restriction of any such matrix.
    """
    if t.separating:
        raise ValueError("lifting from V_0 is defined for non-separating types")
    g, k = t.genus, t.ovals
    if a.shape != (g, g):
        raise ValueError(f"expected a {g}x{g} matrix, got {a.rows}x{a.cols}")
    c = inverse_unimodular(a).T
    p = ExactMatrix.from_rows([[1 + (1 if i == j and i >= k else 0) for j in range(g)]
                               for i in range(g)])
    twice_n = p @ c - a @ p
    if any(x % 2 for x in twice_n.entries):
        raise ValueError("restriction does not lift: off-diagonal block is not integral")
    n = [[twice_n[i, j] // 2 for j in range(g)] for i in range(g)]
    rows = [list(a.row(i)) + n[i] for i in range(g)]
    rows += [[0] * g + list(c.row(i)) for i in range(g)]
    h = ExactMatrix.from_rows(rows)
    check_invariants(h, t, "lift")
    return h


@lru_cache(maxsize=None)
def catalog_matrices(t: TopologicalType) -> dict[str, ExactMatrix]:
    """Induced matrices of the catalog keyed by matrix symbol (``U`` included)."""
    out = {phi.matrix_name: induced_matrix(phi, t).matrix for phi in automorphism_catalog(t)}
    if t.separating:
        out["U"] = swap_involution_matrix(t)
    return out
