"""Topological types of real structures and their action on homology.

Homology of a genus ``g`` surface is identified with ``Z^(2g)`` in the basis
order ``(X_1, ..., X_g, Y_1, ..., Y_g)``.  Matrices act on column vectors and
``h2 o h1`` is the product ``h2 @ h1``.  The intersection form is
``J = [[0, I], [-I, 0]]``, so ``(X_i, Y_j) = delta_ij``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .exactmat import ExactMatrix

Vector = tuple[int, ...]


class InvalidType(ValueError):
    """Invalid topological type (violates the Harnack constraints)."""


@dataclass(frozen=True)
class TopologicalType:
    """Genus plus species: ``-k`` (non-separating) or ``+k`` (separating).

    Non-separating needs ``0 <= k <= g``; separating needs ``0 < k <= g+1``
    with ``k = g+1 (mod 2)``.
    """

    genus: int
    ovals: int
    separating: bool

    def __post_init__(self):
        g, k = self.genus, self.ovals
        if g < 1:
            raise InvalidType(f"genus must be >= 1, got {g}")
        if self.separating:
            if not (0 < k <= g + 1):
                raise InvalidType(f"separating type needs 0 < k <= g+1, got g={g}, k={k}")
            if (k - g - 1) % 2:
                raise InvalidType(f"separating type needs k = g+1 (mod 2), got g={g}, k={k}")
        elif not (0 <= k <= g):
            raise InvalidType(f"non-separating type needs 0 <= k <= g (Harnack), got g={g}, k={k}")

    @classmethod
    def nonseparating(cls, genus: int, ovals: int) -> "TopologicalType":
        return cls(genus, ovals, False)

    @classmethod
    def separating_type(cls, genus: int, ovals: int) -> "TopologicalType":
        return cls(genus, ovals, True)

    @property
    def is_empty(self) -> bool:
        return not self.separating and self.ovals == 0

    @property
    def handles(self) -> int:
        """Number of handle pairs ``a_i, b_i`` of the separating quotient."""
        if not self.separating:
            raise InvalidType("handles are only defined for separating types")
        return (self.genus - self.ovals + 1) // 2

    @property
    def code(self) -> str:
        return f"{'+' if self.separating else '-'}{self.ovals}"

    def __str__(self) -> str:
        return f"g={self.genus},type={self.code}"


_TYPE_RE = re.compile(r"^\s*g\s*=\s*(\d+)\s*,\s*type\s*=\s*([+-])\s*(\d+)\s*$")


def parse_type(text: str) -> TopologicalType:
    """Parse ``"g=<int>,type=-<k>"`` or ``"g=<int>,type=+<k>"``."""
    m = _TYPE_RE.match(text)
    if not m:
        raise InvalidType(
            f"cannot parse type {text!r}; expected 'g=<int>,type=-<k>' or 'g=<int>,type=+<k>'")
    g, sign, k = int(m.group(1)), m.group(2), int(m.group(3))
    return TopologicalType(g, k, sign == "+")


def enumerate_types(genus: int) -> list[TopologicalType]:
    if genus < 1:
        raise InvalidType(f"genus must be >= 1, got {genus}")
    out = [TopologicalType(genus, k, False) for k in range(genus + 1)]
    out += [TopologicalType(genus, k, True)
            for k in range(1, genus + 2) if (k - genus - 1) % 2 == 0]
    return out


def all_types(max_genus: int) -> Iterator[TopologicalType]:
    for g in range(1, max_genus + 1):
        yield from enumerate_types(g)


# -- vectors --------------------------------------------------------------

def x_index(g: int, i: int) -> int:
    """Coordinate of ``X_i`` (1-based ``i``)."""
    return i - 1


def y_index(g: int, i: int) -> int:
    return g + i - 1


def basis_vector(g: int, letter: str, i: int) -> Vector:
    v = [0] * (2 * g)
    v[x_index(g, i) if letter == "X" else y_index(g, i)] = 1
    return tuple(v)


def format_vector(v: Sequence[int]) -> str:
    """Render e.g. ``(1, 1, -1, 0)`` as ``X_1+X_2-Y_1``."""
    g = len(v) // 2
    terms = []
    for idx, c in enumerate(v):
        if not c:
            continue
        name = f"X_{idx + 1}" if idx < g else f"Y_{idx - g + 1}"
        coef = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        terms.append(f"{sign}{coef}{name}")
    if not terms:
        return "0"
    s = "".join(terms)
    return s[1:] if s[0] == "+" else s


def add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale(c: int, v: Sequence[int]) -> Vector:
    return tuple(c * a for a in v)


# -- the form -------------------------------------------------------------

@dataclass(frozen=True)
class SymplecticForm:
    genus: int

    @property
    def dimension(self) -> int:
        return 2 * self.genus

    @property
    def matrix(self) -> ExactMatrix:
        return form_matrix(self.genus)


@lru_cache(maxsize=None)
def form_matrix(g: int) -> ExactMatrix:
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[i][g + i] = 1
        rows[g + i][i] = -1
    return ExactMatrix.from_rows(rows)


def intersection(u: Sequence[int], v: Sequence[int], form: SymplecticForm | int) -> int:
    """``u^T J v``."""
    g = form.genus if isinstance(form, SymplecticForm) else form
    if len(u) != 2 * g or len(v) != 2 * g:
        raise ValueError(
            f"vectors of length {len(u)} and {len(v)} do not match a genus {g} form")
    return sum(u[i] * v[g + i] - u[g + i] * v[i] for i in range(g))


def is_symplectic(m: ExactMatrix) -> bool:
    J = form_matrix(m.rows // 2)
    return m.T @ J @ m == J


# -- sigma_H --------------------------------------------------------------

@lru_cache(maxsize=None)
def sigma_matrix(t: TopologicalType) -> ExactMatrix:
    g, k = t.genus, t.ovals
    cols: list[Vector] = []
    if not t.separating:
        for i in range(1, g + 1):
            cols.append(basis_vector(g, "X", i))
        for i in range(1, g + 1):
            v = [0] * (2 * g)
            v[y_index(g, i)] = -1
            for j in range(g):
                v[j] = -1
            if i > k:
                v[x_index(g, i)] -= 1
            cols.append(tuple(v))
    else:
        shift = (g - k + 1) // 2
        partner = {}
        for i in range(k, k + shift):
            partner[i] = i + shift
            partner[i + shift] = i
        for i in range(1, g + 1):
            cols.append(basis_vector(g, "X", partner.get(i, i)))
        for i in range(1, g + 1):
            cols.append(scale(-1, basis_vector(g, "Y", partner.get(i, i))))
    s = ExactMatrix.from_columns(cols)
    J = form_matrix(g)
    if not (s @ s).is_identity() or s.T @ J @ s != -J:
        raise AssertionError(f"sigma_H for {t} is not an orientation-reversing involution")
    return s


def oval_classes(t: TopologicalType) -> list[Vector]:
    """Homology classes of the ovals.

    In the separating case the ``k``-th oval carries ``-(X_1 + ... + X_{k-1})``:
    oriented as boundary of one half, the ovals sum to zero.  With ``k = 1``
    that class is the zero vector.
    """
    g, k = t.genus, t.ovals
    if not t.separating:
        return [basis_vector(g, "X", i) for i in range(1, k + 1)]
    out = [basis_vector(g, "X", i) for i in range(1, k)]
    last = [0] * (2 * g)
    for i in range(k - 1):
        last[i] = -1
    out.append(tuple(last))
    return out


def fixed_sublattice(t: TopologicalType) -> list[Vector]:
    """A basis of ``Fix(sigma_H)``; always rank ``g``."""
    g, k = t.genus, t.ovals
    if not t.separating:
        return [basis_vector(g, "X", i) for i in range(1, g + 1)]
    shift = t.handles
    out = [basis_vector(g, "X", i) for i in range(1, k)]
    lower = range(k, k + shift)
    out += [add(basis_vector(g, "X", i), basis_vector(g, "X", i + shift)) for i in lower]
    out += [add(basis_vector(g, "Y", i), scale(-1, basis_vector(g, "Y", i + shift)))
            for i in lower]
    return out


def handle_blocks(t: TopologicalType) -> tuple[list[int], list[int]]:
    """Coordinate indices spanning ``H_1`` and ``H_2`` (separating case).

    ``H_1`` is spanned by ``X_i, Y_i`` for ``i = k .. (g+k-1)/2`` and ``H_2``
    by the same letters for ``i = (g+k+1)/2 .. g``.
    """
    if not t.separating:
        raise InvalidType("H_1/H_2 blocks only exist for separating types")
    g, k, m = t.genus, t.ovals, t.handles
    lower = range(k, k + m)
    upper = range(k + m, g + 1)
    h1 = [x_index(g, i) for i in lower] + [y_index(g, i) for i in lower]
    h2 = [x_index(g, i) for i in upper] + [y_index(g, i) for i in upper]
    return h1, h2
