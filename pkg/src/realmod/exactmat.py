"""Dense integer matrices with exact arithmetic.

Every matrix in the package is an :class:`ExactMatrix`: an immutable
row-major tuple of Python ints.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class MatrixError(ValueError):
    """Raised for shape mismatches and non-invertible inputs."""


class ExactMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(x) for x in entries)
        if rows < 1 or cols < 1:
            raise MatrixError(f"matrix shape must be positive, got {rows}x{cols}")
        if len(entries) != rows * cols:
            raise MatrixError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def _trusted(cls, rows: int, cols: int, entries: tuple) -> "ExactMatrix":
        # skips validation; callers guarantee a tuple of ints of the right length
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", entries)
        return m

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise MatrixError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise MatrixError("ragged rows")
        return cls(len(rows), width, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "ExactMatrix":
        return cls.from_rows(columns).transpose()

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(len(row_idx), len(col_idx),
                           (self[i, j] for i in row_idx for j in col_idx))

    # -- arithmetic -------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            return multiply(self, other)
        return self.apply(other)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vector) != self.cols:
            raise MatrixError(
                f"cannot apply {self.rows}x{self.cols} matrix to vector of length {len(vector)}")
        return tuple(sum(a * b for a, b in zip(self.row(i), vector) if a)
                     for i in range(self.rows))

    def _check_same_shape(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise MatrixError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, c: int) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, (c * a for a in self.entries))

    def __pow__(self, n: int) -> "ExactMatrix":
        if not self.is_square:
            raise MatrixError("power of a non-square matrix")
        base = self if n >= 0 else inverse_unimodular(self)
        n = abs(n)
        result = ExactMatrix.identity(self.rows)
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def is_identity(self) -> bool:
        return self == ExactMatrix.identity(self.rows) if self.is_square else False

    def __repr__(self) -> str:
        return f"ExactMatrix.from_rows({self.to_rows()!r})"

    def __str__(self) -> str:
        return format_matrix(self)


def multiply(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.cols != b.rows:
        raise MatrixError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    n = b.cols
    be = b.entries
    brows = [be[k * n:(k + 1) * n] for k in range(b.rows)]
    out: list[int] = []
    for i in range(a.rows):
        acc = [0] * n
        for k, x in enumerate(a.entries[i * a.cols:(i + 1) * a.cols]):
            if x:
                for j, y in enumerate(brows[k]):
                    if y:
                        acc[j] += x * y
        out.extend(acc)
    return ExactMatrix._trusted(a.rows, n, tuple(out))


def determinant(a: ExactMatrix) -> int:
    """Bareiss fraction-free elimination."""
    if not a.is_square:
        raise MatrixError(f"determinant of non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def solve_rational(a: ExactMatrix, b: ExactMatrix) -> list[list[Fraction]] | None:
    """Solve ``a @ x = b`` over the rationals by Gauss-Jordan elimination.

    ``a`` may have more rows than columns (an overdetermined but consistent
    system).  Returns ``None`` when the system is inconsistent or when ``a``
    does not have full column rank.
    """
    if a.rows != b.rows:
        raise MatrixError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.cols
    aug = [[Fraction(x) for x in a.row(i)] + [Fraction(x) for x in b.row(i)]
           for i in range(a.rows)]
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if p is None:
            return None
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        r += 1
    for i in range(r, len(aug)):
        if any(aug[i][n:]):
            return None
    return [row[n:] for row in aug[:n]]


def inverse_unimodular(a: ExactMatrix) -> ExactMatrix:
    if not a.is_square:
        raise MatrixError(f"inverse of non-square {a.rows}x{a.cols} matrix")
    d = determinant(a)
    if d not in (1, -1):
        raise MatrixError(f"not unimodular: determinant is {d}")
    sol = solve_rational(a, ExactMatrix.identity(a.rows))
    # det = +-1 makes the adjugate/det integral, so every entry is whole
    return ExactMatrix.from_rows([[int(x) for x in row] for row in sol])


def smith_normal_form(a: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Return ``(S, D, T)`` with ``S @ a @ T == D``, S and T unimodular.

    D is diagonal with non-negative entries, each dividing the next.
    """
    m, n = a.rows, a.cols
    A = a.to_rows()
    S = ExactMatrix.identity(m).to_rows()
    T = ExactMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        for M in (A, T):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        for M in (A, S):
            M[dst] = [x - q * y for x, y in zip(M[dst], M[src])]

    def add_col(dst, src, q):
        for M in (A, T):
            for row in M:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: fold any offending entry into row t and repeat
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            S[t] = [-x for x in S[t]]
    return (ExactMatrix.from_rows(S), ExactMatrix.from_rows(A), ExactMatrix.from_rows(T))


def integer_kernel(a: ExactMatrix) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice ``{v in Z^n : a @ v = 0}``."""
    _, D, T = smith_normal_form(a)
    rank = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i])
    return [T.column(j) for j in range(rank, a.cols)]


def rank(a: ExactMatrix) -> int:
    _, D, _ = smith_normal_form(a)
    return sum(1 for i in range(min(D.rows, D.cols)) if D[i, i])


# -- text format ----------------------------------------------------------

def format_matrix(a: ExactMatrix) -> str:
    """``rows cols`` header then one line of space-separated ints per row."""
    lines = [f"{a.rows} {a.cols}"]
    lines += [" ".join(str(x) for x in a.row(i)) for i in range(a.rows)]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> ExactMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixError(f"header must be 'rows cols', got {lines[0]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixError(f"header must be two integers, got {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != rows:
        raise MatrixError(f"expected {rows} rows, found {len(body)}")
    data = []
    for n, ln in enumerate(body, start=1):
        parts = ln.split()
        if len(parts) != cols:
            raise MatrixError(f"row {n}: expected {cols} entries, found {len(parts)}")
        try:
            data.extend(int(p) for p in parts)
        except ValueError:
            raise MatrixError(f"row {n}: non-integer entry in {ln!r}") from None
    return ExactMatrix(rows, cols, data)
