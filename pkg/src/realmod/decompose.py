"""Constructive side: generator words for unimodular and member matrices.

* :func:`decompose_gl` writes any ``g x g`` matrix of determinant ``+-1`` as a
  word in ``A_i`` (adjacent transpositions), the transvections ``G_1'`` and
  ``G_2'`` and the sign flip ``G_3``.
* :func:`decompose_empty_member` writes a member of the empty-type image as
  a word in the catalog matrices ``A_i, B, C`` themselves.
* :func:`normalize_nonseparating` / :func:`normalize_separating` multiply a
  member by a catalog word until the ovals are fixed and the natural
  subspaces are invariant.

Words are read left to right as matrix products: ``"A_1 G_3"`` is
``A_1 @ G_3``, i.e. ``G_3`` acts first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .exactmat import ExactMatrix, MatrixError, determinant, inverse_unimodular
from .homology import catalog_matrices, restrict_v0
from .membership import check_empty, check_nonseparating, check_separating
from .surfaces import TopologicalType, handle_blocks, oval_classes

DEFAULT_BUDGET = 200_000

_PRIMED = ("G_1'", "G_2'")
_TOKEN_RE = re.compile(r"^(.*?)(?:\^(-?\d+))?$")


class NotAMember(ValueError):
    pass


class NormalizationError(RuntimeError):
    """Normalization failed: budget exhausted or no catalog word exists."""


# -- generator words -------------------------------------------------------

@dataclass(frozen=True)
class GeneratorWord:
    """Sequence of ``(name, exponent)``; adjacent equal names are merged."""

    letters: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, items: Iterable[tuple[str, int]]) -> "GeneratorWord":
        out: list[tuple[str, int]] = []
        for name, e in items:
            if e == 0:
                continue
            if out and out[-1][0] == name:
                e += out.pop()[1]
                if e == 0:
                    continue
            out.append((name, e))
        return cls(tuple(out))

    @classmethod
    def letter(cls, name: str, e: int = 1) -> "GeneratorWord":
        return cls.of([(name, e)])

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord.of(self.letters + other.letters)

    def __mul__(self, n: int) -> "GeneratorWord":
        if n < 0:
            return self.inverse() * -n
        return GeneratorWord.of(self.letters * n)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(tuple((name, -e) for name, e in reversed(self.letters)))

    def conjugate(self, w: "GeneratorWord") -> "GeneratorWord":
        """``w self w^-1``."""
        return w + self + w.inverse()

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def names(self) -> set[str]:
        return {name for name, _ in self.letters}

    def __str__(self) -> str:
        toks = []
        for name, e in self.letters:
            if e == 1:
                toks.append(name)
            elif e == -1:
                toks.append(name + "'")
            else:
                toks.append(f"{name}^{e}")
        return " ".join(toks)

    @classmethod
    def parse(cls, text: str) -> "GeneratorWord":
        """Inverse of :meth:`__str__`; ``G_1'`` and ``G_2'`` are names, not inverses."""
        items = []
        for tok in text.split():
            m = _TOKEN_RE.match(tok)
            base, power = m.group(1), m.group(2)
            e = int(power) if power is not None else 1
            if power is None and base not in _PRIMED and base.endswith("'"):
                base, e = base[:-1], -1
            if not base or (base.endswith("'") and base not in _PRIMED):
                raise ValueError(f"cannot parse generator token {tok!r}")
            items.append((base, e))
        return cls.of(items)

    def simplify(self, generators: Mapping[str, ExactMatrix]) -> "GeneratorWord":
        """Reduce exponents of involutive generators modulo 2."""
        invol = {name for name in self.names()
                 if name in generators and (generators[name] @ generators[name]).is_identity()}
        letters = self.letters
        while True:
            out = GeneratorWord.of((name, e % 2) if name in invol else (name, e)
                                   for name, e in letters)
            if out.letters == letters:
                return out
            letters = out.letters

    def evaluate(self, generators: Mapping[str, ExactMatrix], size: int | None = None) -> ExactMatrix:
        if not self.letters:
            if size is None:
                size = next(iter(generators.values())).rows
            return ExactMatrix.identity(size)
        inverses: dict[str, ExactMatrix] = {}
        result = None
        for name, e in self.letters:
            if name not in generators:
                raise KeyError(f"unknown generator {name!r}")
            m = generators[name]
            if e < 0:
                if name not in inverses:
                    inverses[name] = inverse_unimodular(m)
                m = inverses[name]
            m = m ** abs(e)
            result = m if result is None else result @ m
        return result


def adjacent_sort(images: Sequence[int]) -> list[int]:
    """Write a permutation as a product of adjacent transpositions.

    ``images[a-1]`` is the label that position ``a`` carries.  Returns
    ``[t_1, ..., t_n]`` with ``P = s_{t_1} ... s_{t_n}``, where ``s_t``
    swaps the labels ``t`` and ``t+1`` and ``P`` sends ``a`` to ``images[a-1]``.
    """
    arr = list(images)
    n = len(arr)
    if sorted(arr) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {images}")
    steps = []
    for a in range(1, n + 1):
        j = arr[a - 1]
        while j > a:
            t = j - 1
            arr = [t + 1 if x == t else t if x == t + 1 else x for x in arr]
            steps.append(t)
            j -= 1
    return steps


def permutation_word(images: Sequence[int], name: Callable[[int], str]) -> GeneratorWord:
    return GeneratorWord.of((name(t), 1) for t in adjacent_sort(images))


def _moving(n: int, pairs: Mapping[int, int]) -> list[int]:
    """Some permutation of ``1..n`` with ``a -> pairs[a]``."""
    images = [0] * n
    for a, b in pairs.items():
        images[a - 1] = b
    free = iter(sorted(set(range(1, n + 1)) - set(pairs.values())))
    return [b or next(free) for b in images]


# -- GL(g, Z) ------------------------------------------------------------

def _elementary(g: int, i: int, j: int, c: int = 1) -> ExactMatrix:
    rows = [[int(r == s) for s in range(g)] for r in range(g)]
    rows[i - 1][j - 1] += c
    return ExactMatrix.from_rows(rows)


@lru_cache(maxsize=None)
def gl_generators(g: int) -> dict[str, ExactMatrix]:
    """``A_1..A_{g-1}`` (transpositions), ``G_1'``, ``G_2'``, ``G_3``."""
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    out = {}
    for i in range(1, g):
        rows = [[int(r == s) for s in range(g)] for r in range(g)]
        rows[i - 1][i - 1] = rows[i][i] = 0
        rows[i - 1][i] = rows[i][i - 1] = 1
        out[f"A_{i}"] = ExactMatrix.from_rows(rows)
    if g >= 2:
        out["G_1'"] = _elementary(g, 2, 1)
        out["G_2'"] = _elementary(g, 1, 2)
    flip = [[int(r == s) for s in range(g)] for r in range(g)]
    flip[min(1, g - 1)][min(1, g - 1)] = -1
    out["G_3"] = ExactMatrix.from_rows(flip)
    return out


def _a_name(t: int) -> str:
    return f"A_{t}"


def _transvection_word(g: int, i: int, j: int) -> GeneratorWord:
    """Word for ``I + E_ij`` (add row ``j`` to row ``i`` on the left)."""
    perm = permutation_word(_moving(g, {1: j, 2: i}), _a_name)
    return GeneratorWord.letter("G_1'").conjugate(perm)


def _sign_word(g: int, i: int) -> GeneratorWord:
    if g == 1:
        return GeneratorWord.letter("G_3")
    perm = permutation_word(_moving(g, {2: i}), _a_name)
    return GeneratorWord.letter("G_3").conjugate(perm)


def _swap_word(g: int, i: int, j: int) -> GeneratorWord:
    images = list(range(1, g + 1))
    images[i - 1], images[j - 1] = j, i
    return permutation_word(images, _a_name)


def decompose_gl(m: ExactMatrix) -> GeneratorWord:
    """Word over ``A_i, G_1', G_2', G_3`` whose product is ``m``.

    Row reduction: in each column a Euclidean loop of row subtractions brings
    the gcd (``+-1``) to the diagonal, then the column is cleared.  Every row
    operation is a left multiplication by a conjugate of ``G_1'`` or
    ``G_3`` by a permutation word, so the length is ``O(g^3 + g*sum|q|)``
    where ``q`` ranges over the Euclidean quotients.
    """
    if not m.is_square:
        raise MatrixError(f"expected a square matrix, got {m.rows}x{m.cols}")
    g = m.rows
    d = determinant(m)
    if d not in (1, -1):
        raise MatrixError(f"not unimodular: determinant is {d}")
    a = m.to_rows()
    ops: list[GeneratorWord] = []

    def add_row(dst: int, src: int, q: int):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        ops.append(_transvection_word(g, dst + 1, src + 1) * (-q))

    for c in range(g):
        while True:
            live = [r for r in range(c, g) if a[r][c]]
            p = min(live, key=lambda r: abs(a[r][c]))
            others = [r for r in live if r != p]
            if not others:
                break
            for r in others:
                add_row(r, p, a[r][c] // a[p][c])
        if p != c:
            a[p], a[c] = a[c], a[p]
            ops.append(_swap_word(g, p + 1, c + 1))
        if a[c][c] == -1:
            a[c] = [-x for x in a[c]]
            ops.append(_sign_word(g, c + 1))
        for r in range(g):
            if r != c and a[r][c]:
                add_row(r, c, a[r][c])
    word = GeneratorWord()
    for op in ops:
        word = word + op.inverse()
    return word.simplify(gl_generators(g))


# -- empty type: words in the catalog ------------------------------------

def _mod2_label(col: Sequence[int], g: int) -> int:
    bits = [x % 2 for x in col]
    if bits == [1] * g:
        return g + 1
    if sum(bits) == 1:
        return bits.index(1) + 1
    return 0


@lru_cache(maxsize=None)
def _empty_blocks(g: int) -> dict[str, GeneratorWord]:
    """Catalog words for ``G_3`` and ``E_21(2)`` on ``V_0`` (``g >= 2``)."""
    reverse = [1] + [g + 2 - j for j in range(2, g + 1)]
    b_prime = permutation_word(reverse, _a_name) + GeneratorWord.letter("B")
    g3 = b_prime + GeneratorWord.of([("C", 1), ("A_1", 1)]) + b_prime
    e21 = GeneratorWord.of([("C", 1), ("A_1", 1)]) + g3
    return {"G_3": g3, "E_21": e21}


def decompose_empty_member(m: ExactMatrix, t: TopologicalType) -> GeneratorWord:
    """Word over the catalog ``A_1..A_g, B, C`` evaluating to ``m`` on all of ``H_1``.

    Modulo 2 the catalog acts on ``X_1, ..., X_g, X_1+...+X_g`` by
    permutations; ``A_i`` words undo that part.  What is left is congruent to
    the identity modulo 2 and is cleared with even transvections and sign
    flips, both of which are short catalog words.
    """
    if not t.is_empty:
        raise ValueError(f"decompose_empty_member needs type -0, got {t.code}")
    report = check_empty(m, t)
    if not report.verdict:
        raise NotAMember("not a member:\n" + report.to_text())
    gens = catalog_matrices(t)
    a = restrict_v0(m, t).to_rows()
    g = t.genus
    ops: list[GeneratorWord] = []
    if g == 1:
        word = GeneratorWord() if a[0][0] == 1 else GeneratorWord.letter("A_1")
    else:
        blocks = _empty_blocks(g)
        cols = list(zip(*a))
        labels = [_mod2_label(cols[j], g) for j in range(g)]
        if 0 in labels or len(set(labels)) != g:
            raise NotAMember("restriction to V_0 is not a permutation modulo 2")
        labels.append(next(iter(set(range(1, g + 2)) - set(labels))))
        # left multiplication by A_s swaps labels s, s+1
        for s in adjacent_sort(labels):
            a = (restrict_v0(gens[f"A_{s}"], t) @ ExactMatrix.from_rows(a)).to_rows()
            ops.append(GeneratorWord.letter(f"A_{s}"))

        def even_add(dst: int, src: int, q: int):
            # row dst -= 2 q row src
            a[dst] = [x - 2 * q * y for x, y in zip(a[dst], a[src])]
            perm = permutation_word(_moving(g, {1: src + 1, 2: dst + 1}), _a_name)
            ops.append(blocks["E_21"].conjugate(perm) * (-q))

        for c in range(g):
            while True:
                others = [r for r in range(c, g) if r != c and a[r][c]]
                if not others:
                    break
                r = min(others, key=lambda r: abs(a[r][c]))
                if abs(a[c][c]) > abs(a[r][c]):
                    q = _round_div(a[c][c], 2 * a[r][c])
                    a[c] = [x - 2 * q * y for x, y in zip(a[c], a[r])]
                    perm = permutation_word(_moving(g, {1: r + 1, 2: c + 1}), _a_name)
                    ops.append(blocks["E_21"].conjugate(perm) * (-q))
                else:
                    even_add(r, c, _round_div(a[r][c], 2 * a[c][c]))
            if a[c][c] == -1:
                a[c] = [-x for x in a[c]]
                perm = permutation_word(_moving(g, {2: c + 1}), _a_name)
                ops.append(blocks["G_3"].conjugate(perm))
            for r in range(g):
                if r != c and a[r][c]:
                    even_add(r, c, a[r][c] // (2 * a[c][c]))
        word = GeneratorWord()
        for op in ops:
            word = word + op.inverse()
        word = word.simplify(gens)
    if word.evaluate(gens, 2 * g) != m:
        raise NotAMember("matrix is not in the subgroup generated by the catalog")
    return word


def _round_div(x: int, y: int) -> int:
    """Nearest integer to ``x / y`` (ties toward zero)."""
    q, r = divmod(x, y)
    if 2 * abs(r) > abs(y) or (2 * abs(r) == abs(y) and q < 0):
        q += 1
    return q


# -- normalization ---------------------------------------------------------

def _apply(word: GeneratorWord, gens: Mapping[str, ExactMatrix], m: ExactMatrix) -> ExactMatrix:
    return word.evaluate(gens, m.rows) @ m


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def charge(self, w: GeneratorWord):
        self.used += len(w)
        if self.used > self.limit:
            raise NormalizationError(f"normalization budget exceeded ({self.limit} letters)")


def normalize_nonseparating(m: ExactMatrix, t: TopologicalType,
                            budget: int = DEFAULT_BUDGET) -> tuple[GeneratorWord, ExactMatrix]:
    """Return ``(w, w @ m)`` with the ovals fixed and ``span(X_{k+1}..X_g)`` invariant.

    Restricted to ``V_0`` a member is ``[[E, 2*alpha], [0, B]]`` with ``E``
    a signed permutation.  ``R`` words fix the permutation.  For each oval
    ``j`` the row ``a_j = alpha_j B^-1`` changes under conjugates of ``D``
    as ``a_j -> -a_j + e_l`` (with the sign of oval ``j`` flipped), so
    ``D`` conjugates fix signs and pairs of them clear ``a_j`` one entry at
    a time.  This is possible exactly when the entries of ``a_j`` sum to 0
    for a positive oval and to 1 for a negative one; other members raise
    :class:`NormalizationError`.
    """
    report = check_nonseparating(m, t)
    if not report.verdict:
        raise NotAMember("not a member:\n" + report.to_text())
    g, k = t.genus, t.ovals
    gens = catalog_matrices(t)
    spend = _Budget(budget)
    word = GeneratorWord()
    cur = m

    def push(w: GeneratorWord):
        nonlocal word, cur
        spend.charge(w)
        word = w + word
        cur = _apply(w, gens, cur)

    if k:
        images = [report.permutation[i][0] for i in range(1, k + 1)]
        steps = adjacent_sort(images)
        push(GeneratorWord.of((f"R_{s}", 1) for s in reversed(steps)))

    def d_conj(j: int, l: int) -> GeneratorWord:
        # D conjugated so that it flips oval j and pushes toward X_{k+l}
        rw = permutation_word(_moving(k, {k: j}), lambda s: f"R_{s}")
        mw = (permutation_word(_moving(g - k, {1: l}), lambda s: f"M_{s + k}")
              if g > k else GeneratorWord())
        return GeneratorWord.letter("D").conjugate(rw + mw)

    def a_row(j: int) -> list:
        if g == k:
            return []
        v0 = restrict_v0(cur, t)
        bb = v0.submatrix(range(k, g), range(k, g))
        alpha = [v0[j - 1, c] // 2 for c in range(k, g)]
        binv = inverse_unimodular(bb)
        return [sum(alpha[r] * binv[r, c] for r in range(g - k)) for c in range(g - k)]

    for j in range(1, k + 1):
        if cur[j - 1, j - 1] == -1:
            push(d_conj(j, 1))
        a = a_row(j)
        if sum(a):
            raise NormalizationError(
                f"oval {j}: coefficient sum {sum(a)} cannot be cleared by D, R_i, M_i")
        for l in range(2, g - k + 1):
            if a[l - 1]:
                pair = d_conj(j, 1) + d_conj(j, l)
                push(pair * a[l - 1])
        if any(a_row(j)):
            raise NormalizationError(f"oval {j}: residual components did not clear")

    _check_nonseparating_post(cur, t)
    return word, cur


def _check_nonseparating_post(m: ExactMatrix, t: TopologicalType):
    g, k = t.genus, t.ovals
    for i in range(k):
        if m.column(i) != tuple(int(r == i) for r in range(2 * g)):
            raise NormalizationError(f"postcondition failed: X_{i + 1} not fixed")
    for i in range(k, g):
        col = m.column(i)
        if any(col[r] for r in range(2 * g) if not k <= r < g):
            raise NormalizationError(f"postcondition failed: image of X_{i + 1} leaves the span")


@lru_cache(maxsize=None)
def _unit_shifts(t: TopologicalType) -> dict[tuple[int, int], GeneratorWord]:
    """Catalog words shifting one ``H_1`` coordinate by one oval direction.

    Key ``(d, c)``: the word fixes ``X_1..X_{k-1}``, acts as the identity on
    ``H_1`` modulo ``span(X_1..X_{k-1})`` and adds ``X_d`` to the image of
    the ``c``-th ``H_1`` basis vector (0-based index into ``handle_blocks``).
    Found by conjugating ``M`` with oval permutations and handle moves.
    """
    g, k, mh = t.genus, t.ovals, t.handles
    gens = catalog_matrices(t)
    h1, _ = handle_blocks(t)
    conj_handles = [GeneratorWord()]
    for e1 in (1, -1):
        conj_handles.append(GeneratorWord.letter("T", e1))
        for e2 in (1, -1):
            conj_handles.append(GeneratorWord.of([("T", e1), ("Z", e2)]))
            conj_handles.append(GeneratorWord.of([("Z", e1), ("T", e2)]))
    movers = [permutation_word(_moving(mh, {1: j}), lambda s: f"N_{s}")
              for j in range(1, mh + 1)]
    found: dict[tuple[int, int], GeneratorWord] = {}
    for d in range(1, k):
        ovals = permutation_word(_moving(k, {k: d}), lambda s: f"R_{s}")
        for mv in movers:
            for q in conj_handles:
                w = GeneratorWord.letter("M").conjugate(ovals + mv + q)
                mat = w.evaluate(gens, 2 * g)
                shift = [[mat[r, c] for c in h1] for r in range(k - 1)]
                body = mat.submatrix(h1, h1)
                if not body.is_identity():
                    continue
                nz = [(r, c, shift[r][c]) for r in range(k - 1)
                      for c in range(len(h1)) if shift[r][c]]
                if len(nz) == 1 and abs(nz[0][2]) == 1:
                    r, c, v = nz[0]
                    found.setdefault((r + 1, c), w if v == 1 else w.inverse())
    missing = [(d, c) for d in range(1, k) for c in range(len(h1)) if (d, c) not in found]
    if missing:
        raise AssertionError(f"no unit shift word for {missing} in {t}")
    return found


def normalize_separating(m: ExactMatrix, t: TopologicalType,
                         budget: int = DEFAULT_BUDGET) -> tuple[GeneratorWord, ExactMatrix]:
    """Return ``(w, w @ m)`` fixing every oval class with ``H_1``, ``H_2`` invariant.

    ``U`` handles ``eps = -1``; ``R`` words undo the permutation of the
    oval classes; conjugates of ``M`` remove the components of ``h(H_1)``
    along ``X_1..X_{k-1}`` (and, by the symmetry, of ``h(H_2)``).
    """
    report = check_separating(m, t)
    if not report.verdict:
        raise NotAMember("not a member:\n" + report.to_text())
    k = t.ovals
    gens = catalog_matrices(t)
    spend = _Budget(budget)
    word = GeneratorWord()
    cur = m

    def push(w: GeneratorWord):
        nonlocal word, cur
        spend.charge(w)
        word = w + word
        cur = _apply(w, gens, cur)

    if report.epsilon == -1:
        push(GeneratorWord.letter("U"))
    ovals = oval_classes(t)
    if k >= 2:
        images = [ovals.index(cur.apply(o)) + 1 for o in ovals]
        steps = adjacent_sort(images)
        push(GeneratorWord.of((f"R_{s}", 1) for s in reversed(steps)))

    h1, _ = handle_blocks(t)
    if k >= 2 and h1:
        body = cur.submatrix(h1, h1)
        shift = cur.submatrix(range(k - 1), h1)
        # need N with N @ body = -shift
        n = -(shift @ inverse_unimodular(body))
        units = _unit_shifts(t)
        for d in range(1, k):
            for c in range(len(h1)):
                q = n[d - 1, c]
                if q:
                    push(units[(d, c)] * q)

    _check_separating_post(cur, t)
    return word, cur


def _check_separating_post(m: ExactMatrix, t: TopologicalType):
    for o in oval_classes(t):
        if m.apply(o) != o:
            raise NormalizationError("postcondition failed: an oval class moved")
    for block in handle_blocks(t):
        allowed = set(block)
        for idx in block:
            col = m.column(idx)
            if any(col[r] for r in range(len(col)) if r not in allowed):
                raise NormalizationError("postcondition failed: a handle block is not invariant")
