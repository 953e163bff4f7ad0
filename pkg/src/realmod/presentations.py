"""Canonical presentations of the quotient groups and their automorphisms.

A word is a tuple of ``(generator, exponent)`` letters with exponent ``+1`` or
``-1``; generators are short names such as ``"e1"``, ``"c2"``, ``"d3"``,
``"a1"``, ``"b1"``.  Reflections ``c_i`` and glide reflections ``d_i`` reverse
orientation, everything else preserves it.

Automorphisms are substitution tables.  Generators missing from a table are
fixed.  Well-definedness is not proved here; :mod:`realmod.homology` checks
what can be checked (relators die in homology, induced matrices are
symplectic and commute with ``sigma_H``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .surfaces import TopologicalType

Letter = tuple[str, int]
Word = tuple[Letter, ...]

_GEN_RE = re.compile(r"^([ecdab])(\d+)$")


class WordError(ValueError):
    pass


def generator_kind(name: str) -> str:
    m = _GEN_RE.match(name)
    if not m:
        raise WordError(f"not a canonical generator: {name!r}")
    return m.group(1)


def generator_index(name: str) -> int:
    generator_kind(name)
    return int(name[1:])


def is_reversing(name: str) -> bool:
    return generator_kind(name) in "cd"


def orientation_character(name: str) -> int:
    return -1 if is_reversing(name) else 1


# -- word algebra ---------------------------------------------------------

def reduce_word(w: Iterable[Letter]) -> Word:
    """Free reduction: cancel adjacent ``x x^-1`` pairs."""
    out: list[Letter] = []
    for gen, e in w:
        if out and out[-1][0] == gen and out[-1][1] == -e:
            out.pop()
        else:
            out.append((gen, e))
    return tuple(out)


def inverse_word(w: Sequence[Letter]) -> Word:
    return tuple((gen, -e) for gen, e in reversed(w))


def concat(*words: Sequence[Letter]) -> Word:
    return reduce_word(letter for w in words for letter in w)


def power(w: Sequence[Letter], n: int) -> Word:
    base = tuple(w) if n >= 0 else inverse_word(w)
    return reduce_word(base * abs(n))


def commutator(u: Sequence[Letter], v: Sequence[Letter]) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return concat(u, v, inverse_word(u), inverse_word(v))


def g(name: str, e: int = 1) -> Word:
    """Single-letter word."""
    generator_kind(name)
    return ((name, e),)


def parse_word(text: str) -> Word:
    """Parse whitespace-separated symbols, ``'`` marking an inverse (``"d3'"``)."""
    letters = []
    for tok in text.split():
        e = 1
        while tok.endswith("'"):
            tok = tok[:-1]
            e = -e
        if tok.endswith("^-1"):
            tok, e = tok[:-3], -e
        generator_kind(tok)
        letters.append((tok, e))
    return tuple(letters)


def format_word(w: Sequence[Letter]) -> str:
    if not w:
        return "1"
    return " ".join(gen + ("'" if e < 0 else "") for gen, e in w)


def reversing_parity(w: Sequence[Letter]) -> int:
    return sum(1 for gen, _ in w if is_reversing(gen)) % 2


# -- presentations --------------------------------------------------------

@dataclass(frozen=True)
class DeltaPresentation:
    """Canonical presentation of the group uniformizing ``S/<sigma>``.

    ``transversal`` names the orientation-reversing generator ``t`` whose
    coset ``{1, t}`` splits the group over its orientation-preserving half:
    ``d_{g+1}`` (non-separating) or ``c_k`` (separating).
    """

    type: TopologicalType
    signature: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    transversal: str

    def __contains__(self, name: str) -> bool:
        return name in self.generators

    def check_word(self, w: Sequence[Letter]):
        for gen, e in w:
            if gen not in self.generators:
                raise WordError(f"symbol {gen!r} is not a generator of {self.signature}")
            if e not in (1, -1):
                raise WordError(f"exponent must be +-1, got {e}")


def canonical_presentation(t: TopologicalType) -> DeltaPresentation:
    g_, k = t.genus, t.ovals
    es = [f"e{i}" for i in range(1, k + 1)]
    cs = [f"c{i}" for i in range(1, k + 1)]
    relators: list[Word] = []
    for e, c in zip(es, cs):
        relators.append(power(g(c), 2))
        relators.append(concat(g(e), g(c), g(e, -1), g(c, -1)))
    long_rel: list[Letter] = [(e, 1) for e in es]
    if not t.separating:
        ds = [f"d{i}" for i in range(k + 1, g_ + 2)]
        for d in ds:
            long_rel += [(d, 1), (d, 1)]
        relators.append(tuple(long_rel))
        sig = f"({g_ - k + 1},-,[-],{{{','.join(['(-)'] * k)}}})"
        return DeltaPresentation(t, sig, tuple(es + cs + ds), tuple(relators), f"d{g_ + 1}")
    m = t.handles
    abs_ = []
    for i in range(1, m + 1):
        abs_ += [f"a{i}", f"b{i}"]
        long_rel += commutator(g(f"a{i}"), g(f"b{i}"))
    relators.append(tuple(long_rel))
    sig = f"({m},+,[-],{{{','.join(['(-)'] * k)}}})"
    return DeltaPresentation(t, sig, tuple(es + cs + abs_), tuple(relators), f"c{k}")


# -- automorphisms --------------------------------------------------------

@dataclass(frozen=True)
class DeltaAutomorphism:
    """Generator -> word substitution; unlisted generators are fixed.

    ``matrix_name`` is the symbol of the induced homology matrix (``A_1``,
    ``D``, ``Z`` ...).
    """

    name: str
    presentation: DeltaPresentation
    images: Mapping[str, Word] = field(default_factory=dict)
    matrix_name: str = ""

    def __post_init__(self):
        for gen, w in self.images.items():
            if gen not in self.presentation:
                raise WordError(f"{self.name}: {gen!r} is not a generator")
            self.presentation.check_word(w)
            if reversing_parity(w) != int(is_reversing(gen)):
                raise WordError(f"{self.name}: image of {gen} has the wrong orientation character")

    def image(self, gen: str) -> Word:
        return self.images.get(gen, ((gen, 1),))

    def substitution_table(self) -> list[tuple[str, Word]]:
        return [(gen, self.images[gen]) for gen in self.presentation.generators
                if gen in self.images]


def identity_automorphism(p: DeltaPresentation) -> DeltaAutomorphism:
    return DeltaAutomorphism("id", p, {}, "I")


def apply_automorphism(phi: DeltaAutomorphism, w: Sequence[Letter]) -> Word:
    phi.presentation.check_word(w)
    out: list[Letter] = []
    for gen, e in w:
        img = phi.image(gen)
        out.extend(img if e == 1 else inverse_word(img))
    return reduce_word(out)


def compose(phi: DeltaAutomorphism, psi: DeltaAutomorphism,
            name: str | None = None) -> DeltaAutomorphism:
    """``phi o psi``: first ``psi``, then ``phi``."""
    if phi.presentation != psi.presentation:
        raise WordError(f"cannot compose automorphisms of different presentations "
                        f"({phi.presentation.signature} vs {psi.presentation.signature})")
    images = {}
    for gen in phi.presentation.generators:
        img = apply_automorphism(phi, psi.image(gen))
        if img != ((gen, 1),):
            images[gen] = img
    label = name or f"{phi.name}*{psi.name}"
    return DeltaAutomorphism(label, phi.presentation, images,
                             f"{phi.matrix_name}{psi.matrix_name}")


def _W(text: str) -> Word:
    return parse_word(text)


def crosscap_transposition(p: DeltaPresentation, i: int, name: str, matrix_name: str):
    """``d_i -> d_i^2 d_{i+1} d_i^-2``, ``d_{i+1} -> d_i``."""
    di, dj = f"d{i}", f"d{i + 1}"
    return DeltaAutomorphism(name, p, {
        di: _W(f"{di} {di} {dj} {di}' {di}'"),
        dj: _W(di),
    }, matrix_name)


def crosscap_gamma(p: DeltaPresentation, i: int, name: str = "gamma", matrix_name: str = "C"):
    """``d_i -> d_i d_{i+1}^-1 d_i^-1``, ``d_{i+1} -> d_i d_{i+1}^2``."""
    di, dj = f"d{i}", f"d{i + 1}"
    return DeltaAutomorphism(name, p, {
        di: _W(f"{di} {dj}' {di}'"),
        dj: _W(f"{di} {dj} {dj}"),
    }, matrix_name)


def boundary_transposition(p: DeltaPresentation, i: int) -> DeltaAutomorphism:
    """Swap boundary ``i`` and ``i+1``, carrying their reflections along.

    ``e_i -> e_i e_{i+1} e_i^-1``, ``e_{i+1} -> e_i``,
    ``c_i -> e_i c_{i+1} e_i^-1``, ``c_{i+1} -> c_i``.
    """
    e1, e2, c1, c2 = f"e{i}", f"e{i + 1}", f"c{i}", f"c{i + 1}"
    return DeltaAutomorphism(f"rho_{i}", p, {
        e1: _W(f"{e1} {e2} {e1}'"),
        e2: _W(e1),
        c1: _W(f"{e1} {c2} {e1}'"),
        c2: _W(c1),
    }, f"R_{i}")


def _empty_catalog(p: DeltaPresentation) -> list[DeltaAutomorphism]:
    n = p.type.genus
    out = [crosscap_transposition(p, i, f"alpha_{i}", f"A_{i}") for i in range(1, n + 1)]
    out.append(DeltaAutomorphism("beta", p, {
        f"d{j}": g(f"d{n + 2 - j}", -1) for j in range(1, n + 2)}, "B"))
    out.append(crosscap_gamma(p, 1))
    return out


def _nonseparating_catalog(p: DeltaPresentation) -> list[DeltaAutomorphism]:
    n, k = p.type.genus, p.type.ovals
    ek, ck, dk = f"e{k}", f"c{k}", f"d{k + 1}"
    out = [DeltaAutomorphism("delta", p, {
        ek: _W(f"{ek} {dk} {ek}' {dk}' {ek}'"),
        dk: _W(f"{ek} {dk}"),
        ck: _W(f"{ek} {dk} {ck} {dk}' {ek}'"),
    }, "D")]
    out += [boundary_transposition(p, i) for i in range(1, k)]
    # crosscap moves that leave the transversal d_{g+1} alone
    out += [crosscap_transposition(p, i, f"mu_{i}", f"M_{i}") for i in range(k + 1, n)]
    if k + 2 <= n:
        out.append(crosscap_gamma(p, k + 1))
    return out


def _separating_catalog(p: DeltaPresentation) -> list[DeltaAutomorphism]:
    k, m = p.type.ovals, p.type.handles
    out = []
    if m >= 1:
        out.append(DeltaAutomorphism("omega", p, {"a1": _W("a1 b1")}, "Z"))
        out.append(DeltaAutomorphism("tau", p, {"a1": _W("a1 b1"), "b1": _W("a1'")}, "T"))
    for i in range(1, m):
        a, b, a2, b2 = f"a{i}", f"b{i}", f"a{i + 1}", f"b{i + 1}"
        w = commutator(g(a2), g(b2))
        out.append(DeltaAutomorphism(f"nu_{i}", p, {
            a: g(a2), b: g(b2),
            a2: concat(inverse_word(w), g(a), w),
            b2: concat(inverse_word(w), g(b), w),
        }, f"N_{i}"))
    if m >= 1:
        ek, ck = f"e{k}", f"c{k}"
        out.append(DeltaAutomorphism("mu", p, {
            ek: _W(f"a1' {ek} a1"),
            "a1": _W(f"a1' {ek}' a1 {ek} a1"),
            "b1": _W(f"b1 a1' {ek} a1"),
            ck: _W(f"a1' {ck} a1"),
        }, "M"))
    out += [boundary_transposition(p, i) for i in range(1, k)]
    return out


def automorphism_catalog(t: TopologicalType) -> list[DeltaAutomorphism]:
    p = canonical_presentation(t)
    if t.separating:
        return _separating_catalog(p)
    if t.ovals == 0:
        return _empty_catalog(p)
    return _nonseparating_catalog(p)
