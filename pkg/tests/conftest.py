import random
from fractions import Fraction
from functools import lru_cache

import pytest

from realmod.exactmat import ExactMatrix, inverse_unimodular
from realmod.homology import catalog_matrices
from realmod.surfaces import TopologicalType, all_types


def cofactor_det(rows):
    """Laplace expansion; exponential but independent of the library."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def adjugate_inverse(rows):
    n = len(rows)
    d = cofactor_det(rows)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            cof = (-1) ** (i + j) * (cofactor_det(minor) if minor else 1)
            inv[j][i] = Fraction(cof, d)
    return inv


@lru_cache(maxsize=None)
def _catalog_inverses(t: TopologicalType) -> dict[str, ExactMatrix]:
    return {n: inverse_unimodular(m) for n, m in catalog_matrices(t).items()}


def random_catalog_product(t: TopologicalType, length: int, rng: random.Random) -> ExactMatrix:
    gens = catalog_matrices(t)
    names = sorted(gens)
    inverses = _catalog_inverses(t)
    m = ExactMatrix.identity(2 * t.genus)
    for _ in range(length):
        name = rng.choice(names)
        m = m @ (gens[name] if rng.random() < 0.5 else inverses[name])
    return m


def random_elementary_product(g: int, steps: int, rng: random.Random) -> ExactMatrix:
    """Product of random transvections, transpositions and sign flips."""
    m = [[int(i == j) for j in range(g)] for i in range(g)]
    for _ in range(steps):
        kind = rng.random()
        if g > 1 and kind < 0.7:
            i, j = rng.sample(range(g), 2)
            c = rng.choice((-1, 1))
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        elif g > 1 and kind < 0.85:
            i, j = rng.sample(range(g), 2)
            m[i], m[j] = m[j], m[i]
        else:
            i = rng.randrange(g)
            m[i] = [-a for a in m[i]]
    return ExactMatrix.from_rows(m)


TYPES_UP_TO_5 = list(all_types(5))
NONSEP_WITH_OVALS = [t for t in TYPES_UP_TO_5 if not t.separating and t.ovals > 0]
SEPARATING = [t for t in TYPES_UP_TO_5 if t.separating]


@pytest.fixture
def rng():
    return random.Random(20240611)


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Record the one-line outcome of an acceptance criterion."""
    results = request.config.stash.setdefault(_ACCEPTANCE, {})

    def record(number: int, passed: bool, detail: str):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        results[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
