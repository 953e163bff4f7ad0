"""Deciding whether a homology automorphism comes from a real mapping class.

Every check returns a :class:`MembershipReport` listing numbered conditions:

1. ``h`` preserves the intersection form;
2. ``h`` commutes with ``sigma_H``;
3. oval classes go to oval classes (up to the allowed signs);
4. non-separating only: for ``i > k`` the image of ``X_i`` has no ``Y``
   part and even coefficients on ``X_1..X_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactmat import ExactMatrix
from .surfaces import (
    TopologicalType,
    Vector,
    basis_vector,
    form_matrix,
    format_vector,
    handle_blocks,
    intersection,
    oval_classes,
    scale,
    sigma_matrix,
)


class MembershipInputError(ValueError):
    pass


@dataclass(frozen=True)
class ConditionResult:
    number: int
    passed: bool
    witness: str


@dataclass
class MembershipReport:
    type: TopologicalType
    conditions: list[ConditionResult] = field(default_factory=list)
    epsilon: int | None = None
    permutation: dict[int, tuple[int, int]] | None = None

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.conditions)

    def condition(self, number: int) -> ConditionResult:
        return next(c for c in self.conditions if c.number == number)

    def failures(self) -> list[ConditionResult]:
        return [c for c in self.conditions if not c.passed]

    def to_text(self) -> str:
        lines = [f"COND{c.number} {'PASS' if c.passed else 'FAIL'} {c.witness}".rstrip()
                 for c in self.conditions]
        lines.append(f"VERDICT {'yes' if self.verdict else 'no'}")
        return "\n".join(lines)


def _label(g: int, idx: int) -> str:
    return f"X_{idx + 1}" if idx < g else f"Y_{idx - g + 1}"


def _check_shape(m: ExactMatrix, t: TopologicalType):
    n = 2 * t.genus
    if m.shape != (n, n):
        raise MembershipInputError(
            f"matrix is {m.rows}x{m.cols}, expected {n}x{n} for genus {t.genus}")


def _symplectic(m: ExactMatrix, t: TopologicalType) -> ConditionResult:
    g = t.genus
    J = form_matrix(g)
    gram = m.T @ J @ m
    for i in range(2 * g):
        for j in range(i + 1, 2 * g):
            if gram[i, j] != J[i, j]:
                a, b = _label(g, i), _label(g, j)
                return ConditionResult(1, False,
                                       f"(h({a}),h({b}))={gram[i, j]} but ({a},{b})={J[i, j]}")
    return ConditionResult(1, True, "preserves the intersection form")


def _commutes(m: ExactMatrix, t: TopologicalType) -> ConditionResult:
    s = sigma_matrix(t)
    left, right = m @ s, s @ m
    for j in range(m.cols):
        if left.column(j) != right.column(j):
            lab = _label(t.genus, j)
            return ConditionResult(
                2, False, f"h(sigma({lab}))={format_vector(left.column(j))} "
                          f"but sigma(h({lab}))={format_vector(right.column(j))}")
    return ConditionResult(2, True, "commutes with sigma_H")


def check_empty(m: ExactMatrix, t: TopologicalType) -> MembershipReport:
    if not t.is_empty:
        raise MembershipInputError(f"check_empty needs type -0, got {t.code}")
    _check_shape(m, t)
    return MembershipReport(t, [_symplectic(m, t), _commutes(m, t)])


def _signed_unit(v: Vector, limit: int) -> tuple[int, int] | None:
    """``(j, sign)`` if ``v = sign * X_j`` with ``j <= limit`` (1-based)."""
    nz = [(i, c) for i, c in enumerate(v) if c]
    if len(nz) == 1 and nz[0][0] < limit and nz[0][1] in (1, -1):
        return nz[0][0] + 1, nz[0][1]
    return None


def check_nonseparating(m: ExactMatrix, t: TopologicalType) -> MembershipReport:
    """Conditions 1-4 for type ``-k``; ``k = 0`` is accepted (3 and 4 reduce to 1-2)."""
    if t.separating:
        raise MembershipInputError(f"check_nonseparating needs a non-separating type, got {t.code}")
    _check_shape(m, t)
    g, k = t.genus, t.ovals
    report = MembershipReport(t, [_symplectic(m, t), _commutes(m, t)])

    perm: dict[int, tuple[int, int]] = {}
    cond3 = None
    for i in range(1, k + 1):
        img = m.column(i - 1)
        hit = _signed_unit(img, k)
        if hit is None:
            cond3 = ConditionResult(3, False,
                                    f"h(X_{i})={format_vector(img)} is not +-X_j with j<={k}")
            break
        if hit[0] in (j for j, _ in perm.values()):
            cond3 = ConditionResult(3, False, f"h(X_{i}) repeats oval X_{hit[0]}")
            break
        perm[i] = hit
    if cond3 is None:
        desc = " ".join(f"X_{i}->{'+' if s > 0 else '-'}X_{j}" for i, (j, s) in perm.items())
        cond3 = ConditionResult(3, True, desc or "no ovals")
        report.permutation = perm
    report.conditions.append(cond3)

    cond4 = None
    for i in range(k + 1, g + 1):
        img = m.column(i - 1)
        for j in range(1, g + 1):
            v = intersection(img, basis_vector(g, "X", j), g)
            if v:
                cond4 = ConditionResult(4, False, f"(h(X_{i}),X_{j})={v} nonzero")
                break
        if cond4:
            break
        for j in range(1, k + 1):
            v = intersection(img, basis_vector(g, "Y", j), g)
            if v % 2:
                cond4 = ConditionResult(4, False, f"(h(X_{i}),Y_{j})={v} odd")
                break
        if cond4:
            break
    report.conditions.append(cond4 or ConditionResult(4, True, "even oval coefficients"))
    return report


def _in_span(v: Vector, allowed: set[int]) -> bool:
    return all(c == 0 or i in allowed for i, c in enumerate(v))


def check_separating(m: ExactMatrix, t: TopologicalType) -> MembershipReport:
    """Conditions 1-3 for type ``+k``.

    Condition 3 asks for ``eps`` with ``h(O) = eps O`` for the oval classes
    ``O``, and ``h`` mapping each extended block ``span(X_1..X_{k-1}) + H_i``
    into its own (``eps = +1``) or the other one (``eps = -1``).
    """
    if not t.separating:
        raise MembershipInputError(f"check_separating needs a separating type, got {t.code}")
    _check_shape(m, t)
    g, k = t.genus, t.ovals
    report = MembershipReport(t, [_symplectic(m, t), _commutes(m, t)])

    ovals = oval_classes(t)
    images = [m.apply(o) for o in ovals]
    h1, h2 = handle_blocks(t)
    base = set(range(k - 1))
    blocks = (base | set(h1), base | set(h2))

    def blocks_ok(eps: int) -> str | None:
        for src, dst in ((0, 0), (1, 1)) if eps == 1 else ((0, 1), (1, 0)):
            src_idx = h1 if src == 0 else h2
            for idx in src_idx:
                col = m.column(idx)
                if not _in_span(col, blocks[dst]):
                    return (f"h({_label(g, idx)})={format_vector(col)} "
                            f"leaves block {dst + 1}")
        return None

    witness = None
    for eps in (1, -1):
        target = {scale(eps, o) for o in ovals}
        if set(images) != target or len(set(images)) != len(set(ovals)):
            witness = witness or ("oval classes not mapped to +-themselves: "
                                  + ", ".join(format_vector(v) for v in images))
            continue
        problem = blocks_ok(eps)
        if problem is None:
            report.epsilon = eps
            report.conditions.append(ConditionResult(3, True, f"eps={eps:+d}"))
            return report
        witness = problem
    report.conditions.append(ConditionResult(3, False, witness or "no admissible eps"))
    return report


def check_membership(m: ExactMatrix, t: TopologicalType) -> MembershipReport:
    if t.separating:
        return check_separating(m, t)
    if t.is_empty:
        return check_empty(m, t)
    return check_nonseparating(m, t)

