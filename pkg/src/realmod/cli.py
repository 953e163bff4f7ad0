"""``realmod`` command line.

Exit codes: 0 member / success, 1 non-member, 2 input error, 3 normalization
failure or budget exhausted.
"""

from __future__ import annotations

import sys

import click

from .decompose import (
    DEFAULT_BUDGET,
    NormalizationError,
    NotAMember,
    decompose_empty_member,
    decompose_gl,
    normalize_nonseparating,
    normalize_separating,
)
from .exactmat import ExactMatrix, MatrixError, format_matrix, parse_matrix
from .homology import catalog_matrices, lift_from_v0, restrict_v0
from .membership import MembershipInputError, check_membership
from .presentations import automorphism_catalog, canonical_presentation, format_word
from .surfaces import (
    InvalidType,
    TopologicalType,
    basis_vector,
    enumerate_types,
    format_vector,
    parse_type,
    sigma_matrix,
)

EXIT_MEMBER, EXIT_NON_MEMBER, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

COUNTEREXAMPLE = ExactMatrix.from_columns([
    (1, 0, 0, 0),      # h(X_1) = X_1
    (1, 1, 0, 0),      # h(X_2) = X_1 + X_2
    (-1, -1, 1, -1),   # h(Y_1) = -X_1 - X_2 + Y_1 - Y_2
    (-1, 0, 0, 1),     # h(Y_2) = -X_1 + Y_2
])


def _input_error(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_INPUT)


def _type(text: str) -> TopologicalType:
    try:
        return parse_type(text)
    except InvalidType as exc:
        _input_error(str(exc))


def _matrix(stream) -> ExactMatrix:
    try:
        return parse_matrix(stream.read())
    except MatrixError as exc:
        _input_error(f"cannot read matrix: {exc}")


def _emit_matrix(m: ExactMatrix, machine: bool, key: str = "MATRIX"):
    if machine:
        click.echo(f"{key} {m.rows} {m.cols} " + " ".join(map(str, m.entries)))
    else:
        click.echo(format_matrix(m), nl=False)


type_option = click.option("--type", "type_text", required=True,
                           help="Topological type, e.g. 'g=2,type=-1' or 'g=3,type=+2'.")
in_option = click.option("--in", "infile", type=click.File("r"), default="-",
                         show_default=True, help="Matrix file ('-' for standard input).")
machine_option = click.option("--machine", is_flag=True, help="Emit 'KEY value' lines.")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Homology of real mapping classes: types, sigma_H, membership, words."""


@main.command()
@click.argument("genus", type=int)
@machine_option
def types(genus: int, machine: bool):
    """List the topological types of genus GENUS."""
    if genus < 1:
        raise click.UsageError(f"genus must be >= 1, got {genus}")
    ts = enumerate_types(genus)
    if machine:
        for t in ts:
            click.echo(f"TYPE {t}")
        return
    click.echo(" ".join(t.code for t in ts))
    for t in ts:
        kind = "separating" if t.separating else "non-separating"
        click.echo(f"{t}  ovals={t.ovals}  {kind}")


@main.command()
@type_option
@machine_option
def sigma(type_text: str, machine: bool):
    """Print the matrix of sigma_H."""
    _emit_matrix(sigma_matrix(_type(type_text)), machine)


@main.command()
@type_option
@in_option
@machine_option
def check(type_text: str, infile, machine: bool):
    """Decide membership of a matrix in the image of the real mapping class group."""
    t = _type(type_text)
    m = _matrix(infile)
    try:
        report = check_membership(m, t)
    except MembershipInputError as exc:
        _input_error(str(exc))
    if machine:
        for c in report.conditions:
            click.echo(f"COND{c.number} {'PASS' if c.passed else 'FAIL'}")
        if report.epsilon is not None:
            click.echo(f"EPSILON {report.epsilon:+d}")
        click.echo(f"VERDICT {'yes' if report.verdict else 'no'}")
    else:
        click.echo(report.to_text())
    sys.exit(EXIT_MEMBER if report.verdict else EXIT_NON_MEMBER)


@main.command()
@type_option
@click.option("--homology", is_flag=True, help="Also print induced matrices.")
@machine_option
def gens(type_text: str, homology: bool, machine: bool):
    """List the catalog automorphisms of the canonical presentation."""
    t = _type(type_text)
    p = canonical_presentation(t)
    mats = catalog_matrices(t) if homology else {}
    if not machine:
        click.echo(f"presentation {p.signature}: generators {' '.join(p.generators)}")
    for phi in automorphism_catalog(t):
        if machine:
            click.echo(f"AUTOMORPHISM {phi.name} {phi.matrix_name}")
            for gen, w in phi.substitution_table():
                click.echo(f"IMAGE {phi.name} {gen} {format_word(w)}")
        else:
            click.echo(f"{phi.name} (matrix {phi.matrix_name})")
            for gen, w in phi.substitution_table():
                click.echo(f"  {gen} -> {format_word(w)}")
        if homology:
            _emit_matrix(mats[phi.matrix_name], machine, f"MATRIX {phi.matrix_name}")
    if t.separating:
        if machine:
            click.echo("AUTOMORPHISM U U")
        else:
            click.echo("U (swap involution, given as a matrix)")
        if homology:
            _emit_matrix(mats["U"], machine, "MATRIX U")


@main.command()
@type_option
@in_option
@click.option("--budget", type=int, default=DEFAULT_BUDGET, show_default=True,
              help="Maximum number of generator letters.")
@machine_option
def normalize(type_text: str, infile, budget: int, machine: bool):
    """Multiply a member by a catalog word that fixes the ovals."""
    t = _type(type_text)
    if t.is_empty:
        _input_error("normalize needs a type with ovals; use 'decompose' for type -0")
    m = _matrix(infile)
    fn = normalize_separating if t.separating else normalize_nonseparating
    try:
        word, residual = fn(m, t, budget=budget)
    except MembershipInputError as exc:
        _input_error(str(exc))
    except NotAMember as exc:
        click.echo(str(exc))
        sys.exit(EXIT_NON_MEMBER)
    except NormalizationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BUDGET)
    if machine:
        click.echo(f"WORD {word}")
        click.echo(f"LENGTH {len(word)}")
        _emit_matrix(residual, True, "RESIDUAL")
    else:
        click.echo(f"word: {word or '(empty)'}")
        click.echo("residual:")
        click.echo(format_matrix(residual), nl=False)


@main.command()
@type_option
@in_option
@machine_option
def decompose(type_text: str, infile, machine: bool):
    """Decompose a V_0 matrix (or a full member) for the empty type."""
    t = _type(type_text)
    if not t.is_empty:
        _input_error(f"decompose works on type -0, got {t.code}")
    m = _matrix(infile)
    g = t.genus
    if m.shape == (2 * g, 2 * g):
        report = check_membership(m, t)
        if not report.verdict:
            click.echo(report.to_text())
            sys.exit(EXIT_NON_MEMBER)
        full, v0 = m, restrict_v0(m, t)
    elif m.shape == (g, g):
        v0 = m
        try:
            full = lift_from_v0(v0, t)
        except (ValueError, MatrixError):
            full = None
    else:
        _input_error(f"expected a {g}x{g} or {2 * g}x{2 * g} matrix, got {m.rows}x{m.cols}")
    try:
        gl_word = decompose_gl(v0)
    except MatrixError as exc:
        _input_error(str(exc))
    catalog_word = decompose_empty_member(full, t) if full is not None else None
    key_gl, key_cat = ("GLWORD", "CATALOG") if machine else ("gl word:", "catalog word:")
    click.echo(f"{key_gl} {gl_word}".rstrip())
    if catalog_word is None:
        click.echo(f"{key_cat} none (restriction does not lift to a member)")
        sys.exit(EXIT_NON_MEMBER)
    click.echo(f"{key_cat} {catalog_word}".rstrip())


@main.command()
@machine_option
def counterexample(machine: bool):
    """Walk through a symplectic, sigma-commuting matrix that fails the parity test."""
    t = parse_type("g=2,type=-1")
    h = COUNTEREXAMPLE
    report = check_membership(h, t)
    if not machine:
        click.echo(f"type {t}: one oval X_1, basis X_1, X_2, Y_1, Y_2")
        click.echo("sigma_H:")
        click.echo(format_matrix(sigma_matrix(t)), nl=False)
        for letter in ("X", "Y"):
            for i in (1, 2):
                img = sigma_matrix(t).apply(basis_vector(2, letter, i))
                click.echo(f"  sigma({letter}_{i}) = {format_vector(img)}")
        click.echo("h:")
        click.echo(format_matrix(h), nl=False)
        for letter in ("X", "Y"):
            for i in (1, 2):
                click.echo(f"  h({letter}_{i}) = {format_vector(h.apply(basis_vector(2, letter, i)))}")
    click.echo(report.to_text())


if __name__ == "__main__":
    main()
