"""Exact homology representation of real mapping class groups."""

from .decompose import (
    GeneratorWord,
    NormalizationError,
    decompose_empty_member,
    decompose_gl,
    normalize_nonseparating,
    normalize_separating,
)
from .exactmat import ExactMatrix, determinant, inverse_unimodular, multiply
from .homology import build_theta_table, induced_matrix, swap_involution_matrix, word_value
from .membership import MembershipReport, check_membership
from .presentations import automorphism_catalog, canonical_presentation
from .surfaces import TopologicalType, parse_type, sigma_matrix

__all__ = [
    "ExactMatrix", "GeneratorWord", "MembershipReport", "NormalizationError", "TopologicalType",
    "automorphism_catalog", "build_theta_table", "canonical_presentation", "check_membership",
    "decompose_empty_member", "decompose_gl", "determinant", "induced_matrix",
    "inverse_unimodular", "multiply", "normalize_nonseparating", "normalize_separating",
    "parse_type", "sigma_matrix", "swap_involution_matrix", "word_value",
]
