"""Exact finite-group models of quantum behavior over cyclotomic fields."""
from __future__ import annotations

from .cyclotomic import Cyclotomic, format_cyclotomic, parse_cyclotomic, root_of_unity, zeta
from .errors import ParseError, ResourceLimitError
from .groups import GeneratedRep, Permutation, a5_rep3prime, mz_splitter, permutation_matrix
from .linalg import CycMatrix, CycVector, born, inner, is_unitary, matrix_order

__all__ = [
    "Cyclotomic",
    "CycMatrix",
    "CycVector",
    "GeneratedRep",
    "ParseError",
    "Permutation",
    "ResourceLimitError",
    "a5_rep3prime",
    "born",
    "format_cyclotomic",
    "inner",
    "is_unitary",
    "matrix_order",
    "mz_splitter",
    "parse_cyclotomic",
    "permutation_matrix",
    "root_of_unity",
    "zeta",
]
