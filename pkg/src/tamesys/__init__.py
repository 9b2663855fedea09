"""Tame balanced linear systems over finite fields: exact algebra, matroid
certificates, normalization, counting bounds and desk-scale experiments."""
from .errors import InputError, InvariantViolation, TameSysError
from .field import GF, Field, field_make
from .linalg import Matrix, kernel_basis, rank, rref
from .matroid import is_tame, max_union_two_independent, tame_by_inequalities
from .systems import affine_rank, classify_solution, disjoint_rank_sets, generic_witness_lowdim
from .extend import extend_step, normalize_to_tame_square

__all__ = [
    "TameSysError", "InputError", "InvariantViolation", "GF", "Field", "field_make", "Matrix",
    "kernel_basis", "rank", "rref", "is_tame", "max_union_two_independent",
    "tame_by_inequalities", "affine_rank", "classify_solution", "disjoint_rank_sets",
    "generic_witness_lowdim", "extend_step", "normalize_to_tame_square",
]
