"""Balanced systems A x^T = 0: affine relations, affine rank and the
trivial / shape / generic classification of solutions.

A tuple x = (x_1, ..., x_k) is a sequence of k points of F_q^n, each a tuple
of n field elements.
"""
from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Sequence

from .errors import (DimensionMismatch, LengthMismatch, NotBalanced, PreconditionViolated,
                     check)
from .field import Field
from .linalg import EchelonBasis, Matrix, combine, kernel_basis, rank, row_space_contains, rref
from .matroid import covering_bases, extend_to_basis, require_full_row_rank, tame_verdict

Point = tuple[int, ...]
SolutionTuple = Sequence[Point]


def _dim(x: SolutionTuple) -> int:
    if not x:
        raise DimensionMismatch("empty tuple")
    n = len(x[0])
    if any(len(p) != n for p in x):
        raise DimensionMismatch("points of different dimensions")
    return n


def is_row_balanced(A: Matrix) -> bool:
    return all(A.field.sum(r) == 0 for r in A.rows)


def point_matrix(F: Field, x: SolutionTuple) -> Matrix:
    """The (n+1) x k matrix with a row of ones above the points as columns."""
    n = _dim(x)
    rows = [(1,) * len(x)] + [tuple(p[i] for p in x) for i in range(n)]
    return Matrix(F, tuple(rows), len(x))


def affine_rank(F: Field, x: SolutionTuple) -> int:
    return rank(point_matrix(F, x))


def ann_bal_basis(F: Field, x: SolutionTuple) -> Matrix:
    """Rows form a basis of the balanced relations sum mu_i x_i = 0, sum mu_i = 0."""
    return Matrix(F, tuple(kernel_basis(point_matrix(F, x))), len(x))


def is_solution(A: Matrix, x: SolutionTuple) -> bool:
    if len(x) != A.ncols:
        raise DimensionMismatch(f"{len(x)} points for {A.ncols} variables")
    n = _dim(x)
    return all(not any(combine(A.field, row, x, n)) for row in A.rows)


@dataclass(frozen=True)
class SolutionClass:
    arank: int
    ann_dim: int
    is_solution: bool
    is_trivial: bool
    is_shape: bool
    is_generic: bool

    def as_dict(self) -> dict:
        return asdict(self)


def classify_solution(A: Matrix, x: SolutionTuple) -> SolutionClass:
    """Classify x against a balanced full-row-rank A.  The trivial, shape and
    generic flags are only set for actual solutions."""
    sol = is_solution(A, x)
    F, k = A.field, len(x)
    ar = affine_rank(F, x)
    ann = k - ar
    trivial = sol and all(p == x[0] for p in x)
    shape = sol and k > 1 and len(set(x)) == k
    generic = sol and ar == k - A.nrows
    check(not generic or generic_by_rowspace(A, x), "rank criterion disagrees with annihilator")
    return SolutionClass(ar, ann, sol, trivial, shape, generic)


def generic_by_rowspace(A: Matrix, x: SolutionTuple) -> bool:
    """Genericity as equality of the relation space of x with the row space of A."""
    if not is_solution(A, x):
        return False
    ann = ann_bal_basis(A.field, x)
    return all(row_space_contains(A, v) for v in ann.rows)


def _require_balanced_full_rank(A: Matrix) -> None:
    if not is_row_balanced(A):
        raise NotBalanced("some row does not sum to zero")
    require_full_row_rank(A)


def generic_witness_lowdim(A: Matrix) -> tuple[Point, ...]:
    """A generic solution in F_q^(k-m-1) built from the reduced form (I | B):
    free variables get 0 and the unit vectors, pivot variables are solved."""
    _require_balanced_full_rank(A)
    F, m, k = A.field, A.nrows, A.ncols
    if k < m + 1:
        raise PreconditionViolated("need k >= m + 1")
    d = k - m - 1
    R, _, pivots = rref(A)
    free = [j for j in range(k) if j not in pivots]
    z: list[Point | None] = [None] * k
    for idx, j in enumerate(free):
        z[j] = tuple(int(t == idx) for t in range(d)) if idx < d else (0,) * d
    for i, pc in enumerate(pivots):
        acc = combine(F, [R.rows[i][j] for j in free], [z[j] for j in free], d)
        z[pc] = tuple(F.neg(a) for a in acc)
    out = tuple(z)
    check(is_solution(A, out) and affine_rank(F, out) == k - m, "witness is not generic")
    return out


def disjoint_rank_sets(A: Matrix, x: SolutionTuple) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Disjoint index sets I1, I2 of size r = arank(x) <= m on which x has
    affine rank r, for a tame balanced m x (2m+1) matrix A."""
    _require_balanced_full_rank(A)
    F, m, k = A.field, A.nrows, A.ncols
    if k != 2 * m + 1:
        raise PreconditionViolated(f"shape {A.shape} is not m x (2m+1)")
    if not tame_verdict(A):
        raise PreconditionViolated("matrix is not tame")
    if not is_solution(A, x):
        raise PreconditionViolated("x is not a solution")
    r = affine_rank(F, x)
    if r > m:
        raise PreconditionViolated(f"affine rank {r} exceeds m = {m}")
    # extend the rows of A to a basis of the relation space of x
    span = EchelonBasis(F, k)
    rows = []
    for row in A.rows:
        span.add(row)
        rows.append(row)
    for v in sorted(kernel_basis(point_matrix(F, x))):
        if span.add(v):
            rows.append(v)
    ext = Matrix(F, tuple(rows), k)
    check(ext.nrows == k - r, "relation space has unexpected dimension")
    top = Matrix(F, ext.rows[:m + 1], k)
    J1, J2 = covering_bases(top)
    B1, B2 = extend_to_basis(ext, J1), extend_to_basis(ext, J2)
    I1 = tuple(j for j in range(k) if j not in B1)
    I2 = tuple(j for j in range(k) if j not in B2)
    check(not set(I1) & set(I2) and len(I1) == len(I2) == r, "index sets are not disjoint r-sets")
    for I in (I1, I2):
        check(affine_rank(F, [x[j] for j in I]) == r, f"{I} has affine rank != {r}")
    return I1, I2


def is_affine_copy(F: Field, z: SolutionTuple, x: SolutionTuple) -> bool:
    """Whether x_i = L(z_i) + a for an injective linear L : F^r -> F^n."""
    if len(z) != len(x):
        raise LengthMismatch(f"{len(z)} vs {len(x)} points")
    r, n = _dim(z), _dim(x)
    if n < r:
        return False
    ann_z = ann_bal_basis(F, z)
    ann_x = ann_bal_basis(F, x)
    if ann_z.nrows != ann_x.nrows:
        return False
    return all(row_space_contains(ann_x, v) for v in ann_z.rows)
