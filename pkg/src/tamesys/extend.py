"""Growing a tame balanced m x k matrix to a tame balanced m' x (2m'+1) one.

Each step locates a pivot column i through the minimal tight set and appends
either one row (alpha e_i + beta e_k | gamma) with alpha + beta + gamma = 0,
or over F_2 the fixed three-row gadget.  The first k columns always keep
their original meaning.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionViolated, check
from .linalg import Matrix, rank
from .matroid import is_tame, tame_verdict, mask_to_set, max_union_two_independent, subset_ranks
from .systems import classify_solution, generic_witness_lowdim, is_row_balanced

ENUMERATION_LIMIT = 24


@dataclass(frozen=True)
class TightSetReport:
    tight_sets: tuple[tuple[int, ...], ...] | None
    minimal: tuple[int, ...]
    pivot: int


def _tightness(A: Matrix, rank_u: int, size_u: int) -> int:
    m, k = A.nrows, A.ncols
    return 2 * rank_u - 2 * m - 1 + k - size_u


def _require_tame_wide(A: Matrix) -> None:
    if A.ncols < 2 * A.nrows + 2:
        raise PreconditionViolated(f"need k >= 2m + 2, got shape {A.shape}")
    if rank(A) != A.nrows or not tame_verdict(A):
        raise PreconditionViolated("matrix is not tame")


def tight_pivot(A: Matrix) -> TightSetReport:
    """All subsets U of the first k-1 columns with f(U) = 0, where
    f(U) = 2 r(U) - 2m - 1 + k - |U|, their intersection and its least element."""
    _require_tame_wide(A)
    k = A.ncols
    ground = list(range(k - 1))
    if k > ENUMERATION_LIMIT:
        minimal = _minimal_tight_by_union(A)
        tight = None
    else:
        ranks = subset_ranks(A, ground)
        f = [_tightness(A, r, bin(mask).count("1")) for mask, r in enumerate(ranks)]
        check(min(f) >= 0, "tame matrix with f < 0")
        masks = [mask for mask, v in enumerate(f) if v == 0]
        inter = (1 << len(ground)) - 1
        for mask in masks:
            inter &= mask
        check(inter in masks, "intersection of tight sets is not tight")
        tight = tuple(sorted(mask_to_set(ground, mask) for mask in masks))
        minimal = mask_to_set(ground, inter)
    check(len(minimal) > 0, "minimal tight set is empty")
    return TightSetReport(tight, minimal, minimal[0])


def _minimal_tight_by_union(A: Matrix) -> tuple[int, ...]:
    # j lies in every tight set iff min f over subsets of [k-1] - {j} is
    # positive, i.e. [k-1] - {j} still holds two disjoint bases
    k, m = A.ncols, A.nrows
    out = []
    for j in range(k - 1):
        ground = [i for i in range(k - 1) if i != j]
        if max_union_two_independent(A, ground, method="augmenting").value == 2 * m:
            out.append(j)
    return tuple(out)


def balancing_triple(F) -> tuple[int, int, int]:
    """Nonzero (alpha, beta, gamma) with alpha + beta + gamma = 0: (1, 1, -2)
    when -2 != 0, else alpha = 1 and the lexicographically first (beta, gamma)."""
    minus_two = F.neg(F.add(1, 1))
    if minus_two:
        return 1, 1, minus_two
    for beta in F.nonzero():
        gamma = F.neg(F.add(1, beta))
        if gamma:
            return 1, beta, gamma
    raise PreconditionViolated("F_2 admits no balanced nonzero triple")


@dataclass
class ExtensionStep:
    pivot: int
    gadget: str
    shape_in: tuple[int, int]
    shape_out: tuple[int, int]
    triple: tuple[int, int, int] | None = None

    def as_dict(self) -> dict:
        return {"pivot": self.pivot, "gadget": self.gadget, "shape_in": list(self.shape_in),
                "shape_out": list(self.shape_out),
                "triple": list(self.triple) if self.triple else None}


def _extend(A: Matrix) -> tuple[Matrix, ExtensionStep]:
    report = tight_pivot(A)
    F, m, k, i = A.field, A.nrows, A.ncols, report.pivot
    if F.q != 2:
        alpha, beta, gamma = balancing_triple(F)
        rows = [r + (0,) for r in A.rows]
        new = [0] * (k + 1)
        new[i], new[k - 1], new[k] = alpha, beta, gamma
        out = Matrix(F, tuple(rows) + (tuple(new),), k + 1)
        step = ExtensionStep(i, "single-row", A.shape, out.shape, (alpha, beta, gamma))
    else:
        def unit(*idx):
            v = [0] * k
            for j in idx:
                v[j] ^= 1
            return v
        rows = [r + (0,) * 5 for r in A.rows]
        rows.append(tuple(unit(i, k - 1) + [1, 0, 1, 0, 0]))
        rows.append(tuple(unit(i) + [1, 1, 0, 1, 0]))
        rows.append(tuple(unit(k - 1) + [1, 1, 0, 0, 1]))
        out = Matrix(F, tuple(rows), k + 5)
        step = ExtensionStep(i, "f2-gadget", A.shape, out.shape)
    check(is_row_balanced(out) == is_row_balanced(A), "extension changed row balance")
    check(rank(out) == out.nrows, "extension lost full row rank")
    check(out.ncols - 2 * out.nrows == k - 2 * m - 1, "k - 2m did not drop by one")
    check(is_tame(out).tame, "extension is not tame")
    return out, step


def extend_step(A: Matrix) -> Matrix:
    return _extend(A)[0]


def normalize_with_trace(A: Matrix) -> tuple[Matrix, list[ExtensionStep]]:
    """Apply k - 2m - 1 extension steps.  Balanced inputs additionally get
    the projection check: the low-dimensional generic witness of the result,
    cut to the first k points, is a generic solution of A."""
    if rank(A) != A.nrows or A.ncols < 2 * A.nrows + 1 or not tame_verdict(A):
        raise PreconditionViolated("matrix is not tame")
    steps = []
    out = A
    for _ in range(A.ncols - 2 * A.nrows - 1):
        out, step = _extend(out)
        steps.append(step)
    check(out.ncols == 2 * out.nrows + 1, "normalisation did not reach m' x (2m'+1)")
    if is_row_balanced(A):
        z = generic_witness_lowdim(out)
        check(classify_solution(A, z[:A.ncols]).is_generic,
              "generic witness of the extension does not project to a generic solution")
    return out, steps


def normalize_to_tame_square(A: Matrix) -> Matrix:
    return normalize_with_trace(A)[0]
