"""The column matroid of a matrix: rank oracle, two-fold matroid union and
certified tameness.

Column indices are 0-based throughout.  For a ground set G the union value
max |I u J| over independent I, J within G equals min |G| - |U| + 2 r(U) over
U within G; certificates carry both sides so the equality can be re-checked.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, NotFullRowRank, PreconditionViolated, check
from .linalg import EchelonBasis, Matrix, rank, rref

BRUTE_LIMIT = 20


def _check_indices(A: Matrix, U: Iterable[int]) -> list[int]:
    U = sorted(set(U))
    for j in U:
        if not 0 <= j < A.ncols:
            raise IndexOutOfRange(f"column {j} not in [0, {A.ncols})")
    return U


def column_rank(A: Matrix, U: Iterable[int]) -> int:
    """r_A(U): rank of the columns of A indexed by U."""
    basis = EchelonBasis(A.field, A.nrows)
    return sum(basis.add(A.column(j)) for j in _check_indices(A, U))


def is_independent(A: Matrix, U: Iterable[int]) -> bool:
    U = list(U)
    return column_rank(A, U) == len(U)


def subset_ranks(A: Matrix, ground: Sequence[int]) -> list[int]:
    """Ranks of all subsets of ``ground``; entry ``mask`` has bit b set when
    ground[b] is in the subset."""
    ground = list(ground)
    _check_indices(A, ground)
    g, m = len(ground), A.nrows
    cols = [A.column(j) for j in ground]
    ranks = [0] * (1 << g)

    def fill(pos: int, mask: int, basis: EchelonBasis) -> None:
        if len(basis) == m:
            for sub in range(1 << (g - pos)):
                ranks[mask | (sub << pos)] = m
            return
        if pos == g:
            ranks[mask] = len(basis)
            return
        fill(pos + 1, mask, basis)
        if basis.contains(cols[pos]):
            fill(pos + 1, mask | (1 << pos), basis)
        else:
            grown = basis.copy()
            grown.add(cols[pos])
            fill(pos + 1, mask | (1 << pos), grown)

    fill(0, 0, EchelonBasis(A.field, m))
    return ranks


def mask_to_set(ground: Sequence[int], mask: int) -> tuple[int, ...]:
    return tuple(ground[b] for b in range(len(ground)) if mask >> b & 1)


def extend_to_basis(A: Matrix, I: Iterable[int]) -> tuple[int, ...]:
    """Greedily extend an independent set by columns in index order."""
    basis = EchelonBasis(A.field, A.nrows)
    chosen = []
    for j in I:
        check(basis.add(A.column(j)), f"set {sorted(I)} is not independent")
        chosen.append(j)
    for j in range(A.ncols):
        if len(basis) == A.nrows:
            break
        if j not in chosen and basis.add(A.column(j)):
            chosen.append(j)
    return tuple(sorted(chosen))


@dataclass(frozen=True)
class UnionCertificate:
    ground: tuple[int, ...]
    I: tuple[int, ...]
    J: tuple[int, ...]
    U_min: tuple[int, ...]
    value: int

    def bound(self, A: Matrix) -> int:
        """|ground| - |U_min| + 2 r(U_min), the dual value."""
        return len(self.ground) - len(self.U_min) + 2 * column_rank(A, self.U_min)


def _representation(A: Matrix, members: Sequence[int], y: int) -> list[int] | None:
    """Coefficients expressing column y in the independent columns ``members``,
    or None when y is independent of them."""
    M = A.columns(list(members) + [y])
    R, rk, pivots = rref(M)
    if len(members) in pivots:
        return None
    return [R.rows[i][len(members)] for i in range(len(members))]


class _Partition:
    """Two disjoint independent sets grown by shortest augmenting paths."""

    def __init__(self, A: Matrix, ground: Sequence[int]):
        self.A = A
        self.ground = list(ground)
        self.owner: dict[int, int] = {}

    def members(self, s: int) -> list[int]:
        return sorted(j for j, o in self.owner.items() if o == s)

    def _explore(self, sources: list[int], stop_at_sink: bool):
        """BFS over the exchange graph.  Returns (parent, sink) where sink is
        (node, set) for the first node insertable into a set, or None."""
        sets = [self.members(0), self.members(1)]
        parent = {s: None for s in sources}
        queue = deque(sources)
        while queue:
            y = queue.popleft()
            for s in (0, 1):
                if self.owner.get(y) == s:
                    continue
                rep = _representation(self.A, sets[s], y)
                if rep is None:
                    if stop_at_sink:
                        return parent, (y, s)
                    continue
                for x, c in zip(sets[s], rep):
                    if c and x not in parent:
                        parent[x] = y
                        queue.append(x)
        return parent, None

    def insert(self, e: int) -> bool:
        parent, sink = self._explore([e], stop_at_sink=True)
        if sink is None:
            return False
        y, s = sink
        path = [y]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        path.reverse()  # path[0] == e, edges path[i] -> path[i+1]
        new_owner = dict(self.owner)
        for a, b in zip(path, path[1:]):
            new_owner[a] = self.owner[b]
        new_owner[path[-1]] = s
        self.owner = new_owner
        for t in (0, 1):
            check(is_independent(self.A, self.members(t)), "augmentation broke independence")
        return True

    def reachable_from_uncovered(self) -> list[int]:
        uncovered = [j for j in self.ground if j not in self.owner]
        parent, _ = self._explore(uncovered, stop_at_sink=False)
        return sorted(parent)


def _min_side_brute(A: Matrix, ground: list[int]) -> tuple[int, ...]:
    ranks = subset_ranks(A, ground)
    g = len(ground)
    vals = [g - bin(mask).count("1") + 2 * ranks[mask] for mask in range(1 << g)]
    best = min(vals)
    return min(mask_to_set(ground, mask) for mask, v in enumerate(vals) if v == best)


def max_union_two_independent(A: Matrix, ground: Iterable[int] | None = None,
                              method: str = "auto") -> UnionCertificate:
    """Maximum |I u J| for independent I, J inside ``ground``, with a
    minimising U.

    I and J always come from the augmenting-path partition algorithm.  U_min
    is the lexicographically smallest minimiser found by enumeration
    (``method="brute"``, or ``"auto"`` when |ground| <= 20), or the set
    reachable from uncovered elements in the final exchange graph
    (``"augmenting"``).
    """
    ground = list(range(A.ncols)) if ground is None else _check_indices(A, ground)
    part = _Partition(A, ground)
    for e in ground:
        part.insert(e)
    I, J = tuple(part.members(0)), tuple(part.members(1))
    value = len(I) + len(J)
    if method == "brute" or (method == "auto" and len(ground) <= BRUTE_LIMIT):
        U = _min_side_brute(A, ground)
    elif method in ("augmenting", "auto"):
        U = tuple(part.reachable_from_uncovered())
    else:
        raise ValueError(f"unknown method {method!r}")
    cert = UnionCertificate(tuple(ground), I, J, U, value)
    check(cert.bound(A) == value, f"union min-max mismatch: {value} vs {cert.bound(A)}")
    return cert


@dataclass(frozen=True)
class TamenessCertificate:
    tame: bool
    m: int
    k: int
    witnesses: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] | None = None
    violating_set: tuple[int, ...] | None = None

    @property
    def verdict(self) -> str:
        return "tame" if self.tame else "not-tame"


def require_full_row_rank(A: Matrix) -> None:
    if rank(A) != A.nrows:
        raise NotFullRowRank(f"rank {rank(A)} < {A.nrows} rows")


def tame_slack(A: Matrix, U: Iterable[int]) -> int:
    """2 r(U) - (2m + 1 - k + |U|); tameness asks for this to be >= 0 on
    every proper subset U."""
    U = list(U)
    return 2 * column_rank(A, U) - (2 * A.nrows + 1 - A.ncols + len(U))


def is_tame(A: Matrix) -> TamenessCertificate:
    """Decide tameness by looking for two disjoint bases avoiding each column."""
    require_full_row_rank(A)
    m, k = A.nrows, A.ncols
    witnesses = {}
    for i in range(k):
        ground = [j for j in range(k) if j != i]
        cert = max_union_two_independent(A, ground, method="augmenting")
        if cert.value < 2 * m:
            # report the lexicographically smallest violator when enumeration is cheap
            U = tame_by_inequalities(A)[1] if k <= BRUTE_LIMIT else cert.U_min
            check(tame_slack(A, U) < 0, f"set {U} does not violate the inequality")
            return TamenessCertificate(False, m, k, violating_set=U)
        witnesses[i] = (cert.I, cert.J)
    out = TamenessCertificate(True, m, k, witnesses=witnesses)
    verify_tameness_certificate(A, out)
    return out


@lru_cache(maxsize=1024)
def tame_verdict(A: Matrix) -> bool:
    """Memoised ``is_tame(A).tame`` for precondition checks; matrices are immutable."""
    return is_tame(A).tame


def verify_tameness_certificate(A: Matrix, cert: TamenessCertificate) -> None:
    m, k = A.nrows, A.ncols
    if cert.tame:
        check(set(cert.witnesses) == set(range(k)), "witness missing for some column")
        for i, (B1, B2) in cert.witnesses.items():
            check(not set(B1) & set(B2), f"bases for {i} intersect")
            check(i not in B1 and i not in B2, f"bases for {i} contain {i}")
            for B in (B1, B2):
                check(len(B) == m and column_rank(A, B) == m, f"{B} is not a basis")
    else:
        U = cert.violating_set
        check(len(U) < k and tame_slack(A, U) < 0, f"{U} is not a violating set")


def tame_by_inequalities(A: Matrix) -> tuple[bool, tuple[int, ...] | None]:
    """Tameness by enumerating all proper subsets U; returns the verdict and
    the lexicographically smallest violating U (if any)."""
    require_full_row_rank(A)
    m, k = A.nrows, A.ncols
    ground = list(range(k))
    ranks = subset_ranks(A, ground)
    full = (1 << k) - 1
    bad = [mask_to_set(ground, mask) for mask in range(full)
           if 2 * ranks[mask] < 2 * m + 1 - k + bin(mask).count("1")]
    return (not bad), (min(bad) if bad else None)


def disjoint_bases_avoiding(A: Matrix, i: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    if not 0 <= i < A.ncols:
        raise IndexOutOfRange(f"column {i} not in [0, {A.ncols})")
    require_full_row_rank(A)
    cert = max_union_two_independent(A, [j for j in range(A.ncols) if j != i], method="augmenting")
    if cert.value < 2 * A.nrows:
        return None
    return cert.I, cert.J


def covering_bases(A: Matrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two bases whose union is every column, for an (m+1) x (2m+1) matrix of
    full rank whose first m rows form a tame matrix."""
    m = A.nrows - 1
    if m < 0 or A.ncols != 2 * m + 1:
        raise PreconditionViolated(f"shape {A.shape} is not (m+1) x (2m+1)")
    if rank(A) != A.nrows:
        raise PreconditionViolated("matrix does not have full row rank")
    top = Matrix(A.field, A.rows[:m], A.ncols)
    if not tame_verdict(top):
        raise PreconditionViolated("the top m rows are not tame")
    cert = max_union_two_independent(A, method="augmenting")
    check(cert.value == A.ncols, "independent pair does not cover all columns")
    B1, B2 = extend_to_basis(A, cert.I), extend_to_basis(A, cert.J)
    check(set(B1) | set(B2) == set(range(A.ncols)), "bases do not cover")
    return B1, B2
