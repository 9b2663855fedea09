"""Desk-scale experiments on subsets S of F_q^n.

Solution enumeration and affine-rank histograms, exact and heuristic search
for large solution-free sets, affine subspace finding, the Croot-Lev-Pach
rank bound on random low-degree polynomials, and a replay of the random
rank argument for tame systems with k = 2m + 1.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .bounds import monomial_count
from .errors import (DegreeTooHigh, InputError, PreconditionViolated, SearchSpaceTooLarge,
                     check)
from .field import Field
from .linalg import (EchelonBasis, Matrix, combine, decode_point, encode_point, kernel_basis,
                     rank, rank_mod_p, rref)
from .matroid import require_full_row_rank, tame_verdict
from .systems import affine_rank, is_row_balanced

MAX_MATERIALIZED = 1 << 24
EXACT_LIMIT = 100
SUBSPACE_LIMIT = 1 << 14
CLP_LIMIT = 512
REPLAY_LIMIT = 2048
SOLUTION_LIMIT = 2_000_000


class PointSet:
    """A subset of F_q^n stored as a membership bitmap over point codes."""

    def __init__(self, field: Field, n: int, codes=()):
        size = field.q**n
        if size > MAX_MATERIALIZED:
            raise SearchSpaceTooLarge(f"q^n = {size} exceeds 2^24")
        self.field, self.n, self.size = field, n, size
        self.member = bytearray(size)
        for c in codes:
            if not 0 <= c < size:
                raise InputError(f"code {c} outside [0, {size})")
            self.member[c] = 1
        self.codes = tuple(c for c in range(size) if self.member[c])

    @classmethod
    def full(cls, field: Field, n: int) -> "PointSet":
        return cls(field, n, range(field.q**n))

    @classmethod
    def from_points(cls, field: Field, n: int, points) -> "PointSet":
        return cls(field, n, [encode_point(field, p) for p in points])

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self):
        return iter(self.codes)

    def __contains__(self, code: int) -> bool:
        return bool(self.member[code])

    def contains_point(self, p: Sequence[int]) -> bool:
        return bool(self.member[encode_point(self.field, p)])

    def points(self) -> list[tuple[int, ...]]:
        return [decode_point(self.field, c, self.n) for c in self.codes]


# -- solution enumeration ----------------------------------------------------

def enumerate_solutions(A: Matrix, S: PointSet) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All x in S^k with A x^T = 0, each once.

    The pivot columns of rref(A) (the lexicographically first column basis)
    are solved for; the remaining k - m coordinates range over S in order.
    """
    require_full_row_rank(A)
    F, n, k = A.field, S.n, A.ncols
    R, _, pivots = rref(A)
    free = [j for j in range(k) if j not in pivots]
    coeffs = [[F.neg(R.rows[i][j]) for j in free] for i in range(len(pivots))]
    pts = S.points()
    for choice in itertools.product(pts, repeat=len(free)):
        x: list = [None] * k
        for j, p in zip(free, choice):
            x[j] = p
        ok = True
        for i, pc in enumerate(pivots):
            v = combine(F, coeffs[i], choice, n)
            if not S.contains_point(v):
                ok = False
                break
            x[pc] = v
        if ok:
            yield tuple(x)


@dataclass
class RankHistogram:
    counts: dict[int, int]
    total: int

    def as_dict(self) -> dict:
        return {"counts": {str(r): c for r, c in sorted(self.counts.items())}, "total": self.total}


def arank_histogram(A: Matrix, S: PointSet) -> RankHistogram:
    F = A.field
    counts = Counter(affine_rank(F, x) for x in enumerate_solutions(A, S))
    hist = RankHistogram(dict(sorted(counts.items())), sum(counts.values()))
    check(all(1 <= r <= A.ncols - A.nrows for r in counts), "affine rank above k - m")
    return hist


# -- solution-free sets ----------------------------------------------------------

FORBID = ("generic", "shape", "nontrivial")


def _is_forbidden(A: Matrix, x, forbid: str) -> bool:
    if forbid == "generic":
        return affine_rank(A.field, x) == A.ncols - A.nrows
    if forbid == "shape":
        return len(set(x)) == len(x)
    if forbid == "nontrivial":
        return any(p != x[0] for p in x)
    raise InputError(f"unknown forbidden class {forbid!r}")


def forbidden_supports(A: Matrix, n: int, forbid: str) -> list[frozenset[int]]:
    """Inclusion-minimal point sets (as codes) spanned by forbidden solutions in F_q^n."""
    F = A.field
    total = F.q ** (n * (A.ncols - A.nrows))
    if total > SOLUTION_LIMIT:
        raise SearchSpaceTooLarge(f"{total} solutions to enumerate")
    S = PointSet.full(F, n)
    edges = {frozenset(encode_point(F, p) for p in x)
             for x in enumerate_solutions(A, S) if _is_forbidden(A, x, forbid)}
    ordered = sorted(edges, key=len)
    minimal: list[frozenset[int]] = []
    for e in ordered:
        if not any(f <= e for f in minimal):
            minimal.append(e)
    return minimal


@dataclass
class FreeSet:
    codes: tuple[int, ...]
    certified: bool
    mode: str
    forbid: str
    explored: int = 0

    @property
    def size(self) -> int:
        return len(self.codes)


class _Hypergraph:
    def __init__(self, npoints: int, edges: list[frozenset[int]]):
        self.npoints = npoints
        self.by_point: list[list[frozenset[int]]] = [[] for _ in range(npoints)]
        for e in edges:
            for c in e:
                self.by_point[c].append(e)

    def addable(self, c: int, chosen: set[int]) -> bool:
        return all(not (e - {c}) <= chosen for e in self.by_point[c])


def max_solution_free_set(A: Matrix, n: int, mode: str = "exact", forbid: str = "generic",
                          seed: int = 0, restarts: int = 20) -> FreeSet:
    """A large S in F_q^n with no forbidden solution.  ``exact`` runs a
    branch-and-bound over point subsets (q^n <= 100) and certifies maximality;
    ``greedy`` adds points in code order; ``random`` keeps the best of
    ``restarts`` greedy passes over seeded shuffles."""
    require_full_row_rank(A)
    if forbid not in FORBID:
        raise InputError(f"unknown forbidden class {forbid!r}")
    F = A.field
    npoints = F.q**n
    if mode == "exact" and npoints > EXACT_LIMIT:
        raise SearchSpaceTooLarge(f"exact search over {npoints} points (limit {EXACT_LIMIT})")
    H = _Hypergraph(npoints, forbidden_supports(A, n, forbid))

    def greedy(order) -> list[int]:
        chosen: set[int] = set()
        for c in order:
            if H.addable(c, chosen):
                chosen.add(c)
        return sorted(chosen)

    if mode == "greedy":
        return FreeSet(tuple(greedy(range(npoints))), False, mode, forbid)
    if mode == "random":
        rng = random.Random(seed)
        best: list[int] = []
        for _ in range(restarts):
            order = list(range(npoints))
            rng.shuffle(order)
            cand = greedy(order)
            if len(cand) > len(best):
                best = cand
        return FreeSet(tuple(best), False, mode, forbid)
    if mode != "exact":
        raise InputError(f"unknown mode {mode!r}")

    best = greedy(range(npoints))
    nodes = 0
    chosen: set[int] = set()

    def search(cands: list[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        open_ = [c for c in cands if H.addable(c, chosen)]
        if len(chosen) + len(open_) <= len(best):
            return
        if not open_:
            best = sorted(chosen)
            return
        c, rest = open_[0], open_[1:]
        chosen.add(c)
        search(rest)
        chosen.discard(c)
        search(rest)

    search(list(range(npoints)))
    return FreeSet(tuple(sorted(best)), True, mode, forbid, nodes)


def has_forbidden_solution(A: Matrix, S: PointSet, forbid: str = "generic") -> bool:
    return any(_is_forbidden(A, x, forbid) for x in enumerate_solutions(A, S))


# -- affine subspaces -----------------------------------------------------------

@dataclass
class AffineSubspace:
    base: tuple[int, ...]
    directions: tuple[tuple[int, ...], ...]

    def points(self, F: Field) -> list[tuple[int, ...]]:
        n = len(self.base)
        out = []
        for coeffs in itertools.product(range(F.q), repeat=len(self.directions)):
            out.append(tuple(F.add(a, b) for a, b in
                             zip(self.base, combine(F, coeffs, self.directions, n))))
        return out


def find_affine_subspace(S: PointSet, d: int) -> AffineSubspace | None:
    """An affine d-flat inside S, or None after exhaustive search."""
    F, n = S.field, S.n
    if d > n or d < 0:
        raise PreconditionViolated(f"need 0 <= d <= n, got d = {d}, n = {n}")
    if S.size > SUBSPACE_LIMIT or d > 3:
        raise SearchSpaceTooLarge("subspace search needs q^n <= 2^14 and d <= 3")
    # directions with leading coordinate 1, taken in increasing code order;
    # every flat has such an ordered basis, so the search stays exhaustive
    dirs = []
    for code in range(1, S.size):
        v = decode_point(F, code, n)
        if v[next(i for i, c in enumerate(v) if c)] == 1:
            dirs.append((code, v))

    def grow(base, flat: list[tuple[int, ...]], chosen: list, basis: EchelonBasis, start: int):
        if len(chosen) == d:
            return AffineSubspace(base, tuple(chosen))
        for idx in range(start, len(dirs)):
            _, v = dirs[idx]
            if basis.contains(v):
                continue
            new = [tuple(F.add(p_i, F.mul(a, v_i)) for p_i, v_i in zip(p, v))
                   for a in F.nonzero() for p in flat]
            if all(S.contains_point(p) for p in new):
                nb = basis.copy()
                nb.add(v)
                found = grow(base, flat + new, chosen + [v], nb, idx + 1)
                if found:
                    return found
        return None

    for b in S.points():
        found = grow(b, [b], [], EchelonBasis(F, n), 0)
        if found:
            return found
    return None


# -- polynomials in exponent-dict form -------------------------------------------

Poly = dict  # exponent tuple -> nonzero coefficient


def poly_mul(F: Field, f: Poly, g: Poly) -> Poly:
    """Product in F_q[x]', reducing x^e with e >= q to x^(e - q + 1)."""
    q = F.q
    out: Poly = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            e = tuple(a + b if a + b < q else a + b - (q - 1) for a, b in zip(ea, eb))
            out[e] = F.add(out.get(e, 0), F.mul(ca, cb))
    return {e: c for e, c in out.items() if c}


def poly_add(F: Field, f: Poly, g: Poly) -> Poly:
    out = dict(f)
    for e, c in g.items():
        out[e] = F.add(out.get(e, 0), c)
    return {e: c for e, c in out.items() if c}


def poly_pow(F: Field, f: Poly, k: int, nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: 1}
    for _ in range(k):
        out = poly_mul(F, out, f)
    return out


def diagonal_indicator(F: Field, n: int) -> Poly:
    """prod_i (1 - (x_i - y_i)^(q-1)) in variables x_1..x_n, y_1..y_n."""
    nv = 2 * n
    one = {(0,) * nv: 1}
    out = one
    for i in range(n):
        diff = {tuple(int(j == i) for j in range(nv)): 1,
                tuple(int(j == n + i) for j in range(nv)): F.neg(1)}
        term = poly_add(F, one, {e: F.neg(c) for e, c in poly_pow(F, diff, F.q - 1, nv).items()})
        out = poly_mul(F, out, term)
    return out


def poly_eval(F: Field, f: Poly, point: Sequence[int]) -> int:
    total = 0
    for e, c in f.items():
        term = c
        for v, k in zip(point, e):
            if k:
                term = F.mul(term, F.pow(v, k))
        total = F.add(total, term)
    return total


def random_poly(F: Field, n: int, d: int, rng: random.Random) -> Poly:
    """Uniform random coefficients on every monomial of degree <= d in 2n variables."""
    out = {}
    for e in itertools.product(range(F.q), repeat=2 * n):
        if sum(e) <= d:
            c = rng.randrange(F.q)
            if c:
                out[e] = c
    return out


@dataclass
class ClpResult:
    q: int
    n: int
    d: int
    rank: int
    bound: int
    size: int


def _monomial_table(F: Field, points: list, exps: list) -> list[list[int]]:
    return [[poly_eval(F, {e: 1}, p) for e in exps] for p in points]


def clp_rank_check(F: Field, n: int, d: int, f: Poly | None = None,
                   rng: random.Random | None = None) -> ClpResult:
    """Exact rank of the q^n x q^n matrix f(a, b), checked against
    2 m_{q,n,d/2}."""
    q = F.q
    if q**n > CLP_LIMIT:
        raise SearchSpaceTooLarge(f"q^n = {q**n} exceeds {CLP_LIMIT}")
    if f is None:
        f = random_poly(F, n, d, rng or random.Random(0))
    for e, c in f.items():
        if len(e) != 2 * n or max(e, default=0) > q - 1:
            raise InputError(f"monomial {e} is not reduced in 2n = {2 * n} variables")
        if c and sum(e) > d:
            raise DegreeTooHigh(f"monomial {e} has degree {sum(e)} > {d}")
    pts = [decode_point(F, c, n) for c in range(q**n)]
    exps = list(itertools.product(range(q), repeat=n))
    pos = {e: i for i, e in enumerate(exps)}
    C = [[0] * len(exps) for _ in exps]
    for e, c in f.items():
        C[pos[e[:n]]][pos[e[n:]]] = c
    X = _monomial_table(F, pts, exps)
    if F.is_prime:
        p = F.p
        Xa = np.array(X, dtype=np.int64)
        M = (Xa @ np.array(C, dtype=np.int64)) % p @ Xa.T % p
        rk = rank_mod_p(M, p)
    else:
        XC = [[F.dot(row, col) for col in zip(*C)] for row in X]
        M = [[F.dot(row, xb) for xb in X] for row in XC]
        rk = rank(Matrix(F, tuple(map(tuple, M)), len(pts)))
    bound = 2 * monomial_count(q, n, Fraction(d, 2))
    check(rk <= bound, f"rank {rk} exceeds 2 m_(q,n,d/2) = {bound}")
    return ClpResult(q, n, d, rk, bound, len(pts))


# -- random rank replay --------------------------------------------------------------

@dataclass
class ReplayTrial:
    rank_T: int
    support_T3: int
    rank_T3: int
    max_line: int
    support_rank_bound: float


@dataclass
class ReplayReport:
    q: int
    n: int
    m: int
    r: int
    I: tuple[int, ...]
    J: tuple[int, ...]
    degree: Fraction
    dim_V: int
    section: tuple[int, ...]
    sizes: dict
    rank_bound: int
    expected_support: float
    sigma_mean: float
    trials: list[ReplayTrial] = dc_field(default_factory=list)

    @property
    def mean_support(self) -> float:
        return sum(t.support_T3 for t in self.trials) / len(self.trials)

    @property
    def support_within_3sigma(self) -> bool:
        return abs(self.mean_support - self.expected_support) <= 3 * self.sigma_mean + 1e-12


def _vanishing_section(F: Field, pts: list, degree: Fraction):
    """Basis (in reduced form) of functions g on the points that are
    orthogonal to every monomial of degree <= degree, and its pivot columns."""
    n = len(pts[0]) if pts else 0
    exps = [e for e in itertools.product(range(F.q), repeat=n) if sum(e) <= degree]
    E = Matrix(F, tuple(tuple(poly_eval(F, {e: 1}, p) for p in pts) for e in exps), len(pts))
    ker = kernel_basis(E)
    if not ker:
        return Matrix(F, (), len(pts)), ()
    R, rk, pivots = rref(Matrix(F, tuple(ker), len(pts)))
    return Matrix(F, R.rows[:rk], len(pts)), pivots


def _tensor_extend(F: Field, h: np.ndarray, R: Matrix, t: int) -> np.ndarray:
    """g = (R^T)^{(x) t} h as a t-dimensional array over the points."""
    if F.is_prime:
        Rn = np.array(R.rows, dtype=np.int64).reshape(R.nrows, R.ncols)
        g = h
        for _ in range(t):
            g = np.tensordot(g, Rn, axes=([0], [0])) % F.p
        return g
    g = h.astype(object)
    for _ in range(t):
        shape = g.shape
        flat = g.reshape(shape[0], -1)
        out = np.zeros((flat.shape[1], R.ncols), dtype=object)
        for col in range(flat.shape[1]):
            for z in range(R.ncols):
                out[col, z] = F.sum(F.mul(int(flat[s, col]), R.rows[s][z]) for s in range(shape[0]))
        g = out.reshape(shape[1:] + (R.ncols,))
    return g


def _support_stats(F: Field, M: np.ndarray):
    nz = M != 0
    N = int(nz.sum())
    line = int(max(nz.sum(axis=0).max(initial=0), nz.sum(axis=1).max(initial=0)))
    return N, line


def _exact_rank(F: Field, M: np.ndarray) -> int:
    if F.is_prime:
        return rank_mod_p(M, F.p)
    return rank(Matrix(F, tuple(tuple(int(v) for v in row) for row in M), M.shape[1]))


def proof_replay(A: Matrix, S: PointSet, r: int, trials: int = 20, seed: int = 0) -> ReplayReport:
    """Build M(1_T)_{x,y} = sum_z 1_T(x, y, z) g(z) for random g in the tensor
    power of the low-degree-vanishing space and compare its rank with
    2 m_{q,rn,rd}; track the support and rank of the restricted M(1_{T_3})."""
    F, m, k, n, q = A.field, A.nrows, A.ncols, S.n, A.field.q
    if not 1 <= r <= m:
        raise PreconditionViolated(f"need 1 <= r <= m = {m}")
    if k != 2 * m + 1 or not is_row_balanced(A) or not tame_verdict(A):
        raise PreconditionViolated("need a tame balanced m x (2m+1) matrix")
    side = len(S) ** r
    if side > REPLAY_LIMIT:
        raise SearchSpaceTooLarge(f"|S|^r = {side} exceeds {REPLAY_LIMIT}")
    t = k - 2 * r
    degree = Fraction((q - 1) * n * m, k)
    pts = S.points()
    index = {p: i for i, p in enumerate(pts)}
    Rv, pivots = _vanishing_section(F, pts, degree)
    section = set(pivots)

    T = list(enumerate_solutions(A, S))
    T1 = [x for x in T if affine_rank(F, x) == r]
    subsets = list(itertools.combinations(range(k), r))
    full_rank = {}
    for x in T1:
        full_rank[x] = {U for U in subsets if affine_rank(F, [x[j] for j in U]) == r}
    pairs = [(I, J) for I in subsets for J in subsets if I < J and not set(I) & set(J)]
    I, J = max(pairs, key=lambda IJ: (sum(IJ[0] in full_rank[x] and IJ[1] in full_rank[x]
                                          for x in T1), [-v for v in IJ[0] + IJ[1]]))
    Z = [j for j in range(k) if j not in I and j not in J]
    T2 = [x for x in T1 if I in full_rank[x] and J in full_rank[x]]
    T3 = [x for x in T2 if all(index[x[j]] in section for j in Z)]
    R_pairs = {(tuple(x[j] for j in I), tuple(x[j] for j in J)) for x in T3}

    def flat(ps) -> int:
        v = 0
        for p in ps:
            v = v * len(pts) + index[p]
        return v

    T3_set = set(T3)
    entries = [(flat(x[j] for j in I), flat(x[j] for j in J), tuple(index[x[j]] for j in Z), x in T3_set)
               for x in T]
    rank_bound = 2 * monomial_count(q, r * n, r * degree)
    p_nz = (q - 1) / q
    report = ReplayReport(
        q, n, m, r, I, J, degree, Rv.nrows, tuple(sorted(index_to_code(F, pts, pivots))),
        {"T": len(T), "T1": len(T1), "T2": len(T2), "T3": len(T3), "R": len(R_pairs),
         "S": len(S), "section": len(section)},
        rank_bound, p_nz * len(R_pairs),
        math.sqrt(len(R_pairs) * p_nz * (1 - p_nz) / max(trials, 1)))

    rng = np.random.default_rng(seed)
    dimV = Rv.nrows
    for _ in range(trials):
        h = rng.integers(0, q, size=(dimV,) * t, dtype=np.int64)
        g = _tensor_extend(F, h, Rv, t) if dimV else np.zeros((len(pts),) * t, dtype=np.int64)
        M = np.zeros((side, side), dtype=object if not F.is_prime else np.int64)
        M3 = np.zeros_like(M)
        for row, col, z, in_T3 in entries:
            val = int(g[z])
            if F.is_prime:
                M[row, col] = (M[row, col] + val) % F.p
                if in_T3:
                    M3[row, col] = (M3[row, col] + val) % F.p
            else:
                M[row, col] = F.add(int(M[row, col]), val)
                if in_T3:
                    M3[row, col] = F.add(int(M3[row, col]), val)
        rank_T = _exact_rank(F, M)
        check(rank_T <= rank_bound, f"rank M(1_T) = {rank_T} exceeds {rank_bound}")
        N, line = _support_stats(F, M3)
        rank_T3 = _exact_rank(F, M3)
        lower = N / line**2 if N else 0.0
        check(rank_T3 >= lower - 1e-9, f"rank {rank_T3} below support bound {lower}")
        report.trials.append(ReplayTrial(rank_T, N, rank_T3, line, lower))
    return report


def index_to_code(F: Field, pts: list, idx) -> list[int]:
    return [encode_point(F, pts[i]) for i in idx]
