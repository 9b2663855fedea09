"""Exact dense linear algebra over F_q, plus point encodings for F_q^n."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange
from .field import Field

Vector = tuple[int, ...]


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: tuple[Vector, ...]
    ncols: int

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(field.from_int(int(v)) for v in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("cannot infer the column count of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(field, rows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        if not 0 <= j < self.ncols:
            raise IndexOutOfRange(f"column {j} not in [0, {self.ncols})")
        return tuple(r[j] for r in self.rows)

    def columns(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        for j in idx:
            if not 0 <= j < self.ncols:
                raise IndexOutOfRange(f"column {j} not in [0, {self.ncols})")
        return Matrix(self.field, tuple(tuple(r[j] for j in idx) for r in self.rows), len(idx))

    def transpose(self) -> "Matrix":
        cols = tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))
        return Matrix(self.field, cols, self.nrows)

    def vstack(self, rows: Iterable[Sequence[int]]) -> "Matrix":
        extra = tuple(tuple(r) for r in rows)
        if any(len(r) != self.ncols for r in extra):
            raise DimensionMismatch("row length differs from column count")
        return Matrix(self.field, self.rows + extra, self.ncols)

    def apply(self, v: Sequence[int]) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.ncols} columns")
        return tuple(self.field.dot(r, v) for r in self.rows)

    def __str__(self) -> str:
        return format_matrix(self)


def rref(M: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row-echelon form with first-nonzero pivoting.

    Returns (R, rank, pivots); R keeps M's shape, zero rows last.
    """
    F = M.field
    rows = [list(r) for r in M.rows]
    pivots: list[int] = []
    r = 0
    for c in range(M.ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = F.scale(F.inv(lead), rows[r])
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = F.axpy(F.neg(rows[i][c]), rows[r], rows[i])
        pivots.append(c)
        r += 1
    return Matrix(F, tuple(tuple(x) for x in rows), M.ncols), r, tuple(pivots)


def rank(M: Matrix) -> int:
    if M.field.is_prime and M.nrows * M.ncols >= 4096:
        return rank_mod_p(np.array(M.rows, dtype=np.int64), M.field.p)
    return rref(M)[1]


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank of an integer array over the prime field F_p (vectorised elimination)."""
    a = np.array(a, dtype=np.int64) % p
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        r += 1
    return r


def kernel_basis(M: Matrix) -> list[Vector]:
    """Basis of {v : M v = 0}, one vector per free column of rref(M)."""
    F = M.field
    R, rk, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        v = [0] * M.ncols
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.rows[i][free])
        basis.append(tuple(v))
    return basis


def row_space_contains(M: Matrix, v: Sequence[int]) -> bool:
    if len(v) != M.ncols:
        raise DimensionMismatch(f"vector of length {len(v)} for {M.ncols} columns")
    basis = EchelonBasis(M.field, M.ncols)
    for r in M.rows:
        basis.add(r)
    return basis.contains(v)


class EchelonBasis:
    """Incrementally maintained reduced basis of a subspace of F_q^n.

    Cheap membership tests and insertions; ``copy`` is shallow in the stored
    vectors, which are never mutated.
    """

    __slots__ = ("field", "n", "vectors", "pivots")

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self.vectors: list[list[int]] = []
        self.pivots: list[int] = []

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis.__new__(EchelonBasis)
        other.field, other.n = self.field, self.n
        other.vectors, other.pivots = list(self.vectors), list(self.pivots)
        return other

    def __len__(self) -> int:
        return len(self.vectors)

    def reduce(self, v: Sequence[int]) -> list[int]:
        F = self.field
        w = list(v)
        for b, pc in zip(self.vectors, self.pivots):
            if w[pc]:
                w = F.axpy(F.neg(w[pc]), b, w)
        return w

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[int]) -> bool:
        """Insert v; return False if it was already in the span."""
        w = self.reduce(v)
        pc = next((i for i, x in enumerate(w) if x), None)
        if pc is None:
            return False
        F = self.field
        if w[pc] != 1:
            w = F.scale(F.inv(w[pc]), w)
        self.vectors.append(w)
        self.pivots.append(pc)
        return True


# -- points of F_q^n ---------------------------------------------------------

def encode_point(field: Field, coords: Sequence[int]) -> int:
    """Canonical code sum(coords[i] * q**i)."""
    q = field.q
    code = 0
    for c in reversed(coords):
        code = code * q + c
    return code


def decode_point(field: Field, code: int, n: int) -> Vector:
    q = field.q
    out = []
    for _ in range(n):
        code, c = divmod(code, q)
        out.append(c)
    return tuple(out)


def all_points(field: Field, n: int) -> list[Vector]:
    """Every point of F_q^n, ordered by code."""
    return [decode_point(field, c, n) for c in range(field.q**n)]


def combine(field: Field, coeffs: Sequence[int], points: Sequence[Sequence[int]], n: int) -> Vector:
    """The linear combination sum coeffs[i] * points[i] in F_q^n."""
    acc = [0] * n
    for c, x in zip(coeffs, points):
        if c:
            acc = field.axpy(c, x, acc)
    return tuple(acc)


# -- text format -------------------------------------------------------------

def format_matrix(M: Matrix) -> str:
    F = M.field
    head = f"q={F.q}" if F.e == 1 else f"q={F.p}^{F.e} poly={','.join(map(str, F.modulus))}"
    lines = [head] + [" ".join(map(str, r)) for r in M.rows]
    return "\n".join(lines) + "\n"
