"""Seeded random instances: matrices, balanced systems, tame systems, tuples."""
from __future__ import annotations

import random

from .field import Field
from .linalg import Matrix, rank
from .matroid import is_tame
from .systems import is_row_balanced


def random_matrix(F: Field, m: int, k: int, rng: random.Random) -> Matrix:
    return Matrix.from_rows(F, [[rng.randrange(F.q) for _ in range(k)] for _ in range(m)], k)


def random_full_rank(F: Field, m: int, k: int, rng: random.Random) -> Matrix:
    while True:
        A = random_matrix(F, m, k, rng)
        if rank(A) == m:
            return A


def random_balanced(F: Field, m: int, k: int, rng: random.Random) -> Matrix:
    """Full-row-rank m x k matrix whose rows sum to zero (needs k >= m + 1)."""
    while True:
        rows = []
        for _ in range(m):
            head = [rng.randrange(F.q) for _ in range(k - 1)]
            rows.append(head + [F.neg(F.sum(head))])
        A = Matrix.from_rows(F, rows, k)
        if rank(A) == m:
            assert is_row_balanced(A)
            return A


def random_tame_balanced(F: Field, m: int, k: int, rng: random.Random, tries: int = 1000) -> Matrix:
    """Rejection-sample a tame balanced m x k matrix (k >= 2m + 1)."""
    for _ in range(tries):
        A = random_balanced(F, m, k, rng)
        if is_tame(A).tame:
            return A
    raise RuntimeError(f"no tame {m}x{k} matrix over F_{F.q} in {tries} tries")


def random_tuple(F: Field, k: int, n: int, rng: random.Random) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(rng.randrange(F.q) for _ in range(n)) for _ in range(k))
