"""Closed-form and semi-numerical constants: monomial counts m_{q,n,d}, the
growth constant c_{q,delta}, slice-rank bounds, Gaussian binomials,
supersaturation parameters and the subspace-constant recurrence."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

from scipy.optimize import brentq

from .errors import InvalidRange, UnsupportedField, check

Real = Union[int, float, Fraction]


def exact(x: Real | str) -> Fraction:
    """Exact rational for a user-facing number: floats are read through their
    decimal repr so that 0.1 means 1/10."""
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(str(x))


@lru_cache(maxsize=None)
def degree_counts(q: int, n: int) -> tuple[int, ...]:
    """Coefficients of (1 + t + ... + t^{q-1})^n."""
    coeffs = [1]
    for _ in range(n):
        nxt = [0] * (len(coeffs) + q - 1)
        for i, c in enumerate(coeffs):
            for j in range(q):
                nxt[i + j] += c
        coeffs = nxt
    return tuple(coeffs)


def monomial_count(q: int, n: int, d: Real) -> int:
    """Number of exponent vectors in {0..q-1}^n with total degree <= d."""
    if n < 0:
        raise InvalidRange("n must be >= 0")
    top = math.floor(exact(d))
    if top < 0:
        return 0
    return sum(degree_counts(q, n)[:top + 1])


def _log_objective(q: int, delta: float, s: float) -> float:
    # log((1 + t + ... + t^{q-1}) t^{-delta (q-1)}) with t = e^s
    return math.log(sum(math.exp(i * s) for i in range(q))) - delta * (q - 1) * s


def c_constant(q: int, delta: Real) -> tuple[float, float]:
    """inf over 0 < t <= 1 of (1 + t + ... + t^{q-1}) t^{-delta (q-1)}.

    Returns (value, argmin t).  The log objective is convex in log t, so the
    minimiser is the root of its derivative: the mean exponent under weights
    t^i equals delta (q - 1).  For delta = 0 the infimum 1 is approached as
    t -> 0 and the returned argmin is 0.
    """
    delta = float(delta)
    if not 0 <= delta <= 1:
        raise InvalidRange("delta must lie in [0, 1]")
    if delta == 0:
        return 1.0, 0.0
    target = delta * (q - 1)
    if target >= (q - 1) / 2:
        return float(q), 1.0

    def slope(s: float) -> float:
        w = [math.exp(i * s) for i in range(q)]
        return sum(i * wi for i, wi in enumerate(w)) / sum(w) - target

    lo = -1.0
    while slope(lo) > 0:
        lo *= 2
    s_star = brentq(slope, lo, 0.0, xtol=1e-15, rtol=1e-15, maxiter=500)
    return math.exp(_log_objective(q, delta, s_star)), math.exp(s_star)


@dataclass(frozen=True)
class SliceRankBound:
    q: int
    m: int
    k: int
    n: int
    degree: Fraction
    monomials: int
    bound: int
    c_value: float
    nontrivial: bool


def slice_rank_bound(q: int, m: int, k: int, n: int) -> SliceRankBound:
    """k * m_{q,n,(q-1)nm/k}, with c_{q,m/k} and whether c_{q,m/k} < q."""
    if not 1 <= m < k or n < 1:
        raise InvalidRange("need 1 <= m < k and n >= 1")
    degree = Fraction((q - 1) * n * m, k)
    mono = monomial_count(q, n, degree)
    c_value, _ = c_constant(q, Fraction(m, k))
    nontrivial = 2 * m < k
    check(c_value <= q and (nontrivial or c_value == q), "c_{q,m/k} inconsistent with k >= 2m + 1")
    return SliceRankBound(q, m, k, n, degree, mono, k * mono, c_value, nontrivial)


def gaussian_binomial(q: int, n: int, d: int) -> int:
    """Number of d-dimensional subspaces of F_q^n."""
    if d < 0 or n < 0:
        raise InvalidRange("n and d must be >= 0")
    if d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (d - i) - 1
    value, rem = divmod(num, den)
    check(rem == 0, "Gaussian binomial is not an integer")
    low = q ** (d * (n - d))
    check(low <= value <= 4 * low, f"[{n} {d}]_{q} = {value} outside [{low}, {4 * low}]")
    return value


@dataclass(frozen=True)
class SupersatParams:
    q: int
    r: int
    delta: Fraction
    delta_prime: Fraction
    n0: int
    n1: int
    epsilon: float
    C: float
    log_q_C: float


def supersat_params(q: int, r: int, delta: Real | str, delta_prime: Real | str, n0: int) -> SupersatParams:
    """n1 = ceil(max(delta/delta' n0, (2+delta)/(delta-delta'))),
    eps = delta' (r - 1 + 2 delta)/delta and
    C = (q^2 - 2)/(4 q^2) q^{-(r-1+delta)(2+delta)/delta}."""
    d, dp = exact(delta), exact(delta_prime)
    if not 0 < dp < d <= 1:
        raise InvalidRange("need 0 < delta' < delta <= 1")
    if r < 1 or n0 < 1:
        raise InvalidRange("need r >= 1 and n0 >= 1")
    n1 = math.ceil(max(d / dp * n0, (2 + d) / (d - dp)))
    eps = dp * (r - 1 + 2 * d) / d
    exponent = (r - 1 + d) * (2 + d) / d
    log_q_C = math.log(q * q - 2, q) - math.log(4 * q * q, q) - float(exponent)
    C = (q * q - 2) / (4 * q * q) * q ** -float(exponent)
    return SupersatParams(q, r, d, dp, n0, n1, float(eps), float(C), log_q_C)


@dataclass(frozen=True)
class SubspaceRow:
    d: int
    n_d: int
    C_d: int
    delta_d: Union[Fraction, float]


def subspace_constants(q: int, d: int) -> list[SubspaceRow]:
    """Rows t = 1..d of (n_t, C_t, delta_t) from the base case and
    C_t = q (C_1 + C_{t-1}),
    delta_t = delta_1 delta_{t-1} / (2 + delta_1 + delta_{t-1}),
    n_t = ceil(max((2+delta_1+delta_{t-1})/delta_{t-1} n_1,
                   (2+delta_1+delta_{t-1})/(2+delta_1) n_{t-1}))."""
    if q == 3:
        base = SubspaceRow(1, 1, 3, 1 - math.log(2.756, 3))
    elif q == 2:
        base = SubspaceRow(1, 1, 2, Fraction(1))
    else:
        raise UnsupportedField("subspace constants are defined for q in {2, 3}")
    if d < 1:
        raise InvalidRange("d must be >= 1")
    rows = [base]
    d1, n1, c1 = base.delta_d, base.n_d, base.C_d
    for t in range(2, d + 1):
        prev = rows[-1]
        s = 2 + d1 + prev.delta_d
        delta_t = d1 * prev.delta_d / s
        n_t = math.ceil(max(s / prev.delta_d * n1, s / (2 + d1) * prev.n_d))
        rows.append(SubspaceRow(t, n_t, q * (c1 + prev.C_d), delta_t))
    for row in rows:
        check(0 < row.delta_d <= 1, f"delta_{row.d} = {row.delta_d} outside (0, 1]")
    return rows
