import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import brute
from tamesys.bounds import monomial_count, slice_rank_bound
from tamesys.errors import DegreeTooHigh, PreconditionViolated, SearchSpaceTooLarge
from tamesys.field import GF
from tamesys.generate import random_balanced, random_full_rank
from tamesys.linalg import Matrix, all_points, encode_point
from tamesys.search import (PointSet, arank_histogram, clp_rank_check, diagonal_indicator,
                            enumerate_solutions, find_affine_subspace, has_forbidden_solution,
                            max_solution_free_set, poly_eval, proof_replay, random_poly)


def M(q, rows):
    F = GF(q)
    return Matrix.from_rows(F, [[F.from_int(v) for v in r] for r in rows])


CAP = lambda: M(3, [[1, 1, 1]])


def test_point_set_bitmap():
    F = GF(3)
    S = PointSet(F, 2, [4, 0, 4])
    assert S.codes == (0, 4) and len(S) == 2
    assert 4 in S and 1 not in S
    assert S.points() == [(0, 0), (1, 1)]
    with pytest.raises(SearchSpaceTooLarge):
        PointSet(GF(2), 25)


def test_enumerate_examples():
    F = GF(3)
    assert len(list(enumerate_solutions(CAP(), PointSet.full(F, 1)))) == 9
    sols = set(enumerate_solutions(CAP(), PointSet(F, 1, [0, 1])))
    assert sols == {((0,), (0,), (0,)), ((1,), (1,), (1,))}
    assert list(enumerate_solutions(CAP(), PointSet(F, 1, []))) == []


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 2), st.integers(0, 10**6))
def test_enumerate_matches_brute_force(q, m, seed):
    rng = random.Random(seed)
    F = GF(q)
    k = rng.randint(m, m + 2)
    n = rng.randint(1, 2)
    A = random_full_rank(F, m, k, rng)
    pts = [p for p in all_points(F, n) if rng.random() < 0.6]
    if len(pts) ** k > 20000:
        return
    S = PointSet.from_points(F, n, pts)
    got = list(enumerate_solutions(A, S))
    assert len(got) == len(set(got))
    assert set(got) == set(brute.solutions(A, pts))


def test_enumerate_count_on_full_space():
    for q in (2, 3, 4):
        F = GF(q)
        rng = random.Random(q)
        for n in (1, 2, 3):
            for k in range(1, 6):
                for m in range(1, k + 1):
                    if q ** ((k - m) * n) > 20000:
                        continue
                    A = random_full_rank(F, m, k, rng)
                    count = sum(1 for _ in enumerate_solutions(A, PointSet.full(F, n)))
                    assert count == q ** ((k - m) * n)


def test_histogram_examples():
    F = GF(3)
    assert arank_histogram(CAP(), PointSet.full(F, 1)).counts == {1: 3, 2: 6}
    assert arank_histogram(CAP(), PointSet(F, 1, [2])).counts == {1: 1}
    h = arank_histogram(CAP(), PointSet.full(F, 2))
    assert h.counts[2] == 72 and h.total == 81


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 2), st.integers(0, 10**6))
def test_histogram_keys_bounded(q, m, seed):
    rng = random.Random(seed)
    F = GF(q)
    A = random_balanced(F, m, m + 2, rng)
    S = PointSet(F, 2, [c for c in range(q * q) if rng.random() < 0.7])
    h = arank_histogram(A, S)
    assert sum(h.counts.values()) == h.total
    assert all(1 <= r <= 2 for r in h.counts)


def brute_max_free(A, n, forbid):
    F = A.field
    pts = all_points(F, n)
    best = 0
    for size in range(len(pts), 0, -1):
        for sub in itertools.combinations(pts, size):
            S = PointSet.from_points(F, n, sub)
            if not has_forbidden_solution(A, S, forbid):
                return size
    return best


def test_capfree_exact_examples():
    A = CAP()
    assert max_solution_free_set(A, 1).size == 2
    res = max_solution_free_set(A, 2)
    assert res.size == 4 and res.certified
    assert not has_forbidden_solution(A, PointSet(A.field, 2, res.codes))
    assert max_solution_free_set(A, 0).size == 1
    assert res.size <= slice_rank_bound(3, 1, 3, 2).bound


@pytest.mark.parametrize("q,rows,n", [
    (3, [[1, 1, 1]], 1),
    (5, [[1, 1, 3]], 1),
    (2, [[1, 1, 1, 1]], 2),
    (3, [[1, 1, 1, 0], [0, 1, 1, 1]], 1),
    (2, [[1, 1, 0, 0], [0, 1, 1, 0]], 2),
])
@pytest.mark.parametrize("forbid", ["generic", "shape", "nontrivial"])
def test_capfree_exact_matches_subset_enumeration(q, rows, n, forbid):
    A = M(q, rows)
    res = max_solution_free_set(A, n, forbid=forbid)
    assert res.size == brute_max_free(A, n, forbid)


@pytest.mark.parametrize("mode", ["greedy", "random"])
def test_capfree_heuristics_are_valid(mode):
    A = CAP()
    res = max_solution_free_set(A, 3, mode=mode, seed=3)
    assert not res.certified
    assert not has_forbidden_solution(A, PointSet(A.field, 3, res.codes))
    assert res.size >= 4


def test_capfree_random_is_seeded():
    a = max_solution_free_set(CAP(), 3, mode="random", seed=9)
    b = max_solution_free_set(CAP(), 3, mode="random", seed=9)
    assert a.codes == b.codes


def test_capfree_exact_limit():
    with pytest.raises(SearchSpaceTooLarge):
        max_solution_free_set(CAP(), 5)


def test_subspace_examples():
    F2 = GF(2)
    sub = find_affine_subspace(PointSet.full(F2, 3), 3)
    assert sub is not None and set(sub.points(F2)) == set(all_points(F2, 3))
    F3 = GF(3)
    assert find_affine_subspace(PointSet(F3, 2, [0, 5]), 1) is None
    with pytest.raises(PreconditionViolated):
        find_affine_subspace(PointSet(F3, 2, [0]), 3)


def test_subspace_planted_line():
    # F_3^3 has only 27 points, so the 40-point sets live in F_3^4
    F = GF(3)
    rng = random.Random(8)
    for _ in range(20):
        base = tuple(rng.randrange(3) for _ in range(4))
        while True:
            w = tuple(rng.randrange(3) for _ in range(4))
            if any(w):
                break
        line = {encode_point(F, tuple((b + t * c) % 3 for b, c in zip(base, w))) for t in range(3)}
        others = [c for c in range(81) if c not in line]
        codes = line | set(rng.sample(others, 37))
        S = PointSet(F, 4, codes)
        sub = find_affine_subspace(S, 1)
        assert sub is not None
        assert all(S.contains_point(p) for p in sub.points(F))


def _all_lines(F, n):
    out = set()
    for b in all_points(F, n):
        for w in all_points(F, n):
            if any(w):
                out.add(frozenset(tuple(F.add(x, F.mul(t, y)) for x, y in zip(b, w)) for t in F.elements()))
    return out


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(0, 10**6))
def test_subspace_search_is_exhaustive(q, seed):
    rng = random.Random(seed)
    F = GF(q)
    n = 2
    S = PointSet(F, n, [c for c in range(q**n) if rng.random() < 0.5])
    expect = any(all(S.contains_point(p) for p in L) for L in _all_lines(F, n))
    found = find_affine_subspace(S, 1)
    assert (found is not None) == expect


def test_clp_examples():
    F = GF(3)
    one = {(0, 0, 0, 0): 1}
    assert clp_rank_check(F, 2, 0, f=one).rank == 1
    r = clp_rank_check(F, 2, 2, rng=random.Random(1))
    assert r.rank <= 6 == r.bound and r.size == 9
    for q, n in ((2, 3), (3, 2), (5, 1), (4, 1)):
        Fq = GF(q)
        res = clp_rank_check(Fq, n, (q - 1) * n, f=diagonal_indicator(Fq, n))
        assert res.rank == q**n
        assert res.bound == 2 * monomial_count(q, n, (q - 1) * n / 2)


def test_diagonal_indicator_is_identity():
    F = GF(4)
    f = diagonal_indicator(F, 1)
    for a in range(4):
        for b in range(4):
            assert poly_eval(F, f, (a, b)) == int(a == b)


def test_clp_degree_check():
    with pytest.raises(DegreeTooHigh):
        clp_rank_check(GF(3), 1, 1, f={(1, 1): 1})


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 2), st.integers(0, 6), st.integers(0, 10**6))
def test_clp_rank_against_direct_evaluation(q, n, d, seed):
    F = GF(q)
    if q**n > 9:
        return
    f = random_poly(F, n, d, random.Random(seed))
    res = clp_rank_check(F, n, d, f=f)
    pts = all_points(F, n)
    rows = [[poly_eval(F, f, a + b) for b in pts] for a in pts]
    assert res.rank == brute.span_rank(F, rows, len(pts))
    assert res.rank <= res.bound


def test_replay_examples():
    F = GF(3)
    rep = proof_replay(CAP(), PointSet.full(F, 1), 1, trials=20, seed=0)
    assert rep.rank_bound == 2 * monomial_count(3, 1, Fraction(2, 3)) == 2
    assert all(t.rank_T <= 2 for t in rep.trials)
    assert rep.support_within_3sigma
    rep = proof_replay(CAP(), PointSet.full(F, 3), 1, trials=3, seed=1)
    assert rep.rank_bound == 2 * monomial_count(3, 3, 2) == 20
    assert rep.sizes["S"] == 27
    with pytest.raises(PreconditionViolated):
        proof_replay(CAP(), PointSet.full(F, 1), 2)


def test_replay_is_seeded():
    F = GF(3)
    a = proof_replay(CAP(), PointSet.full(F, 2), 1, trials=5, seed=4)
    b = proof_replay(CAP(), PointSet.full(F, 2), 1, trials=5, seed=4)
    assert a.trials == b.trials


def test_replay_on_subset_and_larger_system():
    F = GF(3)
    S = PointSet(F, 2, [0, 1, 2, 3, 5, 7])
    rep = proof_replay(CAP(), S, 1, trials=5, seed=0)
    assert all(t.rank_T <= rep.rank_bound for t in rep.trials)
    A = M(5, [[1, 1, 1, 1, 1], [1, 2, 3, 4, 0]])
    rep = proof_replay(A, PointSet.full(GF(5), 1), 1, trials=3, seed=0)
    assert all(t.rank_T <= rep.rank_bound for t in rep.trials)
    rep = proof_replay(A, PointSet.full(GF(5), 1), 2, trials=3, seed=0)
    assert all(t.rank_T3 >= t.support_rank_bound for t in rep.trials)
