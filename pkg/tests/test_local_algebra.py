import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from padic_arrangements.local_algebra import (
    INF,
    TruncElem,
    det_int,
    inverse_mod,
    kernel_basis,
    matmul,
    minors_gcd_divisors,
    rank_local,
    snf_int,
    snf_local,
    solve_int,
    valuation,
    vp,
)


# -- oracles -----------------------------------------------------------------

def divide_out(x, p, n):
    """Valuation by repeated division, capped by the ring."""
    x %= p**n
    if x == 0:
        return INF
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def local_minors_alphas(M, p, n):
    """alpha_0 + ... + alpha_{k-1} = least valuation of a k x k minor (mod p^n)."""
    r, c = len(M), len(M[0])
    sums = [0]
    for k in range(1, min(r, c) + 1):
        best = INF
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(c), k):
                m = det_int([[M[i][j] for j in cols] for i in rows]) % p**n
                best = min(best, vp(m, p))
        sums.append(best)
    out = []
    for k in range(1, len(sums)):
        if sums[k] == INF:
            out.append(INF)
        else:
            out.append(sums[k] - sums[k - 1])
    return out


def exhaustive_alphas_2x2(M, p, n):
    """Smallest diagonal exponents reachable by left/right unit-determinant 2x2 transforms."""
    q = p**n
    gl = [g for g in itertools.product(range(q), repeat=4) if (g[0] * g[3] - g[1] * g[2]) % p]
    best = None
    for a, b, c, d in gl:
        L = [[a, b], [c, d]]
        LM = matmul(L, M, q)
        for e, f, g, h in gl:
            D = matmul(LM, [[e, f], [g, h]], q)
            if D[0][1] or D[1][0]:
                continue
            cand = sorted([vp(D[0][0], p), vp(D[1][1], p)])
            if all(x == INF or D[i][i] == p**x for i, x in enumerate([vp(D[0][0], p), vp(D[1][1], p)])):
                if best is None or cand < best:
                    best = cand
    return best


# -- valuation ---------------------------------------------------------------

@pytest.mark.parametrize("p,n,x,want", [(3, 2, 0, INF), (3, 2, 6, 1)])
def test_valuation_trivial(p, n, x, want):
    assert valuation(TruncElem(x, n, p)) == want


def test_valuation_derived():
    # frozen from divide_out(12, 2, 4)
    assert divide_out(12, 2, 4) == 2
    assert valuation(TruncElem(12, 4, 2)) == 2


def test_valuation_matches_oracle_exhaustive():
    for p, n in [(2, 4), (3, 3), (5, 2)]:
        for x in range(p**n):
            assert valuation(TruncElem(x, n, p)) == divide_out(x, p, n)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_valuation_of_product(p, n, a, b):
    x, y = TruncElem(a, n, p), TruncElem(b, n, p)
    s = valuation(x) + valuation(y)
    v = valuation(x * y)
    assert v >= min(s, INF)
    if s < n:
        assert v == s


def test_trunc_elem_ring_ops():
    x = TruncElem(7, 3, 2)
    assert (x + 3).value == 2
    assert (3 - x).value == 4
    assert (-x).value == 1
    assert (x * x.inverse()).value == 1
    assert x.reduce(1).value == 1
    assert x.is_unit() and not TruncElem(4, 3, 2).is_unit()
    with pytest.raises(ZeroDivisionError):
        TruncElem(4, 3, 2).inverse()
    with pytest.raises(ValueError):
        x + TruncElem(1, 2, 2)


# -- local Smith form ----------------------------------------------------------

def _check_local(M, p, n):
    q = p**n
    s = snf_local(M, p, n)
    D = matmul(matmul(s.left, M, q), s.right, q)
    r, c = len(M), len(M[0])
    for i in range(r):
        for j in range(c):
            want = s.diagonal[i] if i == j and i < len(s.alphas) else 0
            assert D[i][j] % q == want % q
    assert list(s.alphas) == sorted(s.alphas)
    assert matmul(s.left, s.left_inv, q) == [[int(i == j) for j in range(r)] for i in range(r)]
    assert matmul(s.right, s.right_inv, q) == [[int(i == j) for j in range(c)] for i in range(c)]
    return s


def test_snf_local_example_pair():
    # presentation e0, e0 + p^k e1 of the two-member example
    for p, n, k in [(2, 3, 1), (3, 4, 2), (5, 3, 2)]:
        assert snf_local([[1, 0], [1, p**k]], p, n).alphas == (0, k)


def test_snf_local_identity():
    assert snf_local([[1, 0], [0, 1]], 3, 2).alphas == (0, 0)


def test_snf_local_diag_derived():
    M = [[2, 0], [0, 4]]
    oracle = exhaustive_alphas_2x2(M, 2, 3)
    assert oracle == [1, 2]
    assert list(snf_local(M, 2, 3).alphas) == [1, 2]


def test_snf_local_zero_matrix():
    assert snf_local([[0, 0, 0], [0, 0, 0]], 2, 3).alphas == (INF, INF)


def test_snf_local_against_minors_random():
    rng = random.Random(1)
    for _ in range(150):
        p, n = rng.choice([2, 3, 5]), rng.randint(1, 4)
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randrange(p**n) if rng.random() < 0.7 else p ** rng.randint(0, n) for _ in range(c)]
             for _ in range(r)]
        s = _check_local(M, p, n)
        assert list(s.alphas) == local_minors_alphas(M, p, n)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 3), st.integers(0, 2**32))
def test_snf_local_invariant_under_units(p, n, seed):
    rng = random.Random(seed)
    q = p**n

    def unit_matrix(k):
        while True:
            g = [[rng.randrange(q) for _ in range(k)] for _ in range(k)]
            try:
                inverse_mod(g, p, n)
                return g
            except ZeroDivisionError:
                pass

    M = [[rng.randrange(q) for _ in range(3)] for _ in range(2)]
    N = matmul(matmul(unit_matrix(2), M, q), unit_matrix(3), q)
    assert snf_local(M, p, n).alphas == snf_local(N, p, n).alphas


def test_rank_local():
    assert rank_local([[1, 0], [1, 4]], 2, 2) == 1
    assert rank_local([[1, 0], [1, 4]], 2, 3) == 2


# -- integer Smith form ----------------------------------------------------------

def test_snf_int_examples():
    assert minors_gcd_divisors([[2, 4], [6, 8]]) == [2, 4]
    assert snf_int([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert snf_int([[1, 0], [0, 1]]).diagonal == (1, 1)
    assert snf_int([[0, 0, 0], [0, 0, 0]]).diagonal == (0, 0)


def test_snf_int_matches_minors_exhaustive_style():
    rng = random.Random(7)
    for _ in range(300):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        s = snf_int(M)
        assert list(s.diagonal) == minors_gcd_divisors(M)
        D = matmul(matmul(s.left, M), s.right)
        for i in range(r):
            for j in range(c):
                assert D[i][j] == (s.diagonal[i] if i == j else 0)
        assert abs(det_int(s.left)) == 1 and abs(det_int(s.right)) == 1
        nz = [d for d in s.diagonal if d]
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4))
def test_snf_int_property(M):
    assert list(snf_int(M).diagonal) == minors_gcd_divisors(M)


def test_kernel_and_solve():
    M = [[1, 1, 1]]
    K = kernel_basis(M)
    assert len(K) == 2
    for v in K:
        assert sum(v) == 0
    assert solve_int([[2, 0], [0, 3]], [4, 9]) == [2, 3]
    assert solve_int([[2, 0]], [1, 0]) is None


def test_inverse_mod():
    g = [[1, 2], [3, 5]]
    gi = inverse_mod(g, 3, 2)
    assert matmul(g, gi, 9) == [[1, 0], [0, 1]]
    with pytest.raises(ZeroDivisionError):
        inverse_mod([[3, 0], [0, 1]], 3, 2)


def test_big_integers():
    p, n = 7, 40
    x = TruncElem(p**39 * 3, n, p)
    assert valuation(x) == 39
    assert snf_local([[p**30, 0], [0, p**35]], p, n).alphas == (30, 35)
    assert math.log2(p**n) > 64
