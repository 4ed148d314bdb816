import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_arrangements.arrangements import Arrangement, compatible_family
from padic_arrangements.errors import BadModulus, MalformedSystem, PointInTube, PrecisionTooLow
from padic_arrangements.limits import (
    FilteredSystem,
    Measure,
    MonomialBox,
    SymbolicUnit,
    check_filtered_condition,
    check_restriction_inclusion,
    delta,
    exp_trunc,
    kummer_kernel_certificate,
    kummer_reduce,
    limit_element,
    log1p_trunc,
    power_system,
    pushforward,
    restriction_scaling,
    surjectivity_certificate,
    transition_matrix,
    unit_valuation,
    verify_log_exp,
    zero_mass_basis,
    zero_mass_rank,
)
from padic_arrangements.local_algebra import INF, snf_int, vp
from padic_arrangements.projective import canonicalize


# -- monomial restriction -----------------------------------------------------

def hand_scaling(nu, kinds, steps):
    """(p^{r+c} X)^a (p^{s+c} / X)^b against (p^r X)^a (p^s / X)^b, coordinate by coordinate."""
    return sum(steps * abs(v) for v in nu)


def test_restriction_examples():
    box = MonomialBox.uniform(["disk", "annulus"], 2, r=1, s=3)
    sc = restriction_scaling(box)
    assert sc[(0, 0)] == 0
    assert sc[(2, 0)] == 2
    pair = MonomialBox.uniform(["annulus", "annulus"], 1, r=0, s=0)
    assert hand_scaling((1, -1), pair.kinds, 1) == 2
    assert restriction_scaling(pair)[(1, -1)] == 2


def test_restriction_inclusion_certificate():
    box = MonomialBox.uniform(["annulus", "disk", "annulus"], 2, r=2, s=1)
    cert = check_restriction_inclusion(box, 4)
    assert cert["holds"] and cert["min_exponent"] == 1 and cert["witness"] is None
    const = MonomialBox(("annulus", "disk"), ((0, 0), (0, 0)), (0, 0), (0, None))
    cert = check_restriction_inclusion(const, 2)
    assert cert["holds"] and cert["min_exponent"] is None
    cert = check_restriction_inclusion(box, 3, steps=2)
    assert cert["holds"] and cert["min_exponent"] == 2
    with pytest.raises(ValueError):
        check_restriction_inclusion(box, 1)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.sampled_from(["disk", "annulus"]), min_size=1, max_size=3),
    st.integers(0, 3),
    st.integers(0, 3),
    st.integers(0, 3),
    st.integers(1, 4),
)
def test_restriction_additive_in_steps(kinds, bound, r, s, c):
    box = MonomialBox.uniform(kinds, bound, r, s)
    one = restriction_scaling(box, 1)
    many = restriction_scaling(box, c)
    for nu, e in many.items():
        assert e == c * one[nu] == hand_scaling(nu, kinds, c)
    # composing c single shrinks through the intermediate domains
    total = {nu: 0 for nu in one}
    cur = box
    for _ in range(c):
        for nu, e in restriction_scaling(cur, 1).items():
            total[nu] += e
        cur = cur.widen(1)
    assert total == many


def test_box_validation():
    with pytest.raises(ValueError):
        MonomialBox(("disk",), ((-1, 1),), (0,), (None,))
    with pytest.raises(ValueError):
        MonomialBox(("annulus",), ((0, 1),), (0,), (None,))


# -- filtered systems -----------------------------------------------------------

def rank_one_in(a, b, N):
    """p^a Z/p^N inside p^b Z/p^N."""
    return min(a, N) >= min(b, N)


def test_filtered_constant_system():
    p, N = 3, 3
    H = ((1,),)
    grid = tuple(tuple(((1,),) for _ in range(3)) for _ in range(3))
    S = FilteredSystem(p, N, grid, H)
    out = check_filtered_condition(S, 1)
    assert out["holds"] and out["intersection_ok"] and out["cobord_ok"]


def test_filtered_power_system_positive():
    p, N, depth, levels = 2, 8, 3, 5
    for i in range(depth):
        for n in range(levels):
            assert rank_one_in(i + n + 1, i + 1 + n, N)
    out = check_filtered_condition(power_system(p, N, depth, levels), 1)
    assert out["holds"] and out["intersection_ok"] and out["cobord_ok"]
    assert out["witness"] is None and out["cocycles"] > 0


def test_filtered_negative_control():
    p, N = 2, 6
    exps = {(1, 1): 3}
    S = power_system(p, N, 2, 3, shift=lambda i, n: exps.get((i, n), i + n))
    S.validate()
    # oracle: first failing (i, n) by direct exponent comparison
    bad = [(i, n) for n in range(3) for i in range(2)
           if not rank_one_in(i + n + 1 if (i, n + 1) not in exps else exps[(i, n + 1)],
                              exps.get((i + 1, n), i + 1 + n), N)]
    assert bad[0] == (0, 1)
    out = check_filtered_condition(S, 1)
    assert not out["holds"]
    assert out["witness"]["i"] == 0 and out["witness"]["n"] == 1
    assert vp(out["witness"]["element"][0], p) == 2


def test_filtered_malformed():
    grid = (((( 2,),), ((1,),)),)
    with pytest.raises(MalformedSystem):
        check_filtered_condition(FilteredSystem(2, 3, grid, ()), 1)


def test_filtered_with_nontrivial_H():
    # H absorbs the part that the filtration would otherwise miss
    p, N = 3, 4
    grid = (
        (((1,),), ((3,),), ((9,),)),
        (((3,),), ((9,),), ((27,),)),
    )
    H = ((9,),)
    S = FilteredSystem(p, N, grid, H)
    out = check_filtered_condition(S, 1)
    assert out["holds"] and out["cobord_ok"]


# -- measures -----------------------------------------------------------------

def alg(p, vecs):
    return Arrangement.from_vectors("algebraic", p, None, vecs)


def closed(p, n, vecs):
    return Arrangement.from_vectors("closed", p, n, vecs)


def test_zero_mass_examples():
    A1 = closed(3, 2, [(1, 0, 0)])
    assert zero_mass_basis(A1) == [] and zero_mass_rank(A1) == 0
    A3 = closed(3, 2, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert len(zero_mass_basis(A3)) == zero_mass_rank(A3) == 2
    for k in range(1, 7):
        A = closed(7, 1, [(1, i) for i in range(k)])
        # kernel of the all-ones row has rank k - 1 by its Smith form
        assert snf_int([[1] * k]).rank == 1
        assert zero_mass_rank(A) == k - 1 == len(zero_mass_basis(A))
        assert all(mu.is_zero_mass for mu in zero_mass_basis(A))


def test_pushforward_examples():
    p = 2
    A = closed(p, 3, [(1, 0), (1, 4)])
    mu = Measure(A, (5, -5))
    assert pushforward(mu, 3) == mu
    low = pushforward(mu, 2)
    assert len(low.support) == 1 and low.weights == (0,)
    nu = Measure(A, (2, 3))
    assert pushforward(nu, 2).weights == (5,)


def test_pushforward_composes_and_preserves_mass():
    rng = random.Random(3)
    p = 3
    seed = alg(p, [(1, 0, 0), (1, 3, 0), (1, 9, 1), (0, 1, 9), (1, 1, 1)])
    F = compatible_family(seed, 4)
    A = F.at(4)
    for _ in range(40):
        mu = Measure(A, tuple(rng.randint(-5, 5) for _ in range(len(A))))
        for m in (3, 2):
            for n in range(1, m):
                assert pushforward(pushforward(mu, m), n) == pushforward(mu, n)
            assert pushforward(mu, m).mass == mu.mass
        T = transition_matrix(A, 2)
        assert [sum(r[j] * w for j, w in enumerate(mu.weights)) for r in T] == list(pushforward(mu, 2).weights)


def test_surjectivity_certificate_merging_family():
    p = 2
    F = compatible_family(alg(p, [(1, 0), (1, p**2)]), 3)
    cert = surjectivity_certificate(F.at(3), 2)
    assert cert["source_size"] == 2 and cert["target_size"] == 1
    assert cert["surjective"]
    seed = alg(3, [(1, 0, 0), (1, 3, 0), (1, 9, 0), (0, 1, 0)])
    F = compatible_family(seed, 3)
    for m in (2, 3):
        for n in range(1, m):
            cert = surjectivity_certificate(F.at(m), n)
            assert cert["preimages_ok"] and cert["smith_ok"]
            assert cert["invariant_factors"] == [1] * (cert["target_size"] - 1)


def test_limit_element():
    p = 2
    F = compatible_family(alg(p, [(1, 0), (1, p**2), (0, 1)]), 3)
    zero = [Measure(F.at(n), (0,) * len(F.at(n))) for n in (1, 2, 3)]
    assert limit_element(F, zero)["coherent"]
    top = Measure(F.at(3), tuple(zero_mass_basis(F.at(3))[0].weights))
    tower = [pushforward(top, 1), pushforward(top, 2), top]
    assert limit_element(F, tower)["coherent"]
    G = compatible_family(alg(3, [(1, 0), (0, 1)]), 3)
    const = [Measure(G.at(n), (1, -1)) for n in (1, 2, 3)]
    assert limit_element(G, const)["coherent"]
    broken = [const[0], Measure(G.at(2), (2, -2)), const[2]]
    out = limit_element(G, broken)
    assert not out["coherent"] and out["first_incoherent"] == 2


# -- units ---------------------------------------------------------------------

def member_index(A, vec):
    target = canonicalize(vec, A.p, A.level)
    return next(i for i, h in enumerate(A.members) if h.dual == target)


def test_unit_valuation_examples():
    p, n = 3, 2
    A = closed(p, n, [(1, 0), (0, 1)])
    a, b = member_index(A, (1, 0)), member_index(A, (0, 1))
    u = SymbolicUnit.ratio(A, a, b)
    assert unit_valuation(u, canonicalize((1, 1), p, n + 1)) == 0
    z = canonicalize((p**n, 1), p, n + 1)
    direct = vp(p**n * 1 % p ** (n + 1), p) - vp(1, p)
    assert direct == n
    assert unit_valuation(u, z) == n
    with pytest.raises(PointInTube):
        unit_valuation(u, canonicalize((p ** (n + 1), 1), p, n + 2))
    with pytest.raises(PrecisionTooLow):
        unit_valuation(u, canonicalize((1, 1), p, n))
    with pytest.raises(ValueError):
        SymbolicUnit(delta(A, 0))


def test_unit_valuation_representative_independence():
    rng = random.Random(6)
    p, n = 2, 2
    A = closed(p, n, [(1, 0, 0), (0, 1, 0), (1, 1, 1), (1, 2, 3)])
    q = p ** (n + 1)
    checked = 0
    for _ in range(200):
        z = canonicalize([rng.randrange(q) for _ in range(2)] + [1], p, n + 1)
        w = [rng.randint(-3, 3) for _ in range(len(A) - 1)]
        w.append(-sum(w))
        u = SymbolicUnit(Measure(A, tuple(w)))
        try:
            got = unit_valuation(u, z)
        except PointInTube:
            continue
        checked += 1
        # oracle: rescale z and every dual by random units before evaluating
        uz = rng.choice([1, 3, 5, 7])
        zs = [uz * x % q for x in z.coords]
        total = 0
        for h, wt in zip(A.members, w):
            uh = rng.choice([1, 3, 5, 7])
            hs = [uh * x for x in h.coords]
            total += wt * vp(sum(x * y for x, y in zip(hs, zs)) % q, p)
        assert got == total
        assert abs(got) <= n * u.measure.l1()
    assert checked > 20


def test_kummer_examples():
    A = closed(5, 1, [(1, 0), (0, 1)])
    assert kummer_reduce(Measure(A, (3, -3)), 3) == (0, 0)
    assert kummer_reduce(Measure(A, (-1, 1)), 2) == (1, 1)
    assert kummer_reduce(zero_mass_basis(A)[0], 2) == tuple(x % 2 for x in zero_mass_basis(A)[0].weights)
    with pytest.raises(BadModulus):
        kummer_reduce(Measure(A, (1, -1)), 10)
    B = alg(5, [(1, 0), (0, 1)])
    assert kummer_reduce(Measure(B, (5, -5)), 5) == (0, 0)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_kummer_kernel_brute(m):
    A = closed(5, 1, [(1, 0), (0, 1), (1, 1), (1, 2)])
    cert = kummer_kernel_certificate(A, m)
    assert cert["holds"] and cert["rank"] == 3
    # oracle: every zero-mass vector in [-2m, 2m]^4 reducing to zero is m times a zero-mass vector
    for w in itertools.product(range(-m, m + 1), repeat=3):
        v = list(w) + [-sum(w)]
        if all(x % m == 0 for x in v):
            assert sum(x // m for x in v) == 0
    image = {tuple(x % m for x in v)
             for v in (list(w) + [-sum(w)] for w in itertools.product(range(m), repeat=3))}
    assert len(image) == m**3


# -- log / exp ------------------------------------------------------------------

def series_oracle(x, p, m, which):
    """Exact rational partial sums, reduced mod p^m at the end."""
    q = p**m
    total = Fraction(1 if which == "exp" else 0)
    fact = 1
    for k in range(1, 4 * m + 4):
        fact *= k
        if which == "exp":
            total += Fraction(x**k, fact)
        else:
            total += Fraction((-1) ** (k + 1) * x**k, k)
    assert total.denominator % p
    return total.numerator * pow(total.denominator, -1, q) % q


def test_logexp_examples():
    assert exp_trunc(0, 3, 5) == 1 and log1p_trunc(0, 3, 5) == 0
    e = series_oracle(9, 3, 5, "exp")
    assert vp((e - 1) % 3**5, 3) == 2
    assert exp_trunc(9, 3, 5) == e


@pytest.mark.parametrize("p", [2, 3, 5])
def test_series_match_oracle(p):
    m = 6
    for x in range(0, p**m, p**2 * (7 if p == 2 else 1)):
        assert exp_trunc(x, p, m) == series_oracle(x, p, m, "exp")
        assert log1p_trunc(x, p, m) == series_oracle(x, p, m, "log")


@pytest.mark.parametrize("p", [2, 3, 5])
def test_verify_log_exp_exhaustive(p):
    out = verify_log_exp(p, 6)
    assert out["pass"] and out["checked"] == p**4 and out["failures"] == []


def test_verify_log_exp_requires_v0():
    with pytest.raises(ValueError):
        verify_log_exp(3, 4, v0=1)
    assert vp(0, 3) == INF
