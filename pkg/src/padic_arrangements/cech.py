"""Explicit Cech-type complexes: twisted multidegree pieces and the torus complex."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .complexes import CochainComplex, complex_cohomology
from .errors import PredictionMismatch
from .local_algebra import kernel_basis, matmul, solve_int


def _simplices(t: int, size: int) -> list[tuple]:
    return list(itertools.combinations(range(t + 1), size))


def _face_sign(J: tuple, I: tuple) -> int:
    """(-1)^k where J is I with its k-th element inserted."""
    (extra,) = set(J) - set(I)
    return -1 if J.index(extra) % 2 else 1


# -- twisted pieces ---------------------------------------------------------

def allowed_simplices(alpha: Sequence[int], size: int) -> list[tuple]:
    """Subsets I of the given size with alpha_i >= 0 for every i outside I."""
    t = len(alpha) - 1
    return [I for I in _simplices(t, size)
            if all(alpha[i] >= 0 for i in range(t + 1) if i not in I)]


def twisted_complex(t: int, alpha: Sequence[int], modulus: tuple | None = None) -> CochainComplex:
    """Multidegree alpha summand of the Cech complex of O(k) on P^t.

    Term s has one generator per allowed I with |I| = s+1; the differential
    is the alternating sum of inclusions I -> J.
    """
    alpha = tuple(int(a) for a in alpha)
    if t < 1 or len(alpha) != t + 1:
        raise ValueError(f"need t >= 1 and {t + 1} exponents")
    bases = [allowed_simplices(alpha, s + 1) for s in range(t + 1)]
    diffs = []
    for s in range(t):
        src, dst = bases[s], bases[s + 1]
        pos = {I: j for j, I in enumerate(src)}
        M = [[0] * len(src) for _ in dst]
        for r, J in enumerate(dst):
            for k in range(len(J)):
                I = J[:k] + J[k + 1:]
                if I in pos:
                    M[r][pos[I]] = -1 if k % 2 else 1
        diffs.append(tuple(tuple(row) for row in M))
    C = CochainComplex(tuple(len(b) for b in bases), tuple(diffs), None, tuple(map(tuple, bases)))
    if modulus is not None:
        C = C.reduce_mod(*modulus)
    return C


def sign_rule(alpha: Sequence[int]) -> str:
    if all(a >= 0 for a in alpha):
        return "H0"
    if all(a <= -1 for a in alpha):
        return "Ht"
    return "acyclic"


def _verdict_from_reports(reports, t: int) -> str:
    nonzero = [r for r in reports if not r.is_zero]
    if not nonzero:
        return "acyclic"
    if len(nonzero) == 1 and nonzero[0].free == 1 and not nonzero[0].torsion:
        if nonzero[0].degree == 0:
            return "H0"
        if nonzero[0].degree == t:
            return "Ht"
    return "other:" + ",".join(f"{r.degree}:{r.free}{list(r.torsion)}" for r in nonzero)


def twisted_concentration(t: int, alpha: Sequence[int]) -> str:
    """Computed verdict "H0", "Ht" or "acyclic", checked against the sign rule."""
    computed = _verdict_from_reports(complex_cohomology(twisted_complex(t, alpha)), t)
    predicted = sign_rule(alpha)
    if computed != predicted:
        raise PredictionMismatch(f"alpha={list(alpha)}: predicted {predicted}, computed {computed}")
    return computed


def projective_twist_rank(t: int, k: int, s: int) -> int:
    """Rank of H^s(P^t, O(k))."""
    if t < 1:
        raise ValueError("need t >= 1")
    if s == 0 and k >= 0:
        return comb(k + t, t)
    if s == t and k <= -t - 1:
        return comb(-k - 1, t)
    return 0


def boxed_twist_rank(t: int, k: int, s: int, bound: int) -> int:
    """Sum of H^s free ranks of the twisted pieces with |alpha| = k in [-bound, bound]^(t+1)."""
    total = 0
    for alpha in itertools.product(range(-bound, bound + 1), repeat=t + 1):
        if sum(alpha) != k:
            continue
        v = sign_rule(alpha)
        if (v == "H0" and s == 0) or (v == "Ht" and s == t):
            total += complex_cohomology(twisted_complex(t, alpha))[s].free
    return total


@dataclass(frozen=True)
class GradedTable:
    """Finite window of a graded group that is completed in the limit.

    ``rows`` lists (degree, rank) for degree <= ``cap``; every degree above
    the cap is omitted, which ``truncated`` records explicitly.
    """

    d: int
    t: int
    k: int
    cap: int
    rows: tuple
    truncated: bool = True

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "t": self.t,
            "k": self.k,
            "cap": self.cap,
            "truncated": self.truncated,
            "rows": [{"degree": j, "rank": r} for j, r in self.rows],
        }

    def rank(self, j: int) -> int:
        return dict(self.rows).get(j, 0)


def fiber_monomials(m: int, j: int) -> int:
    """Monomials of total degree j in m variables."""
    if m == 0:
        return 1 if j == 0 else 0
    return comb(j + m - 1, m - 1)


def xdt_graded_ht(d: int, t: int, k: int, degree_cap: int) -> GradedTable:
    """Graded ranks of top cohomology of O+(k) on the fibration over P^t.

    The fiber degree j contributes (#fiber monomials of degree j) times
    rank H^t(P^t, O(k - j)), nonzero once j >= t+1+k.
    """
    if not 0 < t <= d:
        raise ValueError("need 0 < t <= d")
    start = max(0, t + 1 + k)
    if degree_cap < start:
        raise ValueError(f"degree_cap must be at least {start}")
    rows = []
    for j in range(start, degree_cap + 1):
        r = fiber_monomials(d - t, j) * projective_twist_rank(t, k - j, t)
        rows.append((j, r))
    return GradedTable(d, t, k, degree_cap, tuple(rows))


# -- torus complex ----------------------------------------------------------

def torus_basis(I: tuple) -> list[tuple]:
    """Basis g_{i0 j} of the ratio lattice on I, with i0 = min I."""
    i0 = I[0]
    return [(i0, j) for j in I[1:]]


def _express(sym: tuple, J: tuple) -> dict:
    """Coordinates of g_{ij} in the basis of T_J: g_{ij} = g_{j0 j} - g_{j0 i}."""
    i, j = sym
    j0 = J[0]
    out = {}
    if j != j0:
        out[(j0, j)] = out.get((j0, j), 0) + 1
    if i != j0:
        out[(j0, i)] = out.get((j0, i), 0) - 1
    return out


def torus_complex(t: int) -> CochainComplex:
    """Cech complex of the lattices of monomial ratios z_i/z_j over subsets of {0..t}.

    Degree i collects the subsets with i+1 elements, so degree 0 is zero.
    """
    if t < 1:
        raise ValueError("need t >= 1")
    terms = []
    for i in range(t + 1):
        gens = []
        for I in _simplices(t, i + 1):
            gens.extend((I, g) for g in torus_basis(I))
        terms.append(gens)
    diffs = []
    for i in range(t):
        src, dst = terms[i], terms[i + 1]
        pos = {g: r for r, g in enumerate(dst)}
        M = [[0] * len(src) for _ in dst]
        for c, (I, sym) in enumerate(src):
            for x in range(t + 1):
                if x in I:
                    continue
                J = tuple(sorted(I + (x,)))
                sign = _face_sign(J, I)
                for g, coef in _express(sym, J).items():
                    M[pos[(J, g)]][c] += sign * coef
        diffs.append(tuple(tuple(row) for row in M))
    return CochainComplex(tuple(len(g) for g in terms), tuple(diffs), None, tuple(map(tuple, terms)))


def torus_term_rank(t: int, i: int) -> int:
    return comb(t + 1, i + 1) * i


def torus_cohomology(t: int) -> list:
    """Cohomology reports of the torus complex, checked against H^1 = Z, rest 0."""
    if not 1 <= t <= 6:
        raise ValueError("supported range is 1 <= t <= 6")
    reports = complex_cohomology(torus_complex(t))
    for r in reports:
        want_free = 1 if r.degree == 1 else 0
        if r.free != want_free or r.torsion:
            raise PredictionMismatch(f"t={t}: H^{r.degree} = {r.as_dict()}")
    return reports


def all_ones_cocycle(t: int) -> list[int]:
    """Degree 1 cochain with every pairwise symbol g_{ij} (i < j) of weight 1."""
    return [1] * torus_term_rank(t, 1)


def h1_generated_by_all_ones(t: int) -> bool:
    """True iff the all-ones 1-cochain is a cocycle whose class generates H^1."""
    C = torus_complex(t)
    c = all_ones_cocycle(t)
    if t >= 2:
        d1 = C.differentials[1]
        if any(row[0] for row in matmul(d1, [[x] for x in c])):
            return False
        kernel = kernel_basis(d1)
    else:
        kernel = [[1]]
    # C^0 = 0, so H^1 = ker d^1; c generates iff every kernel vector is a multiple of c
    return all(solve_int([c], v) is not None for v in kernel)


__all__ = [
    "allowed_simplices",
    "twisted_complex",
    "sign_rule",
    "twisted_concentration",
    "projective_twist_rank",
    "boxed_twist_rank",
    "GradedTable",
    "fiber_monomials",
    "xdt_graded_ht",
    "torus_basis",
    "torus_complex",
    "torus_term_rank",
    "torus_cohomology",
    "all_ones_cocycle",
    "h1_generated_by_all_ones",
]
