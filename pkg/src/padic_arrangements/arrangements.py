"""Finite arrangements of hyperplane tubes and their combinatorics.

Closed tubular arrangements of order n have members in P^d(Z/p^n), open
ones in P^d(Z/p^(n+1)), algebraic ones are integer vectors (read in Z_p).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvariantViolation, PrecisionTooLow, SizeLimit
from .local_algebra import INF, rank_int, snf_local, vp
from .projective import (
    AlgebraicHyperplane,
    Hyperplane,
    ProjPoint,
    canonicalize,
    gl_act,
    linear_form,
    project,
)

FLAVORS = ("closed", "open", "algebraic")
SUBSET_CAP = 16


def member_level(flavor: str, order: int) -> int:
    """Level of P^d on which members of a tubular arrangement are defined."""
    if flavor == "closed":
        return order
    if flavor == "open":
        return order + 1
    raise ValueError(f"no member level for flavor {flavor!r}")


@dataclass(frozen=True)
class Arrangement:
    flavor: str
    p: int
    d: int
    order: int | None
    members: tuple

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if not self.members:
            raise InvariantViolation("an arrangement needs at least one member")
        if self.flavor == "algebraic":
            if self.order is not None:
                raise ValueError("algebraic arrangements carry no order")
        elif self.order is None or self.order < 1:
            raise ValueError("tubular arrangements need an order >= 1")
        members = tuple(sorted(self.members))
        if len(set(members)) != len(members):
            raise InvariantViolation("members must be pairwise distinct")
        for h in members:
            if h.p != self.p or h.dim != self.d:
                raise InvariantViolation(f"{h} does not live in P^{self.d} over p={self.p}")
            if self.flavor != "algebraic" and h.level != self.level:
                raise InvariantViolation(f"{h} is not at level {self.level}")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_vectors(cls, flavor: str, p: int, order: int | None,
                     vectors: Iterable[Sequence[int]], merge: bool = False) -> "Arrangement":
        """Build from raw dual vectors; ``merge`` collapses equal classes."""
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if not vectors:
            raise InvariantViolation("an arrangement needs at least one member")
        d = len(vectors[0]) - 1
        if flavor == "algebraic":
            members = [AlgebraicHyperplane(p, v) for v in vectors]
        else:
            lvl = member_level(flavor, order)
            members = [Hyperplane(canonicalize(v, p, lvl)) for v in vectors]
        if merge:
            members = sorted(set(members))
        return cls(flavor, p, d, order, tuple(members))

    @property
    def level(self) -> int | None:
        if self.flavor == "algebraic":
            return None
        return member_level(self.flavor, self.order)

    @property
    def is_tubular(self) -> bool:
        return self.flavor != "algebraic"

    def __len__(self):
        return len(self.members)

    def dual_matrix(self) -> list[list[int]]:
        return [list(h.coords) for h in self.members]

    def sub(self, indices: Iterable[int]) -> "Arrangement":
        return Arrangement(self.flavor, self.p, self.d, self.order,
                           tuple(self.members[i] for i in indices))

    def as_dict(self) -> dict:
        return {
            "flavor": self.flavor,
            "p": self.p,
            "order": self.order,
            "members": [list(h.coords) for h in self.members],
        }


def rank(A: Arrangement) -> int:
    """Number of elementary divisors p^alpha with alpha below the member level.

    Algebraic arrangements use the rank of the integer dual matrix, which
    equals its rank over Z_p.
    """
    if A.flavor == "algebraic":
        return rank_int(A.dual_matrix())
    s = snf_local(A.dual_matrix(), A.p, A.level)
    return s.count_below(A.level)


@dataclass(frozen=True)
class UniShape:
    """Fibration type of the union of the tubes of a closed arrangement.

    ``kind`` is "fibration" or "ball".  In the new coordinates
    w = basis_change . z the union is the standard fibration over P^t with
    fiber radii given by ``beta``.
    """

    kind: str
    t: int | None
    beta: tuple
    alphas: tuple
    basis_change: tuple

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "t": self.t,
            "beta": list(self.beta),
            "alphas": [None if a == INF else a for a in self.alphas],
            "basis_change": [list(r) for r in self.basis_change],
        }


def classify_uni(B: Arrangement) -> UniShape:
    if B.flavor != "closed":
        raise ValueError("classify_uni expects a closed tubular arrangement")
    n = B.order
    s = snf_local(B.dual_matrix(), B.p, n)
    # rows of M are the duals and M . right = left^{-1} . D, so in the
    # coordinates w = right^{-1} z each l_a becomes a combination of p^alpha_i w_i
    alphas = tuple(s.alphas)
    if len(B) == 1:
        return UniShape("ball", None, (n,), alphas, s.right_inv)
    beta = tuple(n - a for a in alphas if a < n)
    return UniShape("fibration", len(beta) - 1, beta, alphas, s.right_inv)


def project_arrangement(A: Arrangement, n: int) -> Arrangement:
    if not A.is_tubular:
        raise ValueError("only tubular arrangements project")
    if n > A.order or n < 1:
        raise ValueError(f"cannot project order {A.order} to order {n}")
    lvl = member_level(A.flavor, n)
    members = sorted({project(h, lvl) for h in A.members})
    return Arrangement(A.flavor, A.p, A.d, n, tuple(members))


def reduce_algebraic(A: Arrangement, n: int, flavor: str = "closed") -> Arrangement:
    """Tubular arrangement of order n cut out by an algebraic one."""
    lvl = member_level(flavor, n)
    members = sorted({h.reduce(lvl) for h in A.members})
    return Arrangement(flavor, A.p, A.d, n, tuple(members))


@dataclass(frozen=True)
class CompatibleFamily:
    seed: Arrangement
    levels: tuple

    def at(self, n: int) -> Arrangement:
        return self.levels[n - 1]

    @property
    def depth(self) -> int:
        return len(self.levels)

    def check(self) -> bool:
        for m in range(2, self.depth + 1):
            for n in range(1, m):
                if project_arrangement(self.at(m), n) != self.at(n):
                    return False
        return True


def compatible_family(seed: Arrangement, N: int, flavor: str = "closed") -> CompatibleFamily:
    if seed.flavor != "algebraic":
        raise ValueError("seed must be algebraic")
    if N < 1:
        raise ValueError("need N >= 1")
    levels = tuple(reduce_algebraic(seed, n, flavor) for n in range(1, N + 1))
    return CompatibleFamily(seed, levels)


def int_contains(A: Arrangement, z: ProjPoint) -> bool:
    """True iff z avoids every open tube of radius |p|^n around a member.

    Members live at level n while the test needs l_a(z) mod p^(n+1); the
    canonical integer lift of each member (entries in [0, p^n)) is used.
    """
    if A.flavor != "closed":
        raise ValueError("int_contains expects a closed tubular arrangement")
    n = A.order
    if z.level < n + 1:
        raise PrecisionTooLow(f"point level {z.level} < {n + 1}")
    q = A.p ** (n + 1)
    return all(vp(linear_form(h.coords, z.coords, q), A.p) <= n for h in A.members)


def _subsets(A: Arrangement, cap: int):
    if len(A) > cap:
        raise SizeLimit(f"{len(A)} members exceed the subset cap {cap}")
    idx = range(len(A))
    for size in range(1, len(A) + 1):
        yield from itertools.combinations(idx, size)


def simple_elements(A: Arrangement, cap: int = SUBSET_CAP) -> list[Arrangement]:
    """Sub-arrangements B with |B| = rank(B) < d+1."""
    out = []
    for I in _subsets(A, cap):
        B = A.sub(I)
        if len(B) < A.d + 1 and rank(B) == len(B):
            out.append(B)
    return out


def mv_degree_bounds(A: Arrangement, cap: int = SUBSET_CAP) -> list[dict]:
    """Per-subset rank and cohomological concentration interval [0, rank-1]."""
    table = []
    for I in _subsets(A, cap):
        r = rank(A.sub(I))
        table.append({
            "subset": list(I),
            "size": len(I),
            "rank": r,
            "interval": [0, r - 1],
            "hypothesis": r - 1 < len(I) and r <= min(len(I), A.d + 1),
        })
    return table


def gl_act_arrangement(g, A: Arrangement) -> Arrangement:
    if not A.is_tubular:
        raise ValueError("gl action is defined on tubular arrangements")
    return Arrangement(A.flavor, A.p, A.d, A.order, tuple(gl_act(g, h) for h in A.members))


__all__ = [
    "Arrangement",
    "UniShape",
    "CompatibleFamily",
    "member_level",
    "rank",
    "classify_uni",
    "project_arrangement",
    "reduce_algebraic",
    "compatible_family",
    "int_contains",
    "simple_elements",
    "mv_degree_bounds",
    "gl_act_arrangement",
]
