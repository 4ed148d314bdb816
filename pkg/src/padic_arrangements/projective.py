"""Points and hyperplanes of P^d over Z/p^n.

A point is stored as its canonical unimodular representative: the first
unit coordinate is scaled to 1 and every coordinate lies in [0, p^n).
Hyperplanes are identified with points through the linear form
``l_a(z) = sum a_i z_i``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotInvertible, NotUnimodular, PrecisionTooLow, SizeLimit
from .local_algebra import INF, TruncElem, inverse_mod, vp

DEFAULT_CAP = 10**6


@dataclass(frozen=True, order=True)
class ProjPoint:
    """Canonical representative of a point of P^d(Z/p^n).

    Ordering is (p, level, coords), which restricted to one ring is the
    lexicographic order on canonical representatives.
    """

    p: int
    level: int
    coords: tuple

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @property
    def modulus(self) -> int:
        return self.p**self.level

    def elems(self) -> tuple[TruncElem, ...]:
        return tuple(TruncElem(c, self.level, self.p) for c in self.coords)

    def as_dict(self) -> dict:
        return {"p": self.p, "n": self.level, "coords": list(self.coords)}

    def __repr__(self):
        return f"ProjPoint(p={self.p}, n={self.level}, {list(self.coords)})"


@dataclass(frozen=True, order=True)
class Hyperplane:
    """Hyperplane class, represented by the point dual to its linear form."""

    dual: ProjPoint

    @property
    def p(self) -> int:
        return self.dual.p

    @property
    def level(self) -> int:
        return self.dual.level

    @property
    def dim(self) -> int:
        return self.dual.dim

    @property
    def coords(self) -> tuple:
        return self.dual.coords

    def as_dict(self) -> dict:
        return {**self.dual.as_dict(), "role": "dual"}

    def __repr__(self):
        return f"Hyperplane(p={self.p}, n={self.level}, dual={list(self.coords)})"


@dataclass(frozen=True, order=True)
class AlgebraicHyperplane:
    """Hyperplane over Z_p given by an integer vector with content removed.

    The gcd of the entries is divided out and the first nonzero entry is
    made positive, so the reduction mod p^n is unimodular for every n.
    """

    p: int
    coords: tuple

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        g = 0
        for c in coords:
            g = math.gcd(g, c)
        if g == 0:
            raise NotUnimodular("zero vector")
        first = next(c for c in coords if c)
        if first < 0:
            g = -g
        object.__setattr__(self, "coords", tuple(c // g for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def reduce(self, n: int) -> Hyperplane:
        return Hyperplane(canonicalize(self.coords, self.p, n))


def _as_ints(v: Iterable) -> list[int]:
    return [int(x) for x in v]


def canonicalize(v: Sequence, p: int, n: int) -> ProjPoint:
    """Scale a unimodular vector so its first unit coordinate is 1."""
    q = p**n
    coords = [x % q for x in _as_ints(v)]
    if len(coords) < 2:
        raise ValueError("need at least two coordinates")
    lead = next((x for x in coords if x % p), None)
    if lead is None:
        raise NotUnimodular(f"{coords} has no unit coordinate mod {p}")
    inv = pow(lead, -1, q)
    return ProjPoint(p, n, tuple(x * inv % q for x in coords))


def point_count(d: int, p: int, n: int) -> int:
    return (p ** (n * (d + 1)) - p ** ((n - 1) * (d + 1))) // (p ** (n - 1) * (p - 1))


def iter_points(d: int, p: int, n: int) -> Iterable[ProjPoint]:
    """Canonical representatives in lexicographic order."""
    q = p**n
    multiples = range(0, q, p)
    everything = range(q)
    # one block per position of the leading 1; blocks interleave in lex order
    blocks = []
    for lead in range(d + 1):
        blocks.append(
            itertools.product(*([multiples] * lead + [(1,)] + [everything] * (d - lead)))
        )
    for coords in sorted(itertools.chain(*blocks)):
        yield ProjPoint(p, n, tuple(coords))


def enumerate_points(d: int, p: int, n: int, cap: int = DEFAULT_CAP) -> list[ProjPoint]:
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    count = point_count(d, p, n)
    if count > cap:
        raise SizeLimit(f"|P^{d}(Z/{p}^{n})| = {count} exceeds cap {cap}")
    return list(iter_points(d, p, n))


def enumerate_hyperplanes(d: int, p: int, n: int, cap: int = DEFAULT_CAP) -> list[Hyperplane]:
    return [Hyperplane(x) for x in enumerate_points(d, p, n, cap)]


def project(x, n: int):
    """Reduce a point (or hyperplane) to level n <= its level."""
    if isinstance(x, Hyperplane):
        return Hyperplane(project(x.dual, n))
    if n < 1 or n > x.level:
        raise ValueError(f"cannot project level {x.level} to level {n}")
    if n == x.level:
        return x
    return canonicalize(x.coords, x.p, n)


def random_point(d: int, p: int, n: int, rng: random.Random) -> ProjPoint:
    q = p**n
    while True:
        v = [rng.randrange(q) for _ in range(d + 1)]
        if any(x % p for x in v):
            return canonicalize(v, p, n)


def linear_form(a: Sequence[int], z: Sequence[int], modulus: int) -> int:
    return sum(x * y for x, y in zip(a, z)) % modulus


def tube_relation(H: Hyperplane, z: ProjPoint, radius: int, flavor: str = "closed") -> bool:
    """Membership of z in the closed or open tube of radius |p|^radius around H.

    closed: v(l_a(z)) >= radius, open: v(l_a(z)) >= radius + 1, both
    evaluated on unimodular representatives.
    """
    if flavor not in ("closed", "open"):
        raise ValueError(f"unknown flavor {flavor!r}")
    if H.p != z.p or H.dim != z.dim:
        raise ValueError("hyperplane and point live in different spaces")
    need = radius if flavor == "closed" else radius + 1
    if z.level < need:
        raise PrecisionTooLow(f"point level {z.level} < {need}")
    if H.level < need:
        raise PrecisionTooLow(f"hyperplane level {H.level} < {need}")
    prec = min(z.level, H.level)
    val = vp(linear_form(H.coords, z.coords, H.p**prec), H.p)
    return val >= need


def _check_invertible(g: Sequence[Sequence[int]], p: int, n: int) -> list[list[int]]:
    try:
        return inverse_mod(g, p, n)
    except ZeroDivisionError:
        raise NotInvertible("matrix is not invertible over Z/p^n") from None


def gl_act_point(g: Sequence[Sequence[int]], z: ProjPoint) -> ProjPoint:
    """z -> g z."""
    _check_invertible(g, z.p, z.level)
    q = z.modulus
    w = [sum(gij * zj for gij, zj in zip(row, z.coords)) % q for row in g]
    return canonicalize(w, z.p, z.level)


def gl_act(g: Sequence[Sequence[int]], H: Hyperplane) -> Hyperplane:
    """Act on a hyperplane through its dual by the inverse transpose.

    With this convention z lies in the tube of H iff g z lies in the tube
    of gl_act(g, H).
    """
    ginv = _check_invertible(g, H.p, H.level)
    q = H.dual.modulus
    a = H.coords
    # (g^{-T} a)_i = sum_j ginv[j][i] a_j
    new = [sum(ginv[j][i] * a[j] for j in range(len(a))) % q for i in range(len(a))]
    return Hyperplane(canonicalize(new, H.p, H.level))


def random_gl(d: int, p: int, n: int, rng: random.Random) -> list[list[int]]:
    q = p**n
    while True:
        g = [[rng.randrange(q) for _ in range(d + 1)] for _ in range(d + 1)]
        try:
            inverse_mod(g, p, n)
        except ZeroDivisionError:
            continue
        return g


def unimodular_vectors(d: int, p: int, n: int) -> Iterable[tuple]:
    q = p**n
    for v in itertools.product(range(q), repeat=d + 1):
        if any(x % p for x in v):
            yield v


__all__ = [
    "INF",
    "ProjPoint",
    "Hyperplane",
    "AlgebraicHyperplane",
    "canonicalize",
    "point_count",
    "enumerate_points",
    "enumerate_hyperplanes",
    "project",
    "tube_relation",
    "gl_act",
    "gl_act_point",
    "random_point",
    "random_gl",
    "linear_form",
    "unimodular_vectors",
]
