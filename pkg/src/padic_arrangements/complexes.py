"""Finite free cochain complexes and their cohomology via Smith forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import NonComplex
from .local_algebra import INF, is_zero, matmul, snf_int, snf_local, transpose, vp


@dataclass(frozen=True)
class CochainComplex:
    """0 -> C^0 -> C^1 -> ... with ``differentials[i]`` mapping C^i to C^{i+1}.

    ``differentials[i]`` has shape (ranks[i+1], ranks[i]).  ``modulus`` is
    ``None`` for coefficients in Z, otherwise ``(p, m)`` for Z/p^m.
    ``labels`` optionally names the basis of each term.
    """

    ranks: tuple
    differentials: tuple
    modulus: tuple | None = None
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ValueError("need one differential between consecutive terms")
        for i, d in enumerate(self.differentials):
            rows = len(d)
            if rows != self.ranks[i + 1]:
                raise ValueError(f"d^{i} has {rows} rows, expected {self.ranks[i + 1]}")
            if rows and len(d[0]) != self.ranks[i]:
                raise ValueError(f"d^{i} has {len(d[0])} columns, expected {self.ranks[i]}")

    @property
    def length(self) -> int:
        return len(self.ranks)

    @property
    def base_modulus(self) -> int | None:
        if self.modulus is None:
            return None
        p, m = self.modulus
        return p**m

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * r for i, r in enumerate(self.ranks))

    def check(self) -> None:
        """Raise NonComplex unless every d^{i+1} d^i vanishes."""
        q = self.base_modulus
        for i in range(len(self.differentials) - 1):
            d0, d1 = self.differentials[i], self.differentials[i + 1]
            if not d1 or not d0 or not d0[0]:
                continue
            if not is_zero(matmul(d1, d0), q):
                raise NonComplex(f"d^{i + 1} o d^{i} != 0")

    def reduce_mod(self, p: int, m: int) -> "CochainComplex":
        """Same integer matrices read over Z/p^m."""
        q = p**m
        diffs = tuple(tuple(tuple(x % q for x in row) for row in d) for d in self.differentials)
        return CochainComplex(self.ranks, diffs, (p, m), self.labels)

    def change_basis(self, bases: Sequence[Sequence[Sequence[int]]],
                     inverses: Sequence[Sequence[Sequence[int]]]) -> "CochainComplex":
        """Conjugate by invertible matrices: d'^i = B_{i+1} d^i B_i^{-1}."""
        q = self.base_modulus
        diffs = []
        for i, d in enumerate(self.differentials):
            if not d or not d[0]:
                diffs.append(d)
                continue
            new = matmul(matmul(bases[i + 1], d, q), inverses[i], q)
            diffs.append(tuple(tuple(r) for r in new))
        return CochainComplex(self.ranks, tuple(diffs), self.modulus, self.labels)


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    free: int
    torsion: tuple

    @property
    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    def as_dict(self) -> dict:
        return {"deg": self.degree, "free": self.free, "torsion": list(self.torsion)}


def _diff_or_zero(C: CochainComplex, i: int) -> list:
    """d^i as a matrix, with the out-of-range maps returned as ``None``."""
    if i < 0 or i >= len(C.differentials):
        return None
    return C.differentials[i]


def _cohomology_over_z(C: CochainComplex) -> list[DegreeReport]:
    ranks_of_d = []
    torsion_of_d = []
    for d in C.differentials:
        if not d or not d[0]:
            ranks_of_d.append(0)
            torsion_of_d.append(())
            continue
        s = snf_int(d)
        ranks_of_d.append(s.rank)
        torsion_of_d.append(tuple(x for x in s.diagonal if x > 1))
    out = []
    for i, r in enumerate(C.ranks):
        rk_out = ranks_of_d[i] if i < len(ranks_of_d) else 0
        rk_in = ranks_of_d[i - 1] if i >= 1 else 0
        tors = torsion_of_d[i - 1] if i >= 1 else ()
        out.append(DegreeReport(i, r - rk_out - rk_in, tuple(tors)))
    return out


def _cohomology_mod(C: CochainComplex) -> list[DegreeReport]:
    # In the coordinates where d^i is diagonal, ker d^i = (+) p^{m-alpha_j} Z
    # (mod p^m), and H^i = ker / (im d^{i-1} + p^m Z^r) is read off a Z-Smith form.
    p, m = C.modulus
    q = p**m
    out = []
    for i, r in enumerate(C.ranks):
        if r == 0:
            out.append(DegreeReport(i, 0, ()))
            continue
        d_out = _diff_or_zero(C, i)
        if d_out and d_out[0]:
            s = snf_local(d_out, p, m)
            alphas = list(s.alphas) + [INF] * (r - len(s.alphas))
            to_y = s.right_inv
        else:
            alphas = [INF] * r
            to_y = tuple(tuple(int(a == b) for b in range(r)) for a in range(r))
        scale = [1 if a == INF else p ** (m - a) for a in alphas]
        gens = []
        d_in = _diff_or_zero(C, i - 1)
        if d_in and d_in[0]:
            image = matmul(to_y, d_in, q)
            for col in transpose(image):
                if any(v % s_ for v, s_ in zip(col, scale)):
                    raise NonComplex(f"image of d^{i - 1} not inside ker d^{i}")
                gens.append([v // s_ for v, s_ in zip(col, scale)])
        for j in range(r):
            gens.append([q // scale[j] if k == j else 0 for k in range(r)])
        diag = snf_int(transpose(gens)).diagonal
        free = sum(1 for x in diag if x == q)
        tors = tuple(sorted(x for x in diag if 1 < x < q))
        out.append(DegreeReport(i, free, tors))
    return out


def complex_cohomology(C: CochainComplex) -> list[DegreeReport]:
    """Per-degree free rank and torsion invariants of H^*(C).

    Over Z/p^m, ``free`` counts summands isomorphic to Z/p^m and the
    torsion list holds the smaller cyclic orders p^e.
    """
    C.check()
    if C.modulus is None:
        return _cohomology_over_z(C)
    return _cohomology_mod(C)


def cohomology_dict(C: CochainComplex) -> dict:
    reports = complex_cohomology(C)
    diff_ranks = []
    for d in C.differentials:
        if not d or not d[0]:
            diff_ranks.append(0)
        elif C.modulus is None:
            diff_ranks.append(snf_int(d).rank)
        else:
            p, m = C.modulus
            diff_ranks.append(snf_local(d, p, m).count_below(m))
    return {
        "terms": list(C.ranks),
        "diff_ranks": diff_ranks,
        "cohomology": [rep.as_dict() for rep in reports],
    }


__all__ = [
    "CochainComplex",
    "DegreeReport",
    "complex_cohomology",
    "cohomology_dict",
    "vp",
]
