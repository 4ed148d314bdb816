"""Finite-level models for inverse systems, measure lattices and units.

Everything here is a truncation: monomial boxes stand in for the bounded
functions on polyannuli, subgroups of (Z/p^N)^r for the filtered groups,
and zero-mass integer vectors for the unit lattices of tube complements.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .arrangements import Arrangement, CompatibleFamily, int_contains, project_arrangement
from .errors import BadModulus, MalformedSystem, PointInTube, PrecisionTooLow
from .local_algebra import kernel_basis, snf_int, solve_int, vp
from .projective import ProjPoint, linear_form, project


# -- monomial restriction -----------------------------------------------------

@dataclass(frozen=True)
class MonomialBox:
    """Truncated monomial basis of bounded functions on a relative polyannulus.

    Coordinate j is an annulus |p|^{s_j} <= |x_j| <= |p|^{-r_j}, or a disk
    |x_j| <= |p|^{-r_j} when ``kinds[j] == "disk"`` (then ``s[j]`` is None
    and only nonnegative exponents occur).  ``ranges[j] = (lo, hi)`` bounds
    the exponents kept in the truncation.
    """

    kinds: tuple
    ranges: tuple
    r: tuple
    s: tuple

    def __post_init__(self):
        d = len(self.kinds)
        if not (len(self.ranges) == len(self.r) == len(self.s) == d):
            raise ValueError("kinds, ranges and radii must have the same length")
        for kind, (lo, hi), s in zip(self.kinds, self.ranges, self.s):
            if kind not in ("annulus", "disk"):
                raise ValueError(f"unknown coordinate kind {kind!r}")
            if lo > hi:
                raise ValueError("empty exponent range")
            if kind == "disk" and (lo < 0 or s is not None):
                raise ValueError("disk coordinates take nonnegative exponents and no inner radius")
            if kind == "annulus" and s is None:
                raise ValueError("annulus coordinates need an inner radius")

    @classmethod
    def uniform(cls, kinds: Sequence[str], bound: int, r: int = 0, s: int = 0) -> "MonomialBox":
        ranges = tuple((0, bound) if k == "disk" else (-bound, bound) for k in kinds)
        return cls(tuple(kinds), ranges, tuple(r for _ in kinds),
                   tuple(None if k == "disk" else s for k in kinds))

    @property
    def dim(self) -> int:
        return len(self.kinds)

    def monomials(self):
        return itertools.product(*(range(lo, hi + 1) for lo, hi in self.ranges))

    def widen(self, steps: int = 1) -> "MonomialBox":
        """The larger domain with every radius exponent moved out by ``steps``."""
        return MonomialBox(
            self.kinds,
            self.ranges,
            tuple(x + steps for x in self.r),
            tuple(None if x is None else x + steps for x in self.s),
        )

    def norm_exponent(self, nu: Sequence[int]) -> int:
        """Power of p making x^nu a unit-norm basis element on this domain."""
        total = 0
        for v, r, s in zip(nu, self.r, self.s):
            if v >= 0:
                total += r * v
            else:
                total += s * (-v)
        return total


def restriction_scaling(box: MonomialBox, steps: int = 1) -> dict:
    """Exponent e(nu) with (basis monomial on V)|_U = p^e (basis monomial on U).

    U is ``box`` and V the larger domain ``box.widen(steps)``; the value is
    read off as the difference of the two normalizations.
    """
    outer = box.widen(steps)
    return {nu: outer.norm_exponent(nu) - box.norm_exponent(nu) for nu in box.monomials()}


def check_restriction_inclusion(box: MonomialBox, m: int, steps: int = 1) -> dict:
    """Certificate that every non-constant basis monomial of V restricts into p^steps times the U-lattice."""
    if m < 2:
        raise ValueError("need coefficient precision m >= 2")
    scaling = restriction_scaling(box, steps)
    exps = [e for nu, e in scaling.items() if any(nu)]
    witness = next((list(nu) for nu, e in scaling.items() if any(nu) and e < steps), None)
    return {
        "holds": witness is None,
        "steps": steps,
        "precision": m,
        "monomials": len(scaling),
        "min_exponent": min(exps) if exps else None,
        "witness": witness,
    }


# -- filtered systems ---------------------------------------------------------

def _span_contains(gens: Sequence[Sequence[int]], x: Sequence[int], modulus: int) -> list[int] | None:
    """Coefficients on ``gens`` writing x inside span(gens) + modulus Z^r, or None."""
    r = len(x)
    box = [[modulus if a == b else 0 for b in range(r)] for a in range(r)]
    coef = solve_int(list(gens) + box, list(x))
    if coef is None:
        return None
    return coef[: len(gens)]


def _subgroup_le(A, B, modulus: int) -> Sequence[int] | None:
    """First generator of A outside B, or None when A is inside B."""
    for g in A:
        if _span_contains(B, g, modulus) is None:
            return g
    return None


@dataclass(frozen=True)
class FilteredSystem:
    """Decreasing tower of filtered subgroups of (Z/p^N)^r.

    ``grid[i][n]`` lists generators of G_n^(i) for filtration index i and
    level n; ``H`` lists generators of the distinguished subgroup.
    """

    p: int
    N: int
    grid: tuple
    H: tuple
    rank: int = 1

    @property
    def modulus(self) -> int:
        return self.p**self.N

    @property
    def depth(self) -> int:
        return len(self.grid) - 1

    @property
    def levels(self) -> int:
        return len(self.grid[0]) - 1

    def G(self, i: int, n: int):
        return self.grid[i][n]

    def validate(self) -> None:
        q = self.modulus
        for i in range(self.depth + 1):
            for n in range(self.levels + 1):
                if n < self.levels and _subgroup_le(self.G(i, n + 1), self.G(i, n), q) is not None:
                    raise MalformedSystem(f"G_{n + 1}^({i}) not inside G_{n}^({i})")
                if i < self.depth and _subgroup_le(self.G(i + 1, n), self.G(i, n), q) is not None:
                    raise MalformedSystem(f"G_{n}^({i + 1}) not inside G_{n}^({i})")
        for n in range(self.levels + 1):
            if _subgroup_le(self.H, self.G(0, n), q) is not None:
                raise MalformedSystem(f"H not inside G_{n}")


def power_system(p: int, N: int, depth: int, levels: int, shift=None, H=()) -> FilteredSystem:
    """Rank one system with G_n^(i) = p^{e(i, n)} Z/p^N, e(i, n) = i + n by default."""
    if shift is None:
        def shift(i, n):
            return i + n
    grid = tuple(
        tuple(((p ** min(shift(i, n), N) % p**N,),) for n in range(levels + 1))
        for i in range(depth + 1)
    )
    return FilteredSystem(p, N, grid, tuple(H), 1)


def _split(S: FilteredSystem, x, i: int, n: int):
    """Write x = h + y with h in H and y in G_n^(i), or None."""
    q = S.modulus
    Hg = list(S.H)
    coef = _span_contains(Hg + list(S.G(i, n)), x, q)
    if coef is None:
        return None
    h = [sum(c * g[k] for c, g in zip(coef[: len(Hg)], Hg)) % q for k in range(len(x))]
    y = [(a - b) % q for a, b in zip(x, h)]
    return h, y


def check_filtered_condition(S: FilteredSystem, c: int, seed: int = 0) -> dict:
    """Check G_{n+c}^(i) inside H + G_n^(i+1) wherever both sides exist.

    On success the finite-level consequences are checked as well: the
    deepest level sits in H + G_0^(k) with k as large as the data allows,
    and every cocycle (f_m) splits as h_m + y_m with h_m in H and y_m in
    G_0^(min(m // c, depth)), with the telescoping cobord of y verified.
    """
    if c < 1:
        raise ValueError("need c >= 1")
    S.validate()
    q = S.modulus
    failures = []
    for n in range(S.levels + 1 - c):
        for i in range(S.depth):
            target = list(S.H) + list(S.G(i + 1, n))
            bad = _subgroup_le(S.G(i, n + c), target, q)
            if bad is not None:
                failures.append({"i": i, "n": n, "element": list(bad)})
    out = {"holds": not failures, "c": c, "witness": failures[0] if failures else None,
           "failures": len(failures)}
    if failures:
        out["intersection_ok"] = False
        out["cobord_ok"] = False
        return out

    k = min(S.levels // c, S.depth)
    out["intersection_depth"] = k
    out["intersection_ok"] = _subgroup_le(S.G(0, k * c), list(S.H) + list(S.G(k, 0)), q) is None

    rng = random.Random(seed)
    cocycles = []
    for m in range(S.levels + 1):
        for g in S.G(0, m):
            f = [[0] * S.rank for _ in range(S.levels + 1)]
            f[m] = list(g)
            cocycles.append(f)
    mixed = [[0] * S.rank for _ in range(S.levels + 1)]
    for m in range(S.levels + 1):
        for g in S.G(0, m):
            a = rng.randrange(q)
            mixed[m] = [(x + a * y) % q for x, y in zip(mixed[m], g)]
    cocycles.append(mixed)
    out["cocycles"] = len(cocycles)
    out["cobord_ok"] = all(_cocycle_is_cobord(S, c, f) for f in cocycles)
    return out


def _cocycle_is_cobord(S: FilteredSystem, c: int, f) -> bool:
    q = S.modulus
    L = S.levels
    hs, ys = [], []
    for m, fm in enumerate(f):
        h = [0] * S.rank
        y = list(fm)
        depth = min(m // c, S.depth)
        for j in range(1, depth + 1):
            # y lies in G_{m-(j-1)c}^(j-1); push it one filtration step down
            parts = _split(S, y, j, m - j * c)
            if parts is None:
                return False
            h = [(a + b) % q for a, b in zip(h, parts[0])]
            y = parts[1]
        if _span_contains(S.G(depth, 0), y, q) is None:
            return False
        hs.append(h)
        ys.append(y)
    # g_n = sum_{m >= n} y_m lies in G_n and delta(g) = f - h
    for n in range(L + 1):
        g = [sum(ys[m][k] for m in range(n, L + 1)) % q for k in range(S.rank)]
        if _span_contains(S.G(0, n), g, q) is None:
            return False
        nxt = [sum(ys[m][k] for m in range(n + 1, L + 1)) % q for k in range(S.rank)]
        delta = [(a - b) % q for a, b in zip(g, nxt)]
        if delta != [(a - b) % q for a, b in zip(f[n], hs[n])]:
            return False
    return True


# -- measures -----------------------------------------------------------------

@dataclass(frozen=True)
class Measure:
    """Integer weights on the members of an arrangement, in member order."""

    support: Arrangement
    weights: tuple

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if len(w) != len(self.support):
            raise ValueError("one weight per member is required")
        object.__setattr__(self, "weights", w)

    @property
    def mass(self) -> int:
        return sum(self.weights)

    @property
    def is_zero_mass(self) -> bool:
        return self.mass == 0

    def weight(self, member) -> int:
        return self.weights[self.support.members.index(member)]

    def l1(self) -> int:
        return sum(abs(x) for x in self.weights)

    def as_dict(self) -> dict:
        return {
            "members": [list(h.coords) for h in self.support.members],
            "weights": list(self.weights),
            "mass": self.mass,
        }


def delta(A: Arrangement, index: int) -> Measure:
    return Measure(A, tuple(int(i == index) for i in range(len(A))))


def zero_mass_basis(A: Arrangement) -> list[Measure]:
    """delta_a - delta_{a0} for a != a0, with a0 the least member."""
    out = []
    for j in range(1, len(A)):
        w = [0] * len(A)
        w[j] = 1
        w[0] = -1
        out.append(Measure(A, tuple(w)))
    return out


def zero_mass_rank(A: Arrangement) -> int:
    """Rank of the kernel of the mass map, computed from its Smith form."""
    return len(kernel_basis([[1] * len(A)]))


def _projection_map(A: Arrangement, n: int):
    target = project_arrangement(A, n)
    lvl = target.level
    index = {h: j for j, h in enumerate(target.members)}
    return target, [index[project(h, lvl)] for h in A.members]


def pushforward(mu: Measure, n: int) -> Measure:
    """Push weights along the projection to order n, adding over merged classes."""
    target, where = _projection_map(mu.support, n)
    w = [0] * len(target)
    for j, x in zip(where, mu.weights):
        w[j] += x
    return Measure(target, tuple(w))


def transition_matrix(A: Arrangement, n: int) -> list[list[int]]:
    target, where = _projection_map(A, n)
    M = [[0] * len(A) for _ in range(len(target))]
    for col, j in enumerate(where):
        M[j][col] = 1
    return M


def surjectivity_certificate(A: Arrangement, n: int) -> dict:
    """Two independent witnesses that Z[A]^0 -> Z[A_n]^0 is onto.

    ``preimages`` lists an explicit zero-mass preimage of each basis vector
    of the target; ``invariant_factors`` is the Smith form of the induced
    map written in the two zero-mass bases.
    """
    target, where = _projection_map(A, n)
    first = {}
    for col, j in enumerate(where):
        first.setdefault(j, col)
    preimages = []
    ok = True
    for b, want in enumerate(zero_mass_basis(target), start=1):
        w = [0] * len(A)
        w[first[b]] += 1
        w[first[0]] -= 1
        mu = Measure(A, tuple(w))
        ok = ok and mu.is_zero_mass and pushforward(mu, n) == want
        preimages.append(list(w))
    # columns: images of the source basis, in target coordinates (drop b0)
    cols = []
    for mu in zero_mass_basis(A):
        img = pushforward(mu, n).weights
        cols.append(list(img[1:]))
    if cols and len(target) > 1:
        rows = [[col[r] for col in cols] for r in range(len(target) - 1)]
        diag = list(snf_int(rows).diagonal)
    else:
        diag = []
    smith_ok = len(diag) == len(target) - 1 and all(x == 1 for x in diag)
    return {
        "source_size": len(A),
        "target_size": len(target),
        "preimages": preimages,
        "preimages_ok": ok,
        "invariant_factors": diag,
        "smith_ok": smith_ok,
        "surjective": ok and smith_ok,
    }


def limit_element(F: CompatibleFamily, sections: Sequence[Measure]) -> dict:
    """Check that one zero-mass measure per level forms a coherent tower."""
    if len(sections) != F.depth:
        raise ValueError("need one section per level")
    for lvl, mu in enumerate(sections, start=1):
        if mu.support != F.at(lvl) or not mu.is_zero_mass:
            return {"coherent": False, "first_incoherent": lvl, "reason": "support or mass"}
    for lvl in range(2, F.depth + 1):
        if pushforward(sections[lvl - 1], lvl - 1) != sections[lvl - 2]:
            return {"coherent": False, "first_incoherent": lvl, "reason": "pushforward"}
    return {"coherent": True, "first_incoherent": None, "reason": None}


# -- units ----------------------------------------------------------------------

@dataclass(frozen=True)
class SymbolicUnit:
    """prod_a l_a^{mu(a)} for a zero-mass measure mu; homogeneous of degree 0."""

    measure: Measure

    def __post_init__(self):
        if not self.measure.is_zero_mass:
            raise ValueError("a symbolic unit needs a zero-mass measure")

    @classmethod
    def ratio(cls, A: Arrangement, a: int, b: int) -> "SymbolicUnit":
        w = [0] * len(A)
        w[a] += 1
        w[b] -= 1
        return cls(Measure(A, tuple(w)))


def unit_valuation(u: SymbolicUnit, z: ProjPoint) -> int:
    """sum_a mu(a) v(l_a(z)) for z in the complement of the open tubes."""
    A = u.measure.support
    if A.flavor != "closed":
        raise ValueError("units are evaluated on closed tubular arrangements")
    n = A.order
    if z.level < n + 1:
        raise PrecisionTooLow(f"point level {z.level} < {n + 1}")
    if not int_contains(A, z):
        raise PointInTube(f"{z} lies in an open tube of the arrangement")
    q = A.p ** (n + 1)
    total = 0
    for h, w in zip(A.members, u.measure.weights):
        if w:
            total += w * vp(linear_form(h.coords, z.coords, q), A.p)
    return int(total)


def kummer_reduce(mu: Measure, m: int) -> tuple:
    """Weights mod m; the modulus must be prime to p for tubular supports."""
    if m < 1:
        raise ValueError("modulus must be positive")
    A = mu.support
    if A.is_tubular and m % A.p == 0:
        raise BadModulus(f"{m} is divisible by p={A.p}")
    return tuple(x % m for x in mu.weights)


def kummer_kernel_certificate(A: Arrangement, m: int) -> dict:
    """Kernel of Z[A]^0 -> (Z/m)^A equals m Z[A]^0, checked two ways.

    The Smith form of the basis matrix has unit invariant factors (the
    lattice is saturated), and a brute scan of coefficient vectors in
    [0, m)^(|A|-1) finds only zero in the kernel.
    """
    if A.is_tubular and m % A.p == 0:
        raise BadModulus(f"{m} is divisible by p={A.p}")
    basis = zero_mass_basis(A)
    k = len(basis)
    out = {"m": m, "rank": k}
    if k == 0:
        out.update({"saturated": True, "scan_ok": True, "image_size": 1, "holds": True})
        return out
    B = [[mu.weights[r] for mu in basis] for r in range(len(A))]
    diag = snf_int(B).diagonal
    saturated = all(x == 1 for x in diag)
    scan_ok = True
    image = set()
    if m**k <= 10**5:
        for x in itertools.product(range(m), repeat=k):
            v = tuple(sum(B[r][j] * x[j] for j in range(k)) % m for r in range(len(A)))
            image.add(v)
            if not any(v) and any(x):
                scan_ok = False
        out["image_size"] = len(image)
        out["image_ok"] = len(image) == m**k and all(sum(v) % m == 0 for v in image)
    out.update({"saturated": saturated, "scan_ok": scan_ok})
    out["holds"] = saturated and scan_ok and out.get("image_ok", True)
    return out


# -- truncated log / exp --------------------------------------------------------

def _div_exact(num: int, den: int, p: int, m: int) -> int:
    """num / den mod p^m when v_p(num) >= v_p(den)."""
    q = p**m
    e = 0
    while den % p == 0:
        den //= p
        e += 1
    if num % p**e:
        raise ArithmeticError("quotient is not integral")
    return (num // p**e) * pow(den, -1, q) % q


def _terms_needed(m: int) -> int:
    # for v(x) >= 2 the k-th term of either series has valuation >= k + 1
    return m + 2


def exp_trunc(x: int, p: int, m: int) -> int:
    q = p**m
    x %= q
    total, fact, power = 1, 1, 1
    for k in range(1, _terms_needed(m)):
        fact *= k
        power *= x
        total += _div_exact(power, fact, p, m)
    return total % q


def log1p_trunc(x: int, p: int, m: int) -> int:
    q = p**m
    x %= q
    total, power = 0, 1
    for k in range(1, _terms_needed(m)):
        power *= x
        term = _div_exact(power, k, p, m)
        total += term if k % 2 else -term
    return total % q


def verify_log_exp(p: int, m: int, v0: int = 2) -> dict:
    """Exhaustive check on p^v0 Z/p^m of valuation preservation and inverse identities."""
    if v0 < 2:
        raise ValueError("v0 must be at least 2")
    q = p**m
    step = p**v0
    failures = []
    count = 0
    for x in range(0, q, step):
        count += 1
        e = exp_trunc(x, p, m)
        lg = log1p_trunc(x, p, m)
        vx = vp(x, p)
        ok = vp((e - 1) % q, p) == vx and vp(lg, p) == vx
        ok = ok and exp_trunc(lg, p, m) == (1 + x) % q
        ok = ok and log1p_trunc((e - 1) % q, p, m) == x
        if not ok:
            failures.append(x)
    return {
        "p": p,
        "m": m,
        "v0": v0,
        "checked": count,
        "failures": failures[:10],
        "pass": not failures,
    }


__all__ = [
    "MonomialBox",
    "restriction_scaling",
    "check_restriction_inclusion",
    "FilteredSystem",
    "power_system",
    "check_filtered_condition",
    "Measure",
    "delta",
    "zero_mass_basis",
    "zero_mass_rank",
    "pushforward",
    "transition_matrix",
    "surjectivity_certificate",
    "limit_element",
    "SymbolicUnit",
    "unit_valuation",
    "kummer_reduce",
    "kummer_kernel_certificate",
    "exp_trunc",
    "log1p_trunc",
    "verify_log_exp",
]
