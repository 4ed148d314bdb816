"""Arithmetic in Z/p^n and normal forms over Z and over Z/p^n.

Matrices are plain lists (or tuples) of rows of Python ints, so entries
never overflow.  All public functions return fresh objects and never
mutate their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

INF = math.inf

Matrix = Sequence[Sequence[int]]


def vp(x: int, p: int) -> float:
    """p-adic valuation of an integer, ``inf`` for zero."""
    if x == 0:
        return INF
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def valuation_mod(x: int, p: int, n: int) -> float:
    """Valuation of the class of ``x`` in Z/p^n (``inf`` for the zero class)."""
    return vp(x % p**n, p)


@dataclass(frozen=True)
class TruncElem:
    """Element of Z/p^n, stored as its canonical residue in [0, p^n)."""

    value: int
    n: int
    p: int

    def __post_init__(self):
        if self.p < 2 or self.n < 1:
            raise ValueError(f"bad ring Z/{self.p}^{self.n}")
        object.__setattr__(self, "value", self.value % self.p**self.n)

    @property
    def modulus(self) -> int:
        return self.p**self.n

    def _coerce(self, other) -> int:
        if isinstance(other, TruncElem):
            if (other.p, other.n) != (self.p, self.n):
                raise ValueError("mixing elements of different rings")
            return other.value
        return int(other)

    def __add__(self, other):
        return TruncElem(self.value + self._coerce(other), self.n, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return TruncElem(self.value - self._coerce(other), self.n, self.p)

    def __rsub__(self, other):
        return TruncElem(self._coerce(other) - self.value, self.n, self.p)

    def __mul__(self, other):
        return TruncElem(self.value * self._coerce(other), self.n, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return TruncElem(-self.value, self.n, self.p)

    def valuation(self) -> float:
        return vp(self.value, self.p)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> "TruncElem":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.value} is not a unit mod {self.p}^{self.n}")
        return TruncElem(pow(self.value, -1, self.modulus), self.n, self.p)

    def reduce(self, m: int) -> "TruncElem":
        """Image in Z/p^m for m <= n."""
        if m > self.n:
            raise ValueError("cannot lift to a higher level")
        return TruncElem(self.value, m, self.p)

    def __int__(self):
        return self.value


def valuation(x: TruncElem) -> float:
    """Largest e with p^e dividing x, ``inf`` when x = 0."""
    return x.valuation()


# ---------------------------------------------------------------------------
# small matrix helpers


def identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def shape(M: Matrix) -> tuple[int, int]:
    rows = len(M)
    return rows, (len(M[0]) if rows else 0)


def matmul(A: Matrix, B: Matrix, modulus: int | None = None) -> list[list[int]]:
    rows, inner = shape(A)
    inner_b, cols = shape(B)
    if inner != inner_b and rows and inner_b:
        raise ValueError(f"shape mismatch {shape(A)} x {shape(B)}")
    if rows and not inner:
        # (r x 0) @ (0 x c): cols cannot be read off an empty B
        return [[] for _ in range(rows)]
    out = []
    for i in range(rows):
        Ai = A[i]
        row = []
        for j in range(cols):
            s = 0
            for k in range(inner):
                a = Ai[k]
                if a:
                    s += a * B[k][j]
            row.append(s % modulus if modulus else s)
        out.append(row)
    return out


def transpose(M: Matrix) -> list[list[int]]:
    rows, cols = shape(M)
    return [[M[i][j] for i in range(rows)] for j in range(cols)]


def is_zero(M: Matrix, modulus: int | None = None) -> bool:
    for row in M:
        for x in row:
            if (x % modulus if modulus else x) != 0:
                return False
    return True


def det_int(M: Matrix) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    k = len(M)
    if k == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for t in range(k - 1):
        if A[t][t] == 0:
            swap = next((i for i in range(t + 1, k) if A[i][t] != 0), None)
            if swap is None:
                return 0
            A[t], A[swap] = A[swap], A[t]
            sign = -sign
        for i in range(t + 1, k):
            for j in range(t + 1, k):
                A[i][j] = (A[i][j] * A[t][t] - A[i][t] * A[t][j]) // prev
        prev = A[t][t]
    return sign * A[k - 1][k - 1]


def inverse_mod(M: Matrix, p: int, n: int) -> list[list[int]]:
    """Inverse of a square matrix over Z/p^n; raises ZeroDivisionError."""
    q = p**n
    k = len(M)
    A = [[x % q for x in row] + [int(i == j) for j in range(k)] for i, row in enumerate(M)]
    for t in range(k):
        piv = next((i for i in range(t, k) if A[i][t] % p), None)
        if piv is None:
            raise ZeroDivisionError("matrix is not invertible over Z/p^n")
        A[t], A[piv] = A[piv], A[t]
        inv = pow(A[t][t], -1, q)
        A[t] = [x * inv % q for x in A[t]]
        for i in range(k):
            if i != t and A[i][t]:
                f = A[i][t]
                A[i] = [(x - f * y) % q for x, y in zip(A[i], A[t])]
    return [row[k:] for row in A]


# ---------------------------------------------------------------------------
# Smith form over the chain ring Z/p^n


@dataclass(frozen=True)
class LocalSNF:
    """Smith form ``left @ M @ right = diag(p^alpha_i)`` over Z/p^n.

    ``alphas`` has one entry per diagonal position (min of the matrix
    dimensions) and is nondecreasing, with ``inf`` standing for a zero
    diagonal entry.  The inverses of both transforms are kept because
    the new basis ``right_inv`` is what callers usually want.
    """

    alphas: tuple
    left: tuple
    right: tuple
    left_inv: tuple
    right_inv: tuple
    p: int
    n: int

    @property
    def diagonal(self) -> tuple[int, ...]:
        q = self.p**self.n
        return tuple(0 if a == INF else self.p**a % q for a in self.alphas)

    def count_below(self, bound: int) -> int:
        return sum(1 for a in self.alphas if a < bound)


def _freeze(M) -> tuple:
    return tuple(tuple(r) for r in M)


def snf_local(M: Matrix, p: int, n: int) -> LocalSNF:
    """Smith form over Z/p^n with tracked unit-determinant transforms.

    Pivot rule: smallest valuation in the remaining block, ties broken by
    lowest (row, column); the pivot is rescaled to an exact power of p.
    """
    q = p**n
    A = [[x % q for x in row] for row in M]
    r, c = shape(A)
    U, Uinv = identity(r), identity(r)
    V, Vinv = identity(c), identity(c)
    alphas = []
    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = vp(A[i][j], p)
                if v != INF and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            alphas.extend([INF] * (min(r, c) - t))
            break
        v, i, j = best
        if i != t:
            A[t], A[i] = A[i], A[t]
            U[t], U[i] = U[i], U[t]
            for row in Uinv:
                row[t], row[i] = row[i], row[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
            for row in V:
                row[t], row[j] = row[j], row[t]
            Vinv[t], Vinv[j] = Vinv[j], Vinv[t]
        pv = p**v
        unit = A[t][t] // pv
        uinv = pow(unit, -1, q)
        A[t] = [x * uinv % q for x in A[t]]
        U[t] = [x * uinv % q for x in U[t]]
        for row in Uinv:
            row[t] = row[t] * unit % q
        for i in range(t + 1, r):
            if A[i][t]:
                f = A[i][t] // pv
                A[i] = [(x - f * y) % q for x, y in zip(A[i], A[t])]
                U[i] = [(x - f * y) % q for x, y in zip(U[i], U[t])]
                # inverse op: add f * column i to column t
                for row in Uinv:
                    row[t] = (row[t] + f * row[i]) % q
        for j in range(t + 1, c):
            if A[t][j]:
                f = A[t][j] // pv
                for row in A:
                    row[j] = (row[j] - f * row[t]) % q
                for row in V:
                    row[j] = (row[j] - f * row[t]) % q
                Vinv[t] = [(x + f * y) % q for x, y in zip(Vinv[t], Vinv[j])]
        alphas.append(v)
    return LocalSNF(tuple(alphas), _freeze(U), _freeze(V), _freeze(Uinv), _freeze(Vinv), p, n)


def rank_local(M: Matrix, p: int, n: int) -> int:
    """Number of elementary divisors p^alpha with alpha < n."""
    if not M:
        return 0
    return snf_local(M, p, n).count_below(n)


# ---------------------------------------------------------------------------
# Smith form over Z


@dataclass(frozen=True)
class IntSNF:
    """``left @ M @ right = diag(diagonal)`` with d_1 | d_2 | ... over Z."""

    diagonal: tuple
    left: tuple
    right: tuple

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def snf_int(M: Matrix) -> IntSNF:
    A = [list(row) for row in M]
    r, c = shape(A)
    U = identity(r)
    V = identity(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M_ in (A, V):
            for row in M_:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for M_ in (A, V):
            for row in M_:
                row[dst] += f * row[src]

    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if A[i][j] and (best is None or abs(A[i][j]) < best[0]):
                    best = (abs(A[i][j]), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                # a nonzero remainder is smaller than the pivot: move it there
                best = None
                for i in range(t, r):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, None)
                for j in range(t, c):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), None, j)
                if best[1] is not None:
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[2])
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    diag = tuple(A[i][i] for i in range(min(r, c)))
    return IntSNF(diag, _freeze(U), _freeze(V))


def rank_int(M: Matrix) -> int:
    if not M or not M[0]:
        return 0
    return snf_int(M).rank


def kernel_basis(M: Matrix, ncols: int | None = None) -> list[list[int]]:
    """Basis (as column vectors, returned as rows) of the integer kernel of M."""
    rows, cols = shape(M)
    if ncols is not None:
        cols = ncols
    if rows == 0:
        return identity(cols)
    snf = snf_int(M)
    rk = snf.rank
    Vt = transpose(snf.right)
    return [list(Vt[j]) for j in range(rk, cols)]


def solve_int(gens: Sequence[Sequence[int]], target: Sequence[int]) -> list[int] | None:
    """Integer coefficients x with sum x_k * gens[k] == target, or None."""
    dim = len(target)
    if not gens:
        return [] if all(v == 0 for v in target) else None
    G = transpose(gens)  # dim x k, generators as columns
    snf = snf_int(G)
    y = [sum(u * t for u, t in zip(row, target)) for row in snf.left]
    z = []
    for i, d in enumerate(snf.diagonal):
        if d == 0:
            if y[i] != 0:
                return None
            z.append(0)
        else:
            if y[i] % d:
                return None
            z.append(y[i] // d)
    if any(y[i] for i in range(len(snf.diagonal), dim)):
        return None
    k = len(gens)
    z.extend([0] * (k - len(z)))
    return [sum(v * w for v, w in zip(row, z)) for row in snf.right]


def minors_gcd_divisors(M: Matrix) -> list[int]:
    """Invariant factors from gcds of k x k minors (slow reference oracle)."""
    from itertools import combinations

    r, c = shape(M)
    deltas = [1]
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = math.gcd(g, det_int([[M[i][j] for j in cols] for i in rows]))
        deltas.append(g)
    out = []
    for k in range(1, len(deltas)):
        out.append(0 if deltas[k] == 0 else deltas[k] // deltas[k - 1])
    return out
