"""
Rank and fibration shape of a tubular arrangement
=================================================

"""

from padic_arrangements.arrangements import (
    Arrangement,
    classify_uni,
    compatible_family,
    mv_degree_bounds,
    rank,
    simple_elements,
)

p, n, k = 3, 4, 2

# Two hyperplanes whose duals agree modulo p^k.
A = Arrangement.from_vectors("closed", p, n, [(1, 0, 0), (1, p**k, 0)])
shape = classify_uni(A)
print("rank:", rank(A))
print("alphas:", shape.alphas, "-> beta:", shape.beta, "t =", shape.t)

# The coordinate hyperplanes give the full-width fibration.
B = Arrangement.from_vectors("closed", p, n, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
print("coordinate planes:", classify_uni(B).beta)

# A single tube is a ball.
print("one member:", classify_uni(Arrangement.from_vectors("closed", p, n, [(1, 1, 0)])).kind)

# Which sub-arrangements are "simple", i.e. have as many members as their rank?
C = Arrangement.from_vectors("closed", p, 2, [(1, 0, 0), (1, p, 0), (1, 2 * p, 0)])
print("simple pieces:", [len(S) for S in simple_elements(C)], "rank of all three:", rank(C))

# Per-subset ranks and the degree window where cohomology can live.
for row in mv_degree_bounds(C):
    print(row["subset"], "rank", row["rank"], "interval", row["interval"])

# An algebraic arrangement seen through its finite levels: classes split as n grows.
seed = Arrangement.from_vectors("algebraic", 2, None, [(1, 0), (1, 4)])
F = compatible_family(seed, 3)
print("members per level:", [len(L) for L in F.levels], "compatible:", F.check())
