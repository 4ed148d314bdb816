"""
Twisted Cech pieces and the torus complex
=========================================

"""

import itertools

from padic_arrangements.cech import (
    projective_twist_rank,
    torus_cohomology,
    torus_complex,
    twisted_complex,
    twisted_concentration,
    xdt_graded_ht,
)
from padic_arrangements.complexes import cohomology_dict

# One multidegree at a time: which simplices survive, and where the cohomology sits.
for alpha in [(2, 0), (-1, -3), (-1, 2, 0)]:
    t = len(alpha) - 1
    C = twisted_complex(t, alpha)
    print(alpha, "terms", C.ranks, "->", twisted_concentration(t, alpha))

# Summing the degree-0 pieces of total degree k recovers the monomial count.
t, k = 2, 3
total = sum(
    1 for a in itertools.product(range(0, k + 1), repeat=t + 1)
    if sum(a) == k and twisted_concentration(t, a) == "H0"
)
print(f"H^0(P^{t}, O({k})) rank: {total} by pieces, {projective_twist_rank(t, k, 0)} closed form")

# Graded top cohomology of the fibration: a truncated table, never a single number.
table = xdt_graded_ht(3, 1, 0, 6)
for j, r in table.rows:
    print(f"  degree {j}: rank {r}")

# The torus complex has H^1 = Z and nothing else.
for t in range(1, 5):
    print("t =", t, "term ranks", torus_complex(t).ranks,
          "H =", [(r.free, list(r.torsion)) for r in torus_cohomology(t)])
print(cohomology_dict(torus_complex(2)))
