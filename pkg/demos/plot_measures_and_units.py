"""
Zero-mass measures, towers and units
====================================

"""

from padic_arrangements.arrangements import Arrangement, compatible_family
from padic_arrangements.limits import (
    Measure,
    SymbolicUnit,
    kummer_kernel_certificate,
    kummer_reduce,
    limit_element,
    pushforward,
    surjectivity_certificate,
    unit_valuation,
    zero_mass_basis,
)
from padic_arrangements.projective import canonicalize

p = 5
seed = Arrangement.from_vectors("algebraic", p, None, [(1, 0), (1, p**2), (0, 1)])
F = compatible_family(seed, 3)

# The lattice of zero-mass measures at each level, and the maps between them.
for m, A in enumerate(F.levels, start=1):
    basis = [mu.weights for mu in zero_mass_basis(A)]
    line = f"level {m}: {len(A)} members, basis {basis}"
    if m > 1:
        line += f", onto previous: {surjectivity_certificate(A, m - 1)['surjective']}"
    print(line)

# A tower built by pushing one measure down is coherent.
top = Measure(F.at(3), (1, 1, -2))
tower = [pushforward(top, 1), pushforward(top, 2), top]
print("coherent tower:", limit_element(F, tower))

# Units l_a / l_b and their valuations at points outside the open tubes.
n = 2
A = Arrangement.from_vectors("closed", p, n, [(1, 0), (0, 1)])
a = [h.coords for h in A.members].index((1, 0))
b = 1 - a
u = SymbolicUnit.ratio(A, a, b)
for coords in [(1, 1), (p**n, 1), (1, p)]:
    z = canonicalize(coords, p, n + 1)
    print(coords, "valuation of l_a/l_b:", unit_valuation(u, z))

# Reduction mod m, for m prime to p.
mu = Measure(A, (3, -3))
print("reduced mod 3:", kummer_reduce(mu, 3))
print("kernel is m times the lattice:", kummer_kernel_certificate(F.at(3), 4)["holds"])
