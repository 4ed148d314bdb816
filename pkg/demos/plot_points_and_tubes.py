"""
Points, hyperplanes and tubes over Z/p^n
========================================

"""

import random

from padic_arrangements import projective as pg

# A point of projective space at level n is a unimodular vector up to units.
# The stored form scales the first unit coordinate to 1.
p, n = 2, 2
z = pg.canonicalize((3, 2), p, n)
print("canonical form of (3, 2) mod 4:", z.coords)

# Counting points: the closed formula agrees with the enumeration.
for d in (1, 2):
    pts = pg.enumerate_points(d, p, n)
    print(f"P^{d}(Z/{p**n}) has {len(pts)} points, formula says {pg.point_count(d, p, n)}")

# Reducing a point to a lower level.
w = pg.canonicalize((1, 4), 3, 2)
print("(1, 4) at level 2 over Z/9 projects to", pg.project(w, 1).coords)

# Tubes around the hyperplane with dual (1, 0).
H = pg.Hyperplane(pg.canonicalize((1, 0), p, n + 1))
for coords in [(p**n, 1), (1, 0), (p, 1)]:
    x = pg.canonicalize(coords, p, n + 1)
    print(coords, "closed tube:", pg.tube_relation(H, x, n, "closed"),
          "open tube:", pg.tube_relation(H, x, n, "open"))

# A random change of coordinates moves tubes to tubes.
rng = random.Random(0)
g = pg.random_gl(1, p, n + 1, rng)
x = pg.random_point(1, p, n + 1, rng)
print("membership preserved under g:",
      pg.tube_relation(H, x, n) == pg.tube_relation(pg.gl_act(g, H), pg.gl_act_point(g, x), n))
