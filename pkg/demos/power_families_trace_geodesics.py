#!/usr/bin/env python3
"""Critical points of power families sweep out geodesics and hulls.

For B = (disc factor at a)^m * (disc factor at b)^n the critical points are
a (m-1 times), b (n-1 times), and one extra point c.  Varying the exponents
moves c along the hyperbolic line through a and b, densely.  With three base
points the extra critical points fill out the hyperbolic convex hull.
"""

import numpy as np

from blaschkelab import (
    collinearity_residual,
    density_family,
    density_family3,
    hull_contains,
    hyperbolic_convex_hull,
    pseudo_hyperbolic_distance,
)

a, b = 0.4j, 0.6
print(f"two-factor family with base points a = {a}, b = {b}")
pairs = [(m, n) for m in range(1, 7) for n in range(1, 7)]
out = density_family(a, b, pairs)
print(f"extra critical point c for {len(pairs)} exponent pairs "
      f"(collinearity residual of a, b, c should vanish):")
for (m, n), (c, res) in list(zip(pairs, out))[:8]:
    print(f"  (m, n) = ({m}, {n})  c = {c:.6f}  residual = {res:.2e}")
print("  ...")
worst = max(res for _, res in out)
print(f"worst residual over the sweep: {worst:.2e}")

# c moves monotonically toward a as m/n grows
positions = {
    (m, n): pseudo_hyperbolic_distance(c, a)
    for (m, n), (c, _) in zip(pairs, out)
}
print(f"\nhyperbolic distance from c to a: (6,1) -> {positions[(6, 1)]:.4f}, "
      f"(1, 1) -> {positions[(1, 1)]:.4f}, (1, 6) -> {positions[(1, 6)]:.4f}")

pts = (0.5, -0.5, 0.5j)
hull = hyperbolic_convex_hull(list(pts))
print(f"\nthree-factor family with base points {pts}:")
seen = []
for m in range(1, 5):
    for n in range(1, 5):
        for p in range(1, 5):
            for cp, inside in density_family3(*pts, (m, n, p)):
                assert inside
                if all(abs(cp - q) > 1e-6 for q in seen):
                    seen.append(cp)
print(f"  {len(seen)} distinct extra critical points over exponents <= 4,")
print("  every one inside the hyperbolic hull of the base triple")
