#!/usr/bin/env python3
"""Where do the critical points of a finite Blaschke product live?

The classical Gauss-Lucas picture for polynomials says critical points stay
in the Euclidean convex hull of the roots.  For Blaschke products the right
geometry is hyperbolic: every interior zero of B' lies in the hyperbolic
convex hull of the zeros of B, computed here in the Klein model where
hyperbolic convexity is ordinary convexity.

The script draws a random product, verifies containment for every interior
critical point, shows that the exterior critical points are the circle
reflections of the interior ones, and writes an SVG picture of the disc.
"""

import numpy as np

from blaschkelab import (
    hull_contains,
    hyperbolic_convex_hull,
    random_product,
)
from blaschkelab.cli import render_product_svg

rng = np.random.default_rng(np.random.PCG64(2024))
B = random_product(rng, order=6, zero_radius=0.85)

print("product of order", B.order)
for z in B.zeros:
    print(f"  zero at {z:.6f}  (|z| = {abs(z):.4f})")

crit = B.critical_points()
hull = hyperbolic_convex_hull(B.zeros)
print(f"\nhyperbolic hull of the zeros: {hull.degenerate_kind} "
      f"with {len(hull.poincare_vertices)} vertices")

print("\ninterior critical points (must all sit in the hull):")
for p, mult in crit.interior:
    inside = hull_contains(hull, p, 1e-8)
    print(f"  {p:.6f}  multiplicity {mult}  in_hull={inside}")
    assert inside

print("\nexterior critical points pair with interior ones under z -> 1/conj(z):")
interior_pts = [p for p, m in crit.interior for _ in range(m)]
for e, mult in crit.exterior:
    partner = min(interior_pts, key=lambda p: abs(1 / np.conj(e) - p))
    print(f"  {e:.6f}  reflects onto  {partner:.6f}  "
          f"(gap {abs(1 / np.conj(e) - partner):.2e})")

with open("critical_points_demo.svg", "w", encoding="utf-8") as fh:
    fh.write(render_product_svg(B))
print("\nwrote critical_points_demo.svg (zeros, crosses, hull boundary)")
