#!/usr/bin/env python3
"""Conjugating a Blaschke product toward the boundary yields a rotation.

Take automorphisms T_{a_k, gamma_k} whose parameters drift so that
a_k * gamma_k tends to a boundary point gamma0.  Sandwiching B as

    f_k = T_{B(a_k gamma_k), conj(gamma_k)} o B o T_{a_k, gamma_k}

produces order-preserving self-maps fixing the origin, and f_k converges
uniformly on compact subsets of the disc to the rotation by
B'(gamma0) / |B'(gamma0)|.  The table below shows the sup-norm distance to
that rotation shrinking geometrically for a radial and a spiral parameter
drift.
"""

import numpy as np

from blaschkelab import (
    FiniteBlaschkeProduct,
    SequenceSpec,
    convergence_experiment,
    rotation_constant,
)

B = FiniteBlaschkeProduct(np.exp(0.35j), (0.45, -0.3 + 0.25j, 0.1 - 0.4j))
gamma0 = np.exp(0.9j)
rot = rotation_constant(B, gamma0)
print(f"order {B.order} product, boundary target gamma0 = {gamma0:.6f}")
print(f"limiting rotation constant B'(gamma0)/|B'(gamma0)| = {rot:.12f}\n")

for mode in ("radial", "spiral"):
    spec = SequenceSpec(gamma0, mode, rate=0.4, count=12)
    records = convergence_experiment(B, spec, r=0.9)
    print(f"{mode} drift, sup |f_k(z) - rot*z| on |z| <= 0.9:")
    for rec in records:
        print(f"  k={rec.k:2d}  1-|a_k|={1 - abs(rec.a):.3e}  dev={rec.sup_deviation:.3e}")
    print()

print("each step multiplies the deviation by roughly the drift rate;")
print("the recorded rotation constant is the same in every row:",
      f"{records[-1].rotation_constant:.12f}")
