#!/usr/bin/env python3
"""Why the conj(gamma_k) renormalization is not optional.

For B(z) = z^2 take gamma_k = (-1)^k and a_k = (1 - rate^k) gamma_k, so the
products a_k gamma_k still increase to 1 although gamma_k itself keeps
flipping sign.  The renormalized conjugates converge to the identity
rotation z -> z, but dropping the conj(gamma_k) factor splits the sequence:
even iterates approach z while odd iterates approach -z, so the
un-renormalized sequence has no limit at all.
"""

import numpy as np

from blaschkelab import (
    FiniteBlaschkeProduct,
    SequenceSpec,
    convergence_experiment,
    counterexample_run,
)
from blaschkelab.lab import _nested_conjugate_values

COUNT = 14

res = counterexample_run(COUNT)
print("un-renormalized conjugates of B(z) = z^2 with sign-flipping gamma_k:")
print(f"  last even iterate vs  z : sup deviation {res.even_limit_deviation:.3e}")
print(f"  last odd  iterate vs -z : sup deviation {res.odd_limit_deviation:.3e}")
print(f"  distance between consecutive iterates on |z| <= 0.75: "
      f"{res.unrenormalized_oscillation:.4f}  (stuck near 1.5, never converging)")

renorm = convergence_experiment(
    FiniteBlaschkeProduct.monomial(2),
    SequenceSpec(1.0, "alternating", 0.35, COUNT),
    r=0.5,
    grid=16,
)
print(f"\nrenormalized sequence deviation from z at k={COUNT}: "
      f"{renorm[-1].sup_deviation:.3e}")

print("\nsample values at z = 0.4 (watch the sign of the un-renormalized column):")
B = FiniteBlaschkeProduct.monomial(2)
spec = SequenceSpec(1.0, "alternating", 0.35, COUNT)
z = np.array([0.4 + 0j])
for k, (a, g) in enumerate(spec.terms(), start=1):
    raw = _nested_conjugate_values(B, a, g, z, renormalize=False)[0]
    fixed = _nested_conjugate_values(B, a, g, z, renormalize=True)[0]
    print(f"  k={k:2d}  un-renormalized {raw.real:+.6f}  renormalized {fixed.real:+.6f}")
