"""Small shared helpers for scalar/array polymorphic evaluation."""

from __future__ import annotations

import numpy as np


def coerce_points(z):
    """Return (complex ndarray view of z, flag telling whether z was scalar)."""
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0 and not isinstance(z, np.ndarray)
    return arr, scalar


def uncoerce(out, scalar):
    return complex(out) if scalar else out
