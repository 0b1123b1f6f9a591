"""Exception types shared across the package."""


class PoleProximityError(ValueError):
    """Evaluation point is numerically on top of a pole 1/conj(zero)."""


class ZeroProximityError(ValueError):
    """Evaluation point coincides with a zero where the formula degenerates."""


class NonConvergenceError(RuntimeError):
    """Root finding failed to reach the residual tolerance within budget."""


class CircleStraddleError(RuntimeError):
    """A computed critical point sits on the unit circle, which is
    analytically impossible and signals numerical breakdown."""


class ContourThroughFiberError(ValueError):
    """The integration contour passes too close to a fiber point."""


class ExtractionAmbiguityError(RuntimeError):
    """The extra critical point of a two-factor family cannot be told
    apart from the base points at working precision."""


class BoundaryProximityError(ValueError):
    """The image modulus is too close to 1 for the quotient to be formed."""


class InvalidAnnulusError(ValueError):
    """The annulus parameter M does not separate the zeros from the circle."""
