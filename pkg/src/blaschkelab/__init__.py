"""Numerical toolkit for finite Blaschke products on the unit disc."""

from .blaschke import CriticalSet, FiniteBlaschkeProduct
from .errors import (
    BoundaryProximityError,
    CircleStraddleError,
    ContourThroughFiberError,
    ExtractionAmbiguityError,
    InvalidAnnulusError,
    NonConvergenceError,
    PoleProximityError,
    ZeroProximityError,
)
from .hyperbolic import (
    Geodesic,
    HyperbolicHull,
    collinearity_residual,
    euclidean_convex_hull,
    geodesic_point,
    hull_contains,
    hyperbolic_convex_hull,
    klein_to_poincare,
    poincare_to_klein,
    pseudo_hyperbolic_distance,
)
from .lab import (
    ConvergenceRecord,
    CounterexampleResult,
    SeparationEstimate,
    SequenceSpec,
    ValenceReport,
    convergence_experiment,
    counterexample_run,
    default_valence_radius,
    density_family,
    density_family3,
    derivative_at_zero_identity,
    fatou_limit_scan,
    fatou_quotient,
    random_product,
    renormalized_conjugate,
    rotation_constant,
    separation_estimate,
    valence,
)
from .moebius import (
    DiscAutomorphism,
    automorphism_compose,
    automorphism_eval,
    automorphism_inverse,
    automorphism_limit_bound,
)
from .polyroots import PolishResult, Polynomial, RootSet, find_roots, polish_root

__version__ = "0.1.0"

__all__ = [
    "BoundaryProximityError",
    "CircleStraddleError",
    "ContourThroughFiberError",
    "ConvergenceRecord",
    "CounterexampleResult",
    "CriticalSet",
    "DiscAutomorphism",
    "ExtractionAmbiguityError",
    "FiniteBlaschkeProduct",
    "Geodesic",
    "HyperbolicHull",
    "InvalidAnnulusError",
    "NonConvergenceError",
    "PoleProximityError",
    "PolishResult",
    "Polynomial",
    "RootSet",
    "SeparationEstimate",
    "SequenceSpec",
    "ValenceReport",
    "ZeroProximityError",
    "automorphism_compose",
    "automorphism_eval",
    "automorphism_inverse",
    "automorphism_limit_bound",
    "collinearity_residual",
    "convergence_experiment",
    "counterexample_run",
    "default_valence_radius",
    "density_family",
    "density_family3",
    "derivative_at_zero_identity",
    "euclidean_convex_hull",
    "fatou_limit_scan",
    "fatou_quotient",
    "find_roots",
    "geodesic_point",
    "hull_contains",
    "hyperbolic_convex_hull",
    "klein_to_poincare",
    "poincare_to_klein",
    "polish_root",
    "pseudo_hyperbolic_distance",
    "random_product",
    "renormalized_conjugate",
    "rotation_constant",
    "separation_estimate",
    "valence",
]
