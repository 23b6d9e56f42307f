"""Volume and lateral surface area of intersecting cylinders.

Exact values for the orthogonal equal-diameter pair come from one-dimensional
quadrature in the depth ratio ``delta = H/D``; closed-form fits give quick
approximations; Sobol quasi-Monte Carlo handles arbitrary finite cylinders.
"""

__version__ = "0.1.0"

from .analytic import (
    ReducedResult,
    approx_area,
    approx_volume,
    cross_section_depth,
    cross_section_width,
    reduced_area,
    reduced_volume,
)
from .geometry import Cylinder, ReducedConfig, build_reduced_pair, orthonormal_basis, point_to_segment_distance
from .lowdisc import SobolSampler, sobol_points
from .qmc import (
    Containment,
    QmcEstimate,
    QmcSpec,
    estimate_intersection_area,
    estimate_intersection_volume,
    estimate_reduced,
)
from .quadrature import QuadratureSpec, integrate

__all__ = [
    "Containment",
    "Cylinder",
    "QmcEstimate",
    "QmcSpec",
    "QuadratureSpec",
    "ReducedConfig",
    "ReducedResult",
    "SobolSampler",
    "approx_area",
    "approx_volume",
    "build_reduced_pair",
    "cross_section_depth",
    "cross_section_width",
    "estimate_intersection_area",
    "estimate_intersection_volume",
    "estimate_reduced",
    "integrate",
    "orthonormal_basis",
    "point_to_segment_distance",
    "reduced_area",
    "reduced_volume",
    "sobol_points",
]
