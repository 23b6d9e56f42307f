"""Hit-or-miss quasi-Monte Carlo estimates for the overlap of two finite cylinders.

Volume: Sobol points filling cylinder 1 are tested against cylinder 2 and the
hit fraction is scaled by the volume of cylinder 1. Area: Sobol points on each
lateral surface are tested against the other cylinder, and the two surface
fractions are scaled by the respective lateral areas.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .geometry import Cylinder, ReducedConfig, build_reduced_pair, contains, orthonormal_basis
from .lowdisc import SobolSampler

MIN_LOG2 = 10
MAX_LOG2 = 26

# stream ids mixed into the user seed so each draw gets its own digital shift
_STREAM_INTERIOR = 0
_STREAM_SURFACE_1 = 1
_STREAM_SURFACE_2 = 2


class Containment(str, enum.Enum):
    SEGMENT_CAPSULE = "segment-capsule"
    STRICT_FINITE = "strict-finite"


@dataclass(frozen=True)
class QmcSpec:
    log2_samples: int = 20
    scramble_seed: int | None = None
    containment: Containment = Containment.SEGMENT_CAPSULE

    def __post_init__(self) -> None:
        if not (isinstance(self.log2_samples, int) and MIN_LOG2 <= self.log2_samples <= MAX_LOG2):
            raise ValueError(
                f"log2_samples must be an int in [{MIN_LOG2}, {MAX_LOG2}], got {self.log2_samples!r}"
            )
        object.__setattr__(self, "containment", Containment(self.containment))

    @property
    def n_samples(self) -> int:
        return 1 << self.log2_samples

    def stream_seed(self, stream: int) -> int | None:
        if self.scramble_seed is None:
            return None
        ss = np.random.SeedSequence([int(self.scramble_seed), stream])
        return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class QmcEstimate:
    """``value`` plus the hit fractions it was built from.

    Volume estimates carry one fraction; area estimates carry ``(f1, f2)``.
    """

    value: float
    hit_fractions: tuple[float, ...]
    n_used: int

    @property
    def hit_fraction(self) -> float:
        return self.hit_fractions[0]


def _draw(spec: QmcSpec, dimension: int, stream: int) -> np.ndarray:
    return SobolSampler(dimension, spec.stream_seed(stream)).random_base2(spec.log2_samples)


def _to_world(c: Cylinder, local: np.ndarray) -> np.ndarray:
    # rows of the basis matrix are u, v, d
    basis = np.stack(orthonormal_basis(c.axis))
    return local @ basis + c.a


def map_interior(c: Cylinder, u: np.ndarray) -> np.ndarray:
    """Map unit-cube points (n, 3) uniformly into the solid cylinder ``c``.

    The radius is ``r * sqrt(u0)`` so that points are uniform over the disc.
    """
    rho = c.r * np.sqrt(u[:, 0])
    theta = 2.0 * np.pi * u[:, 1]
    local = np.column_stack([rho * np.cos(theta), rho * np.sin(theta), c.length * u[:, 2]])
    return _to_world(c, local)


def map_surface(c: Cylinder, u: np.ndarray) -> np.ndarray:
    """Map unit-square points (n, 2) uniformly onto the lateral surface of ``c``."""
    theta = 2.0 * np.pi * u[:, 0]
    local = np.column_stack([c.r * np.cos(theta), c.r * np.sin(theta), c.length * u[:, 1]])
    return _to_world(c, local)


def sample_cylinder_interior(c: Cylinder, spec: QmcSpec, stream: int = _STREAM_INTERIOR) -> np.ndarray:
    return map_interior(c, _draw(spec, 3, stream))


def sample_cylinder_surface(c: Cylinder, spec: QmcSpec, stream: int = _STREAM_SURFACE_1) -> np.ndarray:
    return map_surface(c, _draw(spec, 2, stream))


def resolve_threads(threads: int | None = None) -> int:
    """Worker count from the argument, else ``BICYL_THREADS``, else 1."""
    if threads is None:
        env = os.environ.get("BICYL_THREADS", "").strip()
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads!r}")
    return threads


def count_hits(c: Cylinder, points: np.ndarray, containment: Containment, threads: int = 1) -> int:
    """Number of ``points`` inside ``c``; chunked across threads when ``threads > 1``.

    Integer counts are summed, so the result does not depend on the chunking.
    """
    strict = Containment(containment) is Containment.STRICT_FINITE
    if threads <= 1 or len(points) < 2 * threads:
        return int(np.count_nonzero(contains(c, points, strict=strict)))
    chunks = np.array_split(points, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        counts = pool.map(lambda p: int(np.count_nonzero(contains(c, p, strict=strict))), chunks)
        return sum(counts)


def estimate_intersection_volume(
    c1: Cylinder, c2: Cylinder, spec: QmcSpec | None = None, threads: int | None = None
) -> QmcEstimate:
    spec = spec or QmcSpec()
    points = sample_cylinder_interior(c1, spec)
    hits = count_hits(c2, points, spec.containment, resolve_threads(threads))
    frac = hits / len(points)
    return QmcEstimate(value=frac * c1.volume, hit_fractions=(frac,), n_used=len(points))


def estimate_intersection_area(
    c1: Cylinder, c2: Cylinder, spec: QmcSpec | None = None, threads: int | None = None
) -> QmcEstimate:
    spec = spec or QmcSpec()
    nthreads = resolve_threads(threads)
    p1 = sample_cylinder_surface(c1, spec, _STREAM_SURFACE_1)
    p2 = sample_cylinder_surface(c2, spec, _STREAM_SURFACE_2)
    f1 = count_hits(c2, p1, spec.containment, nthreads) / len(p1)
    f2 = count_hits(c1, p2, spec.containment, nthreads) / len(p2)
    value = f1 * c1.lateral_area + f2 * c2.lateral_area
    return QmcEstimate(value=value, hit_fractions=(f1, f2), n_used=len(p1) + len(p2))


def estimate_reduced(
    delta: float,
    diameter: float = 1.0,
    spec: QmcSpec | None = None,
    threads: int | None = None,
    length_factor: float = 4.0,
) -> tuple[float, float]:
    """QMC estimates of ``(V/D**3, A/D**2)`` for the orthogonal pair at depth ``delta``."""
    c1, c2 = build_reduced_pair(ReducedConfig(delta, diameter, length_factor))
    vol = estimate_intersection_volume(c1, c2, spec, threads)
    area = estimate_intersection_area(c1, c2, spec, threads)
    return vol.value / diameter**3, area.value / diameter**2
