"""Vectors, finite cylinders and the point-to-axis distance used for containment."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Directions closer than this to +Z or -Z build ``u`` from the X axis instead of ``d x Z``.
AXIS_ALIGN_TOL = 1e-9

_EX = np.array([1.0, 0.0, 0.0])
_EZ = np.array([0.0, 0.0, 1.0])


class InvalidAxisError(ValueError):
    """Raised for zero-length cylinder axes or zero direction vectors."""


def as_vec3(v) -> np.ndarray:
    """Coerce ``v`` into a finite float64 array of shape (3,)."""
    arr = np.asarray(v, dtype=np.float64)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"vector components must be finite, got {arr.tolist()}")
    return arr


@dataclass(frozen=True, eq=False)
class Cylinder:
    """Finite cylinder given by its axis segment ``a -> b`` and radius ``r``."""

    a: np.ndarray
    b: np.ndarray
    r: float

    def __post_init__(self) -> None:
        a = as_vec3(self.a)
        b = as_vec3(self.b)
        r = float(self.r)
        if not (np.isfinite(r) and r > 0):
            raise ValueError(f"radius must be positive and finite, got {self.r!r}")
        if not np.linalg.norm(b - a) > 0:
            raise InvalidAxisError("cylinder axis endpoints coincide")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "r", r)

    @property
    def axis(self) -> np.ndarray:
        return self.b - self.a

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.b - self.a))

    @property
    def volume(self) -> float:
        return float(np.pi * self.r**2 * self.length)

    @property
    def lateral_area(self) -> float:
        return float(2.0 * np.pi * self.r * self.length)

    def scaled(self, s: float) -> Cylinder:
        return Cylinder(self.a * s, self.b * s, self.r * s)

    def transformed(self, rotation, translation=(0.0, 0.0, 0.0)) -> Cylinder:
        """Apply ``x -> R x + t`` to both endpoints."""
        rot = np.asarray(rotation, dtype=np.float64)
        t = as_vec3(translation)
        return Cylinder(rot @ self.a + t, rot @ self.b + t, self.r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cylinder):
            return NotImplemented
        return (
            np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
            and self.r == other.r
        )

    def __repr__(self) -> str:
        return f"Cylinder(a={self.a.tolist()}, b={self.b.tolist()}, r={self.r})"


@dataclass(frozen=True)
class ReducedConfig:
    """Orthogonal, equal-diameter pair parameterised by the depth ratio ``delta = H/D``.

    ``length_factor`` is the cylinder length in units of ``diameter``; at 2 or
    more the overlap region stays clear of the segment ends.
    """

    delta: float
    diameter: float = 1.0
    length_factor: float = 4.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta must lie in [0, 1], got {self.delta!r}")
        if not (np.isfinite(self.diameter) and self.diameter > 0):
            raise ValueError(f"diameter must be positive, got {self.diameter!r}")
        if not self.length_factor >= 2.0:
            raise ValueError(f"length_factor must be >= 2, got {self.length_factor!r}")

    @property
    def radius(self) -> float:
        return 0.5 * self.diameter

    @property
    def height(self) -> float:
        return self.delta * self.diameter


def _segment_terms(p, a, b):
    p = np.asarray(p, dtype=np.float64)
    a = as_vec3(a)
    b = as_vec3(b)
    ab = b - a
    ab_dot = float(np.dot(ab, ab))
    if not ab_dot > 0:
        raise InvalidAxisError("segment endpoints coincide")
    ap = p - a
    t = (ap @ ab) / ab_dot
    return p, a, ab, t


def point_to_segment_distance(p, a, b):
    """Distance from ``p`` to the closest point of segment ``ab``.

    ``p`` may be a single point of shape (3,) or a batch of shape (n, 3); the
    result is a float or an array of shape (n,) accordingly.
    """
    p, a, ab, t = _segment_terms(p, a, b)
    t = np.clip(t, 0.0, 1.0)
    closest = a + np.multiply.outer(t, ab)
    d = np.linalg.norm(p - closest, axis=-1)
    return float(d) if np.ndim(d) == 0 else d


def segment_parameter(p, a, b):
    """Unclamped projection parameter of ``p`` onto the line through ``a`` and ``b``."""
    return _segment_terms(p, a, b)[3]


def contains(c: Cylinder, points: np.ndarray, strict: bool = False) -> np.ndarray:
    """Boolean mask of ``points`` (n, 3) lying inside ``c``.

    The default test is ``distance to the axis segment <= r``, which is membership
    in the capsule around the axis. ``strict=True`` additionally requires the
    projection to fall between the end planes, i.e. the flat-capped cylinder.
    """
    p, a, ab, t = _segment_terms(points, c.a, c.b)
    tc = np.clip(t, 0.0, 1.0)
    d = np.linalg.norm(p - (a + np.multiply.outer(tc, ab)), axis=-1)
    inside = d <= c.r
    if strict:
        inside &= (t >= 0.0) & (t <= 1.0)
    return inside


def orthonormal_basis(direction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right-handed unit basis ``(u, v, d)`` with ``d`` along ``direction``.

    Near +-Z the first vector is taken from X; otherwise ``u = d x Z`` normalised,
    and always ``v = d x u``.
    """
    direction = as_vec3(direction)
    norm = np.linalg.norm(direction)
    if not norm > 0:
        raise InvalidAxisError("direction vector has zero length")
    d = direction / norm
    if np.allclose(d, _EZ, rtol=0.0, atol=AXIS_ALIGN_TOL) or np.allclose(
        d, -_EZ, rtol=0.0, atol=AXIS_ALIGN_TOL
    ):
        # project X off d; exactly (1, 0, 0) when d is exactly +-Z
        u = _EX - d[0] * d
        u /= np.linalg.norm(u)
    else:
        u = np.cross(d, _EZ)
        u /= np.linalg.norm(u)
    v = np.cross(d, u)
    return u, v, d


def build_reduced_pair(cfg: ReducedConfig) -> tuple[Cylinder, Cylinder]:
    """World-space cylinders realising ``cfg``.

    The bottom cylinder runs along X with its axis at ``y = H/2 - R``, the top one
    along Z at ``y = R - H/2``. The overlap then spans ``y`` in ``[-H/2, H/2]``,
    centred on the origin.
    """
    r = cfg.radius
    half_len = 0.5 * cfg.length_factor * cfg.diameter
    y_bottom = 0.5 * cfg.height - r
    y_top = r - 0.5 * cfg.height
    bottom = Cylinder((-half_len, y_bottom, 0.0), (half_len, y_bottom, 0.0), r)
    top = Cylinder((0.0, y_top, -half_len), (0.0, y_top, half_len), r)
    return bottom, top
