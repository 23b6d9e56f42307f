"""Reduced intersection volume and surface area of two orthogonal equal cylinders.

All quantities are dimensionless: lengths are divided by the diameter ``D``,
so the volume is reported as ``V / D**3`` and the lateral area as ``A / D**2``.
The only parameter is the depth ratio ``delta = H / D`` in ``[0, 1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import QuadratureSpec, integrate

STEINMETZ_VOLUME = 2.0 / 3.0
STEINMETZ_AREA = 4.0

RADICAND_CLAMP = 1e-14
ARCCOS_CLAMP = 1e-12


class DomainError(ValueError):
    """Argument outside the domain of a reduced-geometry function."""


@dataclass(frozen=True)
class ReducedResult:
    delta: float
    value: float
    err_estimate: float = 0.0


@dataclass(frozen=True)
class VolumeCoefficients:
    q1: float
    q2: float

    @classmethod
    def from_delta(cls, delta: float) -> VolumeCoefficients:
        return cls(q1=1.0 - delta + 0.5 * delta**2, q2=0.5 * delta - (0.5 * delta) ** 2)


@dataclass(frozen=True)
class AreaCoefficients:
    q: float
    x_tilde: float

    @classmethod
    def from_delta(cls, delta: float) -> AreaCoefficients:
        return cls(q=2.0 - 2.0 * delta, x_tilde=2.0 * math.sqrt(max(delta - delta**2, 0.0)))


def _check_delta(delta: float) -> float:
    delta = float(delta)
    if not 0.0 <= delta <= 1.0:
        raise DomainError(f"delta must lie in [0, 1], got {delta!r}")
    return delta


def _check_height(y_prime, delta: float):
    y = np.asarray(y_prime, dtype=np.float64)
    if np.any(y < 0.0) or np.any(y > 0.5 * delta):
        raise DomainError(f"y' must lie in [0, delta/2] = [0, {0.5 * delta}]")
    return y


def _sqrt_clamped(arg):
    # rounding can leave a true zero slightly negative
    return np.sqrt(np.where((arg < 0) & (arg >= -1e-12), 0.0, arg))


def cross_section_width(y_prime, delta: float):
    """Width ``w/D`` of the rectangular cross-section at height ``y' = y/D``."""
    delta = _check_delta(delta)
    y = _check_height(y_prime, delta)
    w = _sqrt_clamped(1.0 - (2.0 * y - 1.0 + delta) ** 2)
    return float(w) if np.ndim(w) == 0 else w


def cross_section_depth(y_prime, delta: float):
    """Depth ``d/D`` of the rectangular cross-section at height ``y' = y/D``."""
    delta = _check_delta(delta)
    y = _check_height(y_prime, delta)
    d = _sqrt_clamped(1.0 - (2.0 * y + 1.0 - delta) ** 2)
    return float(d) if np.ndim(d) == 0 else d


def volume_radicand(y_prime, delta: float):
    """``y'**4 - Q1 y'**2 + Q2**2``, the squared quarter of the cross-section area."""
    co = VolumeCoefficients.from_delta(delta)
    y2 = np.asarray(y_prime, dtype=np.float64) ** 2
    return y2 * y2 - co.q1 * y2 + co.q2**2


def volume_integrand(delta: float):
    def f(y):
        rad = volume_radicand(y, delta)
        if np.any(rad < -RADICAND_CLAMP):
            raise DomainError(f"volume radicand below -{RADICAND_CLAMP:g} at delta={delta!r}")
        return np.sqrt(np.maximum(rad, 0.0))

    return f


def _safe_arccos(arg):
    if np.any(np.abs(arg) > 1.0 + ARCCOS_CLAMP):
        raise DomainError("arccos argument outside [-1, 1] beyond rounding tolerance")
    return np.arccos(np.clip(arg, -1.0, 1.0))


def _sqrt_one_minus_sq(x):
    return np.sqrt(np.maximum((1.0 - x) * (1.0 + x), 0.0))


def reduced_volume(delta: float, spec: QuadratureSpec | None = None) -> ReducedResult:
    """Reduced intersection volume ``V/D**3`` by quadrature.

    Integrates ``8 * sqrt(y'**4 - Q1 y'**2 + Q2**2)`` over ``[0, delta/2]``.
    ``delta = 0`` and ``delta = 1`` return the closed forms 0 and 2/3.
    """
    delta = _check_delta(delta)
    if delta == 0.0:
        return ReducedResult(delta, 0.0, 0.0)
    if delta == 1.0:
        return ReducedResult(delta, STEINMETZ_VOLUME, 0.0)
    value, err = integrate(volume_integrand(delta), 0.0, 0.5 * delta, spec)
    return ReducedResult(delta, 8.0 * value, 8.0 * err)


def _area_inner(q: float):
    return lambda x: _safe_arccos(q - _sqrt_one_minus_sq(x))


def _area_outer(q: float):
    return lambda x: _safe_arccos(q + _sqrt_one_minus_sq(x))


def reduced_area(delta: float, spec: QuadratureSpec | None = None) -> ReducedResult:
    """Reduced lateral surface area ``A/D**2`` of the intersection by quadrature.

    Shallow overlaps (``delta <= 1/2``) integrate ``arccos(Q - sqrt(1 - x**2))``
    up to ``x~``; deeper ones integrate it over ``[0, 1]`` and subtract the
    ``arccos(Q + sqrt(1 - x**2))`` band over ``[x~, 1]`` where the bottom
    cylinder's crest pokes through. ``delta = 0`` and ``delta = 1`` return the
    closed forms 0 and 4.
    """
    delta = _check_delta(delta)
    if delta == 0.0:
        return ReducedResult(delta, 0.0, 0.0)
    if delta == 1.0:
        return ReducedResult(delta, STEINMETZ_AREA, 0.0)
    co = AreaCoefficients.from_delta(delta)
    if delta <= 0.5:
        value, err = integrate(_area_inner(co.q), 0.0, min(co.x_tilde, 1.0), spec)
        return ReducedResult(delta, 2.0 * value, 2.0 * err)
    full, err_full = integrate(_area_inner(co.q), 0.0, 1.0, spec)
    band, err_band = integrate(_area_outer(co.q), min(co.x_tilde, 1.0), 1.0, spec)
    return ReducedResult(delta, 2.0 * (full - band), 2.0 * (err_full + err_band))


def approx_volume(delta: float) -> float:
    """Closed-form fit ``(1 - cos(pi delta)) / 3`` to the reduced volume."""
    delta = _check_delta(delta)
    return (1.0 - math.cos(delta * math.pi)) / 3.0


def approx_area(delta: float) -> float:
    """Closed-form fit ``4 sin(pi delta / 2)`` to the reduced area."""
    delta = _check_delta(delta)
    return 4.0 * math.sin(0.5 * delta * math.pi)


def relative_error_pct(exact: float, approx: float) -> float | None:
    """``100 * (exact - approx) / exact``; ``None`` when ``exact`` is zero."""
    if exact == 0.0:
        return None
    return 100.0 * (exact - approx) / exact
