"""Self-check against published reference values and between independent routes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import analytic
from .qmc import QmcSpec, estimate_reduced

# Reference values at delta = 0.1 .. 0.9 (3 decimals; error rows in percent).
REFERENCE_DELTAS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
REFERENCE_VOLUME = (0.015, 0.056, 0.120, 0.199, 0.290, 0.387, 0.481, 0.567, 0.635)
REFERENCE_VOLUME_ERR_PCT = (-9.4, -12.8, -14.8, -15.4, -14.8, -12.9, -9.9, -6.3, -2.4)
REFERENCE_AREA = (0.612, 1.190, 1.732, 2.232, 2.688, 3.093, 3.440, 3.719, 3.916)
REFERENCE_AREA_ERR_PCT = (-2.2, -3.8, -4.9, -5.3, -5.2, -4.6, -3.6, -2.3, -0.9)

TABLE_TOL = 5e-4
ERR_PCT_TOL = 0.1
CLOSED_FORM_TOL = 1e-6
QMC_REL_TOL = 0.015
QMC_DELTAS = (0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class Check:
    name: str
    observed: float
    expected: float
    tol: float
    relative: bool = False

    @property
    def deviation(self) -> float:
        diff = abs(self.observed - self.expected)
        return diff / abs(self.expected) if self.relative else diff

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.observed)) and self.deviation <= self.tol

    def line(self) -> str:
        kind = "rel" if self.relative else "abs"
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}  {self.name:<28} observed={self.observed:.6f} "
            f"expected={self.expected:.6f} {kind}_dev={self.deviation:.2e} tol={self.tol:.1e}"
        )


def run_checks(
    log2_samples: int = 20,
    seed: int | None = 0,
    tolerance_scale: float = 1.0,
    threads: int | None = None,
    include_qmc: bool = True,
) -> list[Check]:
    """Evaluate every self-check; ``tolerance_scale`` multiplies all tolerances."""
    s = tolerance_scale
    checks: list[Check] = []
    for i, d in enumerate(REFERENCE_DELTAS):
        v = analytic.reduced_volume(d).value
        a = analytic.reduced_area(d).value
        checks.append(Check(f"reference V' delta={d:.1f}", v, REFERENCE_VOLUME[i], TABLE_TOL * s))
        checks.append(Check(f"reference A' delta={d:.1f}", a, REFERENCE_AREA[i], TABLE_TOL * s))
        v_err = analytic.relative_error_pct(v, analytic.approx_volume(d))
        a_err = analytic.relative_error_pct(a, analytic.approx_area(d))
        checks.append(Check(f"reference V' err% delta={d:.1f}", v_err, REFERENCE_VOLUME_ERR_PCT[i], ERR_PCT_TOL * s))
        checks.append(Check(f"reference A' err% delta={d:.1f}", a_err, REFERENCE_AREA_ERR_PCT[i], ERR_PCT_TOL * s))

    near_one = 1.0 - 1e-9
    checks.append(Check("steinmetz V'(1)", analytic.reduced_volume(1.0).value, 2.0 / 3.0, 0.0))
    checks.append(Check("steinmetz A'(1)", analytic.reduced_area(1.0).value, 4.0, 0.0))
    checks.append(
        Check("quadrature V'(1-1e-9)", analytic.reduced_volume(near_one).value, 2.0 / 3.0, CLOSED_FORM_TOL * s)
    )
    checks.append(
        Check("quadrature A'(1-1e-9)", analytic.reduced_area(near_one).value, 4.0, CLOSED_FORM_TOL * s)
    )

    if include_qmc:
        spec = QmcSpec(log2_samples=log2_samples, scramble_seed=seed)
        for d in QMC_DELTAS:
            v_q, a_q = estimate_reduced(d, spec=spec, threads=threads)
            v = analytic.reduced_volume(d).value
            a = analytic.reduced_area(d).value
            checks.append(Check(f"qmc V' delta={d:.2f}", v_q, v, QMC_REL_TOL * s, relative=True))
            checks.append(Check(f"qmc A' delta={d:.2f}", a_q, a, QMC_REL_TOL * s, relative=True))
    return checks
