"""Per-delta result rows and their CSV/JSON encodings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from . import analytic
from .quadrature import QuadratureSpec
from .qmc import QmcSpec, estimate_reduced

FIELDS = ("delta", "v_exact", "a_exact", "v_approx", "a_approx", "v_err_pct", "a_err_pct")
QMC_FIELDS = ("v_qmc", "a_qmc")


@dataclass(frozen=True)
class SweepRow:
    delta: float
    v_exact: float
    a_exact: float
    v_approx: float
    a_approx: float
    v_err_pct: float | None
    a_err_pct: float | None
    v_qmc: float | None = None
    a_qmc: float | None = None

    @property
    def has_qmc(self) -> bool:
        return self.v_qmc is not None


def make_row(
    delta: float,
    quad: QuadratureSpec | None = None,
    qmc: QmcSpec | None = None,
    threads: int | None = None,
) -> SweepRow:
    v = analytic.reduced_volume(delta, quad).value
    a = analytic.reduced_area(delta, quad).value
    v_ap = analytic.approx_volume(delta)
    a_ap = analytic.approx_area(delta)
    v_qmc = a_qmc = None
    if qmc is not None:
        v_qmc, a_qmc = estimate_reduced(delta, spec=qmc, threads=threads)
    return SweepRow(
        delta=float(delta),
        v_exact=v,
        a_exact=a,
        v_approx=v_ap,
        a_approx=a_ap,
        v_err_pct=analytic.relative_error_pct(v, v_ap),
        a_err_pct=analytic.relative_error_pct(a, a_ap),
        v_qmc=v_qmc,
        a_qmc=a_qmc,
    )


def _fields(rows) -> tuple[str, ...]:
    return FIELDS + QMC_FIELDS if any(r.has_qmc for r in rows) else FIELDS


def _sig6(x: float | None) -> str:
    if x is None:
        return ""
    s = f"{x:.6g}"
    return "0" if s == "-0" else s


def to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    fields = _fields(rows)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_sig6(getattr(row, f)) for f in fields])
    return buf.getvalue()


def to_records(rows: list[SweepRow]) -> list[dict]:
    fields = _fields(rows)
    out = []
    for row in rows:
        rec = {}
        for f in fields:
            val = getattr(row, f)
            rec[f] = None if val is None else float(_sig6(val))
        out.append(rec)
    return out


def to_json(rows: list[SweepRow]) -> str:
    return json.dumps(to_records(rows), indent=2) + "\n"
