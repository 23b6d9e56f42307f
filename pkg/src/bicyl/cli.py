"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 quadrature failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .geometry import Cylinder
from .qmc import (
    MAX_LOG2,
    MIN_LOG2,
    Containment,
    QmcSpec,
    estimate_intersection_area,
    estimate_intersection_volume,
    resolve_threads,
)
from .quadrature import QuadratureError
from .rows import make_row, to_csv, to_json
from .validation import run_checks

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_QUADRATURE = 3


class UsageError(Exception):
    pass


def _delta(text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= val <= 1.0:
        raise argparse.ArgumentTypeError(f"delta must lie in [0, 1], got {text}")
    return val


def _log2(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not MIN_LOG2 <= val <= MAX_LOG2:
        raise argparse.ArgumentTypeError(f"log2 sample count must lie in [{MIN_LOG2}, {MAX_LOG2}]")
    return val


def _positive_int(text: str) -> int:
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return val


_CYL_FIELDS = ("ax", "ay", "az", "bx", "by", "bz", "r")


def parse_cylinder(spec, label: str) -> Cylinder:
    """Build a cylinder from ``"ax,ay,az,bx,by,bz,r"``, a 7-list, or a ``{"a", "b", "r"}`` mapping."""
    if isinstance(spec, dict):
        try:
            values = [*spec["a"], *spec["b"], spec["r"]]
        except (KeyError, TypeError):
            raise UsageError(f"{label}: expected keys 'a', 'b', 'r'") from None
    elif isinstance(spec, str):
        values = [p.strip() for p in spec.split(",")]
    else:
        values = list(spec)
    if len(values) != 7:
        raise UsageError(f"{label}: expected 7 comma-separated numbers {','.join(_CYL_FIELDS)}")
    nums = []
    for name, raw in zip(_CYL_FIELDS, values):
        try:
            x = float(raw)
        except (TypeError, ValueError):
            raise UsageError(f"{label}.{name}: not a number: {raw!r}") from None
        if not math.isfinite(x):
            raise UsageError(f"{label}.{name}: must be finite")
        nums.append(x)
    if nums[6] <= 0:
        raise UsageError(f"{label}.r: radius must be > 0, got {nums[6]}")
    if nums[:3] == nums[3:6]:
        raise UsageError(f"{label}.b: axis end coincides with start (a = b)")
    return Cylinder(nums[:3], nums[3:6], nums[6])


def _qmc_spec(args, log2: int | None) -> QmcSpec | None:
    if log2 is None:
        return None
    return QmcSpec(log2_samples=log2, scramble_seed=args.seed)


def cmd_reduced(args) -> int:
    row = make_row(args.delta, qmc=_qmc_spec(args, args.qmc), threads=args.threads)
    if args.json:
        sys.stdout.write(to_json([row]))
    elif args.csv:
        sys.stdout.write(to_csv([row]))
    else:
        def pct(x):
            return "n/a" if x is None else f"{x:+.1f}%"

        print(f"delta     = {row.delta:g}")
        print(f"V'        = {row.v_exact:.6f}")
        print(f"A'        = {row.a_exact:.6f}")
        print(f"V'_approx = {row.v_approx:.6f}  (rel. err {pct(row.v_err_pct)})")
        print(f"A'_approx = {row.a_approx:.6f}  (rel. err {pct(row.a_err_pct)})")
        if row.has_qmc:
            print(f"V'_qmc    = {row.v_qmc:.6f}  (2^{args.qmc} samples)")
            print(f"A'_qmc    = {row.a_qmc:.6f}  (2^{args.qmc} samples per surface)")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.start > args.stop:
        raise UsageError("--from must not exceed --to")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if args.start == args.stop:
        raise UsageError("--from equals --to: a sweep of several steps would repeat one delta")
    deltas = np.linspace(args.start, args.stop, args.steps)
    qmc = _qmc_spec(args, args.qmc)
    rows = [make_row(float(d), qmc=qmc, threads=args.threads) for d in deltas]
    text = to_json(rows) if args.json else to_csv(rows)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _load_pairs(args) -> list[tuple[Cylinder, Cylinder]]:
    if args.file:
        if args.c1 or args.c2:
            raise UsageError("use either --file or --c1/--c2, not both")
        try:
            with open(args.file) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"--file: {exc}") from None
        if isinstance(data, dict):
            data = [data]
        if not isinstance(data, list) or not data:
            raise UsageError("--file: expected a JSON object or a non-empty array of objects")
        pairs = []
        for i, item in enumerate(data):
            if not isinstance(item, dict) or "c1" not in item or "c2" not in item:
                raise UsageError(f"--file[{i}]: expected an object with 'c1' and 'c2'")
            pairs.append((parse_cylinder(item["c1"], f"[{i}].c1"), parse_cylinder(item["c2"], f"[{i}].c2")))
        return pairs
    if not (args.c1 and args.c2):
        raise UsageError("both --c1 and --c2 are required (or --file)")
    return [(parse_cylinder(args.c1, "c1"), parse_cylinder(args.c2, "c2"))]


def cmd_estimate(args) -> int:
    pairs = _load_pairs(args)
    spec = QmcSpec(log2_samples=args.log2, scramble_seed=args.seed, containment=args.containment)
    results = []
    for c1, c2 in pairs:
        vol = estimate_intersection_volume(c1, c2, spec, args.threads)
        area = estimate_intersection_area(c1, c2, spec, args.threads)
        results.append(
            {
                "volume": vol.value,
                "volume_hit_fraction": vol.hit_fraction,
                "volume_samples": vol.n_used,
                "area": area.value,
                "area_hit_fractions": list(area.hit_fractions),
                "area_samples": area.n_used,
            }
        )
    if args.json:
        sys.stdout.write(json.dumps(results, indent=2) + "\n")
        return EXIT_OK
    for i, res in enumerate(results):
        if len(results) > 1:
            print(f"[{i}]")
        f1, f2 = res["area_hit_fractions"]
        print(f"V_est = {res['volume']:.6g}  (hit fraction {res['volume_hit_fraction']:.6g}, n={res['volume_samples']})")
        print(f"A_est = {res['area']:.6g}  (f1 {f1:.6g}, f2 {f2:.6g}, n={res['area_samples']})")
    return EXIT_OK


def cmd_validate(args) -> int:
    checks = run_checks(
        log2_samples=args.log2,
        seed=args.seed,
        tolerance_scale=args.tolerance_scale,
        threads=args.threads,
    )
    for check in checks:
        print(check.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicyl",
        description="Intersection volume and surface area of two cylinders.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="scramble seed for QMC draws (default 0)")
    common.add_argument(
        "--threads", type=_positive_int, default=None,
        help="worker threads for hit counting; results do not depend on it (env BICYL_THREADS)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduced", parents=[common], help="evaluate one depth ratio delta = H/D")
    p.add_argument("delta", type=_delta)
    p.add_argument("--qmc", type=_log2, metavar="LOG2", help="also run QMC with 2**LOG2 samples")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_reduced)

    p = sub.add_parser("sweep", parents=[common], help="CSV/JSON table over a delta range")
    p.add_argument("--from", dest="start", type=_delta, default=0.0)
    p.add_argument("--to", dest="stop", type=_delta, default=1.0)
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--qmc", type=_log2, metavar="LOG2")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser(
        "estimate", parents=[common],
        help="QMC estimate for two arbitrary cylinders",
        description="Cylinders are given as ax,ay,az,bx,by,bz,r. Use the --c1=... form "
        "when the first number is negative.",
    )
    p.add_argument("--c1", help="first cylinder: ax,ay,az,bx,by,bz,r")
    p.add_argument("--c2", help="second cylinder: ax,ay,az,bx,by,bz,r")
    p.add_argument("--file", help='JSON batch: [{"c1": [...7 numbers] or {"a","b","r"}, "c2": ...}, ...]')
    p.add_argument("--log2", type=_log2, default=20)
    p.add_argument(
        "--containment", choices=[c.value for c in Containment],
        default=Containment.SEGMENT_CAPSULE.value,
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("validate", parents=[common], help="run reference and cross checks")
    p.add_argument("--log2", type=_log2, default=20)
    p.add_argument("--tolerance-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.threads = resolve_threads(args.threads)
    except ValueError as exc:
        parser.error(f"BICYL_THREADS: {exc}")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"{parser.prog} {args.command}: quadrature failed: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE


if __name__ == "__main__":
    sys.exit(main())
