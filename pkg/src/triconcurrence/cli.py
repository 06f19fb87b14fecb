"""Command-line front end: bound computation on state files, parameter scans
of the benchmark family, and the self-check property suite."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds, oracle, stateio
from .concurrence import concurrence_coeff, concurrence_reduced, substate_pure_concurrence
from .states import (
    DensityMatrix,
    PureState,
    TripartiteDims,
    pure_to_density,
    random_mixed,
    random_pure,
)
from .substates import coefficient_sss, enumerate_selectors

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_PROPERTY = 4


@dataclass(frozen=True)
class ScanRow:
    """One grid point of a parameter scan."""

    t: float
    bound: float
    reference: float
    branch: str


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _parse_shape(text: str) -> tuple[int, int, int]:
    parts = text.replace("x", ",").split(",")
    if len(parts) != 3:
        raise ValueError(f"shape must be three comma-separated integers, got {text!r}")
    return tuple(int(p) for p in parts)


def _parse_weights(text: str) -> dict[str, float]:
    weights: dict[str, float] = {}
    for chunk in text.replace(";", ",").split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ValueError(f"weight entry {chunk!r} is not KEY=VALUE")
        key, _, val = chunk.partition("=")
        weights[key.strip()] = float(val)
    if not weights:
        raise ValueError("no weights given")
    return weights


def _as_density(state: PureState | DensityMatrix) -> DensityMatrix:
    return pure_to_density(state) if isinstance(state, PureState) else state


def _report_to_dict(report: bounds.BoundReport) -> dict:
    params = {}
    for key, value in report.params.items():
        params[key] = str(value) if isinstance(value, Fraction) else value
    return {
        "method": report.method,
        "value": report.value,
        "params": params,
        "contributions": [
            {
                "keep": [list(c.selector.keep1), list(c.selector.keep2), list(c.selector.keep3)],
                "trace": c.trace,
                "value": c.value,
            }
            for c in report.contributions
        ],
    }


def _g2_report_dict(rho: DensityMatrix) -> dict:
    from .linalg import trace_norm
    from .transforms import SUBSYSTEMS, partial_transpose, realign

    value = bounds.g2_bound(rho)
    return {
        "method": "g2",
        "value": value,
        "params": {
            "trace": rho.trace_value,
            "partial_transpose_norms": [trace_norm(partial_transpose(rho, j)) for j in SUBSYSTEMS],
            "realignment_norms": [trace_norm(realign(rho, j)) for j in SUBSYSTEMS],
        },
        "contributions": [],
    }


def cmd_bound(args: argparse.Namespace) -> int:
    try:
        state = stateio.load_state(args.state)
    except stateio.StateFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    rho = _as_density(state)

    try:
        if args.method == "g2":
            doc = _g2_report_dict(rho)
        elif args.method == "tau-sss":
            doc = _report_to_dict(bounds.tau_sss(rho, args.s))
        elif args.method == "tau-lmn":
            if args.shape is None:
                raise ValueError("--shape is required for method tau-lmn")
            doc = _report_to_dict(bounds.tau_lmn(rho, _parse_shape(args.shape)))
        elif args.method == "convex":
            if args.weights is None:
                raise ValueError("--weights is required for method convex")
            weights = _parse_weights(args.weights)
            reports = []
            for key in weights:
                if "x" in key:
                    reports.append(bounds.tau_lmn(rho, _parse_shape(key)))
                else:
                    reports.append(bounds.tau_sss(rho, int(key)))
            combo = bounds.convex_combo(reports, bounds.ConvexWeights(weights))
            doc = _report_to_dict(combo)
        else:  # pragma: no cover - argparse restricts choices
            raise ValueError(f"unknown method {args.method}")
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    print(f"method {doc['method']}: lower bound on squared concurrence = {_fmt(doc['value'])}")
    if doc["contributions"]:
        live = sum(1 for c in doc["contributions"] if c["value"] > 0)
        print(f"substates: {len(doc['contributions'])} total, {live} contributing")
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
        print(f"report written to {args.out}")
    else:
        print(json.dumps(doc, indent=1))
    return EXIT_OK


def scan_rows(t_min: float, t_max: float, steps: int) -> list[ScanRow]:
    """Evaluate the benchmark-family bound on an inclusive uniform grid."""
    rows = []
    for i in range(steps):
        t = t_min + (t_max - t_min) * i / (steps - 1)
        branch, reference = bounds.example_curve(t)
        rows.append(ScanRow(t=t, bound=bounds.example_bound(t).value, reference=reference, branch=branch))
    return rows


def write_scan_csv(path: str | Path, rows: list[ScanRow]) -> None:
    """CSV with header ``t,bound,reference,branch``; 17 significant digits."""
    lines = ["t,bound,reference,branch"]
    lines.extend(f"{_fmt(r.t)},{_fmt(r.bound)},{_fmt(r.reference)},{r.branch}" for r in rows)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="")


def cmd_scan(args: argparse.Namespace) -> int:
    if not (0.0 <= args.t_min < args.t_max <= 1.0):
        print(f"error: need 0 <= t-min < t-max <= 1, got [{args.t_min}, {args.t_max}]", file=sys.stderr)
        return EXIT_USAGE
    if args.steps < 2:
        print(f"error: steps must be >= 2, got {args.steps}", file=sys.stderr)
        return EXIT_USAGE

    rows = scan_rows(args.t_min, args.t_max, args.steps)
    write_scan_csv(args.out, rows)
    print(f"wrote {len(rows)} rows to {args.out}")

    if args.oracle_samples is not None:
        if args.oracle_samples < 1:
            print(f"error: --oracle-samples must be >= 1, got {args.oracle_samples}", file=sys.stderr)
            return EXIT_USAGE
        from .states import make_example_state

        violations = []
        for i, row in enumerate(rows):
            estimate = oracle.roof_upper_bound(make_example_state(row.t), args.oracle_samples, seed=i)
            if row.bound > estimate.upper**2 + 1e-6:
                violations.append((row.t, row.bound, estimate.upper**2))
        if violations:
            for t, b, u in violations:
                print(f"property violation at t={_fmt(t)}: bound {_fmt(b)} > roof^2 {_fmt(u)}", file=sys.stderr)
            return EXIT_PROPERTY
        print(f"oracle check passed on all {len(rows)} grid points")
    return EXIT_OK


def _selfcheck_equivalence(seed: int, trials: int) -> tuple[int, int, dict | None]:
    profiles = [(2, 2, 2), (2, 2, 4), (2, 3, 4), (3, 3, 3), (3, 4, 5)]
    passed = 0
    for idx in range(trials):
        dims = TripartiteDims(*profiles[idx % len(profiles)])
        psi = random_pure(dims, seed * 1_000_003 + idx)
        reduced = concurrence_reduced(psi).c_squared
        coeff = concurrence_coeff(psi).c_squared
        literal = oracle.literal_eq4(psi)
        if abs(reduced - literal) <= 1e-9 and abs(coeff - reduced) <= 1e-9:
            passed += 1
        else:
            return passed, trials, {
                "property": "concurrence-equivalence",
                "state": stateio.state_to_dict(psi),
                "reduced": reduced,
                "coefficient_route": coeff,
                "literal": literal,
            }
    return passed, trials, None


def _selfcheck_counting(seed: int, trials: int) -> tuple[int, int, dict | None]:
    profiles = [(2, 2, 4), (3, 3, 3), (3, 3, 4)]
    passed = 0
    for idx in range(trials):
        dims = TripartiteDims(*profiles[idx % len(profiles)])
        psi = random_pure(dims, seed * 2_000_003 + idx)
        total = concurrence_coeff(psi).c_squared
        ok = True
        for s in range(2, min(dims.as_tuple()) + 1):
            coeff = coefficient_sss(dims, s)
            acc = math.fsum(
                substate_pure_concurrence(psi, sel).c_squared
                for sel in enumerate_selectors(dims, (s, s, s))
            )
            if float(coeff.value) * acc > total + 1e-9:
                ok = False
                counterexample = {
                    "property": "substate-counting",
                    "state": stateio.state_to_dict(psi),
                    "s": s,
                    "weighted_sum": float(coeff.value) * acc,
                    "concurrence_squared": total,
                }
                return passed, trials, counterexample
        if ok:
            passed += 1
    return passed, trials, None


def _selfcheck_sandwich(seed: int, trials: int, samples: int = 60) -> tuple[int, int, dict | None]:
    profiles = [(2, 2, 2), (2, 2, 4)]
    passed = 0
    for idx in range(trials):
        dims = TripartiteDims(*profiles[idx % len(profiles)])
        rank = 1 + (idx % 4)
        rho = random_mixed(dims, rank, seed * 3_000_017 + idx)
        lower = bounds.tau_sss(rho, 2).value
        upper = oracle.roof_upper_bound(rho, samples, seed * 3_000_017 + idx).upper
        if lower <= upper**2 + 1e-6:
            passed += 1
        else:
            return passed, trials, {
                "property": "sandwich",
                "state": stateio.state_to_dict(rho),
                "lower_bound": lower,
                "roof_upper_squared": upper**2,
            }
    return passed, trials, None


def cmd_selfcheck(args: argparse.Namespace) -> int:
    if args.trials < 0:
        print(f"error: trials must be >= 0, got {args.trials}", file=sys.stderr)
        return EXIT_USAGE
    if args.trials == 0:
        print("no trials requested; vacuous pass")
        return EXIT_OK

    checks = [
        ("concurrence-equivalence", _selfcheck_equivalence),
        ("substate-counting", _selfcheck_counting),
        ("sandwich", _selfcheck_sandwich),
    ]
    failure = None
    for name, fn in checks:
        passed, total, counterexample = fn(args.seed, args.trials)
        print(f"{name}: {passed}/{total} passed")
        if counterexample is not None:
            failure = counterexample
            break
    if failure is not None:
        print(json.dumps(failure, indent=1), file=sys.stderr)
        return EXIT_PROPERTY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triconcurrence",
        description="Lower bounds on the concurrence of tripartite quantum states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="compute a lower bound for a state file")
    p_bound.add_argument("--state", required=True, help="path to a state file (JSON)")
    p_bound.add_argument("--method", required=True, choices=["g2", "tau-sss", "tau-lmn", "convex"])
    p_bound.add_argument("--s", type=int, default=2, help="substate size for tau-sss (default 2)")
    p_bound.add_argument("--shape", help="kept-shape triple for tau-lmn, e.g. 2,2,3")
    p_bound.add_argument("--weights", help="convex weights, e.g. '2=0.5,3=0.5' or '2x2x2=1'")
    p_bound.add_argument("--out", help="write the JSON report here")
    p_bound.set_defaults(func=cmd_bound)

    p_scan = sub.add_parser("scan", help="scan the benchmark noise family to CSV")
    p_scan.add_argument("--family", required=True, choices=["paper-example"])
    p_scan.add_argument("--t-min", type=float, required=True, dest="t_min")
    p_scan.add_argument("--t-max", type=float, required=True, dest="t_max")
    p_scan.add_argument("--steps", type=int, required=True)
    p_scan.add_argument("--oracle-samples", type=int, dest="oracle_samples")
    p_scan.add_argument("--out", required=True, help="CSV output path")
    p_scan.set_defaults(func=cmd_scan)

    p_check = sub.add_parser("selfcheck", help="run the invariant property suite")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--trials", type=int, default=50)
    p_check.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
