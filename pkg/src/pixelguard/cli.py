"""Command-line interface.

Commands:
    analyze         Bound Eve's information from observed click counts.
    simulate        Simulate a session under an attack.
    sweep-distance  Finite-key bound of an honest link against distance.
    sweep-ratio     Asymptotic bound against the coincidence ratio r.

Exit codes: 0 success, 1 invalid input, 2 security abort. On failure a JSON
object ``{"error": <reason>, "message": <text>}`` is written to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import NoReturn

from pixelguard._utils.logger import LEVEL_NAMES, get_logger, setup_logging
from pixelguard.constants import (
    DEFAULT_ACQUISITION_TIMES_S,
    DEFAULT_EPSILON,
    ObjectiveConvention,
    PixelOrientation,
    SimulationMethod,
)
from pixelguard.detection import compute_p_e
from pixelguard.evebound import default_imbalance_threshold, finite_key_bound
from pixelguard.exceptions import (
    InfeasibleStatsError,
    NoDetectionsError,
    ValidationError,
    exit_code_for,
    reason_for,
)
from pixelguard.models.attack import AttackStrategy
from pixelguard.models.params import FiniteKeyParams, SystemParams
from pixelguard.models.stats import ClickCounts
from pixelguard.models.sweep import SweepRow
from pixelguard.montecarlo import empirical_stats, honest_strategy, simulate
from pixelguard.sweeps import distance_csv, ratio_csv, sweep_distance, sweep_ratio
from pixelguard.types import JSON

logger = get_logger("cli")


class _Parser(argparse.ArgumentParser):
    """Argument parser reporting usage errors as invalid input (exit 1)."""

    def error(self, message: str) -> NoReturn:
        raise ValidationError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pixelguard", description="Eavesdropper information bounds for two-pixel detectors")
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LEVEL_NAMES,
        default="WARNING",
        help="Logging level on stderr",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("analyze", help="Bound Eve's information from observed counts")
    a.add_argument("--counts", required=True, type=Path, help="ClickCounts JSON file")
    a.add_argument("--params", required=True, type=Path, help="SystemParams JSON file")
    a.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    a.add_argument(
        "--imbalance-threshold",
        type=float,
        default=None,
        help="Abort when |p_s1 - p_s2| exceeds this (default: 2 alpha p_B + 5 sigma)",
    )
    a.add_argument("--no-imbalance-check", action="store_true")
    _add_objective_flags(a)
    a.add_argument("--output", type=Path, default=None)

    s = sub.add_parser("simulate", help="Simulate a session under an attack")
    s.add_argument("--params", required=True, type=Path, help="SystemParams JSON file")
    s.add_argument("--attack", required=True, type=Path, help="AttackStrategy JSON file")
    s.add_argument("--n-pulses", required=True, type=int)
    s.add_argument("--seed", required=True, type=int)
    s.add_argument(
        "--method",
        type=SimulationMethod,
        choices=list(SimulationMethod),
        default=SimulationMethod.AUTO,
    )
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--output", type=Path, default=None)

    d = sub.add_parser("sweep-distance", help="Finite-key bound against distance (CSV)")
    d.add_argument("--params", required=True, type=Path, help="SystemParams JSON file")
    d.add_argument(
        "--at",
        dest="acquisition_times",
        type=float,
        nargs="+",
        default=list(DEFAULT_ACQUISITION_TIMES_S),
        help="Acquisition times in seconds",
    )
    d.add_argument("--d-min", type=float, default=0.0)
    d.add_argument("--d-max", type=float, default=300.0)
    d.add_argument("--step", type=float, default=1.0)
    d.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    d.add_argument("--workers", type=int, default=1)
    d.add_argument("--hoeffding", action="store_true", help="Add a Hoeffding comparison column")
    d.add_argument(
        "--monte-carlo",
        type=int,
        default=0,
        metavar="K",
        help="Cross-check the first K rows against simulated sessions",
    )
    d.add_argument("--seed", type=int, default=0, help="Master seed of the cross-check")
    _add_objective_flags(d)
    d.add_argument("--output", type=Path, default=None)

    r = sub.add_parser("sweep-ratio", help="Asymptotic bound against r (CSV)")
    r.add_argument("--p-e", type=float, required=True)
    r.add_argument("--r-min", type=float, default=1.0)
    r.add_argument("--r-max", type=float, default=10.0)
    r.add_argument("--step", type=float, default=0.1)
    r.add_argument("--output", type=Path, default=None)
    return parser


def _add_objective_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--objective",
        type=ObjectiveConvention,
        choices=list(ObjectiveConvention),
        default=ObjectiveConvention.CLICKS,
    )
    parser.add_argument(
        "--orientation",
        type=PixelOrientation,
        choices=list(PixelOrientation),
        default=PixelOrientation.PIXEL2_HIGHER,
    )


def _validate_args(args: argparse.Namespace) -> None:
    if getattr(args, "workers", 1) < 1:
        raise ValidationError(f"--workers must be at least 1 (got {args.workers})")
    if args.cmd == "sweep-distance":
        if args.d_min < 0.0:
            raise ValidationError(f"--d-min must be non-negative (got {args.d_min})")
        if args.monte_carlo < 0:
            raise ValidationError(f"--monte-carlo must be non-negative (got {args.monte_carlo})")


def cmd_analyze(args: argparse.Namespace) -> str:
    counts = ClickCounts.model_validate_json(args.counts.read_text())
    params = SystemParams.model_validate_json(args.params.read_text())
    fk = FiniteKeyParams(n_pulses=counts.n_pulses, epsilon=args.epsilon)
    p_e = compute_p_e(params)

    threshold: float | None = args.imbalance_threshold
    if args.no_imbalance_check:
        threshold = None
    elif threshold is None:
        threshold = default_imbalance_threshold(empirical_stats(counts), params.alpha, counts.n_pulses)

    bound = finite_key_bound(
        counts,
        fk,
        p_e,
        params.alpha,
        threshold,
        convention=args.objective,
        orientation=args.orientation,
    )
    report: JSON = {
        "i_e_upper": bound.value,
        "regime": str(bound.regime),
        "optimum": bound.optimum.model_dump(mode="json") if bound.optimum else None,
        "residuals": bound.residuals,
        "diagnostics": bound.diagnostics,
        "inputs": {
            "counts": counts.model_dump(mode="json"),
            "params": params.model_dump(mode="json"),
            "epsilon": args.epsilon,
            "imbalance_threshold": threshold,
            "objective": str(args.objective),
            "orientation": str(args.orientation),
        },
    }
    return json.dumps(report, indent=2) + "\n"


def cmd_simulate(args: argparse.Namespace) -> str:
    params = SystemParams.model_validate_json(args.params.read_text())
    attack = AttackStrategy.model_validate_json(args.attack.read_text())
    outcome = simulate(
        attack,
        compute_p_e(params),
        params.alpha,
        args.n_pulses,
        args.seed,
        method=args.method,
        workers=args.workers,
    )
    return json.dumps(outcome.model_dump(mode="json"), indent=2) + "\n"


def cmd_sweep_distance(args: argparse.Namespace) -> str:
    params = SystemParams.model_validate_json(args.params.read_text())
    rows = sweep_distance(
        params,
        args.acquisition_times,
        args.d_min,
        args.d_max,
        args.step,
        args.epsilon,
        hoeffding=args.hoeffding,
        convention=args.objective,
        orientation=args.orientation,
        workers=args.workers,
    )
    for index, row in enumerate(rows[: args.monte_carlo]):
        _cross_check(params, row, args, args.seed + index)
    return distance_csv(rows, hoeffding=args.hoeffding)


def cmd_sweep_ratio(args: argparse.Namespace) -> str:
    return ratio_csv(sweep_ratio(args.p_e, args.r_min, args.r_max, args.step))


def _cross_check(params: SystemParams, row: SweepRow, args: argparse.Namespace, seed: int) -> None:
    """Bound a simulated honest session of the row's size and log both values."""
    scenario = params.at_distance(row.distance_km)
    outcome = simulate(
        honest_strategy(scenario),
        compute_p_e(scenario),
        scenario.alpha,
        row.n_pulses,
        seed,
        workers=args.workers,
    )
    fk = FiniteKeyParams(n_pulses=row.n_pulses, epsilon=args.epsilon)
    try:
        simulated = finite_key_bound(
            outcome.counts,
            fk,
            compute_p_e(scenario),
            scenario.alpha,
            convention=args.objective,
            orientation=args.orientation,
        ).value
    except (InfeasibleStatsError, NoDetectionsError) as error:
        logger.info(f"Monte Carlo row d={row.distance_km} km: no certificate ({error.reason})")
        simulated = 1.0
    logger.info(
        f"Monte Carlo row d={row.distance_km} km, AT={row.acquisition_time_s} s: "
        f"analytic i_e_upper={row.i_e_upper:.6g}, simulated={simulated:.6g}"
    )


_COMMANDS = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "sweep-distance": cmd_sweep_distance,
    "sweep-ratio": cmd_sweep_ratio,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        setup_logging(args.log_level)
        _validate_args(args)
        output = _COMMANDS[args.cmd](args)
        if args.output is None:
            sys.stdout.write(output)
        else:
            args.output.write_text(output, newline="\n")
    except Exception as error:
        code = exit_code_for(error)
        sys.stderr.write(json.dumps({"error": reason_for(error), "message": str(error)}) + "\n")
        return code
    return 0
