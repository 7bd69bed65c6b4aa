"""Command-line front end.

Subcommands:
    run      one protocol instance, human-readable report or JSON
    sweep    CSV over an |alpha|^2 grid (exact vs closed form per row)
    sample   Monte Carlo estimate of the success probability
    compare  efficiency of this protocol vs procrustean and asymptotic
    hom      single two-particle beam-splitter experiment

Exit codes: 0 success, 1 I/O failure, 2 usage/config error, 3 self-check
failure.  All numeric output uses 12 significant digits and carries no
timestamps, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

from .analysis import binary_entropy, monte_carlo
from .fock import FockError, Location, Mode, Pair, Party, Spin, Statistics, from_modes
from .optics import DetectorModel, OutcomeKind, beam_splitter, measure_path
from .protocol import (
    ProtocolConfig,
    closed_form_cumulative,
    closed_form_cumulative_unflipped,
    closed_form_efficiency,
    limit_state_check,
    run_protocol,
)

SWEEP_COLUMNS = [
    "alpha2",
    "beta2",
    "n",
    "statistics",
    "flip",
    "detector",
    "p_exact",
    "p_closed",
    "entropy_final",
    "efficiency",
    "procrustean",
    "asymptotic",
]

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_SELF_CHECK = 3


def _fmt(value: float) -> str:
    return "%.12g" % value


def _amplitudes(alpha2: float, phase: float) -> tuple[complex, complex]:
    if not 0.0 <= alpha2 <= 1.0:
        raise FockError("--alpha2 must lie in [0, 1], got %.12g" % alpha2)
    alpha = math.sqrt(alpha2) * cmath.exp(1j * phase)
    beta = complex(math.sqrt(1.0 - alpha2))
    return alpha, beta


def _config(args: argparse.Namespace) -> ProtocolConfig:
    alpha, beta = _amplitudes(args.alpha2, args.alpha_phase)
    return ProtocolConfig(
        alpha=alpha,
        beta=beta,
        n=args.n,
        statistics=Statistics(args.statistics),
        detector=DetectorModel(args.detector),
        apply_flip=not args.no_flip,
    )


def _grid(lo: float, hi: float, step: float) -> List[float]:
    if step <= 0:
        raise FockError("grid step must be positive")
    values = []
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    for i in range(max(count, 0)):
        values.append(round(lo + i * step, 12))
    return [v for v in values if v <= hi + 1e-9]


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


# ---------------------------------------------------------------- run


def cmd_run(args: argparse.Namespace) -> int:
    config = _config(args)
    report = run_protocol(config)
    closed_eff = closed_form_efficiency(config.alpha, config.beta)
    residual = limit_state_check(report)
    if args.json:
        doc = {
            "alpha2": args.alpha2,
            "beta2": 1.0 - args.alpha2,
            "n": config.n,
            "statistics": config.statistics.value,
            "detector": config.detector.value,
            "flip": config.apply_flip,
            "rounds": [
                {
                    "slot": r.slot,
                    "kept_probability": r.kept_probability,
                    "cumulative_probability": r.cumulative_probability,
                }
                for r in report.rounds
            ],
            "cumulative_probability": report.cumulative_probability,
            "closed_form_cumulative": report.closed_form_cumulative,
            "final_entropy_ebits": report.final_entropy_ebits,
            "efficiency": report.efficiency,
            "closed_form_efficiency": closed_eff,
            "square_branch_weight": residual,
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK

    print("slot  kept_probability  cumulative_probability")
    for r in report.rounds:
        print(
            "%-5d %-17s %s"
            % (r.slot, _fmt(r.kept_probability), _fmt(r.cumulative_probability))
        )
    print("cumulative_probability  %s" % _fmt(report.cumulative_probability))
    print("closed_form_cumulative  %s" % _fmt(report.closed_form_cumulative))
    print("final_entropy_ebits     %s" % _fmt(report.final_entropy_ebits))
    print("efficiency              %s" % _fmt(report.efficiency))
    print("closed_form_efficiency  %s" % _fmt(closed_eff))
    print("square_branch_weight    %s" % _fmt(residual))
    return EXIT_OK


# ---------------------------------------------------------------- sweep


def _sweep_row(
    alpha2: float, statistics: Statistics, args: argparse.Namespace
) -> List[str]:
    alpha, beta = _amplitudes(alpha2, args.alpha_phase)
    config = ProtocolConfig(
        alpha=alpha,
        beta=beta,
        n=args.n,
        statistics=statistics,
        detector=DetectorModel(args.detector),
        apply_flip=not args.no_flip,
    )
    report = run_protocol(config)
    beta2 = 1.0 - alpha2
    return [
        _fmt(alpha2),
        _fmt(beta2),
        str(args.n),
        statistics.value,
        str(config.apply_flip).lower(),
        config.detector.value,
        _fmt(report.cumulative_probability),
        _fmt(report.closed_form_cumulative),
        _fmt(report.final_entropy_ebits),
        _fmt(report.efficiency),
        _fmt(2.0 * min(alpha2, beta2)),
        _fmt(binary_entropy(alpha2)),
    ]


def cmd_sweep(args: argparse.Namespace) -> int:
    grid = _grid(args.alpha2_min, args.alpha2_max, args.alpha2_step)
    if args.statistics == "both":
        stats = [Statistics.FERMION, Statistics.BOSON]
    else:
        stats = [Statistics(args.statistics)]
    points = [(a2, s) for a2 in grid for s in stats]
    # Grid points are independent pure computations; rows come back in
    # deterministic grid order regardless of completion order.
    with ThreadPoolExecutor() as pool:
        rows = list(pool.map(lambda p: _sweep_row(p[0], p[1], args), points))
    try:
        out, should_close = _open_out(args.out)
    except OSError as exc:
        print("cannot open output: %s" % exc, file=sys.stderr)
        return EXIT_IO
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        writer.writerows(rows)
    finally:
        if should_close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------- sample


def cmd_sample(args: argparse.Namespace) -> int:
    config = _config(args)
    report = monte_carlo(config, args.trials, args.seed)
    if config.apply_flip:
        closed = closed_form_cumulative(config.alpha, config.beta, len(list(config.measured_slots)))
    else:
        closed = closed_form_cumulative_unflipped(
            config.alpha, config.beta, len(list(config.measured_slots))
        )
    print("trials       %d" % report.trials)
    print("successes    %d" % report.successes)
    print("estimate     %s" % _fmt(report.estimate))
    print("std_error    %s" % _fmt(report.std_error))
    print("seed         %d" % report.seed)
    print("closed_form  %s" % _fmt(closed))
    if args.check:
        deviation = abs(report.estimate - closed)
        if deviation > 5.0 * report.std_error:
            print(
                "self-check failed: |estimate - closed_form| = %s > 5 * std_error"
                % _fmt(deviation),
                file=sys.stderr,
            )
            return EXIT_SELF_CHECK
    return EXIT_OK


# ---------------------------------------------------------------- compare


def cmd_compare(args: argparse.Namespace) -> int:
    grid = _grid(args.alpha2_min, args.alpha2_max, args.alpha2_step)
    try:
        out, should_close = _open_out(args.out)
    except OSError as exc:
        print("cannot open output: %s" % exc, file=sys.stderr)
        return EXIT_IO
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["alpha2", "protocol", "procrustean", "asymptotic"])
        for a2 in grid:
            writer.writerow(
                [
                    _fmt(a2),
                    _fmt(a2 * (1.0 - a2)),
                    _fmt(2.0 * min(a2, 1.0 - a2)),
                    _fmt(binary_entropy(a2)),
                ]
            )
    finally:
        if should_close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------- hom


def cmd_hom(args: argparse.Namespace) -> int:
    statistics = Statistics(args.statistics)
    spin = {"up": Spin.UP, "down": Spin.DOWN}
    state = from_modes(
        statistics,
        [
            Mode(Party.BOB, Pair.LEFT, 1, Location.SOURCE_ARM, spin[args.spin_left]),
            Mode(Party.BOB, Pair.RIGHT, 1, Location.SOURCE_ARM, spin[args.spin_right]),
        ],
    )
    state = beam_splitter(state, 1)
    results = {res.outcome.kind: res.probability for res in measure_path(state, 1)}
    for kind in (OutcomeKind.ANTIBUNCH, OutcomeKind.BUNCH_LEFT, OutcomeKind.BUNCH_RIGHT):
        print("%-12s %s" % (kind.value, _fmt(results.get(kind, 0.0))))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_state_flags(
    parser: argparse.ArgumentParser, stats_choices: Sequence[str] = ("fermion", "boson")
) -> None:
    parser.add_argument("--alpha2", type=float, default=0.5, help="|alpha|^2 of each pair (default 0.5)")
    parser.add_argument("--alpha-phase", type=float, default=0.0, help="phase of alpha in radians (default 0)")
    parser.add_argument("--n", type=int, default=6, help="particles per party per pair (default 6)")
    parser.add_argument(
        "--statistics",
        choices=list(stats_choices),
        default="fermion",
        help="particle statistics (default fermion)",
    )
    parser.add_argument(
        "--detector",
        choices=["nonabsorbing", "absorbing"],
        default="nonabsorbing",
        help="detector model (default nonabsorbing)",
    )
    parser.add_argument("--no-flip", action="store_true", help="skip the pre-splitter spin flip")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statconc",
        description="Exact simulator of statistics-driven entanglement concentration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one protocol instance")
    _add_state_flags(p_run)
    p_run.add_argument("--json", action="store_true", help="emit a JSON document")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="CSV sweep over an |alpha|^2 grid")
    _add_state_flags(p_sweep, stats_choices=("fermion", "boson", "both"))
    p_sweep.add_argument("--alpha2-min", type=float, default=0.1)
    p_sweep.add_argument("--alpha2-max", type=float, default=0.9)
    p_sweep.add_argument("--alpha2-step", type=float, default=0.1)
    p_sweep.add_argument("--out", help="output path (default stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_sample = sub.add_parser("sample", help="Monte Carlo estimate of the success probability")
    _add_state_flags(p_sample)
    p_sample.add_argument("--trials", type=int, default=100000)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--check", action="store_true",
                          help="exit 3 if the estimate strays beyond 5 standard errors")
    p_sample.set_defaults(func=cmd_sample)

    p_compare = sub.add_parser("compare", help="efficiency comparison table")
    p_compare.add_argument("--alpha2-min", type=float, default=0.01)
    p_compare.add_argument("--alpha2-max", type=float, default=0.99)
    p_compare.add_argument("--alpha2-step", type=float, default=0.01)
    p_compare.add_argument("--out", help="output path (default stdout)")
    p_compare.set_defaults(func=cmd_compare)

    p_hom = sub.add_parser("hom", help="two-particle beam-splitter experiment")
    p_hom.add_argument(
        "--statistics", choices=["fermion", "boson"], default="fermion"
    )
    p_hom.add_argument("--spin-left", choices=["up", "down"], default="up")
    p_hom.add_argument("--spin-right", choices=["up", "down"], default="up")
    p_hom.set_defaults(func=cmd_hom)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FockError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print("I/O error: %s" % exc, file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
