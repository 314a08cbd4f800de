"""Command line interface.

    paramp-sim run <config.json> [--out DIR] [--workers N] [--tol X]
    paramp-sim preset <name> [--out DIR] [--workers N] [--tol X]
    paramp-sim power --cp VAL --units {mt,hz} (--watts P | --lambda-hz L)

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 sweep completed with failed points.
"""

from __future__ import annotations

import argparse
import json
import sys

from .constants import TWO_PI
from .errors import ConfigError, NumericalError
from .power import (PowerSpec, modulation_amplitude_from_power,
                    required_power)
from .presets import PRESETS
from .runner import run_scenario

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_PARTIAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paramp-sim",
        description="Hybrid spin-cavity parametric amplifier simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a scenario configuration")
    run_p.add_argument("config", help="path to a JSON configuration")
    _common(run_p)

    preset_p = sub.add_parser("preset", help="execute a bundled preset")
    preset_p.add_argument("name", choices=sorted(PRESETS),
                          help="preset scenario name")
    _common(preset_p)

    power_p = sub.add_parser("power",
                             help="pump power / modulation amplitude converter")
    power_p.add_argument("--cp", type=float, required=True,
                         help="conversion factor (mT/sqrt(W) or Hz/sqrt(W))")
    power_p.add_argument("--units", choices=["mt", "hz"], required=True)
    group = power_p.add_mutually_exclusive_group(required=True)
    group.add_argument("--watts", type=float,
                       help="pump power; prints the resulting amplitude")
    group.add_argument("--lambda-hz", type=float, dest="lambda_hz",
                       help="target amplitude in Hz; prints the power")
    return parser


def _common(p: argparse.ArgumentParser):
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--workers", type=int, default=1,
                   help="concurrent sweep workers")
    p.add_argument("--tol", type=float, default=None,
                   help="integrator relative tolerance override")


def _run(config, args) -> int:
    try:
        manifest = run_scenario(config, args.out, workers=args.workers,
                                rel_tol=args.tol)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    summary = {
        "name": manifest["name"],
        "outputs": manifest["outputs"],
        "results": manifest["results"],
        "failed_points": len(manifest["failed_points"]),
        "wall_time_s": round(manifest["wall_time_s"], 3),
    }
    print(json.dumps(summary, indent=2, sort_keys=True, default=float))
    return EXIT_PARTIAL if manifest["failed_points"] else EXIT_OK


def _power(args) -> int:
    try:
        if args.watts is not None:
            spec = PowerSpec(conversion_factor=args.cp, units=args.units,
                             power=args.watts)
            lam = modulation_amplitude_from_power(spec)
            out = {"watts": args.watts, "lambda_hz": lam / TWO_PI,
                   "lambda_rad_s": lam}
        else:
            spec = PowerSpec(conversion_factor=args.cp, units=args.units)
            watts = required_power(TWO_PI * args.lambda_hz, spec)
            out = {"lambda_hz": args.lambda_hz, "watts": watts}
    except Exception as exc:  # argument errors only
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _run(args.config, args)
    if args.command == "preset":
        return _run({"preset": args.name}, args)
    return _power(args)


if __name__ == "__main__":
    sys.exit(main())
