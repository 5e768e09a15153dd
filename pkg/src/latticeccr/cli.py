"""Command line entry point.

    latticeccr <experiment> [--config cfg.json] [--set key=value ...] [--out dir]

Exit codes: 0 success, 2 config error, 3 numerical-tolerance failure,
4 leakage failure. Every run (including failed ones) leaves a JSON manifest
next to the dataset with a machine-readable outcome.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .errors import ConfigError, LeakageError, ToleranceError
from .experiments import EXPERIMENTS, parse_config, run_experiment


def _apply_override(raw: dict, assignment: str) -> None:
    if "=" not in assignment:
        raise ConfigError(f"--set expects key=value, got {assignment!r}")
    dotted, text = assignment.split("=", 1)
    keys = dotted.split(".")
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        value = text
    node = raw
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise ConfigError(f"--set path {dotted!r} crosses a non-object key")
    node[keys[-1]] = value


def _error_manifest(out_dir: str, experiment: str, code: int, reason: str) -> None:
    payload = {
        "experiment": experiment,
        "version": __version__,
        "timestamp": {"started_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())},
        "error": {"exit_code": code, "reason": reason},
    }
    try:
        path = os.path.join(out_dir, f"{experiment}_manifest.json")
        with open(path, "w", encoding="ascii") as handle:
            handle.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    except OSError:
        pass  # manifest is best-effort once the run already failed


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="latticeccr",
        description="Lattice quantum mechanics experiments: spectra, ladders, "
        "Bloch oscillations, and canonical-commutator diagnostics.",
    )
    parser.add_argument("--version", action="version", version=f"latticeccr {__version__}")
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", help="JSON config file (defaults applied on top)")
        p.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override a config key, e.g. --set lattice.M=64 --set potential.F=0.5",
        )
        p.add_argument("--out", default=".", help="output directory (default: current)")
    args = parser.parse_args(argv)

    out_dir = args.out
    try:
        if args.config:
            with open(args.config, "r", encoding="utf-8") as handle:
                raw = json.load(handle)
            if not isinstance(raw, dict):
                raise ConfigError("config must be a JSON object")
        else:
            raw = {}
        raw["experiment"] = args.experiment
        for assignment in args.overrides:
            _apply_override(raw, assignment)
        cfg = parse_config(json.dumps(raw))
        os.makedirs(out_dir, exist_ok=True)
        _, rows, manifest = run_experiment(cfg, out_dir=out_dir)
    except json.JSONDecodeError as err:
        print(f"config error: line {err.lineno}, column {err.colno}: {err.msg}", file=sys.stderr)
        _error_manifest(out_dir, args.experiment, 2, str(err))
        return 2
    except ToleranceError as err:
        print(f"tolerance failure: {err}", file=sys.stderr)
        _error_manifest(out_dir, args.experiment, 3, str(err))
        return 3
    except LeakageError as err:
        print(f"leakage failure: {err}", file=sys.stderr)
        _error_manifest(out_dir, args.experiment, 4, str(err))
        return 4
    except (ValueError, OSError) as err:
        # ConfigError subclasses ValueError; core parameter errors land here too
        print(f"config error: {err}", file=sys.stderr)
        _error_manifest(out_dir, args.experiment, 2, str(err))
        return 2
    dataset = os.path.join(out_dir, manifest.dataset)
    print(f"{args.experiment}: {len(rows)} rows -> {dataset}")
    for warning in manifest.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
