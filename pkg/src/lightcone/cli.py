"""Command-line interface.

    lightcone run <scenario> [--config FILE] [key=value ...]
    lightcone verify [seed=N] [output_dir=DIR]
    lightcone inspect <statefile>
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import suite
from .config import DEFAULT_SEED, OUTPUT_ENV, SCENARIOS, parse_overrides, read_config_file, resolve
from .errors import ConfigError, LightconeError, StateFileError
from .scenarios import CSV_COLUMNS, RUNNERS
from .stateio import describe, load_state


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, np.generic):
        return value.item()
    return value


def dump_json(data, path: Path) -> None:
    path.write_text(json.dumps(_jsonable(data), sort_keys=True, indent=2) + "\n")


def _fmt(value) -> str:
    if value is None:
        return ""
    return format(float(value), ".17g")


def write_csv(rows, path: Path) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])


def _print_checks(checks: dict) -> bool:
    ok = True
    for name, c in checks.items():
        rel = ">=" if c["kind"] == "min" else "<="
        status = "PASS" if c["pass"] else "FAIL"
        print(f"{status}  {name}: {c['value']:.3e} {rel} {c['bound']:.1e}")
        ok &= c["pass"]
    return ok


def cmd_run(args) -> int:
    file_values = read_config_file(args.config) if args.config else {}
    cfg = resolve(args.scenario, file_values, parse_overrides(args.overrides))
    rng = np.random.default_rng(cfg["seed"])
    rows, summary = RUNNERS[args.scenario](cfg, rng)
    out = Path(cfg["output_dir"])
    out.mkdir(parents=True, exist_ok=True)
    summary = {"scenario": args.scenario, "config": cfg, **summary}
    summary["passed"] = all(c["pass"] for c in summary["checks"].values())
    if rows:
        write_csv(rows, out / f"{args.scenario}.csv")
    dump_json(summary, out / f"{args.scenario}.json")
    _print_checks(summary["checks"])
    print(f"wrote {out / (args.scenario + '.json')}")
    return 0 if summary["passed"] else 1


def cmd_verify(args) -> int:
    overrides = parse_overrides(args.overrides)
    unknown = set(overrides) - {"seed", "output_dir"}
    if unknown:
        raise ConfigError(f"{sorted(unknown)[0]}: verify accepts only seed and output_dir")
    try:
        seed = int(overrides.get("seed", DEFAULT_SEED))
    except ValueError:
        raise ConfigError(f"seed: invalid value {overrides['seed']!r}") from None
    out = Path(overrides.get("output_dir", os.environ.get(OUTPUT_ENV, "lightcone_output")))
    report = suite.run_all(seed)
    report["passed"] = all(c["pass"] for c in report["checks"].values())
    out.mkdir(parents=True, exist_ok=True)
    dump_json(report, out / "verify.json")
    _print_checks(report["checks"])
    print(f"wrote {out / 'verify.json'}")
    return 0 if report["passed"] else 1


def cmd_inspect(args) -> int:
    state = load_state(args.statefile)
    for key, value in describe(state).items():
        print(f"{key}: {value}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lightcone", description="Massless-particle spectral toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario and write CSV/JSON results")
    run.add_argument("scenario", choices=SCENARIOS)
    run.add_argument("--config", help="flat key = value configuration file")
    run.add_argument("overrides", nargs="*", metavar="key=value")
    run.set_defaults(func=cmd_run)

    verify = sub.add_parser("verify", help="run the full property suite")
    verify.add_argument("overrides", nargs="*", metavar="key=value")
    verify.set_defaults(func=cmd_verify)

    inspect = sub.add_parser("inspect", help="print the header of a state file")
    inspect.add_argument("statefile")
    inspect.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LightconeError, OSError) as exc:
        kind = "state file" if isinstance(exc, StateFileError) else "error"
        print(f"lightcone: {kind}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
