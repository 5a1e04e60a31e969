"""Run configuration: flat ``key = value`` files plus command-line overrides.

Precedence is command line > file > scenario defaults > global defaults.
Lines starting with ``#`` are comments. Triples are written ``0,0,3``.
"""
from __future__ import annotations

import os
from pathlib import Path

from .errors import ConfigError
from .states import as_helicity

SCENARIOS = ("packet", "axioms", "weyl_fw", "tail")
OUTPUT_ENV = "LIGHTCONE_OUTPUT_DIR"
DEFAULT_SEED = 20240611


def _triple(text: str):
    parts = [p for p in str(text).replace(" ", "").split(",") if p]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated numbers, got {text!r}")
    return tuple(float(p) for p in parts)


def _positive_int(text):
    value = int(text)
    if value <= 0:
        raise ValueError("must be positive")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise ValueError("must be positive")
    return value


PARSERS = {
    "scenario": str,
    "seed": int,
    "n": _positive_int,
    "L": _positive_float,
    "k0": _triple,
    "center": _triple,
    "width": _positive_float,
    "helicity": lambda s: as_helicity(s),
    "T": float,
    "dt": _positive_float,
    "trials": _positive_int,
    "region": str,
    "tail_radius": _positive_float,
    "max_memory_mb": _positive_float,
    "output_dir": str,
    "save_state": str,
}

GLOBAL_DEFAULTS = {
    "seed": DEFAULT_SEED,
    "helicity": "0",
    "center": "0,0,0",
    "max_memory_mb": "2048",
    "save_state": "",
}

SCENARIO_DEFAULTS = {
    "packet": {"n": "32", "L": "20", "k0": "0,0,3", "width": "2", "T": "2", "dt": "0.1",
               "region": "halfspace(z, 0)"},
    "axioms": {"n": "16", "L": "10", "trials": "50"},
    "weyl_fw": {"n": "16", "L": "10", "trials": "10", "T": "1"},
    "tail": {"n": "64", "L": "20", "T": "2", "dt": "0.1", "region": "ball(0, 0, 0, 0.125L)"},
}

# arrays of n^3 complex128 alive at peak in the heaviest scenario step
_PEAK_ARRAYS = 24


def read_config_file(path) -> dict:
    raw = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        raw[key] = value
    return raw


def parse_overrides(items) -> dict:
    raw = {}
    for item in items:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not key=value")
        key, value = item.split("=", 1)
        raw[key.strip()] = value.strip()
    return raw


def resolve(scenario: str, file_values: dict = None, overrides: dict = None) -> dict:
    """Merge layers and parse every value; errors name the offending key."""
    if scenario not in SCENARIOS:
        raise ConfigError(f"scenario: unknown scenario {scenario!r} (choose from {', '.join(SCENARIOS)})")
    merged = dict(GLOBAL_DEFAULTS)
    merged.update(SCENARIO_DEFAULTS[scenario])
    merged.update(file_values or {})
    merged.update(overrides or {})
    merged["scenario"] = scenario
    merged.setdefault("output_dir", os.environ.get(OUTPUT_ENV, "lightcone_output"))
    cfg = {}
    for key, value in merged.items():
        if key not in PARSERS:
            raise ConfigError(f"{key}: unknown configuration key")
        try:
            cfg[key] = PARSERS[key](value)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{key}: invalid value {value!r} ({exc})") from None
    n = cfg["n"]
    if n < 4 or n % 2:
        raise ConfigError(f"n: must be even and >= 4, got {n}")
    needed = _PEAK_ARRAYS * 16 * n**3 / 2**20
    if needed > cfg["max_memory_mb"]:
        raise ConfigError(
            f"n: grid {n}^3 needs about {needed:.0f} MB, above max_memory_mb={cfg['max_memory_mb']:g}"
        )
    return cfg
