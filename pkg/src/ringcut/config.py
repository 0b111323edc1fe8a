"""Sweep configuration: schema, loading and validation diagnostics.

A config file (YAML, or JSON as its subset) describes either a single
sweep or a ``sweeps:`` list of them.  Validation returns a list of
(severity, field, message) diagnostics rather than raising, so the
``validate`` command can report everything at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import yaml

from .model import Boundary

__all__ = [
    "OBSERVABLES",
    "ENGINES",
    "SweepConfig",
    "load_config",
    "validate_config",
]

OBSERVABLES = (
    "bond_profile_xx",
    "bond_profile_zz",
    "correlators_vs_j",
    "qd_cc_vs_j",
    "concurrence_profile",
    "fidelity_vs_j",
    "spectrum_scan",
)
ENGINES = ("finite", "tlimit")

_BOND_OBSERVABLES = ("bond_profile_xx", "bond_profile_zz", "concurrence_profile")
_PAIR_OBSERVABLES = ("correlators_vs_j", "qd_cc_vs_j")


@dataclass(frozen=True)
class SweepConfig:
    """One parameter sweep producing one data file."""

    observable: str
    engine: str
    j: tuple
    h: tuple
    output: str
    M: tuple = ()
    boundary: str = "ring_parity_exact"
    bonds: tuple = ()
    pairs: tuple = ()
    format: str = "csv"
    plot: bool = True
    label: str = ""

    def boundary_enum(self) -> Boundary:
        return Boundary(self.boundary)


def _as_tuple(x):
    if x is None:
        return ()
    if isinstance(x, (list, tuple)):
        return tuple(x)
    return (x,)


def _coerce(raw: dict, index: int | None) -> SweepConfig:
    known = {
        "observable", "engine", "j", "h", "M", "boundary",
        "bonds", "pairs", "output", "format", "plot", "label",
    }
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config fields: {sorted(unknown)}")
    label = str(raw.get("label", "")) or (f"sweep{index}" if index is not None else "")
    return SweepConfig(
        observable=str(raw.get("observable", "")),
        engine=str(raw.get("engine", "")),
        j=_as_tuple(raw.get("j")),
        h=_as_tuple(raw.get("h")),
        M=_as_tuple(raw.get("M")),
        boundary=str(raw.get("boundary", "ring_parity_exact")),
        bonds=_as_tuple(raw.get("bonds")),
        pairs=tuple(tuple(p) if isinstance(p, (list, tuple)) else (p,)
                    for p in _as_tuple(raw.get("pairs"))),
        output=str(raw.get("output", "")),
        format=str(raw.get("format", "csv")),
        plot=bool(raw.get("plot", True)),
        label=label,
    )


def load_config(path) -> list[SweepConfig]:
    """Parse a config file into its sweeps (schema errors raise ValueError)."""
    text = Path(path).read_text()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ValueError(f"cannot parse config: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError("config root must be a mapping")
    if "sweeps" in data:
        items = data["sweeps"]
        if not isinstance(items, list) or not items:
            raise ValueError("field 'sweeps' must be a non-empty list")
        return [_coerce(item, i) for i, item in enumerate(items)]
    return [_coerce(data, None)]


def _is_half_integer(x) -> bool:
    try:
        return Fraction(x).limit_denominator(10**6).denominator == 2
    except (TypeError, ValueError):
        return False


def _check_numbers(diags, prefix, name, values, minimum=None):
    if not values:
        diags.append(("error", f"{prefix}{name}", f"grid '{name}' is missing or empty"))
        return False
    for v in values:
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            diags.append(("error", f"{prefix}{name}", f"grid '{name}' has non-numeric entry {v!r}"))
            return False
        if minimum is not None and v < minimum:
            diags.append(("error", f"{prefix}{name}", f"grid '{name}' entry {v} below minimum {minimum}"))
            return False
    return True


def validate_config(sweeps: list[SweepConfig]) -> list[tuple[str, str, str]]:
    """Schema and physics sanity diagnostics for every sweep.

    Returns (severity, field, message) tuples; severity is 'error' or
    'warning'.  An error-free config is runnable.
    """
    diags = []
    for i, cfg in enumerate(sweeps):
        prefix = f"sweeps[{i}]." if len(sweeps) > 1 or cfg.label else ""
        if cfg.observable not in OBSERVABLES:
            diags.append(("error", f"{prefix}observable",
                          f"unknown observable {cfg.observable!r}; expected one of {OBSERVABLES}"))
            continue
        if cfg.engine not in ENGINES:
            diags.append(("error", f"{prefix}engine",
                          f"unknown engine {cfg.engine!r}; expected one of {ENGINES}"))
            continue
        _check_numbers(diags, prefix, "j", cfg.j, minimum=0.0)
        _check_numbers(diags, prefix, "h", cfg.h)
        if cfg.engine == "tlimit":
            if cfg.M:
                diags.append(("error", f"{prefix}M",
                              "tlimit engine rejects M-dependent requests; drop the M grid"))
        else:
            if _check_numbers(diags, prefix, "M", cfg.M, minimum=2):
                for m in cfg.M:
                    if int(m) != m:
                        diags.append(("error", f"{prefix}M", f"M entry {m} is not an integer"))
        if cfg.boundary not in ("ring_naive", "ring_parity_exact"):
            diags.append(("error", f"{prefix}boundary",
                          f"boundary must be ring_naive or ring_parity_exact, got {cfg.boundary!r}"))
        if cfg.observable in _BOND_OBSERVABLES:
            if not cfg.bonds:
                diags.append(("error", f"{prefix}bonds",
                              f"observable {cfg.observable} needs a non-empty 'bonds' grid"))
            elif any(int(b) != b for b in cfg.bonds):
                diags.append(("error", f"{prefix}bonds", "bond indices must be integers"))
        if cfg.observable in _PAIR_OBSERVABLES:
            if not cfg.pairs:
                diags.append(("error", f"{prefix}pairs",
                              f"observable {cfg.observable} needs a non-empty 'pairs' list"))
            for p in cfg.pairs:
                if len(p) != 2 or not all(_is_half_integer(x) for x in p):
                    diags.append(("error", f"{prefix}pairs",
                                  f"pair {p!r} must hold two half-integer site labels"))
                elif p[0] >= p[1]:
                    diags.append(("error", f"{prefix}pairs",
                                  f"pair {p!r} must be ordered left < right"))
        if cfg.observable == "fidelity_vs_j" and cfg.engine != "finite":
            diags.append(("error", f"{prefix}engine",
                          "fidelity_vs_j is defined for finite lattices only"))
        if not cfg.output:
            diags.append(("error", f"{prefix}output", "field 'output' is missing"))
        if cfg.format not in ("csv", "json"):
            diags.append(("error", f"{prefix}format",
                          f"format must be csv or json, got {cfg.format!r}"))
        # physics sanity
        if (cfg.engine == "finite" and cfg.boundary == "ring_naive"
                and any(hh == 0.0 for hh in cfg.h)
                and any(m % 2 == 0 for m in cfg.M if isinstance(m, (int, float)))):
            diags.append(("warning", f"{prefix}h",
                          "h = 0 with even M on the naive ring places modes exactly at "
                          "zero energy; affected rows will carry the zero_mode flag"))
        if cfg.observable in _BOND_OBSERVABLES and cfg.engine == "finite":
            for m in cfg.M:
                span = max((abs(b) for b in cfg.bonds), default=0) + 1
                if cfg.bonds and span > m:
                    diags.append(("error", f"{prefix}bonds",
                                  f"bond range reaches site beyond the lattice for M = {m}"))
    return diags
