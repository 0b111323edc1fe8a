"""Deterministic data files, run metadata sidecars and overview figures.

Data files contain no timestamps and use fixed float formatting (17
significant digits), so identical configs reproduce byte-identical
files.  Run metadata (package version, config echo, wall-clock time)
goes to a separate ``.meta.json`` sidecar.  When plotting is enabled a
quick-look PNG is rendered next to each data file.
"""

from __future__ import annotations

import csv
import datetime
import json
from dataclasses import asdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .config import SweepConfig  # noqa: E402
from .engines import CSV_COLUMNS, Row  # noqa: E402

__all__ = ["format_value", "write_rows", "write_sidecar", "render_plot"]


def format_value(x) -> str:
    """Fixed, lossless text form of one cell."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def write_rows(rows: list[Row], path: Path, fmt: str = "csv") -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        with open(path, "w", newline="\n") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([format_value(v) for v in row.as_record().values()])
    elif fmt == "json":
        records = [
            {k: format_value(v) for k, v in row.as_record().items()} for row in rows
        ]
        path.write_text(json.dumps(records, indent=1) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def write_sidecar(cfg: SweepConfig, path: Path, n_rows: int, n_failures: int) -> None:
    """Run metadata next to the data file (the only place a timestamp lives)."""
    from . import __version__

    meta = {
        "generator": f"ringcut {__version__}",
        "written": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": asdict(cfg),
        "n_rows": n_rows,
        "n_failed_points": n_failures,
    }
    side = Path(str(path) + ".meta.json")
    side.write_text(json.dumps(meta, indent=1, default=list) + "\n")


_PROFILE_OBS = ("bond_profile_xx", "bond_profile_zz", "concurrence_profile")


def _curve_key(cfg: SweepConfig, row: Row):
    if cfg.observable in _PROFILE_OBS:
        return (row.observable, f"M={row.M} j={row.j:g} h={row.h:g}")
    parts = [f"M={row.M}", f"h={row.h:g}"]
    if row.site_or_bond_a != "":
        parts.append(f"sites=({row.site_or_bond_a},{row.site_or_bond_b})")
    return (row.observable, " ".join(parts))


def _x_value(cfg: SweepConfig, row: Row):
    if cfg.observable in _PROFILE_OBS:
        return row.site_or_bond_a if isinstance(row.site_or_bond_a, (int, float)) else None
    return row.j


def render_plot(cfg: SweepConfig, rows: list[Row], path: Path) -> None:
    """Quick-look figure: every curve of the sweep on shared axes."""
    curves = {}
    for row in rows:
        x = _x_value(cfg, row)
        if x is None or row.flag.startswith("error"):
            continue
        curves.setdefault(_curve_key(cfg, row), []).append((x, row.value))
    observables = sorted({obs for obs, _ in curves})
    if not observables:
        return
    fig, axes = plt.subplots(
        len(observables), 1, figsize=(7.0, 3.0 * len(observables)), squeeze=False
    )
    for ax, obs in zip(axes[:, 0], observables):
        for (o, label), pts in sorted(curves.items()):
            if o != obs:
                continue
            pts = sorted(pts)
            ax.plot([p[0] for p in pts], [p[1] for p in pts],
                    marker="o", markersize=3, linewidth=1, label=label)
        ax.set_ylabel(obs)
        xlabel = "bond" if cfg.observable in _PROFILE_OBS else "j"
        ax.set_xlabel(xlabel)
        if len({lab for o, lab in curves if o == obs}) <= 12:
            ax.legend(fontsize=7)
        ax.grid(alpha=0.3)
    fig.suptitle(cfg.label or cfg.observable)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
