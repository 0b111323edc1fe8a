"""Command-line front end: run, validate, and materialize preset sweeps.

Exit codes: 0 success, 1 configuration error, 2 run completed with
per-point failures (recorded in the affected rows).
"""

from __future__ import annotations

import importlib.resources
import os
import sys
from pathlib import Path

import click

from .config import load_config, validate_config

PRESETS = ("fig2", "fig3", "fig4", "fig5", "fig6")


def _resolve_threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("RINGCUT_THREADS", "")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise click.ClickException(f"RINGCUT_THREADS={env!r} is not an integer")
    return 1


def _load_and_check(config_path: str):
    try:
        sweeps = load_config(config_path)
    except (OSError, ValueError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(1)
    diags = validate_config(sweeps)
    for severity, field, message in diags:
        click.echo(f"{severity}: {field}: {message}", err=True)
    if any(severity == "error" for severity, _, _ in diags):
        sys.exit(1)
    return sweeps


def _execute(sweeps, out_dir: Path, threads: int) -> int:
    from .engines import compute_rows
    from .report import render_plot, write_rows, write_sidecar

    total_failures = 0
    for cfg in sweeps:
        rows, failures = compute_rows(cfg, threads=threads)
        total_failures += failures
        out_path = Path(cfg.output)
        if not out_path.is_absolute():
            out_path = out_dir / out_path
        write_rows(rows, out_path, cfg.format)
        write_sidecar(cfg, out_path, len(rows), failures)
        if cfg.plot:
            render_plot(cfg, rows, out_path.with_suffix(".png"))
        status = "ok" if failures == 0 else f"{failures} failed points"
        click.echo(f"{cfg.label or cfg.observable}: {len(rows)} rows -> {out_path} ({status})")
    return 2 if total_failures else 0


@click.group()
def main():
    """Exact spin correlations and ring-cut fidelity of a defected XX ring."""


@main.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--threads", type=int, default=None,
              help="Sweep-level parallelism (fallback: RINGCUT_THREADS, then 1).")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".",
              help="Directory for relative output paths.")
def run(config, threads, out_dir):
    """Execute every sweep in CONFIG, writing data, metadata and figures."""
    sweeps = _load_and_check(config)
    sys.exit(_execute(sweeps, Path(out_dir), _resolve_threads(threads)))


@main.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
def validate(config):
    """Report schema and physics sanity diagnostics for CONFIG."""
    try:
        sweeps = load_config(config)
    except (OSError, ValueError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(1)
    diags = validate_config(sweeps)
    if not diags:
        click.echo(f"{config}: ok ({len(sweeps)} sweep(s))")
        sys.exit(0)
    for severity, field, message in diags:
        click.echo(f"{severity}: {field}: {message}")
    sys.exit(1 if any(s == "error" for s, _, _ in diags) else 0)


@main.command()
@click.argument("name", type=click.Choice(PRESETS))
@click.option("--out", type=click.Path(file_okay=False), default=".",
              help="Directory receiving the config copy and its outputs.")
@click.option("--threads", type=int, default=None)
def preset(name, out, threads):
    """Materialize and run the named preset sweep."""
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    text = importlib.resources.files("ringcut").joinpath(f"presets/{name}.yaml").read_text()
    config_path = out_dir / f"{name}.yaml"
    config_path.write_text(text)
    sweeps = _load_and_check(str(config_path))
    sys.exit(_execute(sweeps, out_dir, _resolve_threads(threads)))


if __name__ == "__main__":
    main()
