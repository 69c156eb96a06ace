"""Command line entry points: scenario runs, script validation, live service."""
from __future__ import annotations

import sys
from dataclasses import replace
from pathlib import Path

import click

from .config import Config, load_config
from .errors import ContractError, NumericError, ScriptError
from .scenario import parse_script, run_scenario, write_csv, write_events
from .service import serve as serve_service

EXIT_PARSE = 2
EXIT_NUMERIC = 3


@click.group()
def main():
    """Proximity-coupled qubit sandbox."""


@main.command()
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False),
              help="CSV time series destination.")
@click.option("--events", "events_path", type=click.Path(dir_okay=False),
              help="Line-delimited JSON event log destination.")
@click.option("--seed", type=int, default=None, help="Override the script seed.")
@click.option("--dt", type=float, default=None, help="Override the script timestep.")
def run(script, out_path, events_path, seed, dt):
    """Replay SCRIPT headlessly and export its time series."""
    text = Path(script).read_text()
    try:
        parsed = parse_script(text)
    except ScriptError as err:
        click.echo(f"{script}: {err}", err=True)
        sys.exit(EXIT_PARSE)
    try:
        result = run_scenario(parsed, seed=seed, dt=dt)
    except (NumericError, ContractError) as err:
        click.echo(f"{script}: run halted: {err}", err=True)
        sys.exit(EXIT_NUMERIC)
    write_csv(out_path, result.columns, result.rows)
    if events_path:
        write_events(events_path, result.events)
    click.echo(f"{len(result.rows)} rows -> {out_path}"
               + (f", {len(result.events)} events -> {events_path}" if events_path else ""))


@main.command()
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
def validate(script):
    """Parse SCRIPT and report problems without running it."""
    try:
        parsed = parse_script(Path(script).read_text())
    except ScriptError as err:
        click.echo(f"{script}: {err}", err=True)
        sys.exit(EXIT_PARSE)
    click.echo(f"{script}: ok ({len(parsed.qubits)} qubits, "
               f"{len(parsed.commands)} commands)")


@main.command()
@click.option("--host", default=None, help="Bind address.")
@click.option("--port", type=int, default=None, envvar="QSANDBOX_PORT",
              help="Bind port (env QSANDBOX_PORT).")
@click.option("--config", "config_path", default=None, envvar="QSANDBOX_CONFIG",
              type=click.Path(exists=True, dir_okay=False),
              help="JSON config file (env QSANDBOX_CONFIG).")
@click.option("--static", "static_dir", default=None,
              type=click.Path(file_okay=False),
              help="Directory of cockpit assets to serve at / (default frontend/dist).")
def serve(host, port, config_path, static_dir):
    """Run the live scene service with the browser cockpit protocol."""
    try:
        config = load_config(config_path) if config_path else Config()
        overrides = {}
        if host is not None:
            overrides["host"] = host
        if port is not None:
            overrides["port"] = port
        if overrides:
            config = replace(config, **overrides)
    except ContractError as err:
        click.echo(str(err), err=True)
        sys.exit(EXIT_PARSE)
    serve_service(config, static_dir=static_dir)


if __name__ == "__main__":
    main()
