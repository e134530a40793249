#!/usr/bin/env python3
"""
Command-line interface for the spatial birth process growth lab.
"""
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional

import numpy as np
import typer
from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

dotenv_path = project_root / '.env'
if dotenv_path.exists():
    load_dotenv(dotenv_path=dotenv_path)

from utils.logging import setup_logging
from utils.errors import BirthProcessError, EXIT_FAILURE, exit_code_for
from config.settings import settings
from config.run_config import RunConfig
from engine.simulation import simulate as run_simulation
from workflow.figures import reproduce_figure
from workflow.verification import run_verification

setup_logging(level=settings.log_level, log_to_console=True, log_file_path=settings.log_file_path)
logger = logging.getLogger(__name__)

console = Console()
cli_app = typer.Typer(help="Exact simulation and closed-form checks for spatial birth processes.")


def _fail(exc: BaseException) -> None:
    code = exit_code_for(exc)
    logger.error(f"Command failed with exit code {code}: {exc}")
    console.print(f"[bold red]Error:[/bold red] {exc}")
    raise typer.Exit(code=code)


def _load_config(config_path: Optional[Path], overrides: dict) -> RunConfig:
    base = RunConfig.from_file(config_path).model_dump() if config_path else {}
    base.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig.model_validate(base)


@cli_app.command()
def simulate(
    kernel: Optional[str] = typer.Option(None, "--kernel", "-k", help="Kernel spec, e.g. 'trunc:k=2,r=1'."),
    dim: Optional[int] = typer.Option(None, "--dim", "-d", help="Spatial dimension (1 or 2)."),
    t_end: Optional[float] = typer.Option(None, "--t-end", help="Time horizon."),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Master seed."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="JSONL event log destination."),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="RunConfig JSON file; flags override it."),
):
    """
    Simulate one run exactly and write its JSONL event log.
    """
    try:
        run_config = _load_config(config, {"kernel": kernel, "dimension": dim, "t_end": t_end, "seed": seed,
                                           "log_path": out})
        path = run_config.log_path or (
            (run_config.output_dir or settings.output_dir) / f"events_seed{run_config.seed}.jsonl"
        )
        started = time.perf_counter()
        log = run_simulation(run_config.birth_kernel, run_config.initial_configuration(), run_config.t_end,
                             run_config.seed)
        log.write_jsonl(path)
        elapsed = time.perf_counter() - started
    except (BirthProcessError, ValidationError, OSError) as e:
        _fail(e)
    extent = float(np.max(np.linalg.norm(log.final_configuration().array, axis=1)))
    console.print(Panel(
        f"[bold]kernel[/bold]        {log.kernel}\n"
        f"[bold]events[/bold]        {len(log)}\n"
        f"[bold]final extent[/bold]  {extent:.6g}\n"
        f"[bold]wall time[/bold]     {elapsed:.2f}s\n"
        f"[bold]digest[/bold]        {log.digest()}\n"
        f"[bold]log[/bold]           {path}",
        title="Simulation", border_style="green",
    ))


@cli_app.command()
def verify(
    grid_size: int = typer.Option(256, "--grid-size", help="Grid for the balance residuals (>= 64)."),
    report: Optional[Path] = typer.Option(None, "--report", "-r", help="Write the JSON report to this file."),
    as_json: bool = typer.Option(False, "--json", help="Print the JSON report instead of a table."),
):
    """
    Run the closed-form verification suite; exits 0 iff every tolerance passes.
    """
    try:
        result = run_verification(grid_size)
    except (BirthProcessError, ValidationError) as e:
        _fail(e)
    payload = result.model_dump(mode="json") | {"passed": result.passed}
    if report:
        report.parent.mkdir(parents=True, exist_ok=True)
        report.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if as_json:
        typer.echo(json.dumps(payload, indent=2))
    else:
        table = Table(title="Closed-form verification")
        table.add_column("check")
        table.add_column("value", justify="right")
        table.add_column("condition")
        table.add_column("result")
        for item in result.items:
            verdict = "[green]PASS[/green]" if item.passed else "[red]FAIL[/red]"
            table.add_row(item.name, f"{item.value:.12g}", item.threshold, verdict)
        console.print(table)
    if not result.passed:
        logger.error(f"Verification failed: {', '.join(result.failures)}")
        console.print(f"[bold red]FAIL[/bold red] {', '.join(result.failures)}")
        raise typer.Exit(code=EXIT_FAILURE)
    console.print(f"[bold green]PASS[/bold green] ({len(result.items)} checks in {result.elapsed_seconds:.2f}s)")


@cli_app.command()
def reproduce(
    figure: str = typer.Argument(..., help="Figure id: fig1, fig2, fig3, fig4-6 or fig7-8."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Bundle root; defaults to settings.output_dir."),
    replicas: Optional[int] = typer.Option(None, "--replicas", help="Override the frozen replica count."),
    t_end: Optional[float] = typer.Option(None, "--t-end", help="Override the frozen time horizon."),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Override the frozen seed."),
    n_jobs: Optional[int] = typer.Option(None, "--n-jobs", help="Replica workers; defaults to settings.n_jobs."),
    config: Optional[Path] = typer.Option(
        None, "--config", "-c", help="RunConfig JSON file; its fields override the frozen defaults, flags override it."
    ),
):
    """
    Write the plot-ready CSV bundle of a figure.
    """
    try:
        run_config = RunConfig.from_file(config) if config else None
        root = out or (run_config.output_dir if run_config and run_config.output_dir else settings.output_dir)
        bundle = reproduce_figure(figure, root, replicas=replicas, t_end=t_end, seed=seed, n_jobs=n_jobs,
                                  config=run_config)
    except (BirthProcessError, ValidationError, OSError) as e:
        _fail(e)
    files = "\n".join(f"  {name}" for name in bundle.files)
    console.print(Panel(
        f"[bold]{bundle.parameters.description}[/bold]\n\n{bundle.out_dir}\n{files}\n\n"
        f"defaults v{bundle.defaults_version}, {bundle.elapsed_seconds:.1f}s",
        title=bundle.figure.value, border_style="green",
    ))


if __name__ == "__main__":
    cli_app()
