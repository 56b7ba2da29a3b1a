"""
CLI interface for semiq experiments.
"""

from pathlib import Path

import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from semiq_core import __version__
from semiq_core.config import get_settings
from semiq_core.exceptions import ConfigurationError
from semiq_core.logging import log_error_with_context
from semiq_core.logging import setup_logging

from .artifacts import format_value
from .config_file import parse_config
from .models import Experiment
from .models import RunConfig
from .models import flatten
from .runner import CATEGORIES
from .runner import ExitCode
from .runner import exit_code_for
from .runner import run

app = typer.Typer(
    name="semiq",
    help="Semiquantum MaxEnt dynamics: simulations, classical limits and chaos quantifiers",
    add_completion=False,
)

console = Console()

EXTRA_ARGS = {"allow_extra_args": True, "ignore_unknown_options": True}

ConfigOption = typer.Option(
    None,
    "--config",
    "-c",
    help="key = value configuration file; --section.key=value flags override it",
    dir_okay=False,
)


def _execute(ctx: typer.Context, experiment: Experiment, config_path: Path | None) -> None:
    logger = setup_logging()
    code = ExitCode.SUCCESS
    try:
        config = parse_config(config_path, list(ctx.args), experiment)
        outcome = run(config)
        code = outcome.exit_code
        if code is ExitCode.SUCCESS:
            console.print(
                f"[green]✓[/green] {experiment.value}: wrote {outcome.rows} rows to "
                f"{outcome.csv_path}"
            )
            console.print(f"[dim]manifest: {outcome.manifest_path}[/dim]")
        else:
            console.print(f"[red]{outcome.category}:[/red] {escape(outcome.error or '')}")
    except ConfigurationError as e:
        log_error_with_context(logger, e, {"experiment": experiment.value})
        code = exit_code_for(e)
        console.print(f"[red]{CATEGORIES[code]}:[/red] {escape(str(e))}")

    if code is not ExitCode.SUCCESS:
        raise typer.Exit(int(code))


@app.command(context_settings=EXTRA_ARGS)
def simulate(ctx: typer.Context, config: Path | None = ConfigOption) -> None:
    """Integrate one trajectory and write every sample."""
    _execute(ctx, Experiment.SIMULATE, config)


@app.command(context_settings=EXTRA_ARGS)
def limit(ctx: typer.Context, config: Path | None = ConfigOption) -> None:
    """Walk an hbar-first or I-first classical-limit schedule."""
    _execute(ctx, Experiment.LIMIT, config)


@app.command(context_settings=EXTRA_ARGS)
def lyapunov(ctx: typer.Context, config: Path | None = ConfigOption) -> None:
    """Estimate the maximal Lyapunov exponent."""
    _execute(ctx, Experiment.LYAPUNOV, config)


@app.command(context_settings=EXTRA_ARGS)
def poincare(ctx: typer.Context, config: Path | None = ConfigOption) -> None:
    """Record the A = 0 Poincare section."""
    _execute(ctx, Experiment.POINCARE, config)


@app.command(context_settings=EXTRA_ARGS)
def sweep(ctx: typer.Context, config: Path | None = ConfigOption) -> None:
    """Classify regimes over a grid of relative energies."""
    _execute(ctx, Experiment.SWEEP, config)


@app.command()
def info() -> None:
    """Display process settings and the default run configuration."""
    settings = get_settings()

    console.print(f"\n[bold green]semiq v{__version__}[/bold green]")
    console.print("=" * 50)

    settings_table = Table(title="Settings")
    settings_table.add_column("Setting", style="cyan")
    settings_table.add_column("Value", style="magenta")
    settings_table.add_row("Environment", settings.environment)
    settings_table.add_row("Log Level", settings.log_level)
    settings_table.add_row("Debug Mode", str(settings.debug_mode))
    settings_table.add_row("Workers", str(settings.workers))
    settings_table.add_row("Output Dir", str(settings.output_dir))
    console.print(settings_table)

    defaults = Table(title="Run configuration defaults")
    defaults.add_column("Key", style="cyan")
    defaults.add_column("Default", style="magenta")
    for key, value in flatten(RunConfig().model_dump(mode="json")).items():
        defaults.add_row(key, format_value(value))
    console.print(defaults)


def main() -> None:
    """Main entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
