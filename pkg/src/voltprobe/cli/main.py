"""VoltProbe CLI implementation.

Provides the command-line interface for the spectral verification pipelines.
The report document goes to stdout (or --output); logs and status lines go
to stderr.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Annotated

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from voltprobe.config import PRECISION_ENV_VAR, CLIOverrides, ConfigLoader
from voltprobe.exceptions import VoltProbeError
from voltprobe.models.config import Command, CommandOptions, OutputFormat, PhiChoice
from voltprobe.models.params import Precision
from voltprobe.models.report import RunReport
from voltprobe.reporting import CsvReportGenerator, JsonReportGenerator
from voltprobe.runner import run

USAGE_ERROR = 2

app = typer.Typer(
    name="voltprobe",
    help="Spectral verification toolkit for Volterra composition operators.",
    no_args_is_help=True,
)

console = Console(stderr=True)

AlphaOption = Annotated[
    float | None, typer.Option("--alpha", "-a", help="Exponent alpha in (0, 1).")
]
IndexOption = Annotated[
    int | None, typer.Option("--n", "-n", min=1, help="Eigen-index or polynomial degree.")
]
GridSizeOption = Annotated[
    int | None, typer.Option("--grid-size", "-N", min=1, help="Collocation grid size (<= 4096).")
]
TolOption = Annotated[float | None, typer.Option("--tol", help="Residual tolerance (> 0).")]
PrecisionOption = Annotated[
    Precision | None,
    typer.Option(
        "--precision",
        envvar=PRECISION_ENV_VAR,
        case_sensitive=False,
        help="Working precision for the cancellation-prone series.",
    ),
]
FormatOption = Annotated[
    OutputFormat, typer.Option("--format", "-f", case_sensitive=False, help="Report format.")
]
OutputOption = Annotated[
    Path | None, typer.Option("--output", "-o", help="Write the report to this file.")
]
ConfigOption = Annotated[
    Path | None, typer.Option("--config", "-c", help="Path to voltprobe.yaml configuration file.")
]
VerboseOption = Annotated[
    bool, typer.Option("--verbose", "-v", help="Log debug output to stderr.")
]


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def _render(report: RunReport, output_format: OutputFormat) -> str:
    if output_format is OutputFormat.CSV:
        return CsvReportGenerator().render(report)
    return JsonReportGenerator().render(report)


def _display_criteria(report: RunReport) -> None:
    """Display a pass/fail summary of the acceptance criteria on stderr."""
    criteria = (report.results or {}).get("criteria", [])
    table = Table(title="Acceptance Summary")
    table.add_column("#", justify="right")
    table.add_column("Criterion", style="cyan")
    table.add_column("Status", justify="center")
    for entry in criteria:
        status = "[green]PASS[/green]" if entry["passed"] else "[red]FAIL[/red]"
        table.add_row(str(entry["criterion"]), entry["name"], status)
    console.print(table)


def _execute(  # noqa: PLR0913 - mirrors the shared option set
    command: Command,
    overrides: CLIOverrides,
    options: CommandOptions,
    config_file: Path | None,
    output_format: OutputFormat,
    output: Path | None,
    verbose: bool,
) -> None:
    _configure_logging(verbose)
    try:
        file_config = ConfigLoader.load_config(config_file)
        config = ConfigLoader.resolve_run_config(command, file_config, overrides)
    except VoltProbeError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=USAGE_ERROR) from e

    report = run(config, options)
    try:
        text = _render(report, output_format)
    except VoltProbeError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(code=USAGE_ERROR) from e

    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8", newline="\n")
        console.print(f"[blue]Report written to {output}[/blue]")
    if command is Command.REPORT:
        _display_criteria(report)
    for error in report.errors:
        console.print(f"[red]FAIL[/red] {error}")
    raise typer.Exit(code=report.exit_code)


@app.command()
def spectrum(  # noqa: PLR0913 - Typer requires CLI args as function parameters
    alpha: AlphaOption = None,
    n: IndexOption = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
    config_file: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Closed-form eigenvalues (1 - alpha) alpha^(k-1), k = 1..n.

    Example:
        voltprobe spectrum --alpha 0.5 --n 5
    """
    _execute(
        Command.SPECTRUM,
        CLIOverrides(alpha=alpha, n=n),
        CommandOptions(),
        config_file,
        output_format,
        output,
        verbose,
    )


@app.command()
def eigenfun(  # noqa: PLR0913 - Typer requires CLI args as function parameters
    alpha: AlphaOption = None,
    n: IndexOption = None,
    mesh: Annotated[int | None, typer.Option("--mesh", min=2, help="Sample count.")] = None,
    precision: PrecisionOption = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
    config_file: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Coefficients and samples of f_n and g_n."""
    _execute(
        Command.EIGENFUN,
        CLIOverrides(alpha=alpha, n=n, precision=precision),
        CommandOptions(mesh=mesh),
        config_file,
        output_format,
        output,
        verbose,
    )


@app.command()
def residuals(  # noqa: PLR0913 - Typer requires CLI args as function parameters
    alpha: AlphaOption = None,
    n: IndexOption = None,
    tol: TolOption = None,
    mesh: Annotated[int | None, typer.Option("--mesh", min=2, help="Residual mesh size.")] = None,
    precision: PrecisionOption = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
    config_file: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Eigen-residuals of f_k under V_alpha and g_k under its adjoint, k = 1..n.

    Example:
        voltprobe residuals --alpha 0.5 --n 3 --tol 1e-8
    """
    _execute(
        Command.RESIDUALS,
        CLIOverrides(alpha=alpha, n=n, tol=tol, precision=precision),
        CommandOptions(mesh=mesh),
        config_file,
        output_format,
        output,
        verbose,
    )


@app.command()
def discretize(  # noqa: PLR0913 - Typer requires CLI args as function parameters
    alpha: AlphaOption = None,
    grid_size: GridSizeOption = None,
    phi: Annotated[
        PhiChoice, typer.Option("--phi", case_sensitive=False, help="Substitution map.")
    ] = PhiChoice.POWER,
    k: Annotated[int | None, typer.Option("--k", min=1, help="Eigenvalues to report.")] = None,
    export: Annotated[
        Path | None, typer.Option("--export", help="Write the matrix in binary form.")
    ] = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
    config_file: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Collocation matrix of V_phi and its largest eigenvalues.

    Example:
        voltprobe discretize --alpha 0.5 --grid-size 1024 --phi flipped
    """
    _execute(
        Command.DISCRETIZE,
        CLIOverrides(alpha=alpha, grid_size=grid_size),
        CommandOptions(phi=phi, k=k, export=export),
        config_file,
        output_format,
        output,
        verbose,
    )


@app.command()
def zeros(  # noqa: PLR0913 - Typer requires CLI args as function parameters
    alpha: AlphaOption = None,
    n: IndexOption = None,
    q: Annotated[float | None, typer.Option("--q", help="q for P_n (default alpha).")] = None,
    precision: PrecisionOption = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
    config_file: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Roots of P_n, zeros of f_n with interlacing, and the g_n scan."""
    _execute(
        Command.ZEROS,
        CLIOverrides(alpha=alpha, n=n, precision=precision),
        _options(q=q),
        config_file,
        output_format,
        output,
        verbose,
    )


@app.command()
def qcheck(  # noqa: PLR0913 - Typer requires CLI args as function parameters
    alpha: AlphaOption = None,
    n: IndexOption = None,
    q: Annotated[float | None, typer.Option("--q", help="q in (-1, 1) (default alpha).")] = None,
    z: Annotated[float, typer.Option("--z", help="Argument of F_q.")] = 1.0,
    precision: PrecisionOption = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
    config_file: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Cross-check the product and series forms of F_q and the S_1 identity.

    Example:
        voltprobe qcheck --q 0.5 --z 1.0
    """
    _execute(
        Command.QCHECK,
        CLIOverrides(alpha=alpha, n=n, precision=precision),
        _options(q=q, z=z),
        config_file,
        output_format,
        output,
        verbose,
    )


@app.command()
def completeness(  # noqa: PLR0913 - Typer requires CLI args as function parameters
    alpha: AlphaOption = None,
    n: IndexOption = None,
    grid_size: GridSizeOption = None,
    k: Annotated[int | None, typer.Option("--k", min=2, help="Muntz terms (default 40).")] = None,
    precision: PrecisionOption = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
    config_file: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Gram distances, Muntz sums and the invariant-subspace compression."""
    _execute(
        Command.COMPLETENESS,
        CLIOverrides(alpha=alpha, n=n, grid_size=grid_size, precision=precision),
        CommandOptions(k=k),
        config_file,
        output_format,
        output,
        verbose,
    )


@app.command()
def report(  # noqa: PLR0913 - Typer requires CLI args as function parameters
    quick: Annotated[bool, typer.Option("--quick", help="Reduced problem sizes.")] = False,
    junit: Annotated[
        Path | None, typer.Option("--junit", help="Also write JUnit XML for CI.")
    ] = None,
    precision: PrecisionOption = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
    config_file: ConfigOption = None,
    verbose: VerboseOption = False,
) -> None:
    """Run the full acceptance suite and summarize pass/fail per criterion."""
    _execute(
        Command.REPORT,
        CLIOverrides(precision=precision),
        CommandOptions(quick=quick, junit=junit),
        config_file,
        output_format,
        output,
        verbose,
    )


def _options(**values: float | None) -> CommandOptions:
    """Validate command options, turning range errors into usage errors."""
    try:
        return CommandOptions.model_validate({k: v for k, v in values.items() if v is not None})
    except ValueError as e:
        raise typer.BadParameter(str(e)) from e


def main() -> None:
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
