"""Click CLI for the anomaly-factorization verification suite."""

import json
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, NoReturn, Optional

import click
import yaml
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from . import api
from ._core.configuration import (
    euler_mode_from_flag,
    load_environment,
    load_suite_file,
    parse_ranks,
    parse_tau,
)
from ._core.errors import AnomodError
from ._core.execution import configure_logging
from ._core.gradedring import GradedElement, homogeneous_parts, serialize
from ._core.numeric import DEFAULT_TAUS, DEFAULT_TERMS, E2_TOLERANCE, THETA_TOLERANCE
from ._core.qseries import QSeries
from ._core.result import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, SuiteResult, to_python
from ._core.types import NumericCheck, VerificationConfig, VerificationReport
from ._core.validation import validate_config

console = Console()

STATUS_STYLES = {"pass": "green", "fail": "red", "info": "yellow"}


@dataclass
class CLIContext:
    """Shared CLI configuration for Click commands.

    Attributes:
        verbose: Whether debug logging is enabled.

    Example:
        >>> CLIContext(verbose=True)
        CLIContext(verbose=True)
    """

    verbose: bool = False


pass_context = click.make_pass_decorator(CLIContext)


def _error(message: str) -> NoReturn:
    console.print(f"[red]Error: {escape(message)}[/red]", style="bold")
    raise click.exceptions.Exit(EXIT_ERROR)


def config_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Attach the verification-configuration flags to a command."""
    options = [
        click.option(
            "--max-degree", type=int, default=12, show_default=True,
            help="Truncation degree of the graded ring (even, >= 12).",
        ),
        click.option(
            "--q-order", type=int, default=12, show_default=True,
            help="Truncation order of q-series, in half-units.",
        ),
        click.option(
            "--ranks", type=str, default="symbolic", show_default=True,
            help="'symbolic' or 'm=INT,n=INT'.",
        ),
        click.option(
            "--xi", type=click.Choice(["generic", "trivial"]), default="generic",
            show_default=True, help="Keep the plane bundle generic or make it trivial (c = 0).",
        ),
        click.option(
            "--euler-mode", type=click.Choice(["cosh", "exp", "both"]), default="both",
            show_default=True, help="Uniform reading of the plane-bundle Euler factor.",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def output_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Attach ``--format`` and ``--out``."""
    func = click.option(
        "--out", type=click.Path(dir_okay=False, writable=True), default=None,
        help="Write the report to PATH instead of stdout.",
    )(func)
    return click.option(
        "--format", "output_format", type=click.Choice(["text", "json"]), default="text",
        show_default=True, help="Report format.",
    )(func)


def matrix_flags_given() -> bool:
    """Whether ``--ranks`` or ``--xi`` came from the command line or the environment."""
    ctx = click.get_current_context()
    return any(
        ctx.get_parameter_source(name) not in (None, click.core.ParameterSource.DEFAULT)
        for name in ("ranks", "xi")
    )


def build_config(
    max_degree: int, q_order: int, ranks: str, xi: str, euler_mode: str
) -> VerificationConfig:
    """Turn flag values into a validated :class:`VerificationConfig`.

    Example:
        >>> build_config(12, 12, "m=32,n=0", "trivial", "cosh").ranks
        (32, 0)
    """
    config = VerificationConfig(
        ranks=parse_ranks(ranks),
        xi_mode=xi,  # type: ignore[arg-type]
        euler_mode=euler_mode_from_flag(euler_mode),  # type: ignore[arg-type]
        max_degree=max_degree,
        q_order=q_order,
    )
    validate_config(config)
    return config


def reports_table(reports: Sequence[VerificationReport], title: str = "Verification") -> Table:
    """Render reports as a rich table.

    Example:
        >>> table = reports_table([VerificationReport("agw", "L vs Â", "pass", 0)])
        >>> table.row_count
        1
    """
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("Check", style="cyan")
    table.add_column("Target")
    table.add_column("Status")
    table.add_column("Residual terms", justify="right")
    table.add_column("Ranks")
    table.add_column("xi")
    table.add_column("ms", justify="right")
    for report in reports:
        style = STATUS_STYLES.get(report.status, "white")
        table.add_row(
            escape(report.check_id),
            escape(report.paper_target),
            f"[{style}]{report.status}[/{style}]",
            str(report.residual_terms),
            report.ranks,
            report.xi_mode,
            f"{report.elapsed_ms:.0f}",
        )
    return table


def numeric_table(checks: Sequence[NumericCheck]) -> Table:
    """Render numeric transformation checks as a rich table."""
    table = Table(title="Transformation laws", show_header=True, header_style="bold magenta")
    table.add_column("Law", style="cyan")
    table.add_column("tau")
    table.add_column("Residual", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Status")
    for check in checks:
        status = "pass" if check.passed else "fail"
        style = STATUS_STYLES[status]
        table.add_row(
            check.law,
            f"{check.tau.real:g}{check.tau.imag:+g}i",
            f"{check.residual:.3e}",
            f"{check.tolerance:.0e}",
            f"[{style}]{status}[/{style}]",
        )
    return table


def series_table(series: QSeries, title: str, closed: Sequence[str] = ()) -> Table:
    """One row per known coefficient ``q^(h/2)``; closed forms where given."""
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("q-power", style="cyan")
    if closed:
        table.add_column("Closed form", style="green")
    table.add_column("Coefficient")
    for h in range(series.order):
        row = [f"q^({h}/2)"]
        if closed:
            row.append(closed[h] if h < len(closed) else "")
        row.append(serialize(series.coefficient(h)))
        table.add_row(*row)
    return table


def element_table(element: GradedElement, title: str) -> Table:
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("Degree", style="cyan", justify="right")
    table.add_column("Component")
    for degree, part in sorted(homogeneous_parts(element).items()):
        table.add_row(str(degree), serialize(part))
    return table


def _emit(document: Any, output_format: str, out: Optional[str], renderables: Sequence[Any]) -> None:
    if output_format == "json":
        if out:
            Path(out).write_text(json.dumps(document, indent=2, sort_keys=True) + "\n")
        else:
            console.print_json(data=document, sort_keys=True)
        return
    if out:
        with open(out, "w") as handle:
            file_console = Console(file=handle, width=160, no_color=True)
            for renderable in renderables:
                file_console.print(renderable)
        return
    for renderable in renderables:
        console.print(renderable)


def _emit_result(result: SuiteResult, output_format: str, out: Optional[str], title: str) -> None:
    renderables: list[Any] = [reports_table(result.reports, title)]
    for report in result.reports:
        if report.status == "fail" and report.residual_sample:
            lines = "\n".join(f"  {escape(line)}" for line in report.residual_sample)
            renderables.append(f"[red]{escape(report.check_id)}[/red] residual sample:\n{lines}")
        if report.detail:
            renderables.append(f"[yellow]{escape(report.check_id)}[/yellow]: {escape(report.detail)}")
    summary = result.get_summary()
    renderables.append(
        f"\n[bold]passed {summary['passed']}, failed {summary['failed']}, "
        f"info {summary['info']}, total {summary['total']}[/bold]"
    )
    _emit(result.to_document(), output_format, out, renderables)


@click.group(context_settings={"auto_envvar_prefix": "ANOMOD"})
@click.option(
    "--verbose",
    is_flag=True,
    help="Enable debug logging.",
)
@click.pass_context
def cli(ctx, verbose: bool):
    """Exact verification of anomaly-factorization identities.

    Args:
        ctx: Click context populated by the command group.
        verbose: Enable debug logging.
    """
    configure_logging(verbose)
    ctx.obj = CLIContext(verbose=verbose)


@cli.command()
@click.argument("target")
@click.option(
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="YAML suite file with a 'configs' list; flags give the defaults.",
)
@config_options
@output_options
@pass_context
def verify(
    ctx: CLIContext,
    target: str,
    config_file: Optional[str],
    max_degree: int,
    q_order: int,
    ranks: str,
    xi: str,
    euler_mode: str,
    output_format: str,
    out: Optional[str],
):
    """Verify TARGET: an identity id, a published tag (theorem1, cor1, cor2,
    cor3, gs, sw, agw, remark) or 'all'.

    'all' runs the built-in suite (symbolic generic, symbolic trivial and
    m=4,n=2) unless --ranks or --xi pins a single configuration.

    Exit status is 0 when every check passes, 1 when any fails, 2 on errors.
    """
    try:
        config = build_config(max_degree, q_order, ranks, xi, euler_mode)
        with console.status(f"[bold green]Verifying {target}..."):
            if config_file:
                configs = load_suite_file(config_file, base=config)
                targets = None if target == "all" else [target]
                result = api.run_suite(configs, targets)
            elif target == "all" and not matrix_flags_given():
                result = api.run_suite(api.default_suite(config))
            else:
                result = api.verify(target, config)
        _emit_result(result, output_format, out, f"Verification: {target}")
    except (AnomodError, OSError, yaml.YAMLError) as e:
        _error(str(e))
    raise click.exceptions.Exit(result.exit_code)


@cli.command()
@click.argument("kind", type=click.Choice(list(api.EXPANSIONS)))
@config_options
@output_options
@pass_context
def expand(
    ctx: CLIContext,
    kind: str,
    max_degree: int,
    q_order: int,
    ranks: str,
    xi: str,
    euler_mode: str,
    output_format: str,
    out: Optional[str],
):
    """Print an expansion: theta2, theta1, p2, p1, ahat or lgenus."""
    try:
        config = build_config(max_degree, q_order, ranks, xi, euler_mode)
        with console.status(f"[bold green]Expanding {kind}..."):
            value = api.expand(kind, config)
    except AnomodError as e:
        _error(str(e))
    if isinstance(value, QSeries):
        closed = api.closed_forms() if kind == "theta2" else ()
        renderable: Any = series_table(value, f"{kind} expansion", closed)
        document: Any = {"kind": kind, "config": config.describe(), "series": to_python(value)}
        if closed:
            document["closed_forms"] = list(closed)
    else:
        renderable = element_table(value, f"{kind} form of TZ")
        document = {"kind": kind, "config": config.describe(), "form": to_python(value)}
    _emit(document, output_format, out, [renderable])


@cli.command()
@click.argument("kind", type=click.Choice(list(api.DECOMPOSITIONS)))
@config_options
@output_options
@pass_context
def decompose(
    ctx: CLIContext,
    kind: str,
    max_degree: int,
    q_order: int,
    ranks: str,
    xi: str,
    euler_mode: str,
    output_format: str,
    out: Optional[str],
):
    """Decompose p2 (Gamma^0(2)) or p1 (Gamma_0(2)) in the weight-6 basis."""
    try:
        config = build_config(max_degree, q_order, ranks, xi, euler_mode)
        with console.status(f"[bold green]Decomposing {kind}..."):
            decomposition = api.decompose_series(kind, config)
    except AnomodError as e:
        _error(str(e))
    document = {
        "kind": kind,
        "basis": decomposition.basis_name,
        "h0": to_python(decomposition.h0),
        "h1": to_python(decomposition.h1),
        "residual": to_python(decomposition.residual),
        "exact": decomposition.exact,
    }
    table = Table(
        title=f"{kind} in {decomposition.basis_name}", show_header=True, header_style="bold magenta"
    )
    table.add_column("Coordinate", style="cyan")
    table.add_column("Value")
    table.add_row("h0", serialize(decomposition.h0))
    table.add_row("h1", serialize(decomposition.h1))
    support = decomposition.residual.support()
    table.add_row("residual support", ", ".join(f"q^({h}/2)" for h in support) or "none")
    _emit(document, output_format, out, [table])
    raise click.exceptions.Exit(EXIT_PASS if decomposition.exact else EXIT_FAIL)


@cli.command()
@click.argument("kind", type=click.Choice(["transforms", "theta4"]))
@click.option(
    "--tau", "taus", multiple=True,
    help="Sample point RE,IM (repeatable). Defaults to i and 0.1+1.2i.",
)
@click.option("--v", "v_raw", default="0.3,0.1", show_default=True, help="Elliptic variable RE,IM.")
@click.option("--tol", type=float, default=THETA_TOLERANCE, show_default=True,
              help="Tolerance for theta and delta/epsilon laws.")
@click.option("--e2-tol", type=float, default=E2_TOLERANCE, show_default=True,
              help="Tolerance for the E2 laws.")
@click.option("--terms", type=int, default=DEFAULT_TERMS, show_default=True,
              help="Number of product factors.")
@click.option("--q-order", type=int, default=12, show_default=True,
              help="Truncation order for the exact theta4 identities.")
@output_options
@pass_context
def numeric(
    ctx: CLIContext,
    kind: str,
    taus: tuple[str, ...],
    v_raw: str,
    tol: float,
    e2_tol: float,
    terms: int,
    q_order: int,
    output_format: str,
    out: Optional[str],
):
    """Numeric transformation laws (transforms) or exact theta4 identities."""
    try:
        if kind == "transforms":
            samples = [parse_tau(t) for t in taus] if taus else list(DEFAULT_TAUS)
            with console.status("[bold green]Evaluating transformation laws..."):
                checks = api.numeric_transforms(samples, parse_tau(v_raw), terms, tol, e2_tol)
            document: Any = {"checks": [c.to_dict() for c in checks]}
            _emit(document, output_format, out, [numeric_table(checks)])
            passed = all(c.passed for c in checks)
        else:
            identities = api.theta_fourth_identities(q_order)
            document = {
                "identities": [
                    {
                        "name": i.name,
                        "residual_terms": i.residual_terms,
                        "status": "pass" if i.passed else "fail",
                    }
                    for i in identities
                ]
            }
            table = Table(title="Theta fourth powers", show_header=True, header_style="bold magenta")
            table.add_column("Form", style="cyan")
            table.add_column("Residual terms", justify="right")
            for identity in identities:
                table.add_row(identity.name, str(identity.residual_terms))
            _emit(document, output_format, out, [table])
            passed = all(i.passed for i in identities)
    except AnomodError as e:
        _error(str(e))
    raise click.exceptions.Exit(EXIT_PASS if passed else EXIT_FAIL)


@cli.command("self-test")
@output_options
@pass_context
def self_test(ctx: CLIContext, output_format: str, out: Optional[str]):
    """Inject known faults and check that each one is detected."""
    try:
        with console.status("[bold green]Running fault injections..."):
            result = api.self_test()
    except AnomodError as e:
        _error(str(e))
    _emit_result(result, output_format, out, "Self-test")
    raise click.exceptions.Exit(result.exit_code)


def main():
    """Main entry point for the CLI.

    Loads ``ANOMOD_*`` defaults from a ``.env`` file before parsing flags.

    Returns:
        ``None``. The CLI handles execution and exits the process.
    """
    load_environment()
    cli()


if __name__ == "__main__":
    main()
