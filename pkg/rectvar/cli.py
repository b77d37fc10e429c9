"""CLI interface for rectvar (command: rectvar).

Exit codes: 0 all checks consistent, 1 a guaranteed inequality failed, 2 usage or input
error, 3 an exact search exceeded its cap.
"""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

app = typer.Typer(
    name="rectvar",
    help="Variation of two-parameter functions on rectangles: exact computation and inequality checks",
    add_completion=False,
)
# Reports may go to stdout, so everything human-readable goes to stderr
console = Console(stderr=True)

EXIT_INCONSISTENT = 1
EXIT_USAGE = 2
EXIT_CAP = 3

# Rows per check group in the summary table
TABLE_ROWS = 25


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.6g}"


def _print_records(report) -> None:
    from rich.table import Table

    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Group")
    table.add_column("Check")
    table.add_column("lhs", justify="right")
    table.add_column("rhs", justify="right")
    table.add_column("slack", justify="right")
    table.add_column("Status")
    for group in report.checks:
        for rec in group.records[:TABLE_ROWS]:
            if not rec.consistent:
                status = "[red]✗ violated[/red]"
            elif not rec.expect_hold:
                status = "[green]✓ violation found (expected)[/green]"
            else:
                status = "[green]✓[/green]"
            table.add_row(group.name, rec.name, _fmt(rec.lhs), _fmt(rec.rhs), _fmt(rec.slack), status)
        hidden = len(group.records) - TABLE_ROWS
        if hidden > 0:
            table.add_row(group.name, f"[dim]... {hidden} more[/dim]", "", "", "", "")
    if table.row_count:
        console.print(table)
    for group in report.checks:
        for note in group.notes:
            console.print(f"[dim]{group.name}: {note}[/dim]")


def _execute(output: Optional[Path], records: Optional[Path], quiet: bool, **params) -> None:
    """Build the config, run it, write the report and map the outcome to an exit code."""
    from rectvar.api import RunConfig, run
    from rectvar.errors import CapExceededError, RectvarError
    from rectvar.schemas import write_records

    try:
        cfg = RunConfig(output=output, **params)
        report = run(cfg, quiet=quiet)
    except CapExceededError as e:
        console.print(f"[red]Error: {e}[/red]")
        console.print("[yellow]Raise the cap with --partition-cap / --exact-cap or the environment[/yellow]")
        raise typer.Exit(code=EXIT_CAP)
    except RectvarError as e:
        console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(code=EXIT_USAGE)

    if output is not None:
        output.parent.mkdir(parents=True, exist_ok=True)
        with open(output, "w", encoding="utf-8", newline="\n") as f:
            f.write(report.to_json())
    else:
        typer.echo(report.to_json(), nl=False)
    if records is not None:
        write_records(report, records)

    if not quiet:
        _print_records(report)
    if not report.consistent:
        console.print("[red]✗ A guaranteed inequality was violated[/red]")
        raise typer.Exit(code=EXIT_INCONSISTENT)
    if not quiet:
        where = f" → {output}" if output is not None else ""
        console.print(f"[green]✓ All checks consistent{where}[/green]")


# Options shared by most commands
_INPUT = typer.Option(None, "--input", help="Grid file (CSV or JSON)")
_OUTPUT = typer.Option(None, "--output", "-o", help="Write the JSON report here instead of stdout")
_RECORDS = typer.Option(None, "--records", help="Also write the check records as a Parquet table")
_QUIET = typer.Option(False, "--quiet", "-q", help="Suppress tables and progress output")
_PARTITION_CAP = typer.Option(None, "--partition-cap", help="Max cells for rectangulation searches")
_EXACT_CAP = typer.Option(None, "--exact-cap", help="Max interior points per axis for exact V_p")
_TOLERANCE = typer.Option(None, "--tolerance", help="Relative tolerance for inequality checks")


@app.command()
def vp(
    input_path: Optional[Path] = _INPUT,
    p: float = typer.Option(..., "--p", help="Variation exponent p >= 1"),
    exact_cap: Optional[int] = _EXACT_CAP,
    tolerance: Optional[float] = _TOLERANCE,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """Grid-like p-variation V_p (exact, or a coordinate-ascent lower bound above the cap)."""
    _execute(output, records, quiet, command="vp", input_path=input_path, p=p,
             exact_cap=exact_cap, tolerance=tolerance)


@app.command()
def cvp(
    input_path: Optional[Path] = _INPUT,
    p: float = typer.Option(..., "--p", help="Variation exponent p >= 1"),
    partition_cap: Optional[int] = _PARTITION_CAP,
    tolerance: Optional[float] = _TOLERANCE,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """Controlled p-variation over every rectangulation of the grid."""
    _execute(output, records, quiet, command="cvp", input_path=input_path, p=p,
             partition_cap=partition_cap, tolerance=tolerance)


@app.command()
def sandwich(
    input_path: Optional[Path] = _INPUT,
    p: float = typer.Option(..., "--p", help="Variation exponent p >= 1"),
    eps: float = typer.Option(..., "--eps", help="Exponent loss eps > 0"),
    partition_cap: Optional[int] = _PARTITION_CAP,
    exact_cap: Optional[int] = _EXACT_CAP,
    tolerance: Optional[float] = _TOLERANCE,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """Check (1/c)|f|_(p+eps)-var <= V_p <= |f|_p-var."""
    _execute(output, records, quiet, command="sandwich", input_path=input_path, p=p, eps=eps,
             partition_cap=partition_cap, exact_cap=exact_cap, tolerance=tolerance)


@app.command("check-control")
def check_control(
    input_path: Optional[Path] = _INPUT,
    p: float = typer.Option(..., "--p", help="Variation exponent p >= 1"),
    partition_cap: Optional[int] = _PARTITION_CAP,
    tolerance: Optional[float] = _TOLERANCE,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """Check that R -> |f|_{p-var;R}^p is super-additive and dominates |f(R)|^p."""
    _execute(output, records, quiet, command="check-control", input_path=input_path, p=p,
             partition_cap=partition_cap, tolerance=tolerance)


@app.command("almost-subadd")
def almost_subadd(
    input_path: Optional[Path] = _INPUT,
    p: float = typer.Option(..., "--p", help="Variation exponent p >= 1"),
    partition_cap: Optional[int] = _PARTITION_CAP,
    tolerance: Optional[float] = _TOLERANCE,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """Almost-subadditivity of the controlled-variation control at every grid split."""
    _execute(output, records, quiet, command="almost-subadd", input_path=input_path, p=p,
             partition_cap=partition_cap, tolerance=tolerance)


@app.command()
def young1d(
    input_path: Optional[Path] = typer.Option(None, "--input", help='JSON {"x": [...], "y": [...]}'),
    p: float = typer.Option(..., "--p", help="Exponent of x"),
    q: Optional[float] = typer.Option(None, "--q", help="Exponent of y (default: p)"),
    n: Optional[int] = typer.Option(None, "--n", help="Points of the random paths (no --input)"),
    seed: int = typer.Option(0, "--seed", help="Seed for random paths and sampling"),
    tolerance: Optional[float] = _TOLERANCE,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """One-parameter Young maximal inequality and its point-removal cascade."""
    _execute(output, records, quiet, command="young1d", input_path=input_path, p=p, q=q, n=n,
             seed=seed, tolerance=tolerance)


@app.command()
def young2d(
    input_path: Optional[Path] = typer.Option(None, "--input", help='JSON {"x": <grid>, "y": <grid>}'),
    p: float = typer.Option(..., "--p", help="Exponent of x"),
    q: Optional[float] = typer.Option(None, "--q", help="Exponent of y (default: p)"),
    alpha: Optional[float] = typer.Option(None, "--alpha", help="alpha in (1, theta) (default: optimal)"),
    nx: int = typer.Option(3, "--nx", help="Cells along s for random grids"),
    ny: int = typer.Option(3, "--ny", help="Cells along t for random grids"),
    seed: int = typer.Option(0, "--seed", help="Seed for random grids and sampling"),
    exact_cap: Optional[int] = _EXACT_CAP,
    tolerance: Optional[float] = _TOLERANCE,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """Two-parameter Young-Towghi maximal inequality and its removal cascades."""
    _execute(output, records, quiet, command="young2d", input_path=input_path, p=p, q=q, alpha=alpha,
             nx=nx, ny=ny, seed=seed, exact_cap=exact_cap, tolerance=tolerance)


@app.command("crucial-lemma")
def crucial_lemma(
    input_path: Optional[Path] = _INPUT,
    p: float = typer.Option(..., "--p", help="Exponent p > 1"),
    partition_cap: Optional[int] = _PARTITION_CAP,
    tolerance: Optional[float] = _TOLERANCE,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """Dual step function bounds, with q the maximizing rectangulation of x."""
    _execute(output, records, quiet, command="crucial-lemma", input_path=input_path, p=p,
             partition_cap=partition_cap, tolerance=tolerance)


@app.command("fbm-cov")
def fbm_cov(
    H: float = typer.Option(..., "--H", help="Hurst parameter in (0, 1/2]"),
    s: float = typer.Option(0.0, "--s", help="Left end of the time interval"),
    t: float = typer.Option(2.0, "--t", help="Right end of the time interval"),
    n: int = typer.Option(9, "--n", help="Grid points"),
    tolerance: Optional[float] = _TOLERANCE,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """fBM covariance grid with closed-form, scaling and negative-correlation checks."""
    _execute(output, records, quiet, command="fbm-cov", H=H, s=s, t=t, n=n, tolerance=tolerance)


@app.command("fbm-scan")
def fbm_scan(
    H: float = typer.Option(..., "--H", help="Hurst parameter in (0, 1/2]"),
    s: float = typer.Option(0.0, "--s", help="Left end of the time interval"),
    t: float = typer.Option(1.0, "--t", help="Right end of the time interval"),
    sizes: str = typer.Option("4,6,8,10", "--sizes", help="Comma-separated grid sizes"),
    exact_cap: Optional[int] = _EXACT_CAP,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """V_{1/(2H)} of the fBM covariance on growing uniform grids."""
    try:
        parsed = tuple(int(k) for k in sizes.split(","))
    except ValueError:
        console.print(f"[red]Error: --sizes must be comma-separated integers, got {sizes!r}[/red]")
        raise typer.Exit(code=EXIT_USAGE)
    _execute(output, records, quiet, command="fbm-scan", H=H, s=s, t=t, sizes=parsed, exact_cap=exact_cap)


@app.command("fbm-counterexample")
def fbm_counterexample(
    H: float = typer.Option(..., "--H", help="Hurst parameter in (0, 1/2]"),
    n: int = typer.Option(5, "--n", help="Grid points per unit interval"),
    tolerance: Optional[float] = _TOLERANCE,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """Super-additivity of V_p^p fails for H < 1/2 (the violation is the expected outcome)."""
    _execute(output, records, quiet, command="fbm-counterexample", H=H, n=n, tolerance=tolerance)


@app.command("enumerate-partitions")
def enumerate_partitions(
    nx: int = typer.Option(2, "--nx", help="Cells along s"),
    ny: int = typer.Option(2, "--ny", help="Cells along t"),
    partition_cap: Optional[int] = _PARTITION_CAP,
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """Count (and list, when small) every rectangulation of an nx x ny cell grid."""
    _execute(output, records, quiet, command="enumerate-partitions", nx=nx, ny=ny,
             partition_cap=partition_cap)


@app.command()
def selftest(
    seed: int = typer.Option(42, "--seed", help="Root seed of every suite"),
    quick: bool = typer.Option(False, "--quick", help="Small instance counts (smoke run)"),
    output: Optional[Path] = _OUTPUT,
    records: Optional[Path] = _RECORDS,
    quiet: bool = _QUIET,
):
    """Run the full randomized property suite."""
    _execute(output, records, quiet, command="selftest", seed=seed, quick=quick)


@app.command()
def version():
    """Show rectvar version."""
    from rectvar import __version__
    console.print(f"rectvar version {__version__}")


if __name__ == "__main__":
    app()
