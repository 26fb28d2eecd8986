from __future__ import annotations

import time
from typing import Callable, List, Optional

import typer
from rich.console import Console

from core.config import APP_NAME, APP_VERSION, DEFAULT_MAX_ORDER, DEFAULT_SEED, DEFAULT_WINDOW, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK
from core.errors import HolokitBaseException
from core.logs import get_logger, setup_logging
from core.schemas import dumps
from handlers import algebra as algebra_handler
from handlers import catalog as catalog_handler
from handlers import health as health_handler
from handlers import holonomy as holonomy_handler
from handlers import liegroup as liegroup_handler
from handlers import repro as repro_handler
from handlers import symmetric as symmetric_handler
from handlers.report import Report, render_summary

# ============================================
# APP
# ============================================

app = typer.Typer(name=APP_NAME, add_completion=False, help="Exact holonomy and curvature computations.")
err = Console(stderr=True)
logger = get_logger("cli")


@app.callback()
def main(verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level.")) -> None:
    setup_logging("DEBUG" if verbose else None)


def _emit(report: Report, output: Optional[str]) -> None:
    text = dumps(report.to_dict())
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        typer.echo(text)
    render_summary(report, err)


def _run(command: str, build: Callable[[], Report], output: Optional[str] = None) -> None:
    """Run a handler; input and validation problems exit 1, failed checks exit 2."""
    start = time.perf_counter()
    try:
        report = build()
    except HolokitBaseException as e:
        logger.error(f"{command}: {e.message}")
        err.print(f"[red]error:[/red] {e.message}")
        if e.details:
            err.print(f"details: {e.details}")
        raise typer.Exit(EXIT_INPUT)
    except OSError as e:
        logger.error(f"{command}: {e}")
        err.print(f"[red]error:[/red] {e}")
        raise typer.Exit(EXIT_INPUT)
    report.elapsed = time.perf_counter() - start
    try:
        _emit(report, output)
    except OSError as e:
        err.print(f"[red]error:[/red] cannot write report: {e}")
        raise typer.Exit(EXIT_INPUT)
    raise typer.Exit(report.exit_code)


# ============================================
# COMMANDS
# ============================================

@app.command()
def holonomy(
    metric_file: str = typer.Argument(..., help="Metric JSON file."),
    max_order: int = typer.Option(DEFAULT_MAX_ORDER, "--max-order", help="Highest covariant-derivative order."),
    window: int = typer.Option(DEFAULT_WINDOW, "--window", help="Orders without growth before stopping."),
    identify: bool = typer.Option(False, "--identify", help="Match the algebra against the catalog."),
    expect: Optional[str] = typer.Option(None, "--expect", help="Expected family id or key; implies --identify."),
    sweep: Optional[str] = typer.Option(None, "--sweep", help="Identification sweep JSON file."),
    seed: int = typer.Option(DEFAULT_SEED, "--seed", help="Seed (recorded only; the engine is deterministic)."),
    output: Optional[str] = typer.Option(None, "-o", "--output", help="Write the report here instead of stdout."),
) -> None:
    """Holonomy algebra of a polynomial metric at its basepoint."""
    _run("holonomy", lambda: holonomy_handler.handle(metric_file, max_order, window, identify, expect, sweep), output)


@app.command()
def liegroup(
    group: str = typer.Argument(..., help="'g1', 'g2', 'abelian' or a Lie-group JSON file."),
    expect: Optional[str] = typer.Option(None, "--expect"),
    sweep: Optional[str] = typer.Option(None, "--sweep"),
    output: Optional[str] = typer.Option(None, "-o", "--output"),
) -> None:
    """Connection, curvature and holonomy of a left-invariant metric."""
    _run("liegroup", lambda: liegroup_handler.handle(group, expect, sweep), output)


@app.command()
def algebra(
    subcmd: str = typer.Argument(..., help="berger | weakirr | curvspace | invspace | weakberger"),
    alg_file: str = typer.Argument(..., help="Algebra JSON file."),
    seed: int = typer.Option(DEFAULT_SEED, "--seed"),
    expect: Optional[str] = typer.Option(None, "--expect", help="Expected verdict or dimension."),
    output: Optional[str] = typer.Option(None, "-o", "--output"),
) -> None:
    """Berger, weak-irreducibility and curvature-space checks of a matrix algebra."""
    _run(f"algebra {subcmd}", lambda: algebra_handler.handle(subcmd, alg_file, seed, expect), output)


@app.command()
def catalog(
    subcmd: str = typer.Argument(..., help="list | build-algebra | build-metric"),
    family: Optional[str] = typer.Argument(None, help="Family id, n = 0 row or metric preset."),
    param: List[str] = typer.Option([], "--param", "-p", help="key=value family parameter (repeatable)."),
    spec: Optional[str] = typer.Option(None, "--spec", help="Family JSON file."),
    output: Optional[str] = typer.Option(None, "-o", "--output", help="Write the built artifact here."),
) -> None:
    """List families or build an algebra / metric from family parameters."""
    _run(f"catalog {subcmd}", lambda: catalog_handler.handle(subcmd, family, param, spec, output))


@app.command()
def symmetric(
    pair_file: Optional[str] = typer.Argument(None, help="Pair JSON file."),
    builtin: Optional[str] = typer.Option(None, "--builtin", help="Name of a built-in pair."),
    m: int = typer.Option(0, "--m"),
    n: int = typer.Option(0, "--n"),
    lam5: str = typer.Option("0", "--lam5", help="Extra R_lambda5 coefficient for hol3 pairs."),
    output: Optional[str] = typer.Option(None, "-o", "--output"),
) -> None:
    """Check a symmetric pair (hol, R) and print its Ricci form."""
    _run("symmetric", lambda: symmetric_handler.handle(pair_file, builtin, m, n, lam5), output)


@app.command()
def repro(
    group: List[str] = typer.Option([], "--group", "-g", help=f"Limit to groups: {', '.join(repro_handler.GROUPS)}."),
    stretch: bool = typer.Option(False, "--stretch", help="Also run the g2 / spin(7) metrics."),
    seed: int = typer.Option(DEFAULT_SEED, "--seed"),
    output: Optional[str] = typer.Option(None, "-o", "--output"),
) -> None:
    """Run every reproduction check and emit one consolidated report."""
    _run("repro", lambda: repro_handler.handle(group, stretch, seed), output)


@app.command()
def health() -> None:
    """Dependency and configuration self-check."""
    err.print("=" * 60)
    err.print(f"{APP_NAME.upper()} HEALTH CHECK")
    err.print(f"Version: {APP_VERSION}")
    err.print("=" * 60)
    status = health_handler.run_health_check()
    for key, value in status.items():
        err.print(f"{key}: {value}")
    typer.echo(dumps(status))
    raise typer.Exit(EXIT_OK if health_handler.healthy(status) else EXIT_CHECK_FAILED)


if __name__ == "__main__":
    app()
