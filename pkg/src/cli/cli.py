"""
Command-line interface for the contextuality workbench.

Usage:
    qcw construct --n 7               # family JSON, d = 5
    qcw verify --n 8 --tol 1e-9       # full report, exit 0 when every check passes
    qcw verify --in family.json       # audit a user-supplied family
    qcw majorana --n 7 --format svg   # constellation figure
    qcw sweep --n 7 --n 8 --noise 0 --noise 0.01 --seed 1 --seed 2
"""

import functools
from typing import Optional, Sequence

import click
from rich.console import Console

from src import __version__
from src.errors import ExitCode
from src.workbench import RunConfig, get_workbench

__all__ = [
    "cli",
    "main",
]

_console = Console(stderr=True)


def output_options(func):
    """--out, --format and --quiet, shared by every subcommand."""
    @click.option('--out', 'output_path', type=click.Path(dir_okay=False), default=None,
                  help='Write the artifact here instead of stdout (atomic)')
    @click.option('--format', 'fmt', type=click.Choice(['json', 'csv', 'svg']), default=None,
                  help='Output format')
    @click.option('--quiet', is_flag=True, help='Suppress the human-readable summary')
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)
    return wrapper


def family_options(func):
    """--n or --in selecting the measurement family."""
    @click.option('--n', 'n', type=int, default=None, help='Number of vertices of the family graph')
    @click.option('--in', 'input_path', type=click.Path(exists=True, dir_okay=False), default=None,
                  help='Family JSON written by `construct` or a third party')
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)
    return wrapper


def _run(subcommand: str, **fields) -> int:
    return int(get_workbench().run(RunConfig(subcommand=subcommand, **fields)))


def _log_to_console(message: str) -> None:
    _console.print(message, markup=False, highlight=False)


@click.group()
@click.version_option(version=__version__, prog_name="qcw")
@click.option('--verbose', is_flag=True, help='Stream log records to stderr')
def cli(verbose: bool):
    """
    Contextuality workbench: build, verify and visualize the N-vertex
    Hardy-like paradox and extended KCBS inequality.
    """
    if verbose:
        workbench = get_workbench()
        workbench.logger.setLevel("DEBUG")
        workbench.register_callback("logs", _log_to_console)


@cli.command()
@click.option('--n', 'n', type=int, required=True, help='Number of vertices (n >= 6)')
@output_options
def construct(n: int, **options):
    """Emit the measurement family JSON (dimension n - 2)."""
    return _run("construct", n=n, **options)


@cli.command()
@family_options
@click.option('--tol', type=float, default=None, help='Physics tolerance')
@output_options
def verify(**options):
    """Run every quantum and classical check and emit the report."""
    return _run("verify", **options)


@cli.command()
@family_options
@click.option('--tol', type=float, default=None, help='Physics tolerance')
@output_options
def kcbs(**options):
    """Evaluate beta = sum |<v_i|psi>|^2 against the classical bound."""
    return _run("kcbs", **options)


@cli.command()
@family_options
@click.option('--tol', type=float, default=None, help='Physics tolerance')
@output_options
def hardy(**options):
    """Check the Hardy span conditions and P(1|1), quantum and classical."""
    return _run("hardy", **options)


@cli.command()
@click.option('--n', 'n', type=int, required=True, help='Number of vertices (5 <= n <= 24)')
@output_options
def classical(n: int, **options):
    """Enumerate deterministic assignments of the family graph."""
    return _run("classical", n=n, **options)


@cli.command()
@family_options
@click.option('--restarts', type=int, default=None, help='Random restarts of power iteration')
@click.option('--seed', type=int, default=None, help='Seed (default QCW_SEED or 0)')
@click.option('--tol', type=float, default=None, help='Allowed gap to the eigvalsh oracle')
@output_options
def optimize(**options):
    """Find the state maximizing beta for the family's measurements."""
    return _run("optimize", **options)


@cli.command()
@family_options
@click.option('--vertex', type=str, default=None, help="Single vector: 'psi' or a vertex number")
@click.option('--check-flip', is_flag=True, help='Audit the X-flip symmetry of the constellations')
@click.option('--columns', type=int, default=None, help='Discs per row in the SVG')
@output_options
def majorana(**options):
    """Majorana constellations of psi and every vertex vector."""
    return _run("majorana", **options)


@cli.command()
@click.option('--n', 'n', type=int, required=True, help='Number of vertices (n >= 5)')
@click.option('--delta', type=float, default=None, help='Observed violation (default 1/9)')
@click.option('--epsilon', type=float, default=None, help='Measured imprecision to certify')
@output_options
def onc(n: int, **options):
    """epsilon-ONC threshold Delta/n (odd) or Delta/(n+3) (even)."""
    return _run("onc", n=n, **options)


@cli.command()
@click.option('--n', 'n', type=int, required=True, help='Number of vertices (n >= 6)')
@click.option('--shots', type=int, default=None, help='Shots per context')
@click.option('--noise', type=float, default=None, help='Projector jitter eta')
@click.option('--seed', type=int, default=None, help='Seed (default QCW_SEED or 0)')
@output_options
def simulate(n: int, **options):
    """Finite-shot simulation of every context with per-context jitter."""
    return _run("simulate", n=n, **options)


@cli.command()
@click.option('--n', 'ns', type=int, multiple=True, required=True, help='Vertex count (repeatable)')
@click.option('--noise', 'noises', type=float, multiple=True, help='eta value (repeatable)')
@click.option('--seed', 'seeds', type=int, multiple=True, help='Seed (repeatable)')
@click.option('--shots', type=int, default=None, help='Shots per context')
@output_options
def sweep(ns: Sequence[int], noises: Sequence[float], seeds: Sequence[int], **options):
    """Simulate over a grid of n, eta and seed; CSV by default."""
    return _run("sweep", ns=tuple(ns), noises=tuple(noises), seeds=tuple(seeds), **options)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return the process exit code instead of exiting."""
    try:
        result = cli.main(args=list(argv) if argv is not None else None,
                          prog_name="qcw", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return int(ExitCode.USAGE_ERROR)
    except click.Abort:
        return int(ExitCode.USAGE_ERROR)
    if isinstance(result, int):
        return result
    return int(ExitCode.OK)
