#!/usr/bin/env python
"""Command-line interface for bisection refinement, grading analysis and verification."""

import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

import click

from src import __version__
from src.core.exceptions import ClosureBudgetExceeded, InvariantViolation
from src.utils import setup_logger

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_BUDGET = 3


@contextmanager
def _exit_codes(verbose: bool = False):
    """Map library exceptions to the CLI exit codes."""
    try:
        yield
    except ClosureBudgetExceeded as e:
        click.secho(f"[ERROR] {e}", fg="red", bold=True)
        sys.exit(EXIT_BUDGET)
    except InvariantViolation as e:
        click.secho(f"[ERROR] Invariant '{e.invariant}' violated: {e.detail}", fg="red", bold=True)
        sys.exit(EXIT_INVARIANT)
    except (FileNotFoundError, ValueError) as e:
        click.secho(f"[ERROR] {e}", fg="red", bold=True)
        sys.exit(EXIT_USAGE)
    except Exception as e:
        click.secho(f"[ERROR] Unexpected error: {e}", fg="red", bold=True)
        if verbose:
            import traceback

            traceback.print_exc()
        sys.exit(EXIT_USAGE)


def _pipeline(ctx: click.Context):
    # Import here to avoid heavy imports when CLI args are invalid
    from src.pipeline import BisectionPipeline

    return BisectionPipeline(config_path=ctx.obj["config"])


def _print_outputs(written) -> None:
    if written:
        click.echo("Output files:")
        for file_type, file_path in written.items():
            click.echo(f"  - {file_type.upper()}: {file_path}")


format_option = click.option(
    "--format",
    "formats",
    type=click.Choice(["json", "csv", "vtk"]),
    multiple=True,
    default=("json",),
    show_default=True,
    help="Output format (repeatable)",
)


@click.group()
@click.option(
    "--config",
    type=click.Path(exists=True, path_type=Path),
    default=None,
    help="Path to configuration file (default: config.yaml)",
)
@click.option("--verbose", is_flag=True, help="Enable verbose logging")
@click.option(
    "--log-file",
    type=click.Path(path_type=Path),
    default=None,
    help="Mirror log output into this file",
)
@click.version_option(version=__version__)
@click.pass_context
def cli(ctx, config, verbose, log_file):
    """
    Conforming newest-vertex bisection in any dimension, with exact
    generation bookkeeping and a grading analyzer.

    Example:

        bisectd seed kuhn --dim 3 --out cube.json

        bisectd refine cube.json --random 200 --rng 42 --out mesh.json

        bisectd verify mesh.json --suite grading
    """
    ctx.ensure_object(dict)
    ctx.obj["config"] = config
    ctx.obj["verbose"] = verbose
    if config:
        from src.utils.config import reload_config

        reload_config(str(config))
    setup_logger("src", log_file=log_file, verbose=verbose or None)


@cli.command()
@click.argument("kind", type=click.Choice(["kuhn", "simplex", "square"]))
@click.option("--dim", type=int, default=2, show_default=True, help="Dimension d (kuhn, simplex)")
@click.option(
    "--diagonal",
    type=click.Choice(["main", "anti"]),
    default="main",
    show_default=True,
    help="Diagonal of the two-triangle square seed",
)
@click.option("--out", type=click.Path(path_type=Path), required=True, help="Seed document to write")
@click.pass_context
def seed(ctx, kind, dim, diagonal, out):
    """Write a builtin initial triangulation as a seed document."""
    with _exit_codes(ctx.obj["verbose"]):
        from src.io import save_seed
        from src.pipeline import builtin_seed

        initial = builtin_seed(kind, dim, diagonal)
        save_seed(initial, out)
        click.secho(
            f"[OK] Seed '{initial.name}': {len(initial.simplices)} simplices, {len(initial.points)} vertices",
            fg="green",
            bold=True,
        )
        click.echo(f"  - SEED: {out}")


@cli.command()
@click.argument("source")
@click.option("--steps", type=int, default=0, help="Uniform refinement steps (each bisects every leaf)")
@click.option("--random", "count", type=int, default=0, help="Number of random closure bisections")
@click.option("--size", type=int, default=0, help="Random closure bisections until this many leaves")
@click.option("--marks", type=click.Path(exists=True, path_type=Path), default=None, help="File of leaf ids to refine")
@click.option("--rng", type=int, default=0, show_default=True, help="Seed of the PCG64 generator")
@click.option("--budget", type=int, default=None, help="Closure budget (bisections per closure)")
@click.option("--onboard", is_flag=True, help="Run matching-neighbor onboarding on uncolored seeds first")
@click.option("--out", type=click.Path(path_type=Path), required=True, help="Mesh document to write")
@click.option(
    "--format",
    "formats",
    type=click.Choice(["json", "vtk"]),
    multiple=True,
    default=("json",),
    show_default=True,
    help="Output format (repeatable)",
)
@click.pass_context
def refine(ctx, source, steps, count, size, marks, rng, budget, onboard, out, formats):
    """
    Refine SOURCE (builtin seed like kuhn:3 or a seed/mesh file).

    Prints one stats line: leaves, max generation, max level, wall time.
    """
    with _exit_codes(ctx.obj["verbose"]):
        from src.pipeline import RunConfig

        run = RunConfig(
            source=source,
            uniform=steps,
            random=count,
            size=size,
            rng=rng,
            marks=marks,
            budget=budget,
            onboard=onboard,
            out=out,
            formats=tuple(formats),
        )
        pipeline = _pipeline(ctx)
        _, tria = pipeline.load(run.source, onboard=run.onboard)
        tria, stats = pipeline.refine(tria, run)
        written = pipeline.write_outputs(tria, out, run.formats)
        click.secho("[OK] Refinement completed", fg="green", bold=True)
        click.echo(json.dumps(stats))
        _print_outputs(written)


@cli.command()
@click.argument("source")
@click.option("--out", type=click.Path(path_type=Path), required=True, help="Report path (suffix per format)")
@format_option
@click.option("--aux", is_flag=True, help="Analyze the auxiliary triangulation of a vertex instead")
@click.option("--vertex", type=int, default=None, help="Vertex of the auxiliary triangulation")
@click.option("--m", "level", type=int, default=None, help="Patch level m of the auxiliary triangulation")
@click.option("--depth", type=int, default=None, help="Boundary refinement rounds j")
@click.option("--onboard", is_flag=True, help="Run matching-neighbor onboarding on uncolored seeds first")
@click.pass_context
def analyze(ctx, source, out, formats, aux, vertex, level, depth, onboard):
    """Build the regularized mesh size function of SOURCE and report its grading."""
    with _exit_codes(ctx.obj["verbose"]):
        pipeline = _pipeline(ctx)
        _, tria = pipeline.load(source, onboard=onboard)
        aux_tria = pipeline.build_aux(tria, vertex, level, depth) if aux else None
        report = pipeline.analyze(tria, aux_tria)
        target = aux_tria.patch_triangulation() if aux_tria is not None else tria
        layers = aux_tria.to_layer_array() if aux_tria is not None else None
        written = pipeline.write_outputs(target, out, tuple(formats), report=report, layers=layers)
        summary = report.summary()
        click.secho(
            f"[OK] gamma={summary['gamma']:g} c1={summary['c1']:.4g} c2={summary['c2']:.4g} "
            f"({summary['leaves']} leaves)",
            fg="green",
            bold=True,
        )
        _print_outputs(written)


@cli.command()
@click.argument("source")
@click.option(
    "--suite",
    type=click.Choice(["lemmas", "grading", "jumps", "aux"]),
    required=True,
    help="Verification suite to run",
)
@click.option("--vertex", type=int, default=None, help="Vertex for the aux suite (default: oldest interior)")
@click.option("--m", "level", type=int, default=None, help="Patch level m for the aux suite")
@click.option("--depth", type=int, default=None, help="Boundary refinement rounds j for the aux suite")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Write the suite result as JSON")
@click.option("--onboard", is_flag=True, help="Run matching-neighbor onboarding on uncolored seeds first")
@click.pass_context
def verify(ctx, source, suite, vertex, level, depth, out, onboard):
    """Run a verification suite on SOURCE; exit 2 if any check fails."""
    with _exit_codes(ctx.obj["verbose"]):
        from src.io import write_report_json

        pipeline = _pipeline(ctx)
        _, tria = pipeline.load(source, onboard=onboard)
        result = pipeline.verify(tria, suite, vertex=vertex, m=level, depth=depth)
        if out:
            write_report_json(result, out)
        if not result.ok:
            for name in result.failures:
                click.secho(f"[ERROR] Check '{name}' failed", fg="red", bold=True)
            sys.exit(EXIT_INVARIANT)
        click.secho(f"[OK] Suite '{suite}' passed ({len(result.checks)} checks)", fg="green", bold=True)


def run(argv: Optional[list] = None) -> None:
    """Console entry point; usage errors exit with 1."""
    try:
        code = cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("Aborted", err=True)
        sys.exit(EXIT_USAGE)
    except click.ClickException as e:
        e.show()
        sys.exit(EXIT_USAGE)
    sys.exit(code or EXIT_OK)


if __name__ == "__main__":
    run()
