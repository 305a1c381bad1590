"""
kpull command line.

    kpull cp2 [--no-external-facts] [--order 132] [--json] [--trace FILE]
    kpull mirror [--json] [--trace FILE]
    kpull check-finite [--trials N] [--seed S] [--max-size K] [--adversarial]
                       [--workers W] [--json]
    kpull solve FILE [--order 132] [--json] [--trace FILE]
"""

import sys
from pathlib import Path
from typing import Optional

import click

from kpull import __version__
from kpull.scenarios import ScenarioModule
from kpull.shared.errors import ConfigError
from kpull.shared.log import configure_logging
from kpull.shared.settings import load_settings

ORDERS = ("123", "132", "213", "231", "312", "321")

json_option = click.option("--json", "json_out", is_flag=True, help="Print one JSON document instead of the summary.")
trace_option = click.option(
    "--trace", type=click.Path(dir_okay=False, path_type=Path), default=None,
    help="Write the derivation trace to FILE.",
)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="kpull")
@click.option("--config", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Settings file (default: kpull.yaml in the working directory).")
@click.option("--verbose", "-v", is_flag=True, help="Log stage transitions.")
@click.option("--debug", is_flag=True, help="Log every solver rule firing.")
@click.pass_context
def cli(ctx: click.Context, config: Optional[Path], verbose: bool, debug: bool) -> None:
    """K-groups of multi-pullback algebras."""
    try:
        settings = load_settings(config)
    except ConfigError as e:
        click.echo(f"❌ Error: {e}", err=True)
        ctx.exit(e.exit_code)
    level = "DEBUG" if debug else "INFO" if verbose else settings.log_level
    configure_logging(level)
    ctx.obj = ScenarioModule(settings)


@cli.command()
@click.option("--no-external-facts", is_flag=True, help="Do not inject the cited K(P2).")
@click.option("--order", type=click.Choice(ORDERS), default=None, help="Decomposition order a b c.")
@json_option
@trace_option
@click.pass_obj
def cp2(module: ScenarioModule, no_external_facts: bool, order: Optional[str],
        json_out: bool, trace: Optional[Path]) -> None:
    """K-groups of the quantum complex projective plane."""
    sys.exit(module.handle("cp2", json_out=json_out, trace=trace,
                           external_facts=not no_external_facts, order=order))


@cli.command()
@json_option
@trace_option
@click.pass_obj
def mirror(module: ScenarioModule, json_out: bool, trace: Optional[Path]) -> None:
    """K-groups of the mirror quantum sphere."""
    sys.exit(module.handle("mirror", json_out=json_out, trace=trace))


@cli.command("check-finite")
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Number of models (default 200).")
@click.option("--seed", type=int, default=None, help="Base seed; trial k uses seed + k (default 7).")
@click.option("--max-size", type=click.IntRange(min=1), default=None, help="Largest |X_i| (default 6).")
@click.option("--adversarial", is_flag=True, help="Use the uniform generator and report cocycle failures.")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes.")
@json_option
@click.pass_obj
def check_finite(module: ScenarioModule, trials: Optional[int], seed: Optional[int],
                 max_size: Optional[int], adversarial: bool, workers: Optional[int], json_out: bool) -> None:
    """Property harness over random finite gluing models."""
    sys.exit(module.handle("check-finite", json_out=json_out, trials=trials, seed=seed,
                           max_size=max_size, adversarial=adversarial, workers=workers))


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--order", type=click.Choice(ORDERS), default=None, help="Decomposition order for families.")
@json_option
@trace_option
@click.pass_obj
def solve(module: ScenarioModule, path: Path, order: Optional[str], json_out: bool, trace: Optional[Path]) -> None:
    """Solve a sequence, family, trace or model document (JSON or YAML)."""
    sys.exit(module.handle("solve", path=path, json_out=json_out, trace=trace, order=order))


def main() -> None:
    cli(prog_name="kpull")


if __name__ == "__main__":
    main()
