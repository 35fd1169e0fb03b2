# ---------------------------------------------------------------------------- #
#  pcli-lab                                                                    #
#  copyright (c) pcli-lab authors 2026                                         #
#                                                                              #
#  licensed under the apache license, version 2.0 (the "license");             #
#  you may not use this file except in compliance with the license.            #
#                                                                              #
#  you may obtain a copy of the license at                                     #
#                                                                              #
#                  http://www.apache.org/licenses/license-2.0                  #
#                                                                              #
#  unless required by applicable law or agreed to in writing, software         #
#  distributed under the license is distributed on an "as is" basis,           #
#  without warranties or conditions of any kind, either express or implied.    #
#  see the license for the specific language governing permissions and         #
#  limitations under the license.                                              #
# ---------------------------------------------------------------------------- #
import sys
from typing import Optional, Sequence

import click

from pcli_lab.cli._cli_utils import (
    EXIT_CONFIG_ERROR,
    EXIT_FAILED_CHECK,
    load_cli_config,
    run_experiment_command,
    show_polybound,
)
from pcli_lab.harness.config import EXPERIMENT_NAMES


def experiment_options(func):
    """Flags shared by every experiment command."""
    options = [
        click.option("--config", help="Path to a JSON configuration file"),
        click.option(
            "--kappa",
            type=float,
            multiple=True,
            help="Condition number L/mu (repeatable)",
        ),
        click.option(
            "--k", type=int, multiple=True, help="Iteration count (repeatable)"
        ),
        click.option("--eps", type=float, help="Target suboptimality"),
        click.option("--seed", type=int, help="Master random seed"),
        click.option("--out", help="Write the CSV report to this path"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
def cli():
    """Lower bounds and rates of p-point linear iterative methods."""
    pass


@cli.command()
@click.option(
    "--experiment",
    type=click.Choice(["all", *EXPERIMENT_NAMES]),
    help="Experiment to run (defaults to the config's, usually all)",
)
@experiment_options
def run(experiment, config, kappa, k, eps, seed, out):
    """Run the configured experiments and report every check."""
    cfg = load_cli_config(config, kappa, k, eps, seed, out, experiment)
    run_experiment_command(None, cfg)


def _experiment_command(name: str, doc: str, command_name: str = ""):
    @experiment_options
    def command(config, kappa, k, eps, seed, out):
        cfg = load_cli_config(config, kappa, k, eps, seed, out)
        run_experiment_command([name], cfg)

    command.__doc__ = doc
    return cli.command(name=command_name or name)(command)


_experiment_command(
    "verify-lb-sc",
    "Residual maxima of mu-aware schedules against the strongly convex bound.",
)
_experiment_command(
    "verify-lb-smooth",
    "Weighted residual maxima of L-only schedules against the smooth bound.",
)
_experiment_command(
    "rate-fit",
    "Fit the condition-number exponent of iterations to eps.",
)
_experiment_command(
    "lemma-b3",
    "Near-L dichotomy verdicts for schedules that only know L.",
)
_experiment_command(
    "stochastic",
    "Monte-Carlo means of SAG, SAGA and SVRG against their expected update.",
)
_experiment_command(
    "restart",
    "Restarted Nesterov: halving per epoch, iteration count, fixed point.",
    command_name="restart-demo",
)


@cli.command()
@click.option("--config", help="Path to a JSON configuration file")
@click.option("--kappa", type=float, multiple=True, help="Condition number")
@click.option("--k", type=int, multiple=True, help="Residual degree")
def polybound(config, kappa, k):
    """Print the lower bound and the Chebyshev optimum."""
    show_polybound(load_cli_config(config, kappa, k))


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="pcli-lab",
            standalone_mode=False,
        )
    except click.UsageError as e:
        e.show()
        return EXIT_CONFIG_ERROR
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return EXIT_FAILED_CHECK
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else EXIT_FAILED_CHECK
    return 0


if __name__ == "__main__":
    sys.exit(cli_main())
