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

from pcli_lab.bounds import InconclusiveError, lb_strongly_convex
from pcli_lab.harness.config import ConfigError, ExperimentConfig, load_config
from pcli_lab.harness.experiments import run_experiments
from pcli_lab.logger import init_logger
from pcli_lab.poly import chebyshev_value

logger = init_logger(__name__)

EXIT_FAILED_CHECK = 1
EXIT_CONFIG_ERROR = 2


def load_cli_config(
    config: Optional[str],
    kappa: Sequence[float] = (),
    k: Sequence[int] = (),
    eps: Optional[float] = None,
    seed: Optional[int] = None,
    out: Optional[str] = None,
    experiment: Optional[str] = None,
) -> ExperimentConfig:
    """Defaults, then ``--config``, then flags; exits 2 on bad input."""
    overrides = {
        "experiment": experiment,
        "kappa_list": list(kappa) or None,
        "k_list": list(k) or None,
        "eps": eps,
        "seed": seed,
        "output_path": out,
    }
    try:
        return load_config(config, overrides)
    except ConfigError as e:
        click.echo(f"[❌ ERROR] {e}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)


# -------------------------- EXPERIMENT COMMANDS -------------------------- #
def run_experiment_command(
    names: Optional[Sequence[str]], cfg: ExperimentConfig
) -> None:
    label = ", ".join(names) if names else cfg.experiment
    click.echo(f"[ℹ] Running {label}...", err=True)
    try:
        report = run_experiments(cfg, names)
    except ConfigError as e:
        click.echo(f"[❌ ERROR] {e}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)
    except InconclusiveError as e:
        click.echo(f"[❌ ERROR] {e}", err=True)
        sys.exit(EXIT_FAILED_CHECK)

    if cfg.output_path:
        report.to_csv(cfg.output_path)
        click.echo(f"[ℹ] Report written to {cfg.output_path}", err=True)
    else:
        click.echo(report.to_csv(), nl=False)

    failures = report.failures
    for row in failures:
        click.echo(
            f"[❌ ERROR] {row.experiment} {row.label} "
            f"kappa={row.kappa} k={row.k}: measured {row.measured:.6g}, "
            f"bound {row.bound:.6g}, margin {row.margin:.3g}",
            err=True,
        )
    if failures:
        sys.exit(EXIT_FAILED_CHECK)
    click.echo(f"[✅] All {len(report.rows)} checks passed", err=True)


# --------------------------- POLYBOUND COMMAND --------------------------- #
def show_polybound(cfg: ExperimentConfig) -> None:
    """Lower bound and Chebyshev optimum for residuals of degree k."""
    for kappa in cfg.kappa_list:
        argument = (kappa + 1.0) / (kappa - 1.0)
        for k in sorted(set(cfg.k_list)):
            bound = lb_strongly_convex(k, kappa)
            optimum = 1.0 / chebyshev_value(k, argument)
            click.echo(
                f"k={k} kappa={kappa:g}: lower bound {bound:.6e}, "
                f"chebyshev optimum {optimum:.6e}"
            )
