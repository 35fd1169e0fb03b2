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
"""Epoch restarts turning a sublinear rate certificate into a linear rate.

A base method certified by f(x_k) - f* <= C L |x_0 - x*|^2 / k^alpha halves
the suboptimality of a mu-strongly convex objective within
ceil((4 C L / mu)^(1 / alpha)) steps, so restarting it from its last
iterate after that many steps converges linearly.
"""

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from pcli_lab.instances import QuadraticInstance, suboptimality
from pcli_lab.logger import init_logger
from pcli_lab.pcli import (
    CoefficientSchedule,
    PCLIState,
    ScheduleClass,
    SideInformation,
    classify,
    run,
)

logger = init_logger(__name__)

MAX_TOTAL_ITERATIONS = 10**6
HALVING_RTOL = 1e-6
EPOCH_LOG_COLUMNS = ["epoch", "iterations", "suboptimality"]

GapFunction = Callable[[np.ndarray], float]


class NonConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class RateCertificate:
    C: float
    alpha: float

    def __post_init__(self):
        if not self.C > 0.0 or not self.alpha > 0.0:
            raise ValueError(
                f"rate certificate needs C > 0 and alpha > 0, got "
                f"C={self.C}, alpha={self.alpha}"
            )


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    iterations: int
    suboptimality: float


@dataclass
class RestartResult:
    epoch_length: int
    states: List[PCLIState] = field(default_factory=list)
    epochs: List[EpochRecord] = field(default_factory=list)

    @property
    def total_iterations(self) -> int:
        return self.states[-1].k

    @property
    def final(self) -> PCLIState:
        return self.states[-1]

    def iterates(self) -> np.ndarray:
        return np.stack([state.iterate for state in self.states])


@dataclass(frozen=True)
class HalvingVerdict:
    passed: bool
    worst_ratio: float


def epoch_length(cert: RateCertificate, L: float, mu: float) -> int:
    if not 0.0 < mu <= L:
        logger.error(f"epoch_length called with mu={mu}, L={L}")
        raise ValueError(f"need 0 < mu <= L, got mu={mu}, L={L}")
    raw = (4.0 * cert.C * L / mu) ** (1.0 / cert.alpha)
    # absorbs pow() rounding above exact integers, e.g. 27 ** (1 / 3)
    return max(1, math.ceil(raw * (1.0 - 1e-12)))


def restart_wrap(
    instance: QuadraticInstance,
    base: CoefficientSchedule,
    cert: RateCertificate,
    info: SideInformation,
    target_eps: float,
    x0: np.ndarray,
    gap_fn: Optional[GapFunction] = None,
    max_iterations: int = MAX_TOTAL_ITERATIONS,
) -> RestartResult:
    """Run ``base`` in epochs until the gap at an epoch end is below target.

    Each epoch resets the schedule clock to zero. A stationary base keeps
    all its points across the reset; any other base restarts every point
    from the last iterate.
    """
    mu = info.require_mu("restart_wrap")
    if not target_eps > 0.0:
        raise ValueError(f"target_eps must be positive, got {target_eps}")
    if gap_fn is None:
        gap_fn = functools.partial(suboptimality, instance)

    n = epoch_length(cert, info.L, mu)
    carry_points = classify(base, info) == ScheduleClass.STATIONARY
    result = RestartResult(epoch_length=n)
    state = PCLIState.replicate(x0, base.p)
    result.states.append(state)
    gap = gap_fn(state.iterate)
    result.epochs.append(EpochRecord(0, 0, gap))
    logger.info(
        f"restarting {base.label} every {n} steps "
        f"(carry points: {carry_points}), initial gap {gap:.3e}"
    )

    epoch = 0
    while gap >= target_eps:
        if result.total_iterations >= max_iterations:
            logger.error(f"{base.label} did not reach {target_eps:g}")
            raise NonConvergenceError(
                f"{base.label} still at gap {gap:.3e} after "
                f"{result.total_iterations} iterations"
            )
        if carry_points:
            start = PCLIState(points=state.points)
        else:
            start = PCLIState.replicate(state.iterate, base.p)
        traj = run(instance, base, info, start, n)
        if traj.diverged:
            raise NonConvergenceError(
                f"{base.label} diverged in epoch {epoch + 1}"
            )
        offset = result.total_iterations
        for local in traj.states[1:]:
            state = PCLIState(points=local.points, k=offset + local.k)
            result.states.append(state)
        epoch += 1
        gap = gap_fn(state.iterate)
        result.epochs.append(EpochRecord(epoch, state.k, gap))
        logger.debug(f"{base.label}: epoch {epoch} ends at gap {gap:.3e}")

    logger.info(
        f"{base.label}: reached {gap:.3e} after {epoch} epochs, "
        f"{result.total_iterations} iterations"
    )
    return result


def halving_check(
    epochs: Sequence[Union[EpochRecord, float]],
) -> HalvingVerdict:
    gaps = [
        e.suboptimality if isinstance(e, EpochRecord) else float(e)
        for e in epochs
    ]
    if len(gaps) < 2:
        raise ValueError("halving_check needs at least two epochs")
    worst = 0.0
    for prev, cur in zip(gaps, gaps[1:]):
        if prev == 0.0:
            ratio = 0.0 if cur == 0.0 else math.inf
        else:
            ratio = cur / prev
        worst = max(worst, ratio)
    return HalvingVerdict(
        passed=worst <= 0.5 * (1.0 + HALVING_RTOL), worst_ratio=worst
    )


def epoch_log_frame(epochs: Sequence[EpochRecord]) -> pd.DataFrame:
    return pd.DataFrame(
        [(e.epoch, e.iterations, e.suboptimality) for e in epochs],
        columns=EPOCH_LOG_COLUMNS,
    )
