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
"""Two-point momentum schedules.

Points are ordered (previous iterate, current iterate). One generation maps

    x_prev' = x_cur
    x_cur'  = beta1 x_cur + alpha1 grad(x_cur)
              + beta2 x_prev + alpha2 grad(x_prev)
"""

import math
from abc import abstractmethod
from typing import Tuple

from pcli_lab.logger import init_logger
from pcli_lab.pcli import (
    ONE,
    ZERO,
    CoefficientSchedule,
    Scalar,
    SideInformation,
    grid,
)
from pcli_lab.pcli.schedule_utils import Coefficients

logger = init_logger(__name__)

# (alpha1, beta1, alpha2, beta2)
TwoStepCoefficients = Tuple[float, float, float, float]


class TwoStepSchedule(CoefficientSchedule):
    p = 2

    @abstractmethod
    def two_step_coefficients(
        self, k: int, info: SideInformation
    ) -> TwoStepCoefficients:
        pass

    def coefficients(self, k: int, info: SideInformation) -> Coefficients:
        alpha1, beta1, alpha2, beta2 = self.two_step_coefficients(k, info)
        A = grid([[ZERO, ZERO], [Scalar(alpha2), Scalar(alpha1)]])
        B = grid([[ZERO, ONE], [Scalar(beta2), Scalar(beta1)]])
        return A, B


class FixedTwoStepSchedule(TwoStepSchedule):
    def __init__(
        self,
        alpha1: float,
        beta1: float,
        alpha2: float = 0.0,
        beta2: float = 0.0,
        label: str = "two-step",
    ):
        self._coefficients = (alpha1, beta1, alpha2, beta2)
        self.label = label

    def two_step_coefficients(
        self, k: int, info: SideInformation
    ) -> TwoStepCoefficients:
        return self._coefficients


def _momentum_ratio(info: SideInformation, who: str) -> float:
    mu = info.require_mu(who)
    root = math.sqrt(info.L / mu)
    return (root - 1.0) / (root + 1.0)


class HeavyBallSchedule(TwoStepSchedule):
    """Polyak's heavy ball with the classical quadratic tuning."""

    label = "heavy-ball"

    def two_step_coefficients(
        self, k: int, info: SideInformation
    ) -> TwoStepCoefficients:
        beta = _momentum_ratio(info, self.label) ** 2
        step = 4.0 / (math.sqrt(info.L) + math.sqrt(info.mu)) ** 2
        return (-step, 1.0 + beta, 0.0, -beta)


class StationaryAGDSchedule(TwoStepSchedule):
    """Nesterov's constant-momentum method.

    y = x + beta (x - x_prev), x' = y - grad f(y) / L; grad f is affine on
    quadratics, so grad f(y) splits over the two points.
    """

    label = "agd-stationary"

    def __init__(self, label: str = "agd-stationary"):
        self.label = label

    def two_step_coefficients(
        self, k: int, info: SideInformation
    ) -> TwoStepCoefficients:
        beta = _momentum_ratio(info, self.label)
        return (-(1.0 + beta) / info.L, 1.0 + beta, beta / info.L, -beta)


def heavy_ball_schedule(info: SideInformation) -> HeavyBallSchedule:
    if info.mu is None:
        logger.error("heavy ball requested without mu")
        raise ValueError("heavy ball requires mu")
    return HeavyBallSchedule()


def agd_stationary_schedule(info: SideInformation) -> StationaryAGDSchedule:
    if info.mu is None:
        logger.error("stationary AGD requested without mu")
        raise ValueError("stationary AGD requires mu")
    return StationaryAGDSchedule()
