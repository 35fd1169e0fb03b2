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
from typing import Optional

from pcli_lab.logger import init_logger
from pcli_lab.pcli import (
    ONE,
    CoefficientSchedule,
    Scalar,
    SideInformation,
    grid,
)
from pcli_lab.pcli.schedule_utils import Coefficients

logger = init_logger(__name__)

GD_VARIANTS = ("inv_L", "two_over_sum", "fixed")


class GradientDescentSchedule(CoefficientSchedule):
    """x <- x - h * grad f(x) with a constant step h."""

    p = 1

    def __init__(self, variant: str = "inv_L", step: Optional[float] = None):
        if variant not in GD_VARIANTS:
            raise ValueError(
                f"unknown GD variant {variant!r}, expected one of "
                f"{GD_VARIANTS}"
            )
        if variant == "fixed" and (step is None or step <= 0.0):
            raise ValueError("fixed-step GD needs a positive step")
        self.variant = variant
        self._step = step
        self.label = "gd-" + variant.replace("_", "-")

    def step_size(self, info: SideInformation) -> float:
        if self.variant == "inv_L":
            return 1.0 / info.L
        if self.variant == "two_over_sum":
            return 2.0 / (info.L + info.require_mu(self.label))
        return self._step

    def coefficients(self, k: int, info: SideInformation) -> Coefficients:
        return grid([[Scalar(-self.step_size(info))]]), grid([[ONE]])


def gd_schedule(
    info: SideInformation,
    variant: str = "inv_L",
    step: Optional[float] = None,
) -> GradientDescentSchedule:
    if variant == "two_over_sum" and info.mu is None:
        logger.error("two_over_sum gradient descent requested without mu")
        raise ValueError("variant two_over_sum requires mu")
    return GradientDescentSchedule(variant, step)
