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
import functools
import math

from pcli_lab.logger import init_logger
from pcli_lab.pcli import SideInformation

from .momentum import TwoStepCoefficients, TwoStepSchedule

logger = init_logger(__name__)


@functools.lru_cache(maxsize=4096)
def momentum_sequence(j: int) -> float:
    """t_0 = 1, t_{j+1} = (1 + sqrt(1 + 4 t_j^2)) / 2."""
    t = 1.0
    for _ in range(j):
        t = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
    return t


def momentum_at(k: int) -> float:
    """Extrapolation weight used when producing iterate k+1.

    Zero for the first two steps, then (t_{k-1} - 1) / t_k.
    """
    if k < 1:
        return 0.0
    return (momentum_sequence(k - 1) - 1.0) / momentum_sequence(k)


class NesterovSmoothSchedule(TwoStepSchedule):
    """Nesterov's method for L-smooth objectives; reads only L."""

    label = "agd-smooth"

    def two_step_coefficients(
        self, k: int, info: SideInformation
    ) -> TwoStepCoefficients:
        beta = momentum_at(k)
        return (-(1.0 + beta) / info.L, 1.0 + beta, beta / info.L, -beta)


def agd_smooth_schedule(L: float) -> NesterovSmoothSchedule:
    if L <= 0.0:
        logger.error(f"agd_smooth_schedule called with L={L}")
        raise ValueError(f"L must be positive, got {L}")
    return NesterovSmoothSchedule()
