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
from abc import ABC, abstractmethod
from enum import Enum, auto
from typing import Callable, Iterable, Tuple

from pcli_lab.logger import init_logger

from .operators import OperatorGrid, SideInformation

logger = init_logger(__name__)

Coefficients = Tuple[OperatorGrid, OperatorGrid]


class ScheduleClass(Enum):
    STATIONARY = auto()
    OBLIVIOUS = auto()


class CoefficientSchedule(ABC):
    """Maps (iteration, side information) to the (A, B) operator grids.

    Implementations only ever see ``k`` and ``info``; never the objective.
    """

    p: int = 1
    label: str = "schedule"

    @abstractmethod
    def coefficients(self, k: int, info: SideInformation) -> Coefficients:
        pass

    def __repr__(self):
        return f"{type(self).__name__}(label={self.label!r}, p={self.p})"


class FunctionSchedule(CoefficientSchedule):
    """Adapts a plain ``(k, info) -> (A, B)`` callable."""

    def __init__(
        self,
        generator: Callable[[int, SideInformation], Coefficients],
        p: int,
        label: str,
    ):
        if p < 1:
            raise ValueError(f"p must be positive, got {p}")
        self._generator = generator
        self.p = p
        self.label = label

    def coefficients(self, k: int, info: SideInformation) -> Coefficients:
        return self._generator(k, info)


def classify(
    sched: CoefficientSchedule,
    info: SideInformation,
    sample_ks: Iterable[int] = (0, 1, 2, 5, 10),
) -> ScheduleClass:
    """STATIONARY iff the grids agree at every sampled iteration index.

    Sampling-based: a schedule that only changes outside ``sample_ks``
    is reported STATIONARY.
    """
    ks = sorted(set(sample_ks))
    if len(ks) < 2:
        raise ValueError("classify needs at least two iteration indices")
    first = sched.coefficients(ks[0], info)
    for k in ks[1:]:
        if sched.coefficients(k, info) != first:
            logger.debug(f"{sched.label}: coefficients change at k={k}")
            return ScheduleClass.OBLIVIOUS
    return ScheduleClass.STATIONARY
