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
"""Numeric execution of p-point coefficient schedules."""

from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Sequence, Tuple

import numpy as np

from pcli_lab.logger import init_logger

from .operators import SideInformation
from .schedule_utils import CoefficientSchedule

logger = init_logger(__name__)

DIVERGENCE_THRESHOLD = 1e100

GradientOracle = Callable[[np.ndarray], np.ndarray]


class DimensionMismatchError(ValueError):
    pass


class DivergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class PCLIState:
    points: Tuple[np.ndarray, ...]
    k: int = 0

    def __post_init__(self):
        points = tuple(np.array(x, dtype=float) for x in self.points)
        if not points:
            raise ValueError("a state needs at least one point")
        dims = {x.shape for x in points}
        if len(dims) != 1 or points[0].ndim != 1:
            raise DimensionMismatchError(
                f"points must be vectors of equal dimension, got {dims}"
            )
        if self.k < 0:
            raise ValueError(f"iteration counter must be >= 0, got {self.k}")
        for x in points:
            x.setflags(write=False)
        object.__setattr__(self, "points", points)

    @classmethod
    def zeros(cls, p: int, d: int) -> "PCLIState":
        return cls(points=tuple(np.zeros(d) for _ in range(p)))

    @classmethod
    def replicate(cls, x: np.ndarray, p: int, k: int = 0) -> "PCLIState":
        points = tuple(np.array(x, dtype=float) for _ in range(p))
        return cls(points=points, k=k)

    @property
    def p(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return self.points[0].shape[0]

    @property
    def iterate(self) -> np.ndarray:
        """The returned point is the last of the p points."""
        return self.points[-1]

    def __eq__(self, other):
        if not isinstance(other, PCLIState):
            return NotImplemented
        if self.k != other.k or self.p != other.p:
            return False
        return all(
            np.array_equal(a, b) for a, b in zip(self.points, other.points)
        )


@dataclass
class Trajectory:
    states: List[PCLIState] = field(default_factory=list)
    diverged: bool = False

    def __len__(self):
        return len(self.states)

    def __getitem__(self, idx):
        return self.states[idx]

    def __iter__(self):
        return iter(self.states)

    @property
    def final(self) -> PCLIState:
        return self.states[-1]

    def iterates(self) -> np.ndarray:
        return np.stack([state.iterate for state in self.states])


def step(
    state: PCLIState,
    sched: CoefficientSchedule,
    info: SideInformation,
    grad: GradientOracle,
) -> PCLIState:
    """Advance every point at once from the previous generation."""
    A, B = sched.coefficients(state.k, info)
    if len(A) != state.p or len(B) != state.p:
        raise DimensionMismatchError(
            f"schedule {sched.label} has p={len(A)}, state has p={state.p}"
        )
    gradients: List = [None] * state.p
    new_points = []
    try:
        for i in range(state.p):
            x = np.zeros(state.d)
            for j in range(state.p):
                a_ij, b_ij = A[i][j], B[i][j]
                if not a_ij.is_zero:
                    if gradients[j] is None:
                        gradients[j] = np.asarray(grad(state.points[j]))
                    x = x + a_ij.apply(gradients[j])
                if not b_ij.is_zero:
                    x = x + b_ij.apply(state.points[j])
            new_points.append(x)
    except ValueError as e:
        raise DimensionMismatchError(str(e)) from e
    return PCLIState(points=tuple(new_points), k=state.k + 1)


def iterate(
    grad: GradientOracle,
    sched: CoefficientSchedule,
    info: SideInformation,
    init: PCLIState,
) -> Iterator[PCLIState]:
    """Yield ``init`` and then every following state, without end."""
    state = init
    yield state
    while True:
        state = step(state, sched, info, grad)
        yield state


def _diverged(state: PCLIState) -> bool:
    return any(
        not np.all(np.isfinite(x)) or np.max(np.abs(x)) > DIVERGENCE_THRESHOLD
        for x in state.points
    )


def run(
    instance,
    sched: CoefficientSchedule,
    info: SideInformation,
    init: PCLIState,
    K: int,
    strict: bool = False,
) -> Trajectory:
    """K steps from ``init``; stops early and flags when iterates blow up."""
    if K < 0:
        raise ValueError(f"K must be non-negative, got {K}")
    trajectory = Trajectory()
    for state in iterate(instance.gradient, sched, info, init):
        trajectory.states.append(state)
        if _diverged(state):
            trajectory.diverged = True
            logger.warning(
                f"{sched.label} diverged at iteration {state.k} "
                f"(threshold {DIVERGENCE_THRESHOLD:g})"
            )
            if strict:
                raise DivergenceError(
                    f"{sched.label} diverged at iteration {state.k}"
                )
            break
        if len(trajectory.states) == K + 1:
            break
    return trajectory


def max_point_difference(
    left: Sequence[PCLIState], right: Sequence[PCLIState]
) -> float:
    """Largest coordinate gap between two equally long state sequences."""
    if len(left) != len(right):
        return float("inf")
    gap = 0.0
    for a, b in zip(left, right):
        for x, y in zip(a.points, b.points):
            gap = max(gap, float(np.max(np.abs(x - y))))
    return gap
