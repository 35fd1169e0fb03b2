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
"""Variance-reduced finite-sum methods and their expected updates.

The objective is F = sum_i f_i over m diagonal quadratic components.

* SAG keeps one gradient slot per component (p = m + 1, iterate last).
  A step refreshes slot i and moves x by -step * sum_j y_j.
* SAGA uses the unbiased estimator m (grad f_i(x) - y_i) + sum_j y_j.
* SVRG keeps (snapshot, iterate) and uses
  m (grad f_i(x) - grad f_i(snapshot)) + grad F(snapshot); the snapshot
  moves to the iterate every ``svrg_epoch`` steps.

All replicates advance together on (R, p, d) arrays. Component draws for
step k come from a Philox stream whose 128-bit key holds the seed in the
low word and k in the high word, so every step has its own stream.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, Optional, Tuple

import numpy as np

from pcli_lab.instances import FiniteSumInstance
from pcli_lab.logger import init_logger
from pcli_lab.pcli import (
    ONE,
    ZERO,
    CoefficientSchedule,
    Diagonal,
    PCLIState,
    Scalar,
    SideInformation,
    Trajectory,
    grid,
)
from pcli_lab.pcli.schedule_utils import Coefficients

logger = init_logger(__name__)

SEED_BOUND = 2**64


class NonQuadraticComponentError(TypeError):
    pass


class StochasticMethod(str, Enum):
    SAG = "SAG"
    SAGA = "SAGA"
    SVRG = "SVRG"


@dataclass(frozen=True)
class StochasticMethodConfig:
    method: StochasticMethod
    m: int
    step: float
    svrg_epoch: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "method", StochasticMethod(self.method))
        if self.m < 1:
            raise ValueError(f"m must be at least 1, got {self.m}")
        if not self.step > 0.0:
            raise ValueError(f"step must be positive, got {self.step}")
        if not 0 <= self.seed < SEED_BOUND:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")
        if self.svrg_epoch is None:
            object.__setattr__(self, "svrg_epoch", 2 * self.m)
        elif self.svrg_epoch < 1:
            raise ValueError(
                f"svrg_epoch must be positive, got {self.svrg_epoch}"
            )

    @property
    def p(self) -> int:
        if self.method == StochasticMethod.SVRG:
            return 2
        return self.m + 1

    @property
    def label(self) -> str:
        return self.method.value.lower()


@dataclass(frozen=True)
class AffineUpdate:
    """points' = blocks (per coordinate) @ points + offset.

    ``blocks`` has shape (p, p, d) and ``offset`` shape (p, d).
    """

    blocks: np.ndarray
    offset: np.ndarray

    @property
    def p(self) -> int:
        return self.blocks.shape[0]

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.einsum("ijc,jc->ic", self.blocks, points) + self.offset

    def power_apply(self, points: np.ndarray, k: int) -> np.ndarray:
        out = np.asarray(points, dtype=float)
        for _ in range(k):
            out = self.apply(out)
        return out


def component_draws(seed: int, step: int, n: int, m: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=seed + (step << 64)))
    return rng.integers(0, m, size=n)


def _component_arrays(
    cfg: StochasticMethodConfig, components: FiniteSumInstance
) -> Tuple[np.ndarray, np.ndarray]:
    if not isinstance(components, FiniteSumInstance):
        raise NonQuadraticComponentError(
            f"expected quadratic components, got {type(components).__name__}"
        )
    if components.m != cfg.m:
        logger.error(f"config has m={cfg.m}, split has m={components.m}")
        raise ValueError(
            f"config has m={cfg.m} but {components.m} components were given"
        )
    return components.diag, components.linear


def _stack_init(init: PCLIState, p: int, replicates: int) -> np.ndarray:
    if init.p != p:
        raise ValueError(f"initial state has p={init.p}, method needs {p}")
    points = np.stack(init.points)
    return np.repeat(points[np.newaxis], replicates, axis=0)


def simulate(
    cfg: StochasticMethodConfig,
    components: FiniteSumInstance,
    init: PCLIState,
    replicates: int = 1,
) -> Iterator[np.ndarray]:
    """Yield the (replicates, p, d) state array at k = 0, 1, 2, ..."""
    diag, linear = _component_arrays(cfg, components)
    m = cfg.m
    state = _stack_init(init, cfg.p, replicates)
    rows = np.arange(replicates)
    k = init.k
    yield state
    while True:
        idx = component_draws(cfg.seed, k, replicates, m)
        state = state.copy()
        if cfg.method == StochasticMethod.SVRG:
            snapshot, x = state[:, 0], state[:, 1]
            fresh = diag[idx] * x + linear[idx]
            stale = diag[idx] * snapshot + linear[idx]
            full = snapshot * diag.sum(axis=0) + linear.sum(axis=0)
            x = x - cfg.step * (m * (fresh - stale) + full)
            state[:, 1] = x
            if (k + 1) % cfg.svrg_epoch == 0:
                state[:, 0] = x
        else:
            y, x = state[:, :m], state[:, m]
            fresh = diag[idx] * x + linear[idx]
            if cfg.method == StochasticMethod.SAG:
                y[rows, idx] = fresh
                x = x - cfg.step * y.sum(axis=1)
            else:
                estimate = m * (fresh - y[rows, idx]) + y.sum(axis=1)
                x = x - cfg.step * estimate
                y[rows, idx] = fresh
            state[:, m] = x
        k += 1
        yield state


def stochastic_run(
    cfg: StochasticMethodConfig,
    components: FiniteSumInstance,
    init: PCLIState,
    K: int,
) -> Trajectory:
    if K < 0:
        raise ValueError(f"K must be non-negative, got {K}")
    trajectory = Trajectory()
    for k, states in enumerate(simulate(cfg, components, init)):
        trajectory.states.append(
            PCLIState(points=tuple(states[0]), k=init.k + k)
        )
        if k == K:
            break
    return trajectory


def monte_carlo_moments(
    cfg: StochasticMethodConfig,
    components: FiniteSumInstance,
    init: PCLIState,
    ks: Iterable[int],
    replicates: int,
) -> Dict[int, Tuple[np.ndarray, np.ndarray]]:
    """Per k in ``ks``: empirical mean and standard error, each (p, d)."""
    if replicates < 2:
        raise ValueError("standard errors need at least two replicates")
    wanted = sorted(set(ks))
    moments = {}
    if not wanted:
        return moments
    for k, states in enumerate(simulate(cfg, components, init, replicates)):
        if k in wanted:
            mean = states.mean(axis=0)
            se = states.std(axis=0, ddof=1) / np.sqrt(replicates)
            moments[k] = (mean, se)
            logger.debug(f"{cfg.label}: moments at k={k} collected")
        if k == wanted[-1]:
            return moments


def expected_update(
    cfg: StochasticMethodConfig, components: FiniteSumInstance
) -> AffineUpdate:
    """Expectation of one step over the uniform draw, as an affine map.

    For SVRG the snapshot is held fixed, so the map is valid inside an epoch.
    """
    diag, linear = _component_arrays(cfg, components)
    m, d, h = cfg.m, diag.shape[1], cfg.step
    total_q, total_lin = diag.sum(axis=0), linear.sum(axis=0)
    blocks = np.zeros((cfg.p, cfg.p, d))
    offset = np.zeros((cfg.p, d))

    if cfg.method == StochasticMethod.SVRG:
        blocks[0, 0] = 1.0
        blocks[1, 1] = 1.0 - h * total_q
        offset[1] = -h * total_lin
        return AffineUpdate(blocks=blocks, offset=offset)

    keep = 1.0 - 1.0 / m
    for i in range(m):
        blocks[i, i] = keep
        blocks[i, m] = diag[i] / m
        offset[i] = linear[i] / m
    if cfg.method == StochasticMethod.SAG:
        blocks[m, :m] = -h * keep
        blocks[m, m] = 1.0 - h * total_q / m
        offset[m] = -h * total_lin / m
    else:
        blocks[m, m] = 1.0 - h * total_q
        offset[m] = -h * total_lin
    return AffineUpdate(blocks=blocks, offset=offset)


class ExpectedSchedule(CoefficientSchedule):
    """Expected SAG or SAGA step on a proportional split.

    With grad f_i = W_i * grad F, the expected update only needs gradients
    of the total at the iterate, so it is an oblivious (m+1)-point method.
    Weights of shape (m,) give Scalar coefficients, (m, d) Diagonal ones.
    """

    def __init__(self, cfg: StochasticMethodConfig, weights: np.ndarray):
        if cfg.method == StochasticMethod.SVRG:
            raise ValueError("expected schedules cover SAG and SAGA only")
        weights = np.asarray(weights, dtype=float)
        if weights.ndim not in (1, 2) or weights.shape[0] != cfg.m:
            raise ValueError(
                f"weights must have shape (m={cfg.m},) or (m={cfg.m}, d), "
                f"got {weights.shape}"
            )
        self.cfg = cfg
        self.weights = weights
        self.p = cfg.m + 1
        self.label = f"{cfg.label}-expected"
        self._grids = self._build()

    def _build(self) -> Coefficients:
        m, h = self.cfg.m, self.cfg.step
        keep = 1.0 - 1.0 / m
        A = [[ZERO] * (m + 1) for _ in range(m + 1)]
        B = [[ZERO] * (m + 1) for _ in range(m + 1)]
        for i in range(m):
            B[i][i] = Scalar(keep)
            share = self.weights[i] / m
            A[i][m] = (
                Scalar(float(share)) if share.ndim == 0 else Diagonal(share)
            )
        B[m][m] = ONE
        if self.cfg.method == StochasticMethod.SAG:
            for j in range(m):
                B[m][j] = Scalar(-h * keep)
            A[m][m] = Scalar(-h / m)
        else:
            A[m][m] = Scalar(-h)
        return grid(A), grid(B)

    def coefficients(self, k: int, info: SideInformation) -> Coefficients:
        return self._grids


def expected_schedule(
    cfg: StochasticMethodConfig, weights: np.ndarray
) -> ExpectedSchedule:
    return ExpectedSchedule(cfg, weights)
