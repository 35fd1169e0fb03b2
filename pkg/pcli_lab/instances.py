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
"""Diagonal quadratic instances.

f(x) = 1/2 sum_c diag_q[c] x[c]^2 + sum_c linear_q[c] x[c]. The hard
instance puts a single spectral value eta on every coordinate and anchors
the minimizer at v = R e_1; an adversary picks eta after seeing the
schedule's residual polynomial.
"""

from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from pcli_lab.bounds import Interval, residual_max
from pcli_lab.logger import init_logger
from pcli_lab.pcli import CoefficientSchedule, SideInformation
from pcli_lab.pcli.symbolic import residual_poly, symbolic_run

logger = init_logger(__name__)

SPLIT_MODES = ("random", "equal")


class UnboundedInstanceError(ValueError):
    pass


class InstanceDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: Literal[1] = 1
    diag_q: List[float]
    linear_q: List[float]


def _frozen(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class QuadraticInstance:
    diag_q: np.ndarray
    linear_q: np.ndarray

    def __post_init__(self):
        diag_q, linear_q = _frozen(self.diag_q), _frozen(self.linear_q)
        if diag_q.ndim != 1 or diag_q.shape != linear_q.shape:
            raise ValueError(
                f"diag_q {diag_q.shape} and linear_q {linear_q.shape} must be "
                "vectors of equal length"
            )
        if diag_q.size == 0:
            raise ValueError("an instance needs at least one coordinate")
        if np.any(diag_q < 0.0):
            raise ValueError("diag_q must be non-negative (convex instance)")
        object.__setattr__(self, "diag_q", diag_q)
        object.__setattr__(self, "linear_q", linear_q)

    @property
    def d(self) -> int:
        return self.diag_q.shape[0]

    def value(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        quadratic = 0.5 * np.dot(self.diag_q, x * x)
        return float(quadratic + np.dot(self.linear_q, x))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return self.diag_q * np.asarray(x, dtype=float) + self.linear_q

    def _spectrum(self) -> np.ndarray:
        return self.diag_q[self.diag_q > 0.0]

    @property
    def mu_eff(self) -> Optional[float]:
        spectrum = self._spectrum()
        return float(spectrum.min()) if spectrum.size else None

    @property
    def L_eff(self) -> Optional[float]:
        spectrum = self._spectrum()
        return float(spectrum.max()) if spectrum.size else None

    @property
    def has_minimizer(self) -> bool:
        flat = self.diag_q == 0.0
        return bool(np.all(self.linear_q[flat] == 0.0))

    @property
    def minimizer(self) -> Optional[np.ndarray]:
        """Minimum-norm minimizer, or None when f is unbounded below."""
        if not self.has_minimizer:
            return None
        curved = self.diag_q > 0.0
        x = np.zeros(self.d)
        x[curved] = -self.linear_q[curved] / self.diag_q[curved]
        return x

    @property
    def optimal_value(self) -> float:
        x = self.minimizer
        if x is None:
            raise UnboundedInstanceError("instance is unbounded below")
        return self.value(x)

    def to_json(self) -> str:
        return InstanceDocument(
            diag_q=self.diag_q.tolist(), linear_q=self.linear_q.tolist()
        ).model_dump_json()

    @classmethod
    def from_json(cls, text: str) -> "QuadraticInstance":
        doc = InstanceDocument.model_validate_json(text)
        return cls(diag_q=doc.diag_q, linear_q=doc.linear_q)

    def __eq__(self, other):
        if not isinstance(other, QuadraticInstance):
            return NotImplemented
        return np.array_equal(self.diag_q, other.diag_q) and np.array_equal(
            self.linear_q, other.linear_q
        )

    def __hash__(self):
        return hash((self.diag_q.tobytes(), self.linear_q.tobytes()))


@dataclass(frozen=True, eq=False)
class FiniteSumInstance:
    components: Tuple[QuadraticInstance, ...]
    weights: Optional[np.ndarray] = None

    def __post_init__(self):
        components = tuple(self.components)
        if not components:
            raise ValueError("a finite sum needs at least one component")
        dims = {c.d for c in components}
        if len(dims) != 1:
            raise ValueError(f"components disagree on dimension: {dims}")
        object.__setattr__(self, "components", components)
        if self.weights is not None:
            object.__setattr__(self, "weights", _frozen(self.weights))

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def d(self) -> int:
        return self.components[0].d

    @property
    def diag(self) -> np.ndarray:
        return np.stack([c.diag_q for c in self.components])

    @property
    def linear(self) -> np.ndarray:
        return np.stack([c.linear_q for c in self.components])

    @property
    def total(self) -> QuadraticInstance:
        if self.m == 1:
            return self.components[0]
        return QuadraticInstance(
            diag_q=self.diag.sum(axis=0), linear_q=self.linear.sum(axis=0)
        )


def hard_instance(d: int, eta: float, R: float) -> QuadraticInstance:
    if d < 1:
        raise ValueError(f"d must be at least 1, got {d}")
    if not eta > 0.0 or not R > 0.0:
        logger.error(f"hard_instance called with eta={eta}, R={R}")
        raise ValueError("eta and R must be positive")
    linear_q = np.zeros(d)
    linear_q[0] = -eta * R
    return QuadraticInstance(diag_q=np.full(d, float(eta)), linear_q=linear_q)


def spectrum_instance(etas: Sequence[float], R: float) -> QuadraticInstance:
    """One coordinate per spectral value, each anchored at R."""
    etas = np.asarray(etas, dtype=float)
    if etas.ndim != 1 or etas.size == 0 or np.any(etas <= 0.0):
        raise ValueError("etas must be a non-empty vector of positive values")
    if not R > 0.0:
        raise ValueError(f"R must be positive, got {R}")
    return QuadraticInstance(diag_q=etas, linear_q=-etas * R)


def suboptimality(inst: QuadraticInstance, x: np.ndarray) -> float:
    """f(x) - f* = 1/2 (x - x*)^T Q (x - x*)."""
    x_star = inst.minimizer
    if x_star is None:
        logger.error("suboptimality requested on an unbounded instance")
        raise UnboundedInstanceError("instance is unbounded below")
    diff = np.asarray(x, dtype=float) - x_star
    return float(0.5 * np.dot(inst.diag_q, diff * diff))


def finite_sum_split(
    inst: QuadraticInstance, m: int, seed: int = 0, mode: str = "random"
) -> FiniteSumInstance:
    """Split ``inst`` into m convex components.

    Component i is W_i * inst coordinate-wise; the weights of each
    coordinate are non-negative and sum to one.
    """
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    if mode not in SPLIT_MODES:
        raise ValueError(f"unknown split mode {mode!r}")
    if m == 1:
        return FiniteSumInstance(
            components=(inst,), weights=np.ones((1, inst.d))
        )
    if mode == "equal":
        weights = np.full((m, inst.d), 1.0 / m)
    else:
        rng = np.random.default_rng(seed)
        weights = rng.dirichlet(np.ones(m), size=inst.d).T
    components = tuple(
        QuadraticInstance(
            diag_q=weights[i] * inst.diag_q, linear_q=weights[i] * inst.linear_q
        )
        for i in range(m)
    )
    logger.debug(f"split instance of dimension {inst.d} into {m} ({mode})")
    return FiniteSumInstance(components=components, weights=weights)


def worst_eta(
    sched: CoefficientSchedule,
    info: SideInformation,
    k: int,
    iv: Interval,
    n_grid: int,
) -> Tuple[float, float]:
    """The adversary's spectral value for step k and the residual there."""
    traj = symbolic_run(sched, info, [1.0], k, sched.p, 1)
    cert = residual_max(residual_poly(traj, 0), iv, n_grid)
    return cert.argmax_eta, cert.value
