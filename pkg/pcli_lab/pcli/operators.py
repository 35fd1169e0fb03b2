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
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np


@dataclass(frozen=True)
class SideInformation:
    """Parameters a schedule may read: L always, mu when strongly convex."""

    L: float
    mu: Optional[float] = None

    def __post_init__(self):
        if not self.L > 0.0:
            raise ValueError(f"L must be positive, got {self.L}")
        if self.mu is not None and not 0.0 < self.mu <= self.L:
            raise ValueError(
                f"mu must lie in (0, L], got mu={self.mu}, L={self.L}"
            )

    @property
    def kappa(self) -> float:
        if self.mu is None:
            return math.inf
        return self.L / self.mu

    @property
    def frame(self) -> Tuple[float, float]:
        """Spectrum interval the side information admits."""
        lo = 0.0 if self.mu is None or self.mu == self.L else self.mu
        return (lo, self.L)

    def require_mu(self, who: str) -> float:
        if self.mu is None:
            raise ValueError(f"{who} requires mu in the side information")
        return self.mu


@dataclass(frozen=True)
class Scalar:
    a: float

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.a * x

    def entries(self, d: int) -> np.ndarray:
        return np.full(d, float(self.a))

    @property
    def is_zero(self) -> bool:
        return self.a == 0.0


@dataclass(frozen=True)
class Diagonal:
    values: Tuple[float, ...]

    def __init__(self, values: Sequence[float]):
        object.__setattr__(self, "values", tuple(float(v) for v in values))

    def apply(self, x: np.ndarray) -> np.ndarray:
        if np.shape(x)[-1] != len(self.values):
            raise ValueError(
                f"Diagonal of length {len(self.values)} applied to "
                f"dimension {np.shape(x)[-1]}"
            )
        return np.asarray(self.values) * x

    def entries(self, d: int) -> np.ndarray:
        if d != len(self.values):
            raise ValueError(
                f"Diagonal of length {len(self.values)} used in dimension {d}"
            )
        return np.asarray(self.values)

    @property
    def is_zero(self) -> bool:
        return not any(self.values)


DiagonalOperator = Union[Scalar, Diagonal]
OperatorGrid = Tuple[Tuple[DiagonalOperator, ...], ...]

ZERO = Scalar(0.0)
ONE = Scalar(1.0)


def grid(rows: Sequence[Sequence[DiagonalOperator]]) -> OperatorGrid:
    """Freeze nested rows into a square operator grid."""
    frozen = tuple(tuple(row) for row in rows)
    if any(len(row) != len(frozen) for row in frozen):
        raise ValueError("operator grid must be square")
    return frozen
